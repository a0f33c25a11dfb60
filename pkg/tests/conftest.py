import sys
from pathlib import Path
from xml.sax.saxutils import escape

import pytest

TESTS_DIR = Path(__file__).parent
DATA_DIR = TESTS_DIR / "data"

sys.path.insert(0, str(TESTS_DIR))

MEDIAWIKI_XMLNS = "http://www.mediawiki.org/xml/export-0.11/"


def revision_xml(rev_id, timestamp, text, minor=False, comment=""):
    minor_tag = "<minor/>" if minor else ""
    comment_tag = f"<comment>{escape(comment)}</comment>" if comment else ""
    return (
        f"<revision><id>{rev_id}</id><timestamp>{timestamp}</timestamp>"
        f"{minor_tag}{comment_tag}"
        f"<text>{escape(text)}</text></revision>"
    )


def page_xml(title, ns, page_id, revisions, redirect=None):
    redirect_tag = f'<redirect title="{escape(redirect)}" />' if redirect else ""
    return (
        f"<page><title>{escape(title)}</title><ns>{ns}</ns><id>{page_id}</id>"
        f"{redirect_tag}{''.join(revisions)}</page>"
    )


def dump_xml(pages, xmlns=MEDIAWIKI_XMLNS):
    return (
        f'<mediawiki xmlns="{xmlns}" xml:lang="en">'
        f"<siteinfo><sitename>Testwiki</sitename></siteinfo>"
        f"{''.join(pages)}</mediawiki>"
    )


@pytest.fixture
def stopwords():
    from revsum.textproc import StopwordList

    return StopwordList.builtin()


@pytest.fixture
def prefixes():
    from revsum.textproc import NonbreakingPrefixes

    return NonbreakingPrefixes.builtin()
