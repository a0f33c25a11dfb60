"""Added-element extraction between adjacent revision documents.

Elements (sentences or whole passages) are matched by exact string equality
under a longest-common-subsequence alignment, so the number of reported
additions is always ``len(new) - LCS(old, new)``. An element edited in place
therefore counts as added. Diffing happens on raw whitespace-normalized
strings; survivors are tokenized afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Sequence

from .textproc import NonbreakingPrefixes, split_sentences, tokenize
from .wikitext import Document

__all__ = ["RevisionDelta", "added_elements", "compute_delta"]


@dataclass(frozen=True)
class RevisionDelta:
    """Tokenized lead sentences and body passages added by one revision."""

    added_sentences: tuple[tuple[str, ...], ...]
    added_passages: tuple[tuple[str, ...], ...]
    old_rev_id: int
    new_rev_id: int
    timestamp: datetime | None


def _matched_new_positions(old: Sequence[str], new: Sequence[str]) -> set[int]:
    """Positions of ``new`` covered by one maximal common-subsequence alignment."""
    lo = 0
    n, m = len(old), len(new)
    while lo < n and lo < m and old[lo] == new[lo]:
        lo += 1
    hi = 0
    while hi < n - lo and hi < m - lo and old[n - 1 - hi] == new[m - 1 - hi]:
        hi += 1
    matched = set(range(lo)) | set(range(m - hi, m))

    a, b = old[lo : n - hi], new[lo : m - hi]
    if not a or not b:
        return matched

    # Intern to ints so the DP compares cheaply even on long passages.
    ids: dict[str, int] = {}
    ai = [ids.setdefault(x, len(ids)) for x in a]
    bi = [ids.setdefault(x, len(ids)) for x in b]

    rows = len(ai)
    cols = len(bi)
    dp = [[0] * (cols + 1) for _ in range(rows + 1)]
    for i in range(rows - 1, -1, -1):
        dpi, dpn = dp[i], dp[i + 1]
        av = ai[i]
        for j in range(cols - 1, -1, -1):
            if av == bi[j]:
                dpi[j] = dpn[j + 1] + 1
            else:
                nxt = dpn[j]
                cur = dpi[j + 1]
                dpi[j] = nxt if nxt >= cur else cur
    i = j = 0
    while i < rows and j < cols:
        if ai[i] == bi[j]:
            matched.add(lo + j)
            i += 1
            j += 1
        elif dp[i + 1][j] >= dp[i][j + 1]:
            i += 1
        else:
            j += 1
    return matched


def added_elements(old: Sequence[str], new: Sequence[str]) -> list[str]:
    """Elements of ``new`` not consumed by the alignment, in ``new`` order."""
    matched = _matched_new_positions(old, new)
    return [item for idx, item in enumerate(new) if idx not in matched]


def _normalize(items: Sequence[str]) -> list[str]:
    return [" ".join(s.split()) for s in items]


def compute_delta(
    old_doc: Document,
    new_doc: Document,
    *,
    old_rev_id: int = 0,
    new_rev_id: int = 0,
    timestamp: datetime | None = None,
    prefixes: NonbreakingPrefixes | None = None,
) -> RevisionDelta:
    """Diff lead sentences and body passages of two parsed revisions."""
    old_sents = _normalize(split_sentences(old_doc.lead_text, prefixes))
    new_sents = _normalize(split_sentences(new_doc.lead_text, prefixes))
    old_paras = _normalize(old_doc.body_paragraphs)
    new_paras = _normalize(new_doc.body_paragraphs)
    return RevisionDelta(
        added_sentences=tuple(tuple(tokenize(s)) for s in added_elements(old_sents, new_sents)),
        added_passages=tuple(tuple(tokenize(p)) for p in added_elements(old_paras, new_paras)),
        old_rev_id=old_rev_id,
        new_rev_id=new_rev_id,
        timestamp=timestamp,
    )
