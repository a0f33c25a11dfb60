"""Streaming reader for MediaWiki full-history XML exports.

Pages are yielded one at a time in dump order; memory stays bounded by the
largest single page history, not by dump size. Unknown XML elements are
skipped, never fatal; malformed XML at the top level is.
"""

from __future__ import annotations

import bz2
import gzip
import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import BinaryIO, Iterator

__all__ = [
    "IngestError",
    "ConfigurationError",
    "RevisionSnapshot",
    "PageHistory",
    "IngestPolicy",
    "open_dump",
    "filter_page",
    "adjacent_revision_pairs",
]


class IngestError(Exception):
    """Fatal problem reading the dump (malformed XML, truncated stream)."""


class ConfigurationError(Exception):
    """Unusable flag or unrecognized compression format."""


@dataclass(frozen=True)
class RevisionSnapshot:
    revision_id: int
    timestamp: datetime
    raw_text: str
    is_minor: bool = False
    comment: str = ""


@dataclass(frozen=True)
class PageHistory:
    page_id: int
    title: str
    namespace: int
    is_redirect: bool
    revisions: tuple[RevisionSnapshot, ...]


@dataclass(frozen=True)
class IngestPolicy:
    allowed_namespaces: frozenset[int] = field(default_factory=lambda: frozenset({0}))
    keep_redirects: bool = False


def filter_page(page: PageHistory, policy: IngestPolicy | None = None) -> bool:
    """True iff the page survives namespace and redirect filtering."""
    if policy is None:
        policy = IngestPolicy()
    if page.namespace not in policy.allowed_namespaces:
        return False
    return policy.keep_redirects or not page.is_redirect


def adjacent_revision_pairs(page: PageHistory) -> list[tuple[RevisionSnapshot, RevisionSnapshot]]:
    """Consecutive (older, newer) revision pairs in temporal order."""
    revs = page.revisions
    return list(zip(revs, revs[1:]))


class _CountingStream(io.RawIOBase):
    """Byte-counting wrapper so parse errors can report an offset."""

    def __init__(self, inner):
        self._inner = inner
        self.bytes_read = 0

    def readable(self) -> bool:
        return True

    def read(self, size: int = -1) -> bytes:
        data = self._inner.read(size)
        self.bytes_read += len(data)
        return data


_MAGIC_BZ2 = b"BZh"
_MAGIC_GZIP = b"\x1f\x8b"
_KNOWN_UNSUPPORTED = {
    b"\xfd7zXZ\x00": "xz",
    b"\x28\xb5\x2f\xfd": "zstd",
    b"\x37\x7a\xbc\xaf": "7z",
    b"\x04\x22\x4d\x18": "lz4",
}

_COMPRESSION_ALIASES = {
    "none": "none",
    "bz2": "bz2",
    "bzip2": "bz2",
    "gz": "gz",
    "gzip": "gz",
    "auto": "auto",
}


def _detect_compression(peek: bytes) -> str:
    if peek.startswith(_MAGIC_BZ2):
        return "bz2"
    if peek.startswith(_MAGIC_GZIP):
        return "gz"
    for magic, name in _KNOWN_UNSUPPORTED.items():
        if peek.startswith(magic):
            raise ConfigurationError(f"unsupported compression format: {name}")
    return "none"


def _decompressed(stream: BinaryIO, compression: str) -> BinaryIO:
    try:
        mode = _COMPRESSION_ALIASES[compression]
    except KeyError:
        raise ConfigurationError(f"unknown compression flag: {compression!r}") from None
    if mode == "auto":
        if not hasattr(stream, "peek"):
            stream = io.BufferedReader(stream)  # type: ignore[arg-type]
        mode = _detect_compression(stream.peek(8)[:8])
    if mode == "bz2":
        return bz2.open(stream)  # type: ignore[return-value]
    if mode == "gz":
        return gzip.open(stream)  # type: ignore[return-value]
    return stream


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _parse_timestamp(value: str) -> datetime:
    ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _build_revision(elem: ET.Element) -> RevisionSnapshot | None:
    rev_id = elem.findtext("id")
    stamp = elem.findtext("timestamp")
    if rev_id is None or stamp is None:
        return None
    try:
        timestamp = _parse_timestamp(stamp)
    except ValueError:
        return None
    return RevisionSnapshot(
        revision_id=int(rev_id),
        timestamp=timestamp,
        raw_text=elem.findtext("text") or "",
        is_minor=elem.find("minor") is not None,
        comment=elem.findtext("comment") or "",
    )


def _build_page(elem: ET.Element) -> PageHistory | None:
    page_id = elem.findtext("id")
    if page_id is None:
        return None
    revisions = []
    for child in elem:
        if child.tag == "revision":
            rev = _build_revision(child)
            if rev is not None:
                revisions.append(rev)
    revisions.sort(key=lambda r: (r.timestamp, r.revision_id))
    return PageHistory(
        page_id=int(page_id),
        title=elem.findtext("title") or "",
        namespace=int(elem.findtext("ns") or 0),
        is_redirect=elem.find("redirect") is not None,
        revisions=tuple(revisions),
    )


def open_dump(source, compression: str = "auto") -> Iterator[PageHistory]:
    """Lazily iterate PageHistory values out of a pages-meta-history export.

    ``source`` is a path or a binary file object. Compression is
    autodetected from magic bytes when the flag is ``auto``.
    """
    owns = isinstance(source, (str, Path))
    raw = open(source, "rb") if owns else source
    counter = _CountingStream(_decompressed(raw, compression))
    try:
        yield from _iter_pages(counter)
    finally:
        if owns:
            raw.close()


def _iter_pages(counter: _CountingStream) -> Iterator[PageHistory]:
    try:
        context = ET.iterparse(counter, events=("start", "end"))
        root = None
        for event, elem in context:
            if event == "start":
                if root is None:
                    root = elem
                continue
            elem.tag = _local(elem.tag)
            if elem.tag == "page":
                page = _build_page(elem)
                if page is not None:
                    yield page
                if root is not None:
                    root.clear()
    except ET.ParseError as exc:
        raise IngestError(
            f"malformed dump XML near byte {counter.bytes_read}: {exc}"
        ) from exc
    except (OSError, EOFError) as exc:  # truncated bz2/gz payloads surface here
        raise IngestError(f"unreadable dump stream: {exc}") from exc
