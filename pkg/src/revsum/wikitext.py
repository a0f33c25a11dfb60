"""Wikitext-to-plain-text stripping and lead/body segmentation.

Templates, tables, references, and media links are removed, never expanded.
Unbalanced ``{{`` / ``{|`` swallow text up to the next heading line (or end
of input); an unbalanced ``[[`` is dropped and the rest kept literally.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass

__all__ = ["ParseConfig", "Document", "strip_wikicode", "parse_document"]


@dataclass(frozen=True)
class ParseConfig:
    min_passage_chars: int = 40


@dataclass(frozen=True)
class Document:
    """A stripped revision: lead text, body passages, section headings."""

    lead_text: str
    body_paragraphs: tuple[str, ...]
    headings: tuple[tuple[int, str], ...]


_COMMENT_RE = re.compile(r"<!--.*?(?:-->|$)", re.S)
_REF_PAIR_RE = re.compile(r"<ref[^<>/]*>.*?</ref\s*>", re.S | re.I)
_REF_SELF_RE = re.compile(r"<ref[^<>]*/\s*>", re.I)
_EXT_LINK_RE = re.compile(r"\[(?:(?:https?|ftp):)?//[^\s\]]*(?:\s+([^\]]*))?\]", re.I)
_BR_RE = re.compile(r"<br\s*/?\s*>", re.I)
_TAG_RE = re.compile(r"</?[A-Za-z][^<>]*>")
_MAGIC_RE = re.compile(r"__[A-Z]+__")
_HEADING_RE = re.compile(r"^(={2,6})\s*(.+?)\s*(={2,6})\s*$")
_NEXT_HEADING_RE = re.compile(r"^==", re.M)
_MEDIA_PREFIXES = ("file:", "image:", "category:")


def _remove_refs(text: str) -> str:
    text = _REF_SELF_RE.sub("", text)
    return _REF_PAIR_RE.sub("", text)


def _swallow_line_break(text: str, pos: int, stack: list, out: list) -> int:
    # A block construct that occupied whole lines should not leave a
    # fabricated paragraph break behind.
    if not stack and pos < len(text) and text[pos] == "\n" and (not out or out[-1] == "\n"):
        return pos + 1
    return pos


def _strip_braces(text: str) -> str:
    """Remove {{templates}}, {{{parameters}}}, and {| tables |}, nesting-aware."""
    out: list[str] = []
    stack: list[str] = []
    checkpoint = 0  # start of the outermost open construct
    i, n = 0, len(text)
    while i < n:
        three = text[i : i + 3]
        two = text[i : i + 2]
        if three == "{{{":
            if not stack:
                checkpoint = i
            stack.append("param")
            i += 3
        elif two == "{{" or two == "{|":
            if not stack:
                checkpoint = i
            stack.append("tpl" if two == "{{" else "tbl")
            i += 2
        elif three == "}}}" and stack and stack[-1] == "param":
            stack.pop()
            i = _swallow_line_break(text, i + 3, stack, out)
        elif two == "}}" and stack and stack[-1] == "tpl":
            stack.pop()
            i = _swallow_line_break(text, i + 2, stack, out)
        elif two == "|}" and stack and stack[-1] == "tbl":
            stack.pop()
            i = _swallow_line_break(text, i + 2, stack, out)
        elif not stack and (two == "}}" or two == "|}"):
            i += 2  # stray closer, dropped
        elif stack:
            i += 1
        else:
            out.append(text[i])
            i += 1
    if stack:
        # Unclosed construct swallows to the next heading line, then resume.
        m = _NEXT_HEADING_RE.search(text, checkpoint + 1)
        if m:
            return "".join(out) + "\n" + _strip_braces(text[m.start():])
    return "".join(out)


def _find_link_end(text: str, start: int) -> int | None:
    depth = 0
    i = start
    while i < len(text) - 1:
        two = text[i : i + 2]
        if two == "[[":
            depth += 1
            i += 2
        elif two == "]]":
            depth -= 1
            if depth == 0:
                return i
            i += 2
        else:
            i += 1
    return None


def _split_top_pipe(inner: str) -> tuple[str, str | None]:
    depth = 0
    for i, ch in enumerate(inner):
        if inner[i : i + 2] == "[[":
            depth += 1
        elif inner[i : i + 2] == "]]":
            depth -= 1
        elif ch == "|" and depth == 0:
            return inner[:i], inner[i + 1 :]
    return inner, None


def _render_link(inner: str) -> str:
    target, label = _split_top_pipe(inner)
    target = target.strip()
    visible = target[1:] if target.startswith(":") else target
    if visible.lower().startswith(_MEDIA_PREFIXES) and not target.startswith(":"):
        return ""  # media/category links vanish entirely, caption included
    if label is not None:
        rendered = _strip_links(label).strip()
        if rendered:
            return rendered
        # pipe trick: [[Foo (bar)|]] -> Foo
        base = visible.rsplit(":", 1)[-1]
        return re.sub(r"\s*\([^)]*\)$", "", base).strip()
    return visible


def _strip_links(text: str) -> str:
    out: list[str] = []
    i, n = 0, len(text)
    while i < n:
        if text[i : i + 2] == "[[":
            end = _find_link_end(text, i)
            if end is None:
                i += 2  # unbalanced: drop the brackets, keep the rest
                continue
            out.append(_render_link(text[i + 2 : end]))
            i = end + 2
        elif text[i : i + 2] == "]]":
            i += 2
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def _strip_lines(text: str) -> str:
    lines_out: list[str] = []
    for line in text.split("\n"):
        original_blank = not line.strip()
        line = re.sub(r"^[*#:;\s]+", "", line.strip())
        m = _HEADING_RE.match(line)
        if m:
            line = m.group(2)
        if re.fullmatch(r"-{4,}", line):
            line = ""
        line = " ".join(line.split())
        if not line and not original_blank:
            continue  # construct-only line: do not fabricate a paragraph break
        lines_out.append(line)
    return "\n".join(lines_out)


def strip_wikicode(raw: str) -> str:
    """Plain text of arbitrary (possibly malformed) wikitext. Never raises."""
    text = _COMMENT_RE.sub("", raw)
    text = _remove_refs(text)
    text = _strip_braces(text)
    text = _strip_links(text)
    text = _EXT_LINK_RE.sub(lambda m: m.group(1) or "", text)
    text = text.replace("'''''", "").replace("'''", "").replace("''", "")
    text = _BR_RE.sub(" ", text)
    text = _TAG_RE.sub("", text)
    text = _MAGIC_RE.sub("", text)
    text = html.unescape(text).replace("\xa0", " ")
    text = _strip_lines(text)
    text = re.sub(r"\n{3,}", "\n\n", text)
    return text.strip()


def _heading_of(line: str) -> tuple[int, str] | None:
    m = _HEADING_RE.match(line.strip())
    if not m:
        return None
    level = min(len(m.group(1)), len(m.group(3)))
    title = strip_wikicode(m.group(2)).replace("\n", " ").strip()
    return level, title


def _paragraphs(chunk: str, min_chars: int) -> list[str]:
    stripped = strip_wikicode(chunk)
    paras = [p.strip() for p in re.split(r"\n\s*\n", stripped)]
    return [p for p in paras if len(p) >= min_chars]


def parse_document(raw: str, config: ParseConfig | None = None) -> Document:
    """Split a revision into lead text and body passages.

    The lead is everything before the first heading line; body text is
    stripped section by section and segmented into blank-line paragraphs,
    dropping paragraphs shorter than ``config.min_passage_chars``.
    """
    if config is None:
        config = ParseConfig()
    text = _remove_refs(_COMMENT_RE.sub("", raw))
    lines = text.split("\n")

    lead_lines: list[str] = []
    idx = 0
    while idx < len(lines):
        if _heading_of(lines[idx]) is not None:
            break
        lead_lines.append(lines[idx])
        idx += 1
    lead_text = strip_wikicode("\n".join(lead_lines))

    headings: list[tuple[int, str]] = []
    body: list[str] = []
    chunk: list[str] = []
    for line in lines[idx:]:
        h = _heading_of(line)
        if h is not None:
            if chunk:
                body.extend(_paragraphs("\n".join(chunk), config.min_passage_chars))
                chunk = []
            headings.append(h)
        else:
            chunk.append(line)
    if chunk:
        body.extend(_paragraphs("\n".join(chunk), config.min_passage_chars))

    return Document(lead_text=lead_text, body_paragraphs=tuple(body), headings=tuple(headings))
