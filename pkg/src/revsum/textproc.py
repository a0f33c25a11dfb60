"""Sentence splitting, tokenization, and stopword-filtered content tokens.

The sentence splitter follows the Moses convention: break after ``. ? !``
(plus optional closing quotes/brackets) when the next non-space character
starts a sentence (uppercase or digit), unless the token before a single
period is a known non-breaking prefix or looks like a dotted acronym.
The tokenizer is a rule-based Penn-Treebank-style approximation: it splits
punctuation and contraction clitics but keeps numbers, hyphenated compounds,
and slash compounds (``km/h``) whole.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

__all__ = [
    "StopwordList",
    "NonbreakingPrefixes",
    "split_sentences",
    "tokenize",
    "content_tokens",
]


def _read_word_lines(text: str) -> list[str]:
    """Entries from a one-per-line word file; '#'-prefixed lines are comments."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line)
    return out


@dataclass(frozen=True)
class StopwordList:
    """Lowercase words removed before overlap scoring."""

    words: frozenset[str]
    source: str = "builtin"

    def __post_init__(self):
        if not self.words:
            raise ValueError("stopword list must not be empty")

    def __contains__(self, word: str) -> bool:
        return word in self.words

    @classmethod
    def builtin(cls) -> "StopwordList":
        return _builtin_stopwords()

    @classmethod
    def from_file(cls, path) -> "StopwordList":
        with open(path, encoding="utf-8") as f:
            words = frozenset(w.lower() for w in _read_word_lines(f.read()))
        return cls(words=words, source=str(path))


@lru_cache(maxsize=1)
def _builtin_stopwords() -> StopwordList:
    text = (resources.files("revsum") / "resources/stopwords_en.txt").read_text("utf-8")
    return StopwordList(words=frozenset(w.lower() for w in _read_word_lines(text)))


_NUMERIC_MARKER = "#NUMERIC_ONLY#"


@dataclass(frozen=True)
class NonbreakingPrefixes:
    """Words that do not end a sentence when followed by a period."""

    always: frozenset[str]
    numeric_only: frozenset[str]
    source: str = "builtin"

    @classmethod
    def builtin(cls) -> "NonbreakingPrefixes":
        return _builtin_prefixes()

    @classmethod
    def from_file(cls, path) -> "NonbreakingPrefixes":
        with open(path, encoding="utf-8") as f:
            return cls._parse(f.read(), source=str(path))

    @classmethod
    def _parse(cls, text: str, source: str = "builtin") -> "NonbreakingPrefixes":
        always, numeric = set(), set()
        for entry in _read_word_lines(text):
            if _NUMERIC_MARKER in entry:
                numeric.add(entry.split("#")[0].strip())
            else:
                always.add(entry)
        return cls(always=frozenset(always), numeric_only=frozenset(numeric), source=source)


@lru_cache(maxsize=1)
def _builtin_prefixes() -> NonbreakingPrefixes:
    text = (resources.files("revsum") / "resources/nonbreaking_prefixes_en.txt").read_text("utf-8")
    return NonbreakingPrefixes._parse(text)


# Candidate boundary: terminal run, optional closing punctuation, whitespace.
_BOUNDARY_RE = re.compile(r"([.?!]+)([\)\]\"'’”»]*)(\s+)")
_OPENERS = "\"'‘“«([¿¡"
_CLOSERS_RE = re.compile(r"([\)\]\"'’”»%]*)$")
_PREFIX_TAIL_RE = re.compile(r"[\w.\-]*$", re.UNICODE)
_ACRONYM_RE = re.compile(r"\.[A-Z\-]+$")


def _sentence_starter(text: str) -> str:
    """First significant character of the follower, skipping quotes/brackets."""
    for ch in text:
        if ch in _OPENERS or ch == " ":
            continue
        return ch
    return ""


def split_sentences(text: str, prefixes: NonbreakingPrefixes | None = None) -> list[str]:
    """Split plain text into sentences, preserving every non-space character.

    Concatenating the result (with single spaces) reproduces the input
    modulo inter-sentence whitespace. Empty or blank input gives [].
    """
    if prefixes is None:
        prefixes = NonbreakingPrefixes.builtin()
    if not text or text.isspace():
        return []

    cuts: list[tuple[int, int]] = []  # (sentence end, next sentence start)
    for m in _BOUNDARY_RE.finditer(text):
        starter = _sentence_starter(text[m.end():])
        if not starter or not (starter.isupper() or starter.isdigit()):
            continue
        if m.group(1) == ".":
            word_m = re.search(r"(\S+)$", text[: m.start()])
            if word_m:
                word = word_m.group(1)
                closers = _CLOSERS_RE.search(word).group(1)
                core = word[: len(word) - len(closers)] if closers else word
                prefix = _PREFIX_TAIL_RE.search(core).group(0)
                if not closers and prefix and prefix in prefixes.always:
                    continue
                if not closers and _ACRONYM_RE.search(core):
                    continue  # dotted acronym such as "U.S."
                if not closers and prefix in prefixes.numeric_only and starter.isdigit():
                    continue
        cuts.append((m.end(2), m.end()))

    sentences = []
    pos = 0
    for end, nxt in cuts:
        sentences.append(text[pos:end])
        pos = nxt
    sentences.append(text[pos:])
    return [s.strip() for s in sentences if s.strip()]


_LEAD_CHARS = set("\"'‘“«([{$#¿¡")
_TRAIL_CHARS = set("\"'’”»)]};:,.!?%…")
_CLITICS = ("'s", "'m", "'re", "'ve", "'d", "'ll")


def _keep_final_period(word: str) -> bool:
    # "U.S." or "i.e." style abbreviations keep their final period attached.
    return "." in word[:-1]


def _split_core(word: str) -> list[str]:
    low = word.lower()
    if low.endswith("n't") and len(word) > 3:
        return [word[:-3], word[-3:]]
    for clitic in _CLITICS:
        if low.endswith(clitic) and len(word) > len(clitic):
            cut = len(word) - len(clitic)
            return [word[:cut], word[cut:]]
    return [word]


def _split_chunk(chunk: str) -> list[str]:
    if chunk.lower() in _CLITICS or chunk.lower() == "n't":
        return [chunk]  # already-tokenized clitic, keep whole
    lead: list[str] = []
    trail: list[str] = []
    while len(chunk) > 1 and chunk[0] in _LEAD_CHARS:
        lead.append(chunk[0])
        chunk = chunk[1:]
    while len(chunk) > 1:
        ch = chunk[-1]
        if ch not in _TRAIL_CHARS:
            break
        if ch == ".":
            dots = len(chunk) - len(chunk.rstrip("."))
            if dots >= 2:  # ellipsis stays one token
                trail.append(chunk[-dots:])
                chunk = chunk[:-dots]
                continue
            if _keep_final_period(chunk):
                break
        trail.append(ch)
        chunk = chunk[:-1]
    return lead + _split_core(chunk) + trail[::-1]


def tokenize(sentence: str) -> list[str]:
    """Rule-based tokenization; whitespace-delimited chunks are split further."""
    tokens: list[str] = []
    for chunk in sentence.split():
        tokens.extend(t for t in _split_chunk(chunk) if t)
    return tokens


def content_tokens(tokens, stopwords: StopwordList | None = None) -> frozenset[str]:
    """Lowercased token set minus stopwords and pure-punctuation tokens."""
    if stopwords is None:
        stopwords = StopwordList.builtin()
    kept = set()
    for tok in tokens:
        low = tok.lower()
        if low in stopwords.words:
            continue
        if not any(ch.isalnum() for ch in low):
            continue
        kept.add(low)
    return frozenset(kept)
