"""Overlap scoring and passage-summary pair mining.

A candidate lead sentence is scored against each added body passage by the
stopword-filtered unigram overlap rate |s' ∩ p'| / |s'|, normalized by the
sentence side. Per sentence, the best-scoring passage is kept when its score
reaches the mining threshold.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

from .diffing import RevisionDelta, compute_delta
from .ingest import PageHistory, adjacent_revision_pairs
from .textproc import NonbreakingPrefixes, StopwordList, content_tokens
from .wikitext import Document, ParseConfig, parse_document

__all__ = [
    "UnscorableSentenceError",
    "MinerConfig",
    "CandidatePair",
    "CorpusExample",
    "MiningEvents",
    "overlap_score",
    "best_passage",
    "mine_delta",
    "mine_page",
]


class UnscorableSentenceError(ValueError):
    """The sentence has no content tokens, so the overlap rate is undefined."""


@dataclass(frozen=True)
class MinerConfig:
    """Mining knobs; ``threshold`` is the minimum overlap rate for keeping a pair."""

    threshold: float = 0.6
    min_summary_content_tokens: int | None = 3
    max_summary_tokens: int | None = 120
    tie_break: str = "first-passage"

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.tie_break != "first-passage":
            raise ValueError(f"unknown tie_break policy: {self.tie_break!r}")


@dataclass(frozen=True)
class CandidatePair:
    sentence: tuple[str, ...]
    passage: tuple[str, ...]
    score: float
    passage_index: int
    sentence_index: int = 0


@dataclass(frozen=True)
class CorpusExample:
    """One kept pair with provenance; text is stored space-joined."""

    id: str
    page_id: int
    page_title: str
    old_rev_id: int
    new_rev_id: int
    timestamp: str
    passage: str
    summary: str
    score: float
    sentence_index: int = 0  # position within the revision delta, not serialized


class MiningEvents:
    """Tallies of skip reasons and pipeline counts; cheap enough to always keep."""

    def __init__(self):
        self.counts: Counter[str] = Counter()

    def bump(self, key: str, amount: int = 1) -> None:
        self.counts[key] += amount

    def merge(self, other: "MiningEvents") -> None:
        self.counts.update(other.counts)

    def as_dict(self) -> dict[str, int]:
        return dict(sorted(self.counts.items()))


def overlap_score(s_prime: frozenset[str], p_prime: frozenset[str]) -> float:
    """Overlap rate |s' ∩ p'| / |s'|; raises on an empty sentence set."""
    if not s_prime:
        raise UnscorableSentenceError("sentence has no content tokens")
    return len(s_prime & p_prime) / len(s_prime)


def best_passage(
    sentence: Sequence[str],
    passages: Sequence[Sequence[str]],
    stopwords: StopwordList | None = None,
    config: MinerConfig | None = None,
    sentence_index: int = 0,
) -> CandidatePair | None:
    """Highest-overlap passage for one sentence; ties go to the earliest passage.

    Returns None when there is nothing to align or the sentence is unscorable.
    """
    if config is None:
        config = MinerConfig()
    if not passages:
        return None
    s_prime = content_tokens(sentence, stopwords)
    if not s_prime:
        return None
    best_idx = -1
    best = -1.0
    for idx, passage in enumerate(passages):
        score = overlap_score(s_prime, content_tokens(passage, stopwords))
        if score > best:
            best, best_idx = score, idx
    return CandidatePair(
        sentence=tuple(sentence),
        passage=tuple(passages[best_idx]),
        score=best,
        passage_index=best_idx,
        sentence_index=sentence_index,
    )


def mine_delta(
    delta: RevisionDelta,
    stopwords: StopwordList | None = None,
    config: MinerConfig | None = None,
    events: MiningEvents | None = None,
) -> list[CandidatePair]:
    """Kept candidate pairs for one revision delta, in sentence order."""
    if config is None:
        config = MinerConfig()
    kept: list[CandidatePair] = []
    for idx, sentence in enumerate(delta.added_sentences):
        if events:
            events.bump("sentences_seen")
        if config.max_summary_tokens is not None and len(sentence) > config.max_summary_tokens:
            if events:
                events.bump("skip_sentence_too_long")
            continue
        s_prime = content_tokens(sentence, stopwords)
        if not s_prime:
            if events:
                events.bump("skip_unscorable_sentence")
            continue
        min_content = config.min_summary_content_tokens or 1
        if len(s_prime) < min_content:
            if events:
                events.bump("skip_sentence_too_few_content_tokens")
            continue
        if not delta.added_passages:
            if events:
                events.bump("skip_no_added_passages")
            continue
        pair = best_passage(sentence, delta.added_passages, stopwords, config, sentence_index=idx)
        if pair is None:
            continue
        if events:
            events.bump("candidates_scored")
        if pair.score >= config.threshold:
            kept.append(pair)
            if events:
                events.bump("pairs_kept")
        elif events:
            events.bump("skip_below_threshold")
    return kept


def _format_timestamp(ts: datetime | None) -> str:
    if ts is None:
        return ""
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def example_id(page_id: int, new_rev_id: int, summary: str) -> str:
    digest = hashlib.sha1(f"{page_id}:{new_rev_id}:{summary}".encode("utf-8")).hexdigest()
    return digest[:16]


def mine_page(
    page: PageHistory,
    stopwords: StopwordList | None = None,
    config: MinerConfig | None = None,
    parse_config: ParseConfig | None = None,
    prefixes: NonbreakingPrefixes | None = None,
    events: MiningEvents | None = None,
) -> list[CorpusExample]:
    """Mine every adjacent revision pair of one page into corpus examples.

    Per-revision parse anomalies are tallied as skip events and the affected
    pair skipped; the page as a whole is never aborted.
    """
    if config is None:
        config = MinerConfig()
    examples: list[CorpusExample] = []
    docs: dict[int, Document] = {}

    def doc_for(rev) -> Document:
        if rev.revision_id not in docs:
            docs[rev.revision_id] = parse_document(rev.raw_text, parse_config)
        return docs[rev.revision_id]

    for old, new in adjacent_revision_pairs(page):
        if events:
            events.bump("revision_pairs")
        try:
            old_doc = doc_for(old)
            new_doc = doc_for(new)
            delta = compute_delta(
                old_doc,
                new_doc,
                old_rev_id=old.revision_id,
                new_rev_id=new.revision_id,
                timestamp=new.timestamp,
                prefixes=prefixes,
            )
        except Exception:  # noqa: BLE001 - anomaly becomes a skip event
            if events:
                events.bump("skip_parse_error")
            continue
        for pair in mine_delta(delta, stopwords, config, events):
            summary = " ".join(pair.sentence)
            examples.append(
                CorpusExample(
                    id=example_id(page.page_id, new.revision_id, summary),
                    page_id=page.page_id,
                    page_title=page.title,
                    old_rev_id=old.revision_id,
                    new_rev_id=new.revision_id,
                    timestamp=_format_timestamp(new.timestamp),
                    passage=" ".join(pair.passage),
                    summary=summary,
                    score=pair.score,
                    sentence_index=pair.sentence_index,
                )
            )
    return examples
