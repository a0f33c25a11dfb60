"""Quality-audit state: sampled items, Good/Unsupported labels, threshold report.

State lives in one JSON file, rewritten atomically on every label. The report
reuses a single labeled sample across thresholds: a row at threshold t counts
the labeled items whose score is at least t, while the corpus size column
counts the whole candidate pool at that threshold.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from .mining import CorpusExample
from .textproc import StopwordList, content_tokens

__all__ = [
    "AuditItem",
    "AuditState",
    "ThresholdRow",
    "LABELS",
    "sample_candidates",
    "record_label",
    "threshold_report",
]

LABELS = ("good", "unsupported")
UNLABELED = "unlabeled"


@dataclass
class AuditItem:
    item_id: str
    passage: str
    summary: str
    score: float
    label: str = UNLABELED
    labeled_at: str | None = None
    shared_tokens: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "passage": self.passage,
            "summary": self.summary,
            "score": self.score,
            "label": self.label,
            "labeled_at": self.labeled_at,
            "shared_tokens": list(self.shared_tokens),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AuditItem":
        return cls(
            item_id=data["item_id"],
            passage=data["passage"],
            summary=data["summary"],
            score=data["score"],
            label=data.get("label", UNLABELED),
            labeled_at=data.get("labeled_at"),
            shared_tokens=tuple(data.get("shared_tokens", ())),
        )


@dataclass
class AuditState:
    items: list[AuditItem]
    pool_scores: list[float]
    pool_path: str = ""
    seed: int = 0
    created_at: str = ""

    def item(self, item_id: str) -> AuditItem:
        for it in self.items:
            if it.item_id == item_id:
                return it
        raise KeyError(item_id)

    def progress(self) -> dict:
        labeled = sum(1 for it in self.items if it.label != UNLABELED)
        return {"labeled": labeled, "total": len(self.items)}

    def next_unlabeled(self) -> AuditItem | None:
        for it in self.items:
            if it.label == UNLABELED:
                return it
        return None

    def as_dict(self) -> dict:
        return {
            "created_at": self.created_at,
            "seed": self.seed,
            "pool_path": self.pool_path,
            "pool_scores": self.pool_scores,
            "items": [it.as_dict() for it in self.items],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AuditState":
        return cls(
            items=[AuditItem.from_dict(d) for d in data["items"]],
            pool_scores=list(data["pool_scores"]),
            pool_path=data.get("pool_path", ""),
            seed=data.get("seed", 0),
            created_at=data.get("created_at", ""),
        )

    def save(self, path) -> None:
        path = Path(path)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(self.as_dict(), ensure_ascii=False, indent=1), "utf-8")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path) -> "AuditState":
        return cls.from_dict(json.loads(Path(path).read_text("utf-8")))


def _shared_tokens(passage: str, summary: str, stopwords: StopwordList | None) -> tuple[str, ...]:
    overlap = content_tokens(passage.split(), stopwords) & content_tokens(summary.split(), stopwords)
    return tuple(sorted(overlap))


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def sample_candidates(
    pool: Sequence[CorpusExample],
    n: int = 50,
    seed: int = 0,
    stopwords: StopwordList | None = None,
    stratified: bool = False,
    pool_path: str = "",
) -> AuditState:
    """Seeded sample (without replacement) of audit items from a candidate pool."""
    if n <= 0:
        raise ValueError(f"sample size must be positive, got {n}")
    if not pool:
        raise ValueError("candidate pool is empty")
    rng = random.Random(seed)
    k = min(n, len(pool))
    if stratified:
        ordered = sorted(pool, key=lambda ex: ex.score)
        picked = []
        for chunk in range(k):
            lo = chunk * len(ordered) // k
            hi = max(lo + 1, (chunk + 1) * len(ordered) // k)
            picked.append(ordered[rng.randrange(lo, hi)])
        rng.shuffle(picked)
    else:
        picked = rng.sample(list(pool), k)
    items = [
        AuditItem(
            item_id=ex.id,
            passage=ex.passage,
            summary=ex.summary,
            score=ex.score,
            shared_tokens=_shared_tokens(ex.passage, ex.summary, stopwords),
        )
        for ex in picked
    ]
    return AuditState(
        items=items,
        pool_scores=[ex.score for ex in pool],
        pool_path=pool_path,
        seed=seed,
        created_at=_now(),
    )


def record_label(state: AuditState, item_id: str, label: str) -> AuditItem:
    """Apply a Good/Unsupported label; relabeling overwrites."""
    if label not in LABELS:
        raise ValueError(f"label must be one of {LABELS}, got {label!r}")
    item = state.item(item_id)
    item.label = label
    item.labeled_at = _now()
    return item


@dataclass(frozen=True)
class ThresholdRow:
    threshold: float
    good_count: int
    unsupported_count: int
    good_rate: float | None
    corpus_size: int

    def as_dict(self) -> dict:
        return {
            "lambda": self.threshold,
            "good_count": self.good_count,
            "unsupported_count": self.unsupported_count,
            "good_rate": self.good_rate,
            "corpus_size": self.corpus_size,
        }


def threshold_report(
    state: AuditState, lambdas: Sequence[float] = (0.5, 0.6, 0.7)
) -> list[ThresholdRow]:
    """Quality-vs-size rows, one per threshold, over the single labeled sample."""
    rows = []
    for lam in lambdas:
        good = sum(1 for it in state.items if it.score >= lam and it.label == "good")
        unsup = sum(1 for it in state.items if it.score >= lam and it.label == "unsupported")
        labeled = good + unsup
        rows.append(
            ThresholdRow(
                threshold=lam,
                good_count=good,
                unsupported_count=unsup,
                good_rate=good / labeled if labeled else None,
                corpus_size=sum(1 for s in state.pool_scores if s >= lam),
            )
        )
    return rows
