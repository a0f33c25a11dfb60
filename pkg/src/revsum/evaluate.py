"""Self-contained ROUGE scorer with bootstrap CIs, plus extractive baselines.

ROUGE-N uses multiset-clipped n-gram counts; ROUGE-L uses the standard LCS
dynamic program. No stemming and no stopword removal are applied; tokens are
lowercased before matching. F scores use beta = 1 (harmonic mean).
Confidence intervals come from percentile bootstrap over example indices.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "RougeTriple",
    "MetricSummary",
    "RougeReport",
    "EvalConfig",
    "rouge_n",
    "rouge_l",
    "bootstrap_ci",
    "lead1",
    "textrank",
    "sentence_similarity",
    "pagerank_scores",
    "evaluate",
]

F_BETA = 1.0
DAMPING = 0.85
PAGERANK_TOL = 1e-6
PAGERANK_MAX_ITER = 100


@dataclass(frozen=True)
class RougeTriple:
    recall: float
    precision: float
    f1: float


def _f_score(recall: float, precision: float, beta: float = F_BETA) -> float:
    denom = recall + beta * beta * precision
    if denom == 0.0:
        return 0.0
    return (1.0 + beta * beta) * precision * recall / denom


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeTriple:
    """Clipped n-gram overlap recall/precision/F1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    cand = _ngrams(candidate, n)
    ref = _ngrams(reference, n)
    overlap = sum((cand & ref).values())
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    recall = overlap / ref_total if ref_total else 0.0
    precision = overlap / cand_total if cand_total else 0.0
    return RougeTriple(recall, precision, _f_score(recall, precision))


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> RougeTriple:
    """LCS-based recall/precision/F1 over whole token sequences."""
    lcs = _lcs_length(candidate, reference)
    recall = lcs / len(reference) if reference else 0.0
    precision = lcs / len(candidate) if candidate else 0.0
    return RougeTriple(recall, precision, _f_score(recall, precision))


def bootstrap_ci(
    per_example_scores: Sequence[float],
    samples: int = 1000,
    level: float = 0.95,
    seed: int = 0,
) -> tuple[float, float, float]:
    """(mean, lo, hi): percentile bootstrap over resampled example means."""
    scores = np.asarray(per_example_scores, dtype=float)
    if scores.size == 0:
        raise ValueError("cannot bootstrap an empty score list")
    mean = float(scores.mean())
    if scores.size == 1:
        return mean, mean, mean
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, scores.size, size=(samples, scores.size))
    means = scores[idx].mean(axis=1)
    tail = (1.0 - level) / 2.0 * 100.0
    lo, hi = np.percentile(means, [tail, 100.0 - tail])
    return mean, float(lo), float(hi)


def lead1(passage_sentences: Sequence[str]) -> str:
    """First sentence of the passage."""
    if not passage_sentences:
        raise ValueError("empty passage")
    return passage_sentences[0]


def sentence_similarity(a: Sequence[str], b: Sequence[str]) -> float:
    """Shared distinct content words over summed log sentence lengths."""
    if len(a) < 2 or len(b) < 2:
        return 0.0
    words_a = {t.lower() for t in a if any(ch.isalnum() for ch in t)}
    words_b = {t.lower() for t in b if any(ch.isalnum() for ch in t)}
    shared = len(words_a & words_b)
    if shared == 0:
        return 0.0
    return shared / (math.log(len(a)) + math.log(len(b)))


def pagerank_scores(
    sentences: Sequence[Sequence[str]],
    damping: float = DAMPING,
    tol: float = PAGERANK_TOL,
    max_iter: int = PAGERANK_MAX_ITER,
) -> list[float]:
    """Damped PageRank over the sentence-similarity graph."""
    n = len(sentences)
    weights = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            weights[i, j] = weights[j, i] = sentence_similarity(sentences[i], sentences[j])
    out_sums = weights.sum(axis=1)
    transfer = np.zeros((n, n))
    for j in range(n):
        if out_sums[j] > 0.0:
            transfer[:, j] = weights[:, j] / out_sums[j]
    scores = np.ones(n)
    for _ in range(max_iter):
        updated = (1.0 - damping) + damping * transfer.dot(scores)
        delta = np.abs(updated - scores).max()
        scores = updated
        if delta < tol:
            break
    return scores.tolist()


def textrank(passage_sentences: Sequence[Sequence[str]], seed: int = 0):
    """Top-ranked sentence; passages under three sentences fall back to a
    seeded uniform random pick."""
    if not passage_sentences:
        raise ValueError("empty passage")
    if len(passage_sentences) < 3:
        pick = random.Random(seed).randrange(len(passage_sentences))
        return passage_sentences[pick]
    ranks = pagerank_scores(passage_sentences)
    best = max(range(len(ranks)), key=lambda i: (ranks[i], -i))
    return passage_sentences[best]


@dataclass(frozen=True)
class EvalConfig:
    bootstrap_samples: int = 1000
    ci_level: float = 0.95
    seed: int = 0


@dataclass(frozen=True)
class MetricSummary:
    mean: RougeTriple
    recall_ci: tuple[float, float]
    precision_ci: tuple[float, float]
    f1_ci: tuple[float, float]

    def as_dict(self) -> dict:
        return {
            "recall": self.mean.recall,
            "precision": self.mean.precision,
            "f1": self.mean.f1,
            "recall_ci": list(self.recall_ci),
            "precision_ci": list(self.precision_ci),
            "f1_ci": list(self.f1_ci),
        }


@dataclass(frozen=True)
class RougeReport:
    n_examples: int
    bootstrap_samples: int
    metrics: dict[str, MetricSummary] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "n_examples": self.n_examples,
            "bootstrap_samples": self.bootstrap_samples,
            "metrics": {name: summary.as_dict() for name, summary in self.metrics.items()},
        }

    def format_table(self) -> str:
        header = f"{'metric':<8} {'R':>7} {'P':>7} {'F1':>7}   95% CI (F1)"
        rows = [header, "-" * len(header)]
        for name, s in self.metrics.items():
            rows.append(
                f"{name:<8} {100 * s.mean.recall:7.2f} {100 * s.mean.precision:7.2f} "
                f"{100 * s.mean.f1:7.2f}   [{100 * s.f1_ci[0]:.2f}, {100 * s.f1_ci[1]:.2f}]"
            )
        rows.append(f"examples: {self.n_examples}, bootstrap samples: {self.bootstrap_samples}")
        return "\n".join(rows)


def _tokens(text: str) -> list[str]:
    return [t.lower() for t in text.split()]


def evaluate(
    system_summaries: Sequence[str],
    references: Sequence[str],
    config: EvalConfig | None = None,
) -> RougeReport:
    """Corpus-level ROUGE-1/2/L report with bootstrap CIs for all nine cells."""
    if config is None:
        config = EvalConfig()
    if len(system_summaries) != len(references):
        raise ValueError(
            f"system/reference length mismatch: {len(system_summaries)} vs {len(references)}"
        )
    if not system_summaries:
        raise ValueError("nothing to evaluate")

    scorers = {
        "rouge1": lambda c, r: rouge_n(c, r, 1),
        "rouge2": lambda c, r: rouge_n(c, r, 2),
        "rougeL": rouge_l,
    }
    metrics: dict[str, MetricSummary] = {}
    for name, scorer in scorers.items():
        triples = [
            scorer(_tokens(sys), _tokens(ref))
            for sys, ref in zip(system_summaries, references)
        ]
        cis = {}
        means = {}
        for part in ("recall", "precision", "f1"):
            mean, lo, hi = bootstrap_ci(
                [getattr(t, part) for t in triples],
                samples=config.bootstrap_samples,
                level=config.ci_level,
                seed=config.seed,
            )
            means[part] = mean
            cis[part] = (lo, hi)
        metrics[name] = MetricSummary(
            mean=RougeTriple(means["recall"], means["precision"], means["f1"]),
            recall_ci=cis["recall"],
            precision_ci=cis["precision"],
            f1_ci=cis["f1"],
        )
    return RougeReport(
        n_examples=len(system_summaries),
        bootstrap_samples=config.bootstrap_samples,
        metrics=metrics,
    )
