"""Corpus persistence: dedup, JSONL read/write, splitting, and statistics."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .mining import CorpusExample
from .textproc import split_sentences

__all__ = [
    "SplitSpec",
    "CorpusStats",
    "JsonlWriteError",
    "dedup",
    "write_jsonl",
    "read_jsonl",
    "write_sharded",
    "shard_of",
    "split_corpus",
    "corpus_stats",
]

JSONL_FIELDS = (
    "id",
    "page_id",
    "page_title",
    "old_rev_id",
    "new_rev_id",
    "timestamp",
    "passage",
    "summary",
    "score",
)


class JsonlWriteError(OSError):
    """Sink write failure; ``written`` is how many examples made it out."""

    def __init__(self, written: int, cause: Exception):
        super().__init__(f"write failed after {written} examples: {cause}")
        self.written = written


@dataclass(frozen=True)
class SplitSpec:
    valid_size: int = 4000
    test_size: int = 4000
    seed: int = 0


@dataclass(frozen=True)
class CorpusStats:
    example_count: int
    avg_input_sentences: float
    avg_input_words: float
    avg_output_sentences: float
    avg_output_words: float

    def as_dict(self) -> dict:
        return {
            "example_count": self.example_count,
            "avg_input_sentences": self.avg_input_sentences,
            "avg_input_words": self.avg_input_words,
            "avg_output_sentences": self.avg_output_sentences,
            "avg_output_words": self.avg_output_words,
        }


def _dedup_key(example: CorpusExample) -> tuple[str, str]:
    return (" ".join(example.passage.split()), " ".join(example.summary.split()))


def dedup(examples: Iterable[CorpusExample]) -> list[CorpusExample]:
    """One survivor per (passage, summary) key: the earliest (timestamp, rev id)."""
    best: dict[tuple[str, str], CorpusExample] = {}
    for ex in examples:
        key = _dedup_key(ex)
        cur = best.get(key)
        if cur is None or (ex.timestamp, ex.new_rev_id) < (cur.timestamp, cur.new_rev_id):
            best[key] = ex
    return list(best.values())


def _to_record(example: CorpusExample) -> dict:
    return {name: getattr(example, name) for name in JSONL_FIELDS}


def write_jsonl(sink, examples: Iterable[CorpusExample]) -> int:
    """Write one UTF-8 JSON object per line; returns the number written."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as f:
            return write_jsonl(f, examples)
    written = 0
    for ex in examples:
        line = json.dumps(_to_record(ex), ensure_ascii=False)
        try:
            sink.write(line + "\n")
        except OSError as exc:
            raise JsonlWriteError(written, exc) from exc
        written += 1
    return written


def _from_record(record: dict) -> CorpusExample:
    return CorpusExample(**{name: record[name] for name in JSONL_FIELDS})


def read_jsonl(source) -> list[CorpusExample]:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as f:
            return read_jsonl(f)
    return [_from_record(json.loads(line)) for line in source if line.strip()]


def shard_of(example_id: str, shards: int) -> int:
    digest = hashlib.sha1(example_id.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % shards


def write_sharded(out_dir, examples: Sequence[CorpusExample], shards: int) -> list[Path]:
    """Route examples into part-%05d.jsonl files by stable hash of id."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    buckets: list[list[CorpusExample]] = [[] for _ in range(shards)]
    for ex in examples:
        buckets[shard_of(ex.id, shards)].append(ex)
    paths = []
    for idx, bucket in enumerate(buckets):
        path = out_dir / f"part-{idx:05d}.jsonl"
        write_jsonl(path, bucket)
        paths.append(path)
    return paths


def split_corpus(
    examples: Sequence[CorpusExample], spec: SplitSpec
) -> tuple[list[CorpusExample], list[CorpusExample], list[CorpusExample]]:
    """Seeded shuffle, then carve test off the end and valid before it."""
    required = spec.valid_size + spec.test_size + 1
    if len(examples) < required:
        raise ValueError(
            f"corpus too small to split: need at least {required} examples "
            f"for valid={spec.valid_size} test={spec.test_size}, got {len(examples)}"
        )
    shuffled = list(examples)
    random.Random(spec.seed).shuffle(shuffled)
    cut_test = len(shuffled) - spec.test_size
    cut_valid = cut_test - spec.valid_size
    return shuffled[:cut_valid], shuffled[cut_valid:cut_test], shuffled[cut_test:]


def corpus_stats(examples: Sequence[CorpusExample]) -> CorpusStats:
    """Table-style averages; lengths are re-measured from the stored text."""
    n = len(examples)
    if n == 0:
        return CorpusStats(0, 0.0, 0.0, 0.0, 0.0)
    in_sents = in_words = out_sents = out_words = 0
    for ex in examples:
        in_sents += len(split_sentences(ex.passage))
        in_words += len(ex.passage.split())
        out_sents += len(split_sentences(ex.summary))
        out_words += len(ex.summary.split())
    return CorpusStats(
        example_count=n,
        avg_input_sentences=in_sents / n,
        avg_input_words=in_words / n,
        avg_output_sentences=out_sents / n,
        avg_output_words=out_words / n,
    )
