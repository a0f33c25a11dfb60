"""End-to-end mining orchestration: ingest, mine, dedup, order, write, manifest.

Pages are independent work units, so mining can fan out over a process pool;
output order is made deterministic by sorting kept examples by
(page_id, new_rev_id, sentence position) regardless of worker count.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .corpus import dedup, write_jsonl, write_sharded
from .ingest import IngestPolicy, filter_page, open_dump
from .mining import CorpusExample, MinerConfig, MiningEvents, mine_page
from .textproc import NonbreakingPrefixes, StopwordList
from .wikitext import ParseConfig

__all__ = ["PipelineConfig", "mine_dump", "run_mine"]


@dataclass(frozen=True)
class PipelineConfig:
    miner: MinerConfig = field(default_factory=MinerConfig)
    parse: ParseConfig = field(default_factory=ParseConfig)
    policy: IngestPolicy = field(default_factory=IngestPolicy)
    stopwords_path: str | None = None
    prefixes_path: str | None = None
    compression: str = "auto"
    workers: int = 1
    shards: int = 1
    seed: int = 0

    def load_stopwords(self) -> StopwordList:
        if self.stopwords_path:
            return StopwordList.from_file(self.stopwords_path)
        return StopwordList.builtin()

    def load_prefixes(self) -> NonbreakingPrefixes:
        if self.prefixes_path:
            return NonbreakingPrefixes.from_file(self.prefixes_path)
        return NonbreakingPrefixes.builtin()


_worker_ctx: dict = {}


def _init_worker(cfg: PipelineConfig) -> None:
    _worker_ctx["cfg"] = cfg
    _worker_ctx["stopwords"] = cfg.load_stopwords()
    _worker_ctx["prefixes"] = cfg.load_prefixes()


def _mine_one(page) -> tuple[list[CorpusExample], dict[str, int]]:
    cfg: PipelineConfig = _worker_ctx["cfg"]
    events = MiningEvents()
    examples = mine_page(
        page,
        stopwords=_worker_ctx["stopwords"],
        config=cfg.miner,
        parse_config=cfg.parse,
        prefixes=_worker_ctx["prefixes"],
        events=events,
    )
    return examples, dict(events.counts)


def mine_dump(dump_path, cfg: PipelineConfig) -> tuple[list[CorpusExample], MiningEvents]:
    """Mine one dump into deduplicated, deterministically ordered examples."""
    events = MiningEvents()
    kept_pages = []
    examples: list[CorpusExample] = []

    def consume(result):
        page_examples, counts = result
        examples.extend(page_examples)
        events.counts.update(counts)

    pages = open_dump(dump_path, cfg.compression)
    if cfg.workers > 1:
        def kept_stream():
            for page in pages:
                events.bump("pages_seen")
                if filter_page(page, cfg.policy):
                    events.bump("pages_kept")
                    yield page
        with multiprocessing.Pool(cfg.workers, initializer=_init_worker, initargs=(cfg,)) as pool:
            for result in pool.imap(_mine_one, kept_stream(), chunksize=4):
                consume(result)
    else:
        _init_worker(cfg)
        for page in pages:
            events.bump("pages_seen")
            if not filter_page(page, cfg.policy):
                continue
            events.bump("pages_kept")
            consume(_mine_one(page))

    before = len(examples)
    examples = dedup(examples)
    events.bump("duplicates_removed", before - len(examples))
    examples.sort(key=lambda ex: (ex.page_id, ex.new_rev_id, ex.sentence_index))
    return examples, events


def _sha256_head(path, limit: int = 65536) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        digest.update(f.read(limit))
    return digest.hexdigest()


def _resource_identity(path: str | None, builtin_name: str) -> dict:
    if path:
        data = Path(path).read_bytes()
        source = str(path)
    else:
        data = (resources.files("revsum") / f"resources/{builtin_name}").read_bytes()
        source = "builtin"
    return {"source": source, "sha256": hashlib.sha256(data).hexdigest()}


def build_manifest(dump_path, cfg: PipelineConfig, events: MiningEvents, written: int,
                   wall_time_s: float) -> dict:
    counts = events.as_dict()
    skips = {k: v for k, v in counts.items() if k.startswith("skip_")}
    return {
        "tool": {"name": "revsum", "version": __version__},
        "config": {
            "lambda": cfg.miner.threshold,
            "min_summary_content_tokens": cfg.miner.min_summary_content_tokens,
            "max_summary_tokens": cfg.miner.max_summary_tokens,
            "tie_break": cfg.miner.tie_break,
            "min_passage_chars": cfg.parse.min_passage_chars,
            "allowed_namespaces": sorted(cfg.policy.allowed_namespaces),
            "keep_redirects": cfg.policy.keep_redirects,
            "compression": cfg.compression,
            "workers": cfg.workers,
            "shards": cfg.shards,
            "seed": cfg.seed,
            "stopwords": _resource_identity(cfg.stopwords_path, "stopwords_en.txt"),
            "prefixes": _resource_identity(cfg.prefixes_path, "nonbreaking_prefixes_en.txt"),
        },
        "input": {
            "path": str(dump_path),
            "bytes": Path(dump_path).stat().st_size,
            "sha256_first_64k": _sha256_head(dump_path),
        },
        "counts": {
            "pages_seen": counts.get("pages_seen", 0),
            "pages_kept": counts.get("pages_kept", 0),
            "revision_pairs": counts.get("revision_pairs", 0),
            "sentences_seen": counts.get("sentences_seen", 0),
            "candidates": counts.get("candidates_scored", 0),
            "pairs_kept": counts.get("pairs_kept", 0),
            "duplicates_removed": counts.get("duplicates_removed", 0),
            "examples_written": written,
            "skips": skips,
        },
        "wall_time_s": wall_time_s,
    }


def run_mine(dump_path, out_path, cfg: PipelineConfig) -> dict:
    """Full mine command: returns the manifest after writing output files."""
    start = time.monotonic()
    examples, events = mine_dump(dump_path, cfg)
    out_path = Path(out_path)
    if cfg.shards > 1:
        write_sharded(out_path, examples, cfg.shards)
        written = len(examples)
        manifest_path = out_path / "manifest.json"
    else:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        written = write_jsonl(out_path, examples)
        manifest_path = out_path.with_suffix(out_path.suffix + ".manifest.json")
    manifest = build_manifest(dump_path, cfg, events, written, time.monotonic() - start)
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", "utf-8")
    return manifest
