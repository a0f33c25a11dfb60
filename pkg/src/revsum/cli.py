"""Command-line entry point: mine, split, stats, eval, sample, serve.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .audit import AuditState, sample_candidates, threshold_report
from .corpus import SplitSpec, corpus_stats, read_jsonl, split_corpus, write_jsonl
from .evaluate import EvalConfig, evaluate, lead1, textrank
from .ingest import ConfigurationError, IngestError
from .mining import MinerConfig
from .pipeline import PipelineConfig, run_mine
from .textproc import StopwordList, split_sentences, tokenize
from .wikitext import ParseConfig

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _fail(message: str, code: int) -> int:
    print(f"revsum: {message}", file=sys.stderr)
    return code


def _emit(payload: dict, as_json: bool, text: str | None = None) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif text is not None:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revsum", description=__doc__)
    parser.add_argument("--version", action="version", version=f"revsum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    mine = sub.add_parser("mine", help="mine passage-summary pairs from a history dump")
    mine.add_argument("--dump", required=True, help="pages-meta-history XML export")
    mine.add_argument("--compression", choices=["auto", "none", "bz2", "gz"], default="auto")
    mine.add_argument("--lambda", dest="threshold", type=float, default=0.6,
                      help="minimum overlap rate for keeping a pair (default 0.6)")
    mine.add_argument("--min-summary-tokens", type=int, default=3,
                      help="minimum content tokens per summary sentence; 0 disables")
    mine.add_argument("--max-summary-tokens", type=int, default=120,
                      help="maximum tokens per summary sentence; 0 disables")
    mine.add_argument("--min-passage-chars", type=int, default=40)
    mine.add_argument("--stopwords", metavar="FILE", help="override builtin stopword list")
    mine.add_argument("--prefixes", metavar="FILE", help="override builtin non-breaking prefixes")
    mine.add_argument("--out", required=True, help="output JSONL path (directory when sharded)")
    mine.add_argument("--shards", type=int, default=1)
    mine.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    mine.add_argument("--seed", type=int, default=0)
    mine.add_argument("--json", action="store_true", help="print the manifest as JSON")

    split = sub.add_parser("split", help="seeded train/valid/test split")
    split.add_argument("--data", required=True)
    split.add_argument("--out-dir", required=True)
    split.add_argument("--valid", type=int, default=4000)
    split.add_argument("--test", type=int, default=4000)
    split.add_argument("--seed", type=int, default=0)
    split.add_argument("--json", action="store_true")

    stats = sub.add_parser("stats", help="corpus statistics (Table-style averages)")
    stats.add_argument("--data", required=True)
    stats.add_argument("--seed", type=int, default=0)
    stats.add_argument("--json", action="store_true")

    ev = sub.add_parser("eval", help="ROUGE evaluation of a baseline or summary file")
    ev.add_argument("--data", required=True, help="JSONL with passage and reference summary")
    ev.add_argument("--system", default="lead1",
                    help="lead1, textrank, or a file with one summary per line")
    ev.add_argument("--references", metavar="FILE",
                    help="plain-text references (one per line) instead of --data summaries")
    ev.add_argument("--bootstrap", type=int, default=1000)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--json", action="store_true")

    sample = sub.add_parser("sample", help="draw an audit sample from a candidate pool")
    sample.add_argument("--pool", required=True, help="candidate JSONL mined at a low lambda")
    sample.add_argument("--n", type=int, default=50)
    sample.add_argument("--state", required=True, help="audit state file to create")
    sample.add_argument("--stratified", action="store_true")
    sample.add_argument("--stopwords", metavar="FILE")
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--json", action="store_true")

    serve = sub.add_parser("serve", help="serve the audit API (and UI bundle, if built)")
    serve.add_argument("--state", required=True)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8008)
    serve.add_argument("--ui", metavar="DIR", help="static UI bundle directory")
    serve.add_argument("--seed", type=int, default=0)
    serve.add_argument("--json", action="store_true")

    report = sub.add_parser("report", help="print the threshold trade-off table")
    report.add_argument("--state", required=True)
    report.add_argument("--lambdas", default="0.5,0.6,0.7")
    report.add_argument("--seed", type=int, default=0)
    report.add_argument("--json", action="store_true")

    return parser


def cmd_mine(args) -> int:
    if not 0.0 <= args.threshold <= 1.0:
        return _fail(f"--lambda must be in [0, 1], got {args.threshold}", EXIT_USAGE)
    if args.shards < 1:
        return _fail(f"--shards must be >= 1, got {args.shards}", EXIT_USAGE)
    if args.workers < 1:
        return _fail(f"--workers must be >= 1, got {args.workers}", EXIT_USAGE)
    if not Path(args.dump).exists():
        return _fail(f"dump not found: {args.dump}", EXIT_USAGE)
    cfg = PipelineConfig(
        miner=MinerConfig(
            threshold=args.threshold,
            min_summary_content_tokens=args.min_summary_tokens or None,
            max_summary_tokens=args.max_summary_tokens or None,
        ),
        parse=ParseConfig(min_passage_chars=args.min_passage_chars),
        stopwords_path=args.stopwords,
        prefixes_path=args.prefixes,
        compression=args.compression,
        workers=args.workers,
        shards=args.shards,
        seed=args.seed,
    )
    try:
        manifest = run_mine(args.dump, args.out, cfg)
    except (IngestError, ConfigurationError, OSError) as exc:
        return _fail(str(exc), EXIT_RUNTIME)
    counts = manifest["counts"]
    _emit(manifest, args.json,
          f"mined {counts['examples_written']} examples "
          f"({counts['pages_kept']}/{counts['pages_seen']} pages, "
          f"{counts['revision_pairs']} revision pairs) -> {args.out}")
    return EXIT_OK


def cmd_split(args) -> int:
    try:
        examples = read_jsonl(args.data)
        train, valid, test = split_corpus(
            examples, SplitSpec(valid_size=args.valid, test_size=args.test, seed=args.seed)
        )
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc), EXIT_RUNTIME)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sizes = {}
    for name, part in (("train", train), ("valid", valid), ("test", test)):
        sizes[name] = write_jsonl(out_dir / f"{name}.jsonl", part)
    _emit({"sizes": sizes, "seed": args.seed}, args.json,
          f"split {len(examples)} examples -> " +
          ", ".join(f"{k}={v}" for k, v in sizes.items()))
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        stats = corpus_stats(read_jsonl(args.data))
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc), EXIT_RUNTIME)
    text = (
        f"examples:             {stats.example_count}\n"
        f"avg input sentences:  {stats.avg_input_sentences:.2f}\n"
        f"avg input words:      {stats.avg_input_words:.2f}\n"
        f"avg output sentences: {stats.avg_output_sentences:.2f}\n"
        f"avg output words:     {stats.avg_output_words:.2f}"
    )
    _emit(stats.as_dict(), args.json, text)
    return EXIT_OK


def _system_summaries(args, examples) -> list[str]:
    name = args.system
    if name in ("lead1", "textrank"):
        out = []
        for ex in examples:
            sentences = split_sentences(ex.passage)
            if not sentences:
                sentences = [ex.passage]
            if name == "lead1":
                out.append(lead1(sentences))
            else:
                tokenized = [tokenize(s) for s in sentences]
                out.append(" ".join(textrank(tokenized, seed=args.seed)))
        return out
    path = Path(name)
    if not path.exists():
        raise ValueError(f"--system must be lead1, textrank, or a file; got {name!r}")
    return path.read_text("utf-8").splitlines()


def cmd_eval(args) -> int:
    try:
        examples = read_jsonl(args.data)
        references = (
            Path(args.references).read_text("utf-8").splitlines()
            if args.references
            else [ex.summary for ex in examples]
        )
        systems = _system_summaries(args, examples)
        report = evaluate(
            systems,
            references,
            EvalConfig(bootstrap_samples=args.bootstrap, seed=args.seed),
        )
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc), EXIT_RUNTIME)
    _emit(report.as_dict(), args.json, report.format_table())
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.n <= 0:
        return _fail(f"--n must be positive, got {args.n}", EXIT_USAGE)
    try:
        pool = read_jsonl(args.pool)
        stopwords = StopwordList.from_file(args.stopwords) if args.stopwords else None
        state = sample_candidates(
            pool, n=args.n, seed=args.seed, stopwords=stopwords,
            stratified=args.stratified, pool_path=str(args.pool),
        )
        state.save(args.state)
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc), EXIT_RUNTIME)
    _emit(
        {"items": len(state.items), "pool_size": len(state.pool_scores), "state": args.state},
        args.json,
        f"sampled {len(state.items)} of {len(state.pool_scores)} candidates -> {args.state}",
    )
    return EXIT_OK


def cmd_serve(args) -> int:
    from .server import serve

    if not Path(args.state).exists():
        return _fail(f"state file not found: {args.state}", EXIT_USAGE)
    _emit({"host": args.host, "port": args.port, "state": args.state}, args.json,
          f"serving audit session {args.state} on http://{args.host}:{args.port}")
    try:
        serve(args.state, host=args.host, port=args.port, ui_dir=args.ui)
    except OSError as exc:
        return _fail(str(exc), EXIT_RUNTIME)
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        lambdas = tuple(float(x) for x in args.lambdas.split(",") if x.strip())
        rows = threshold_report(AuditState.load(args.state), lambdas)
    except (OSError, ValueError, KeyError) as exc:
        return _fail(str(exc), EXIT_RUNTIME)
    lines = [f"{'lambda':>7} {'good':>6} {'unsup':>6} {'rate':>7} {'size':>9}"]
    for row in rows:
        rate = f"{row.good_rate:.0%}" if row.good_rate is not None else "-"
        lines.append(
            f"{row.threshold:>7.2f} {row.good_count:>6} {row.unsupported_count:>6} "
            f"{rate:>7} {row.corpus_size:>9}"
        )
    _emit({"rows": [r.as_dict() for r in rows]}, args.json, "\n".join(lines))
    return EXIT_OK


_COMMANDS = {
    "mine": cmd_mine,
    "split": cmd_split,
    "stats": cmd_stats,
    "eval": cmd_eval,
    "sample": cmd_sample,
    "serve": cmd_serve,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
