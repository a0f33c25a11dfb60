#!/usr/bin/env python3
"""Build a candidate pool for audit demos: mined examples plus synthetic ones.

Synthetic items are generated from a word bank so that every stored score is
still the exact overlap rate of its own texts, while the pool-level score
distribution follows the quality-vs-size shape seen on full-scale runs
(roughly 14% of candidates in [0.5, 0.6), 27% in [0.6, 0.7), 58% above).
"""

import argparse
import random
import sys

from revsum.corpus import read_jsonl, write_jsonl
from revsum.mining import CorpusExample, example_id, overlap_score
from revsum.textproc import content_tokens

WORDS = [
    "granite", "quarry", "copper", "smelter", "ferry", "harbor", "viaduct", "kiln",
    "brewery", "lighthouse", "causeway", "millpond", "tannery", "foundry", "slate",
    "basalt", "amber", "wool", "flax", "barley", "cider", "vinegar", "turbine",
    "dynamo", "tramway", "drydock", "breakwater", "ledger", "archive", "chapel",
    "cloister", "charter", "guild", "mint", "coinage", "garrison", "rampart",
    "bastion", "armory", "granary", "orchard", "beacon", "dredger", "caisson",
    "pontoon", "winch", "crane", "gantry", "slipway", "mooring", "anchorage",
]

BUCKETS = [
    (0.50, 0.60, 0.144),
    (0.60, 0.70, 0.274),
    (0.70, 1.01, 0.582),
]


def synth_example(rng: random.Random, lo: float, hi: float, serial: int) -> CorpusExample:
    # choose k content words and share m of them so m/k lands in [lo, hi)
    while True:
        k = rng.randint(4, 12)
        candidates = [m for m in range(1, k + 1) if lo <= m / k < hi]
        if candidates:
            m = rng.choice(candidates)
            break
    words = rng.sample(WORDS, k)
    shared, private = words[:m], words[m:]
    fillers = rng.sample([w for w in WORDS if w not in words], 6)
    summary = "The " + " and the ".join(words) + " were there ."
    passage = (
        "The " + " and the ".join(shared + fillers[:3]) + " stood by the "
        + " and the ".join(fillers[3:]) + " ."
    )
    score = overlap_score(content_tokens(summary.split()), content_tokens(passage.split()))
    assert abs(score - m / k) < 1e-12, (score, m, k, private)
    return CorpusExample(
        id=example_id(900_000 + serial, serial, summary),
        page_id=900_000 + serial,
        page_title=f"Synthetic {serial}",
        old_rev_id=serial,
        new_rev_id=serial + 1,
        timestamp="2020-06-01T00:00:00Z",
        passage=passage,
        summary=summary,
        score=score,
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--base", help="mined JSONL to include as-is (optional)")
    parser.add_argument("--out", required=True)
    parser.add_argument("--n", type=int, default=500, help="synthetic examples to add")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    pool = list(read_jsonl(args.base)) if args.base else []
    serial = 0
    for lo, hi, fraction in BUCKETS:
        for _ in range(round(args.n * fraction)):
            pool.append(synth_example(rng, lo, hi, serial))
            serial += 1
    write_jsonl(args.out, pool)
    sizes = {lam: sum(1 for ex in pool if ex.score >= lam) for lam in (0.5, 0.6, 0.7)}
    print(f"wrote {len(pool)} candidates -> {args.out}; sizes at thresholds: {sizes}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
