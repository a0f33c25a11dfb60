#!/usr/bin/env python3
"""Regenerate the planted mini-dump fixture committed under tests/data/.

The construction (and its self-checks) lives in tests/minidump.py; this
script just rewrites the XML, the expected-pairs table, and optionally the
golden JSONL after an intentional fixture change.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--golden", action="store_true",
                        help="also regenerate the golden JSONL by running the miner")
    args = parser.parse_args()

    from minidump import build

    xml, planted = build()
    data = ROOT / "tests" / "data"
    (data / "minidump.xml").write_text(xml, "utf-8")
    rows = [
        {"page_id": p.page_id, "page_title": p.page_title, "new_rev_id": p.new_rev_id,
         "summary": p.sentence, "passage": p.passage,
         "score_num": p.score.numerator, "score_den": p.score.denominator}
        for p in planted
    ]
    (data / "minidump_expected.json").write_text(
        json.dumps(rows, indent=1, ensure_ascii=False), "utf-8"
    )
    kept = sum(1 for p in planted if p.score >= Fraction(3, 5))
    print(f"wrote minidump.xml ({len(planted)} planted pairs, {kept} at lambda>=0.6)")

    if args.golden:
        from revsum.cli import main as revsum_main

        rc = revsum_main(["mine", "--dump", str(data / "minidump.xml"), "--lambda", "0.6",
                          "--out", str(data / "minidump_golden.jsonl"), "--workers", "1"])
        if rc != 0:
            return rc
        (data / "minidump_golden.jsonl.manifest.json").unlink(missing_ok=True)
        print("regenerated minidump_golden.jsonl -- review the diff before committing")
    return 0


if __name__ == "__main__":
    sys.exit(main())
