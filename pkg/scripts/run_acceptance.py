#!/usr/bin/env python3
"""Run the acceptance criteria and print one PASS/FAIL line each.

    python3 scripts/run_acceptance.py            # all ten
    python3 scripts/run_acceptance.py 2 5 9      # a subset
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import test_acceptance as acc  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("criteria", nargs="*", type=int, default=list(acc.CRITERIA))
    args = ap.parse_args()
    failed = 0
    for i in args.criteria:
        if i not in acc.CRITERIA:
            ap.error(f"no criterion {i}")
        out = acc.run(i)
        failed += not out.ok
        print(acc.line(i, out, acc.RESULTS[i][1]), flush=True)
    print(f"{len(args.criteria) - failed}/{len(args.criteria)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
