"""Run the randomized suites over several seeds and summarise pass counts.

    python scripts/run_property_suite.py --seeds 1 2 3 --count 1000 [--out report.json]
"""

import argparse
import json
import time

from dimcalc.harness import GeneratorConfig, run_suites


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[42, 7, 1234])
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--max-tdeg", type=int, default=8)
    ap.add_argument("--out", help="write all reports as JSON here")
    args = ap.parse_args()

    reports = []
    for seed in args.seeds:
        start = time.perf_counter()
        rep = run_suites(GeneratorConfig(max_depth=args.depth, max_tdeg=args.max_tdeg,
                                         seed=seed, count=args.count))
        print(rep.render())
        print(f"  ({time.perf_counter() - start:.2f}s)\n")
        reports.append(rep)

    names = [r.name for r in reports[0].results]
    print("totals over seeds:")
    for i, name in enumerate(names):
        checked = sum(r.results[i].checked for r in reports)
        failed = sum(r.results[i].failed for r in reports)
        print(f"  {'FAIL' if failed else 'ok  '} {name}: {failed} failures in {checked}")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
