#!/usr/bin/env python3
"""Run every verification suite and write one JSON report per suite.

Example:

    python3 scripts/run_verification.py --mode exact-forward --outdir reports/
"""

import argparse
import pathlib
import sys

from kgconformal.diffengine import DiffConfig, MODE_EXACT, MODE_STENCIL
from kgconformal.harness import SUITES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mode", choices=(MODE_EXACT, MODE_STENCIL), default=MODE_EXACT)
    ap.add_argument("--outdir", default="reports")
    ap.add_argument("--nmax", type=int, default=4, help="oscillator cutoff")
    ap.add_argument("--n-fields", type=int, default=100, dest="n_fields")
    ap.add_argument("--timing", action="store_true", help="keep wall times in the JSON")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    cfg = DiffConfig(mode=args.mode)

    params_by_suite = {
        "oscillator-x": {"nmax": args.nmax},
        "oscillator-z": {"nmax": args.nmax},
        "ladder": {"nmax": args.nmax},
        "operator-identities": {"n_fields": args.n_fields},
    }

    all_ok = True
    for suite in SUITES:
        report = run_suite(suite, params_by_suite.get(suite, {}), cfg)
        wall = report.wall_ms
        if args.mode == MODE_EXACT and not args.timing:
            report = report.with_wall_ms(0.0)
        path = outdir / f"{suite}.json"
        path.write_text(report.to_json())
        n_probe = sum(1 for c in report.cases if c.is_probe)
        status = "pass" if report.passed else "FAIL"
        print(f"{suite:22s} {status:4s}  cases={len(report.cases):3d} "
              f"probes={n_probe}  wall={wall:8.1f} ms  -> {path}")
        all_ok &= report.passed
    print("overall:", "pass" if all_ok else "FAIL")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
