#!/usr/bin/env python3
"""Boundary-growth sweeps: all six constants along every prefix of a BFS
ordering of the boundary facets, plus the extended-inequality check

    min{hull} <= c1_tau, c1_nu <= max{hull},

where the hull collects both available discretizations of the two scalar
constants (nodal c0 of a part and facet c2 of its complement, equal in the
continuum), with a relative discretization slack delta.  Writes one CSV per
domain and prints the violation report.

Example:
    python scripts/run_sweeps.py --out-dir results --delta 0.02 \
        --cases square:3 cube:1
"""

import argparse
import pathlib
import time

from pfmax.harness import check_extended_inequalities, monotonicity_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--delta", type=float, default=0.02)
    ap.add_argument("--seed-facet", type=int, default=None)
    ap.add_argument("--cases", nargs="*",
                    default=["square:3", "lshape:3", "cube:1", "fichera:1"],
                    help="domain:level pairs")
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for case in args.cases:
        domain, level = case.split(":")
        t0 = time.time()
        sweep = monotonicity_sweep(domain, int(level),
                                   seed_facet=args.seed_facet)
        path = out / f"sweep_{domain}_L{level}.csv"
        sweep.to_csv(path)
        report = check_extended_inequalities(sweep, delta=args.delta)
        worst_lo = min((m["lower_rel"] for m in report.margins), default=0.0)
        worst_hi = min((m["upper_rel"] for m in report.margins), default=0.0)
        print(f"{path}: {sweep.num_steps} steps, {len(sweep.failures)} gaps, "
              f"{len(report.violations)} violations at delta={args.delta:g} "
              f"(worst margins lower {worst_lo:+.3e} upper {worst_hi:+.3e}) "
              f"({time.time() - t0:.0f}s)")
        for v in report.violations:
            print(f"  step {v['step']} {v['which']}: c1={v['c1']:.8f} "
                  f"outside [{v['lo']:.8f}, {v['hi']:.8f}]")


if __name__ == "__main__":
    main()
