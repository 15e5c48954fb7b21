#!/usr/bin/env python3
"""Export eigenfunctions of the three constants to legacy VTK for inspection
(P1 as nodal scalars, edge/facet fields as per-cell vectors).

Example:
    python scripts/export_fields.py --domain lshape --level 3 --gamma-tau b
"""

import argparse
import pathlib

from pfmax.harness import compute_constant, export_eigenfunction, gamma_str


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--domain", default="square",
                    choices=["square", "lshape", "cube", "fichera"])
    ap.add_argument("--level", type=int, default=2)
    ap.add_argument("--gamma-tau", default="",
                    help="comma-separated facet labels")
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()

    gamma = [s for s in args.gamma_tau.split(",") if s] or None
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for kind in ("c0", "c1", "c2"):
        rec = compute_constant(args.domain, args.level, kind, gamma)
        path = out / (f"{kind}_{args.domain}_L{args.level}_"
                      f"{gamma_str(rec.gamma).replace(',', '') or 'none'}.vtk")
        export_eigenfunction(rec, path)
        print(f"{path}: c = {rec.c:.8f} (lambda = {rec.lam:.8f}, "
              f"{rec.result.method})")


if __name__ == "__main__":
    main()
