#!/usr/bin/env python3
"""Reproduce the convergence tables of the six constants on all four domains.

Writes one CSV per (domain, scenario) with a level column, six constant
columns, an exact-limit row where a closed form exists, and prints observed
convergence orders.

Example:
    python scripts/reproduce_tables.py --out-dir results --max-level-2d 5 \
        --max-level-3d 2
"""

import argparse
import pathlib
import time

from pfmax.harness import convergence_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--max-level-2d", type=int, default=5)
    ap.add_argument("--max-level-3d", type=int, default=2)
    ap.add_argument("--domains", nargs="*",
                    default=["square", "lshape", "cube", "fichera"])
    ap.add_argument("--scenarios", nargs="*", default=["full", "mixed_b"])
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for domain in args.domains:
        max_level = (args.max_level_2d if domain in ("square", "lshape")
                     else args.max_level_3d)
        for scenario in args.scenarios:
            t0 = time.time()
            table = convergence_table(domain, max_level, scenario=scenario)
            path = out / f"table_{domain}_{scenario}.csv"
            table.to_csv(path)
            print(f"{path}  ({time.time() - t0:.1f}s)")
            header = table.header()
            for row in table.rows():
                print("  " + "  ".join(f"{v:>12}" if isinstance(v, str)
                                       else f"{v:12.8f}" if isinstance(v, float)
                                       else f"{v:>12}" for v in row))
            if table.orders is not None:
                print("  observed orders per refinement step "
                      f"({'vs exact limit' if table.limits else 'Richardson'}):")
                for row in table.orders:
                    print("  " + "  ".join(f"{v:12.3f}" for v in row))
            print("  columns: " + "  ".join(header[1:]))


if __name__ == "__main__":
    main()
