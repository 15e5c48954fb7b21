"""Command line front end: pf constant|table|sweep|check|oracle|mesh|assemble.

Exit codes: 0 success, 2 solver failure, 3 invariant-check violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness, io_utils
from .assembly import FeSpace, assemble_mass, assemble_stiffness
from .eigensolve import DEFAULT_TOL, EigenSolveError
from .harness import (
    KIND_SPACE,
    check_extended_inequalities,
    compute_constant,
    convergence_table,
    export_eigenfunction,
    get_mesh,
    monotonicity_sweep,
)
from .mesh import select_boundary
from .oracle import exact_lambda0, exact_lambda1_3d

EXIT_OK = 0
EXIT_SOLVER = 2
EXIT_INVARIANT = 3


def _parse_gamma(args):
    if getattr(args, "gamma_tau_facets", None):
        with open(args.gamma_tau_facets) as fh:
            return [int(tok) for tok in fh.read().split()]
    if args.gamma_tau:
        return [s for s in args.gamma_tau.split(",") if s]
    return None


def _add_common(p, kind=True):
    p.add_argument("--domain", default="square",
                   choices=["square", "lshape", "cube", "fichera"])
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--gamma-tau", default="",
                   help="comma-separated facet labels, e.g. b,l,k")
    p.add_argument("--gamma-tau-facets",
                   help="file with explicit boundary facet indices")
    if kind:
        p.add_argument("--kind", default="c0", choices=["c0", "c1", "c2"])
    p.add_argument("--solver", default="auto",
                   choices=["auto", "projected", "shift", "dense"])
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out")
    p.add_argument("--format", default="csv", choices=["csv", "json", "vtk"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pf",
        description="Poincare-Friedrichs, Maxwell, and divergence constants "
                    "on structured 2D/3D domains via lowest-order FEM.")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("constant", help="compute one constant"))

    p = sub.add_parser("table", help="convergence table of six constants")
    _add_common(p, kind=False)
    p.add_argument("--scenario", default="full", choices=["full", "mixed_b"])

    p = sub.add_parser("sweep", help="constants along a BFS boundary sweep")
    _add_common(p, kind=False)
    p.add_argument("--seed-facet", type=int)

    p = sub.add_parser("check", help="extended-inequality check on a sweep")
    _add_common(p, kind=False)
    p.add_argument("--seed-facet", type=int)
    p.add_argument("--delta", type=float, default=0.02,
                   help="relative discretization slack")

    p = sub.add_parser("oracle", help="closed-form eigenvalue and constant")
    p.add_argument("--dim", type=int, default=3, choices=[1, 2, 3])
    p.add_argument("--which", default="lambda0",
                   choices=["lambda0", "lambda1"])
    p.add_argument("--gamma-tau", default="")

    p = sub.add_parser("mesh", help="build a mesh and report entity counts")
    _add_common(p, kind=False)

    p = sub.add_parser("assemble", help="assemble and export K and M")
    _add_common(p)
    return parser


def _cmd_constant(args) -> int:
    rec = compute_constant(args.domain, args.level, args.kind,
                           _parse_gamma(args), solver=args.solver,
                           tol=args.tol)
    print(f"{args.kind}({harness.gamma_str(rec.gamma)}) on {args.domain} "
          f"level {args.level}: c = {rec.c:.8f}  lambda = {rec.lam:.8f}  "
          f"[{rec.result.method}]")
    if args.out:
        if args.format == "json":
            with open(args.out, "w") as fh:
                json.dump(rec.diagnostics_json(), fh, indent=2)
        elif args.format == "vtk":
            export_eigenfunction(rec, args.out)
        else:
            io_utils.write_csv(args.out,
                               ["domain", "level", "kind", "gamma", "c",
                                "lambda"],
                               [[rec.domain, rec.level, rec.constant_kind,
                                 harness.gamma_str(rec.gamma), rec.c,
                                 rec.lam]])
    return EXIT_OK


def _print_table(header, rows):
    widths = [max(len(str(h)), 12) for h in header]
    print("  ".join(str(h).rjust(w) for h, w in zip(header, widths)))
    for row in rows:
        cells = [io_utils.format_cell(v) if isinstance(v, float) else str(v)
                 for v in row]
        print("  ".join(c.rjust(w) for c, w in zip(cells, widths)))


def _cmd_table(args) -> int:
    table = convergence_table(args.domain, args.level,
                              scenario=args.scenario, solver=args.solver,
                              tol=args.tol)
    _print_table(table.header(), table.rows())
    if table.orders is not None:
        print("observed orders (per level step):")
        for i, row in enumerate(table.orders):
            print("  " + "  ".join(f"{v:12.3f}" for v in row))
    if args.out:
        table.to_csv(args.out)
    return EXIT_OK


def _cmd_sweep(args, report_delta=None) -> int:
    sweep = monotonicity_sweep(args.domain, args.level,
                               seed_facet=args.seed_facet,
                               solver=args.solver, tol=args.tol)
    if args.out:
        sweep.to_csv(args.out)
    print(f"sweep {args.domain} level {args.level}: {sweep.num_steps} steps, "
          f"{len(sweep.failures)} solver gaps")
    for step, key, msg in sweep.failures:
        print(f"  gap at step {step} ({key}): {msg}", file=sys.stderr)
    if report_delta is None:
        return EXIT_OK
    report = check_extended_inequalities(sweep, delta=report_delta)
    worst_lo = min((m["lower_rel"] for m in report.margins), default=0.0)
    worst_hi = min((m["upper_rel"] for m in report.margins), default=0.0)
    print(f"extended-inequality check: {report.checked_steps} steps checked, "
          f"{len(report.violations)} violations at delta={report.delta:g} "
          f"(worst margins: lower {worst_lo:+.3e}, upper {worst_hi:+.3e})")
    for v in report.violations:
        print(f"  violation at step {v['step']} ({v['which']}): "
              f"c1={v['c1']:.8f} outside [{v['lo']:.8f}, {v['hi']:.8f}]",
              file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_INVARIANT


def _cmd_oracle(args) -> int:
    gamma = [s for s in args.gamma_tau.split(",") if s]
    if args.which == "lambda1":
        if args.dim != 3:
            print("lambda1 oracle is 3D only", file=sys.stderr)
        val = exact_lambda1_3d(gamma)
    else:
        val = exact_lambda0(gamma, args.dim)
    print(f"lambda   = {val.symbolic()} = {val.lam:.8f}")
    print(f"lambda^2 = {val.q}*pi^2 = {val.lam_sq:.8f}")
    print(f"c = 1/lambda = {val.constant:.8f}")
    return EXIT_OK


def _cmd_mesh(args) -> int:
    mesh = get_mesh(args.domain, args.level)
    counts = {"nodes": mesh.num_nodes, "cells": mesh.num_cells,
              "edges": len(mesh.edges),
              "faces": None if mesh.faces is None else len(mesh.faces),
              "boundary_facets": len(mesh.boundary_facets)}
    print(f"{args.domain} level {args.level}: " + ", ".join(
        f"{k}={v}" for k, v in counts.items() if v is not None))
    if args.out:
        io_utils.write_vtk(args.out, mesh)
        io_utils.write_boundary_labels(args.out + ".labels", mesh)
    return EXIT_OK


def _cmd_assemble(args) -> int:
    mesh = get_mesh(args.domain, args.level)
    space = FeSpace(KIND_SPACE[args.kind], mesh)
    K, M = assemble_stiffness(space), assemble_mass(space)
    gamma = _parse_gamma(args)
    if gamma:
        from .assembly import restrict
        sel = select_boundary(mesh, gamma)
        K, _ = restrict(K, space, sel)
        M, _ = restrict(M, space, sel)
    print(f"{space.kind} pencil on {args.domain} level {args.level}: "
          f"n={K.shape[0]}, nnz(K)={K.nnz}, nnz(M)={M.nnz}")
    if args.out:
        io_utils.write_matrix_market(args.out + "_K.mtx", K)
        io_utils.write_matrix_market(args.out + "_M.mtx", M)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "constant":
            return _cmd_constant(args)
        if args.command == "table":
            return _cmd_table(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "check":
            return _cmd_sweep(args, report_delta=args.delta)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "mesh":
            return _cmd_mesh(args)
        if args.command == "assemble":
            return _cmd_assemble(args)
        raise AssertionError(args.command)
    except EigenSolveError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
