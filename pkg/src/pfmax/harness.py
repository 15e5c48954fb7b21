"""End-to-end orchestration: compute a single constant, reproduce the
convergence tables, run boundary-growth sweeps, check the extended
inequalities, and export artifacts.

Constant naming: c0 (Poincare-Friedrichs, P1 space, node constraints),
c1 (Maxwell, Nedelec space, edge constraints), c2 (divergence,
Raviart-Thomas space, facet constraints).  The gamma argument of a constant
is always the subscript of the constant, i.e. the boundary part on which the
relevant trace is constrained to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import io_utils
from .assembly import (
    FeSpace,
    assemble_mass,
    assemble_stiffness,
    evaluate_at_barycenters,
    restrict,
)
from .eigensolve import (
    DEFAULT_TOL,
    EigenResult,
    EigenSolveError,
    smallest_positive_dense,
    smallest_positive_lowest_k,
    smallest_positive_projected,
    smallest_positive_shift_invert,
)
from .mesh import (
    LABELS_2D,
    LABELS_3D,
    BoundarySelection,
    Mesh,
    bfs_boundary_order,
    build_domain,
    classify_boundary,
    select_boundary,
)
from .oracle import AXIS_FACES, PiValue, exact_lambda0, exact_lambda1_3d

KIND_SPACE = {"c0": "P1", "c1": "N", "c2": "RT"}
PROJECTED_DOF_LIMIT = 5000
ORACLE_DOMAINS = {"square": 2, "cube": 3}  # closed-form limits exist

SWEEP_KEYS = ("c0_tau", "c0_nu", "c1_tau", "c1_nu", "c2_tau", "c2_nu")

_MESH_CACHE: dict = {}
_MATRIX_CACHE: dict = {}
_RECORD_CACHE: dict = {}


def clear_caches():
    _MESH_CACHE.clear()
    _MATRIX_CACHE.clear()
    _RECORD_CACHE.clear()


def get_mesh(domain: str, level: int) -> Mesh:
    key = (domain, level)
    if key not in _MESH_CACHE:
        _MESH_CACHE[key] = build_domain(domain, level)
    return _MESH_CACHE[key]


def get_pencil(domain: str, level: int, space_kind: str):
    """Unrestricted (K, M, space) for a cached mesh."""
    key = (domain, level, space_kind)
    if key not in _MATRIX_CACHE:
        space = FeSpace(space_kind, get_mesh(domain, level))
        _MATRIX_CACHE[key] = (assemble_stiffness(space),
                              assemble_mass(space), space)
    return _MATRIX_CACHE[key]


def _gamma_key(gamma):
    if gamma is None:
        return frozenset()
    items = list(gamma)
    if all(isinstance(g, str) for g in items):
        return frozenset(items)
    return tuple(sorted(int(g) for g in items))


def gamma_str(gamma) -> str:
    key = _gamma_key(gamma)
    if isinstance(key, frozenset):
        return ",".join(sorted(key)) if key else "-"
    return f"{len(key)}facets"


@dataclass
class ConstantRecord:
    """One computed constant c = 1/lambda with its provenance."""

    domain: str
    level: int
    space: str
    constant_kind: str
    gamma: object  # frozenset of labels or tuple of facet indices
    c: float
    lam: float
    result: EigenResult = field(repr=False)
    mesh: Mesh = field(repr=False)
    free_dofs: np.ndarray = field(repr=False)

    def diagnostics_json(self) -> dict:
        out = {"domain": self.domain, "level": self.level, "space": self.space,
               "constant_kind": self.constant_kind,
               "gamma": gamma_str(self.gamma), "c": self.c, "lambda": self.lam}
        out.update(self.result.diagnostics_json())
        return out


def solve_pencil(K, M, space_kind, n_constrained, solver="auto",
                 shift_seed=None, tol=DEFAULT_TOL,
                 projected_limit=PROJECTED_DOF_LIMIT) -> EigenResult:
    """Dispatch a restricted pencil to the appropriate eigensolver.

    P1 pencils have a known kernel (the constants iff nothing is constrained)
    and use the lowest-k solver; N/RT pencils carry large kernels and use the
    range-projection method up to `projected_limit` free DOFs, shift-invert
    seeded by `shift_seed` (a lambda^2 guess, typically from the next-coarser
    level) beyond that.
    """
    n = K.shape[0]
    if solver == "dense":
        return smallest_positive_dense(K, M)
    if solver == "projected":
        return smallest_positive_projected(K, M)
    if solver == "shift":
        if shift_seed is None:
            raise EigenSolveError("shift solver requires a shift seed")
        return smallest_positive_shift_invert(K, M, shift_seed, tol=tol)
    if solver != "auto":
        raise ValueError(f"unknown solver {solver!r}")

    if space_kind == "P1":
        kernel_dim = 1 if n_constrained == 0 else 0
        return smallest_positive_lowest_k(K, M, kernel_dim, tol=tol)
    if n <= projected_limit or shift_seed is None:
        return smallest_positive_projected(K, M)
    return smallest_positive_shift_invert(K, M, shift_seed, tol=tol)


def constant_on_mesh(mesh: Mesh, constant_kind: str,
                     selection: BoundarySelection, solver="auto",
                     shift_seed=None, tol=DEFAULT_TOL,
                     projected_limit=PROJECTED_DOF_LIMIT,
                     domain="custom", level=0,
                     pencil=None) -> ConstantRecord:
    """Compute one constant on an explicit mesh/selection (no caching)."""
    space_kind = KIND_SPACE[constant_kind]
    if pencil is None:
        space = FeSpace(space_kind, mesh)
        K, M = assemble_stiffness(space), assemble_mass(space)
    else:
        K, M, space = pencil
    Kr, free = restrict(K, space, selection)
    Mr, _ = restrict(M, space, selection)
    n_constrained = space.ndof - len(free)
    result = solve_pencil(Kr, Mr, space_kind, n_constrained, solver=solver,
                          shift_seed=shift_seed, tol=tol,
                          projected_limit=projected_limit)
    lam = result.lam
    return ConstantRecord(domain=domain, level=level, space=space_kind,
                          constant_kind=constant_kind,
                          gamma=selection.labels if selection.labels is not None
                          else tuple(selection.facets.tolist()),
                          c=1.0 / lam, lam=lam, result=result, mesh=mesh,
                          free_dofs=free)


def compute_constant(domain: str, level: int, constant_kind: str, gamma_tau,
                     solver="auto", tol=DEFAULT_TOL,
                     projected_limit=PROJECTED_DOF_LIMIT,
                     use_cache=True) -> ConstantRecord:
    """Compute c_{kind,gamma} on the structured mesh of (domain, level).

    `gamma_tau` is the constraint boundary part: an iterable of facet labels
    (or None for the empty part), or an explicit set of boundary facet
    indices.  With solver='auto', pencils too large for the projected method
    are solved by nested iteration: the next-coarser level provides the
    shift-invert seed.
    """
    if constant_kind not in KIND_SPACE:
        raise ValueError(f"unknown constant kind {constant_kind!r}")
    gamma = _gamma_key(gamma_tau)
    key = (domain, level, constant_kind, gamma, solver, tol, projected_limit)
    if use_cache and key in _RECORD_CACHE:
        return _RECORD_CACHE[key]

    mesh = get_mesh(domain, level)
    selection = select_boundary(mesh, None if not gamma else gamma)
    pencil = get_pencil(domain, level, KIND_SPACE[constant_kind])

    # seed from the coarser level only when it can actually be used and the
    # boundary part transfers across levels (i.e. it is given by labels)
    shift_seed = None
    if (isinstance(gamma, frozenset) and level > 1
            and KIND_SPACE[constant_kind] != "P1"):
        free_count = pencil[2].ndof - _num_constrained(selection,
                                                       KIND_SPACE[constant_kind])
        if solver == "shift" or (solver == "auto"
                                 and free_count > projected_limit):
            coarse = compute_constant(domain, level - 1, constant_kind, gamma,
                                      solver="auto", tol=tol,
                                      projected_limit=projected_limit,
                                      use_cache=use_cache)
            shift_seed = coarse.result.lambda_sq

    record = constant_on_mesh(mesh, constant_kind, selection, solver=solver,
                              shift_seed=shift_seed, tol=tol,
                              projected_limit=projected_limit,
                              domain=domain, level=level, pencil=pencil)
    if use_cache:
        _RECORD_CACHE[key] = record
    return record


def _num_constrained(selection: BoundarySelection, space_kind: str) -> int:
    if space_kind == "P1":
        return len(selection.constrained_nodes)
    if space_kind == "N":
        return len(selection.constrained_edges)
    return len(selection.constrained_facets)


def oracle_limit(constant_kind: str, gamma, dim: int) -> PiValue:
    """Continuum eigenvalue a constant converges to on the unit square/cube.

    c0 with constraint part S is 1/lambda_0(S).  c2 with constraint part S
    equals c0 with the complementary part.  c1 is complement-invariant in 3D
    and reduces to c0 of the complement in 2D.
    """
    gamma = frozenset(gamma or ())
    all_faces = frozenset(f for pair in AXIS_FACES[dim] for f in pair)
    if constant_kind == "c0":
        return exact_lambda0(gamma, dim)
    if constant_kind == "c2":
        return exact_lambda0(all_faces - gamma, dim)
    if constant_kind == "c1":
        if dim == 3:
            return exact_lambda1_3d(gamma)
        return exact_lambda0(all_faces - gamma, 2)
    raise ValueError(f"unknown constant kind {constant_kind!r}")


def scenario_columns(domain: str, scenario: str):
    """The six (constant_kind, gamma) columns of the convergence tables.

    With A the small boundary part and B its complement, the layout is
    [c0_A, c2_B, c1_B, c1_A, c2_A, c0_B]; scenario 'full' has A empty,
    'mixed_b' has A = {b}.
    """
    labels = LABELS_2D if domain in ("square", "lshape") else LABELS_3D
    all_labels = frozenset(labels)
    if scenario == "full":
        A = frozenset()
    elif scenario == "mixed_b":
        A = frozenset({"b"})
    else:
        raise ValueError(f"unknown scenario {scenario!r}")
    B = all_labels - A
    return [("c0", A), ("c2", B), ("c1", B), ("c1", A), ("c2", A), ("c0", B)]


@dataclass
class ConvergenceTable:
    domain: str
    scenario: str
    levels: list[int]
    columns: list[tuple[str, frozenset]]
    values: np.ndarray                 # (len(levels), 6)
    limits: list[float] | None         # exact-limit row when available
    orders: np.ndarray | None          # (len(levels)-1, 6) observed orders

    def header(self) -> list[str]:
        return ["level"] + [f"{k}({gamma_str(g)})" for k, g in self.columns]

    def rows(self) -> list[list]:
        out = [[lvl] + [float(v) for v in row]
               for lvl, row in zip(self.levels, self.values)]
        if self.limits is not None:
            out.append(["exact"] + list(self.limits))
        return out

    def to_csv(self, path):
        io_utils.write_csv(path, self.header(), self.rows())


def convergence_table(domain: str, max_level: int, scenario: str = "full",
                      solver="auto", tol=DEFAULT_TOL) -> ConvergenceTable:
    """Six constants per level, the exact limit row (square/cube), and the
    observed convergence orders log2(e_L / e_{L+1})."""
    columns = scenario_columns(domain, scenario)
    levels = list(range(1, max_level + 1))
    values = np.empty((len(levels), 6))
    for i, lvl in enumerate(levels):
        for j, (kind, gamma) in enumerate(columns):
            values[i, j] = compute_constant(domain, lvl, kind, gamma,
                                            solver=solver, tol=tol).c

    dim = 2 if domain in ("square", "lshape") else 3
    limits = orders = None
    if domain in ORACLE_DOMAINS:
        limits = [1.0 / oracle_limit(kind, gamma, dim).lam
                  for kind, gamma in columns]
        err = np.abs(values - np.asarray(limits)[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            orders = np.log2(err[:-1] / err[1:])
    elif len(levels) >= 3:
        # no closed form: Richardson-style orders from level differences
        diff = np.abs(np.diff(values, axis=0))
        with np.errstate(divide="ignore", invalid="ignore"):
            orders = np.log2(diff[:-1] / diff[1:])
    return ConvergenceTable(domain=domain, scenario=scenario, levels=levels,
                            columns=columns, values=values, limits=limits,
                            orders=orders)


@dataclass
class SweepResult:
    """Constants along a growing boundary part gamma_nu.

    Step k constrains gamma_nu = the first k facets of the BFS ordering and
    gamma_tau = the remaining boundary facets, so the steps run from
    gamma_nu empty to gamma_nu = the whole boundary."""

    domain: str
    level: int
    facet_order: np.ndarray
    values: dict[str, list]            # SWEEP_KEYS -> per-step c (None = gap)
    failures: list[tuple[int, str, str]]

    @property
    def num_steps(self) -> int:
        return len(self.facet_order) + 1

    def header(self) -> list[str]:
        return ["step", "num_gamma_nu"] + list(SWEEP_KEYS)

    def rows(self) -> list[list]:
        return [[k, k] + [self.values[key][k] for key in SWEEP_KEYS]
                for k in range(self.num_steps)]

    def to_csv(self, path):
        io_utils.write_csv(path, self.header(), self.rows())


def default_sweep_seed(mesh) -> int:
    """Default BFS seed for boundary sweeps: the facet closest to the centroid
    of the top boundary part, so the swept part grows as a roughly circular
    patch from the top-face center and reaches the bottom face last."""
    labels = classify_boundary(mesh)
    top = np.array([f for f, lab in labels.items() if lab == "t"],
                   dtype=np.int64)
    facet_nodes = mesh.edges if mesh.dim == 2 else mesh.faces
    bary = mesh.nodes[facet_nodes[top]].mean(axis=1)
    centroid = bary.mean(axis=0)
    return int(top[np.argmin(((bary - centroid) ** 2).sum(axis=1))])


def monotonicity_sweep(domain: str, level: int, seed_facet=None,
                       solver="auto", tol=DEFAULT_TOL) -> SweepResult:
    """All six constants for every prefix of the BFS boundary ordering.

    Solver failures on individual steps are recorded as gaps rather than
    aborting the sweep."""
    mesh = get_mesh(domain, level)
    if seed_facet is None:
        seed_facet = default_sweep_seed(mesh)
    order = bfs_boundary_order(mesh, seed_facet)
    pencils = {kind: get_pencil(domain, level, KIND_SPACE[kind])
               for kind in ("c0", "c1", "c2")}

    values = {key: [] for key in SWEEP_KEYS}
    failures = []
    for k in range(len(order) + 1):
        nu = select_boundary(mesh, order[:k].tolist())
        tau = select_boundary(mesh, order[k:].tolist())
        for key in SWEEP_KEYS:
            kind = key[:2]
            sel = tau if key.endswith("tau") else nu
            try:
                rec = constant_on_mesh(mesh, kind, sel, solver=solver,
                                       tol=tol, domain=domain, level=level,
                                       pencil=pencils[kind])
                values[key].append(rec.c)
            except EigenSolveError as exc:
                values[key].append(None)
                failures.append((k, key, str(exc)))
    return SweepResult(domain=domain, level=level, facet_order=order,
                       values=values, failures=failures)


@dataclass
class InequalityReport:
    """Check of min{c0_tau, c0_nu} <= c1 <= max{c0_tau, c0_nu} per step.

    Each continuum bound has two discretizations in the sweep data: the nodal
    value c0 of a part and the facet value c2 of the complementary part (equal
    in the continuum by the complement identity, and approximating it from
    opposite sides at the near-equality steps).  The check therefore uses the
    outer hull of both families as the discrete bounds."""

    delta: float
    num_steps: int
    checked_steps: int
    violations: list[dict]
    margins: list[dict]                # raw relative margins per checked step

    @property
    def ok(self) -> bool:
        return not self.violations


def check_extended_inequalities(sweep: SweepResult,
                                delta: float = 0.02) -> InequalityReport:
    """Verify the extended inequalities along a sweep with relative
    discretization slack `delta`; raw margins are always reported."""
    violations, margins = [], []
    checked = 0
    for k in range(sweep.num_steps):
        # both discretizations of {c0 of part, c0 of complement}:
        # c0_tau ~ c2_nu and c0_nu ~ c2_tau in the continuum
        c0s = [sweep.values["c0_tau"][k], sweep.values["c0_nu"][k],
               sweep.values["c2_tau"][k], sweep.values["c2_nu"][k]]
        c1s = {"c1_tau": sweep.values["c1_tau"][k],
               "c1_nu": sweep.values["c1_nu"][k]}
        if any(v is None for v in c0s) or any(v is None for v in c1s.values()):
            continue
        checked += 1
        lo, hi = min(c0s), max(c0s)
        for key, c1 in c1s.items():
            lower_rel = (c1 - lo) / lo
            upper_rel = (hi - c1) / hi
            margins.append({"step": k, "which": key, "c1": c1, "lo": lo,
                            "hi": hi, "lower_rel": lower_rel,
                            "upper_rel": upper_rel})
            if lower_rel < -delta or upper_rel < -delta:
                violations.append(margins[-1])
    return InequalityReport(delta=delta, num_steps=sweep.num_steps,
                            checked_steps=checked, violations=violations,
                            margins=margins)


def export_eigenfunction(record: ConstantRecord, path):
    """VTK export: P1 eigenfunctions as nodal scalars, N/RT eigenfunctions
    as per-cell vectors evaluated at the barycenters."""
    space = FeSpace(record.space, record.mesh)
    full = np.zeros(space.ndof)
    full[record.free_dofs] = record.result.eigenvector
    name = f"{record.constant_kind}_eigenfunction"
    if record.space == "P1":
        io_utils.write_vtk(path, record.mesh, point_data={name: full})
    else:
        vec = evaluate_at_barycenters(space, full)
        io_utils.write_vtk(path, record.mesh, cell_data={name: vec})


def export_csv(table, path):
    table.to_csv(path)
