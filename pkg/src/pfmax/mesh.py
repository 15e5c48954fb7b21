"""Structured simplicial meshes of the unit square/cube and their L-shape and
Fichera truncations, with full entity tables and labeled boundary facets.

Label conventions (outward-normal axis and sign):
  2D: l <-> x1=0, r <-> x1=1, b <-> x2=0, t <-> x2=1
  3D: k <-> x1=0, f <-> x1=1, l <-> x2=0, r <-> x2=1, b <-> x3=0, t <-> x3=1
Re-entrant facets of the truncated domains (on the planes x_i = 1/2) get the
label of their outward normal direction.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

LABELS_2D = ("b", "t", "l", "r")
LABELS_3D = ("b", "t", "l", "r", "f", "k")

# (axis, negative-side label, positive-side label)
_AXIS_LABELS = {
    2: [(0, "l", "r"), (1, "b", "t")],
    3: [(0, "k", "f"), (1, "l", "r"), (2, "b", "t")],
}

_GEOM_TOL = 1e-12

# local sub-entity orderings on the reference simplex
LOCAL_EDGES_2D = [(0, 1), (0, 2), (1, 2)]
LOCAL_EDGES_3D = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
LOCAL_FACES_3D = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


@dataclass
class Mesh:
    """Immutable simplicial mesh with entity tables and boundary labels."""

    dim: int
    nodes: np.ndarray            # (N, dim)
    cells: np.ndarray            # (C, dim+1), positively oriented
    edges: np.ndarray            # (E, 2), ascending node pairs
    cell_edges: np.ndarray       # (C, n_local_edges) edge indices
    faces: np.ndarray | None     # (F, 3) ascending triples, 3D only
    cell_faces: np.ndarray | None
    boundary_facets: np.ndarray  # facet indices (edges in 2D, faces in 3D)
    facet_labels: dict[int, str] = field(default_factory=dict)

    @property
    def facets(self) -> np.ndarray:
        return self.edges if self.dim == 2 else self.faces

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_cells(self) -> int:
        return len(self.cells)

    def cell_volumes(self) -> np.ndarray:
        p = self.nodes[self.cells]
        v = p[:, 1:, :] - p[:, :1, :]
        if self.dim == 2:
            det = v[:, 0, 0] * v[:, 1, 1] - v[:, 0, 1] * v[:, 1, 0]
            return det / 2.0
        return np.linalg.det(v) / 6.0

    def boundary_labels(self) -> set[str]:
        return set(self.facet_labels.values())


@dataclass
class BoundarySelection:
    """A choice of the Dirichlet-type boundary part as a set of facets together
    with the constrained entity sets of the three FE spaces (closure rule:
    Dirichlet wins on label interfaces)."""

    labels: frozenset[str] | None
    facets: np.ndarray
    constrained_nodes: np.ndarray
    constrained_edges: np.ndarray
    constrained_facets: np.ndarray


def _orient_cells(nodes: np.ndarray, cells: np.ndarray) -> np.ndarray:
    """Swap the last two nodes of negatively oriented cells."""
    cells = cells.copy()
    p = nodes[cells]
    v = p[:, 1:, :] - p[:, :1, :]
    if nodes.shape[1] == 2:
        det = v[:, 0, 0] * v[:, 1, 1] - v[:, 0, 1] * v[:, 1, 0]
    else:
        det = np.linalg.det(v)
    flip = det < 0
    cells[flip, -2], cells[flip, -1] = cells[flip, -1], cells[flip, -2].copy()
    return cells


def _build_entities(dim: int, cells: np.ndarray):
    """Unique ascending edge (and face) tables plus cell incidence."""
    local_edges = LOCAL_EDGES_2D if dim == 2 else LOCAL_EDGES_3D
    pairs = np.sort(cells[:, local_edges], axis=2).reshape(-1, 2)
    edges, cell_edges = np.unique(pairs, axis=0, return_inverse=True)
    cell_edges = cell_edges.reshape(len(cells), len(local_edges))
    faces = cell_faces = None
    if dim == 3:
        triples = np.sort(cells[:, LOCAL_FACES_3D], axis=2).reshape(-1, 3)
        faces, cell_faces = np.unique(triples, axis=0, return_inverse=True)
        cell_faces = cell_faces.reshape(len(cells), 4)
    return edges, cell_edges, faces, cell_faces


def _boundary_facets(dim, cell_edges, cell_faces, n_edges, n_faces) -> np.ndarray:
    incidence = cell_edges if dim == 2 else cell_faces
    counts = np.bincount(incidence.ravel(), minlength=n_edges if dim == 2 else n_faces)
    return np.flatnonzero(counts == 1)


def _finish_mesh(dim: int, nodes: np.ndarray, cells: np.ndarray) -> Mesh:
    cells = _orient_cells(nodes, cells)
    edges, cell_edges, faces, cell_faces = _build_entities(dim, cells)
    bnd = _boundary_facets(dim, cell_edges, cell_faces, len(edges),
                           0 if faces is None else len(faces))
    mesh = Mesh(dim=dim, nodes=nodes, cells=cells, edges=edges,
                cell_edges=cell_edges, faces=faces, cell_faces=cell_faces,
                boundary_facets=bnd)
    mesh.facet_labels = classify_boundary(mesh)
    return mesh


def build_unit_square(level: int) -> Mesh:
    """Uniform triangulation of (0,1)^2 with 2*(2^(level+1))^2 triangles,
    every grid square split by the lower-left to upper-right diagonal."""
    if level < 1:
        raise ValueError("level must be >= 1")
    n = 2 ** (level + 1)
    xs = np.linspace(0.0, 1.0, n + 1)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    nodes = np.column_stack([X.ravel(order="F"), Y.ravel(order="F")])

    def idx(i, j):
        return j * (n + 1) + i

    cells = []
    for j in range(n):
        for i in range(n):
            v00, v10 = idx(i, j), idx(i + 1, j)
            v01, v11 = idx(i, j + 1), idx(i + 1, j + 1)
            cells.append((v00, v10, v11))
            cells.append((v00, v11, v01))
    return _finish_mesh(2, nodes, np.asarray(cells, dtype=np.int64))


def build_unit_cube(level: int) -> Mesh:
    """Kuhn triangulation of (0,1)^3: each grid cube split into 6 tets sharing
    the main diagonal (0,0,0)-(1,1,1)."""
    if level < 1:
        raise ValueError("level must be >= 1")
    n = 2 ** (level + 1)
    xs = np.linspace(0.0, 1.0, n + 1)
    grid = np.stack(np.meshgrid(xs, xs, xs, indexing="ij"), axis=-1)
    nodes = grid.reshape(-1, 3)
    stride = np.array([(n + 1) ** 2, n + 1, 1], dtype=np.int64)

    unit = np.eye(3, dtype=np.int64)
    kuhn = []
    for perm in itertools.permutations(range(3)):
        c0 = np.zeros(3, dtype=np.int64)
        c1 = c0 + unit[perm[0]]
        c2 = c1 + unit[perm[1]]
        c3 = c2 + unit[perm[2]]
        kuhn.append(np.stack([c0, c1, c2, c3]))

    cells = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                base = np.array([i, j, k], dtype=np.int64)
                for tet in kuhn:
                    cells.append((base + tet) @ stride)
    return _finish_mesh(3, nodes, np.asarray(cells, dtype=np.int64))


def _truncate(mesh: Mesh, keep: np.ndarray) -> Mesh:
    cells = mesh.cells[keep]
    used = np.unique(cells)
    remap = -np.ones(mesh.num_nodes, dtype=np.int64)
    remap[used] = np.arange(len(used))
    return _finish_mesh(mesh.dim, mesh.nodes[used], remap[cells])


def build_lshape(level: int) -> Mesh:
    """Unit square minus the quadrant [1/2,1) x [1/2,1)."""
    square = build_unit_square(level)
    bary = square.nodes[square.cells].mean(axis=1)
    keep = ~((bary[:, 0] > 0.5) & (bary[:, 1] > 0.5))
    return _truncate(square, keep)


def build_fichera(level: int) -> Mesh:
    """Unit cube minus the octant [1/2,1)^3."""
    cube = build_unit_cube(level)
    bary = cube.nodes[cube.cells].mean(axis=1)
    keep = ~np.all(bary > 0.5, axis=1)
    return _truncate(cube, keep)


_BUILDERS = {
    "square": build_unit_square,
    "lshape": build_lshape,
    "cube": build_unit_cube,
    "fichera": build_fichera,
}


def build_domain(domain: str, level: int) -> Mesh:
    try:
        builder = _BUILDERS[domain]
    except KeyError:
        raise ValueError(f"unknown domain {domain!r}") from None
    return builder(level)


def classify_boundary(mesh: Mesh) -> dict[int, str]:
    """Assign each boundary facet its axis-plane label (see module docstring).

    Raises ValueError for facets not lying on a plane x_i = const, which
    signals a non-box domain.
    """
    # one incident cell per boundary facet, for outward-normal orientation
    incidence = mesh.cell_edges if mesh.dim == 2 else mesh.cell_faces
    owner = np.full(len(mesh.facets), -1, dtype=np.int64)
    for c in range(mesh.num_cells):
        owner[incidence[c]] = c
    labels: dict[int, str] = {}
    for f in mesh.boundary_facets:
        coords = mesh.nodes[mesh.facets[f]]
        spans = coords.max(axis=0) - coords.min(axis=0)
        flat = np.flatnonzero(spans < _GEOM_TOL)
        if len(flat) == 0:
            raise ValueError(f"boundary facet {f} not on an axis plane")
        axis = int(flat[0])
        plane = coords[0, axis]
        cell_bary = mesh.nodes[mesh.cells[owner[f]]].mean(axis=0)
        positive = cell_bary[axis] < plane  # outward normal points up-axis
        for ax, neg, pos in _AXIS_LABELS[mesh.dim]:
            if ax == axis:
                labels[int(f)] = pos if positive else neg
                break
    return labels


def select_boundary(mesh: Mesh, selection) -> BoundarySelection:
    """Build the constrained entity sets for a boundary part given either as
    facet labels or as an explicit set of boundary facet indices."""
    labels = None
    if selection is None:
        facets = np.array([], dtype=np.int64)
        labels = frozenset()
    elif all(isinstance(s, str) for s in selection):
        labels = frozenset(selection)
        valid = set(LABELS_2D if mesh.dim == 2 else LABELS_3D)
        unknown = labels - valid
        if unknown:
            raise ValueError(f"unknown boundary labels {sorted(unknown)}")
        facets = np.array(sorted(f for f in mesh.boundary_facets
                                 if mesh.facet_labels[int(f)] in labels),
                          dtype=np.int64)
    else:
        facets = np.unique(np.asarray(list(selection), dtype=np.int64))
        bnd = set(mesh.boundary_facets.tolist())
        if not set(facets.tolist()) <= bnd:
            raise ValueError("facet selection contains non-boundary facets")

    if len(facets) == 0:
        empty = np.array([], dtype=np.int64)
        return BoundarySelection(labels, facets, empty, empty.copy(), facets)

    nodes = np.unique(mesh.facets[facets])
    if mesh.dim == 2:
        edges = facets.copy()
    else:
        edge_index = {tuple(e): i for i, e in enumerate(mesh.edges.tolist())}
        sub = set()
        for tri in mesh.faces[facets].tolist():
            a, b, c = tri
            sub.update((edge_index[(a, b)], edge_index[(a, c)],
                        edge_index[(b, c)]))
        edges = np.array(sorted(sub), dtype=np.int64)
    return BoundarySelection(labels, facets, nodes, edges, facets)


def bfs_boundary_order(mesh: Mesh, seed_facet: int) -> np.ndarray:
    """Breadth-first ordering of the boundary facets over their adjacency
    graph (shared node in 2D, shared edge in 3D); ties broken by ascending
    facet index, unreachable components appended in index order."""
    bnd = mesh.boundary_facets
    if seed_facet not in set(bnd.tolist()):
        raise ValueError("seed is not a boundary facet")

    if mesh.dim == 2:
        keys_of = lambda f: [int(v) for v in mesh.edges[f]]
    else:
        keys_of = lambda f: [tuple(sorted(p)) for p in
                             itertools.combinations(mesh.faces[f].tolist(), 2)]
    neighbors: dict[int, set[int]] = {int(f): set() for f in bnd}
    by_key: dict = {}
    for f in bnd:
        for k in keys_of(int(f)):
            by_key.setdefault(k, []).append(int(f))
    for group in by_key.values():
        for a in group:
            for b in group:
                if a != b:
                    neighbors[a].add(b)

    order, seen = [], set()

    def bfs(start):
        queue = deque([start])
        seen.add(start)
        while queue:
            f = queue.popleft()
            order.append(f)
            for g in sorted(neighbors[f]):
                if g not in seen:
                    seen.add(g)
                    queue.append(g)

    bfs(int(seed_facet))
    for f in bnd:
        if int(f) not in seen:
            bfs(int(f))
    return np.array(order, dtype=np.int64)
