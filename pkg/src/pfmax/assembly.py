"""Mass and stiffness matrices for lowest-order Lagrange (P1), Nedelec edge
(N), and Raviart-Thomas facet (RT) spaces on simplicial meshes, plus the
restriction to free DOFs under a boundary selection.

All element integrands are polynomials of degree <= 2 and are integrated
exactly with the barycentric formula  int_T l_a l_b = |T| (1+delta_ab) / ((d+1)(d+2)).

DOF orientation is fixed by ascending global node indices: an edge DOF is the
tangential/line integral along the edge directed from the lower to the higher
node index, a facet DOF is the flux through the facet in the direction of the
normal induced by the ascending node tuple.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .mesh import (
    BoundarySelection,
    LOCAL_EDGES_2D,
    LOCAL_EDGES_3D,
    LOCAL_FACES_3D,
    Mesh,
)


@dataclass
class FeSpace:
    """A lowest-order finite element space over a mesh."""

    kind: str  # 'P1' | 'N' | 'RT'
    mesh: Mesh

    def __post_init__(self):
        if self.kind not in ("P1", "N", "RT"):
            raise ValueError(f"unknown FE space kind {self.kind!r}")

    @property
    def ndof(self) -> int:
        m = self.mesh
        if self.kind == "P1":
            return m.num_nodes
        if self.kind == "N" or m.dim == 2:
            return len(m.edges)
        return len(m.faces)


def _cell_geometry(mesh: Mesh):
    """Barycentric gradients g[c, a, :] and unsigned volumes per cell."""
    d = mesh.dim
    p = mesh.nodes[mesh.cells]                       # (C, d+1, d)
    A = np.concatenate([np.ones((len(p), d + 1, 1)), p], axis=2)
    Ainv = np.linalg.inv(A)
    grads = np.transpose(Ainv[:, 1:, :], (0, 2, 1))  # (C, d+1, d)
    det = np.linalg.det(A)
    vol = np.abs(det) / (2.0 if d == 2 else 6.0)
    if np.any(vol <= 0):
        bad = int(np.flatnonzero(vol <= 0)[0])
        raise ValueError(f"degenerate cell {bad}")
    return grads, vol


def _lam_moment(d: int) -> np.ndarray:
    """int_T l_a l_b / |T| as a (d+1, d+1) matrix."""
    k = d + 1
    return (np.ones((k, k)) + np.eye(k)) / (k * (k + 1))


def _edge_dofs(mesh: Mesh):
    """Per cell: global edge index and the local node pair (a, b) ordered so
    that the global indices satisfy cells[c, a] < cells[c, b]."""
    local = LOCAL_EDGES_2D if mesh.dim == 2 else LOCAL_EDGES_3D
    loc = np.array(local, dtype=np.int64)            # (ne, 2)
    ga = mesh.cells[:, loc[:, 0]]
    gb = mesh.cells[:, loc[:, 1]]
    swap = ga > gb
    a = np.where(swap, loc[:, 1], loc[:, 0])
    b = np.where(swap, loc[:, 0], loc[:, 1])
    return mesh.cell_edges, a, b                     # (C, ne) each


def _gather(grads, idx):
    """grads[c, idx[c, e], :] for a (C, ne) local index array."""
    return np.take_along_axis(grads, idx[:, :, None], axis=1)


def _rt_facet_data(mesh: Mesh):
    """Per cell: global facet DOF indices, orientation signs, and the vertex
    opposite each facet.

    The sign is +1 when the cell-outward normal on the facet agrees with the
    normal induced by the ascending global node tuple of the facet."""
    d = mesh.dim
    p = mesh.nodes[mesh.cells]                       # (C, d+1, d)
    if d == 2:
        dofs = mesh.cell_edges
        local_fac = np.array(LOCAL_EDGES_2D, dtype=np.int64)
        opposite = np.array([2, 1, 0], dtype=np.int64)
    else:
        dofs = mesh.cell_faces
        local_fac = np.array(LOCAL_FACES_3D, dtype=np.int64)
        opposite = np.array([3, 2, 1, 0], dtype=np.int64)
    nf = len(local_fac)
    popp = p[:, opposite, :]                         # (C, nf, d)

    order = np.argsort(mesh.cells[:, local_fac], axis=2)
    sorted_local = np.take_along_axis(local_fac[None, :, :].repeat(
        mesh.num_cells, axis=0), order, axis=2)      # (C, nf, d)
    fp = np.take_along_axis(
        p[:, None, :, :].repeat(nf, axis=1),
        sorted_local[..., None].repeat(d, axis=3), axis=2)  # (C, nf, d, d)
    if d == 2:
        t = fp[:, :, 1, :] - fp[:, :, 0, :]
        n_global = np.stack([t[:, :, 1], -t[:, :, 0]], axis=2)
    else:
        n_global = np.cross(fp[:, :, 1, :] - fp[:, :, 0, :],
                            fp[:, :, 2, :] - fp[:, :, 0, :])
    centroid = fp.mean(axis=2)
    sign = np.sign(np.einsum("cfx,cfx->cf", n_global, centroid - popp))
    return dofs, sign, popp


def assemble_mass(space: FeSpace) -> sp.csr_matrix:
    return _assemble(space, stiffness=False)


def assemble_stiffness(space: FeSpace) -> sp.csr_matrix:
    return _assemble(space, stiffness=True)


def _assemble(space: FeSpace, stiffness: bool) -> sp.csr_matrix:
    mesh = space.mesh
    d = mesh.dim
    grads, vol = _cell_geometry(mesh)
    I = _lam_moment(d)

    if space.kind == "P1":
        if stiffness:
            local = np.einsum("cax,cbx,c->cab", grads, grads, vol)
        else:
            local = vol[:, None, None] * I[None, :, :]
        dofs = mesh.cells

    elif space.kind == "N":
        dofs, a, b = _edge_dofs(mesh)
        ga = _gather(grads, a)                       # (C, ne, d)
        gb = _gather(grads, b)
        if stiffness:
            if d == 2:
                curl = 2.0 * (ga[:, :, 0] * gb[:, :, 1] - ga[:, :, 1] * gb[:, :, 0])
                local = np.einsum("ce,cf,c->cef", curl, curl, vol)
            else:
                curl = 2.0 * np.cross(ga, gb)
                local = np.einsum("cex,cfx,c->cef", curl, curl, vol)
        else:
            Iaa = I[a[:, :, None], a[:, None, :]]    # (C, ne, ne)
            Iab = I[a[:, :, None], b[:, None, :]]
            Iba = I[b[:, :, None], a[:, None, :]]
            Ibb = I[b[:, :, None], b[:, None, :]]
            gbgb = np.einsum("cex,cfx->cef", gb, gb)
            gbga = np.einsum("cex,cfx->cef", gb, ga)
            gagb = np.einsum("cex,cfx->cef", ga, gb)
            gaga = np.einsum("cex,cfx->cef", ga, ga)
            local = vol[:, None, None] * (
                gbgb * Iaa - gbga * Iab - gagb * Iba + gaga * Ibb)

    else:  # RT
        p = mesh.nodes[mesh.cells]                   # (C, d+1, d)
        dofs, sign, popp = _rt_facet_data(mesh)

        if stiffness:
            local = np.einsum("ce,cf,c->cef", sign, sign, 1.0 / vol)
        else:
            # int (x - p_a).(x - p_b) = sum_{m,n} I_mn (p_m - p_a).(p_n - p_b)
            X = p[:, None, :, :] - popp[:, :, None, :]   # (C, nf, d+1, d)
            quad = np.einsum("mn,cemx,cfnx->cef", I, X, X)
            scale = sign / (d * vol[:, None])
            local = np.einsum("ce,cf,cef,c->cef", scale, scale, quad, vol)

    rows = np.repeat(dofs, dofs.shape[1], axis=1).ravel()
    cols = np.tile(dofs, (1, dofs.shape[1])).ravel()
    mat = sp.coo_matrix((local.ravel(), (rows, cols)),
                        shape=(space.ndof, space.ndof)).tocsr()
    mat.sum_duplicates()
    return mat


def p1_gradient_operators(space_p1: FeSpace):
    """Cell-wise gradient of a P1 field: returns (ops, vol) where ops is a
    tuple of dim sparse (num_cells, num_nodes) matrices mapping nodal values
    to the (constant) partial derivative on each cell, and vol the cell
    volumes.  Useful for quadrature of expressions in grad/rot/div of P1
    vector fields."""
    if space_p1.kind != "P1":
        raise ValueError("p1_gradient_operators requires a P1 space")
    mesh = space_p1.mesh
    grads, vol = _cell_geometry(mesh)                # (C, d+1, d), (C,)
    nc, nv = mesh.num_cells, mesh.num_nodes
    rows = np.repeat(np.arange(nc), mesh.dim + 1)
    cols = mesh.cells.ravel()
    ops = tuple(
        sp.coo_matrix((grads[:, :, x].ravel(), (rows, cols)),
                      shape=(nc, nv)).tocsr()
        for x in range(mesh.dim))
    return ops, vol


def gradient_interpolation(space_p1: FeSpace, space_n: FeSpace) -> sp.csr_matrix:
    """Edge-wise interpolation of nodal gradients: for edge (i, j) with i < j
    the coefficient is u_j - u_i.  Columns span the curl-curl kernel."""
    if space_p1.mesh is not space_n.mesh:
        raise ValueError("spaces must share a mesh")
    edges = space_p1.mesh.edges
    ne = len(edges)
    rows = np.repeat(np.arange(ne), 2)
    cols = edges.ravel()
    vals = np.tile([-1.0, 1.0], ne)
    return sp.coo_matrix((vals, (rows, cols)),
                         shape=(ne, space_p1.mesh.num_nodes)).tocsr()


def evaluate_at_barycenters(space: FeSpace, coeffs: np.ndarray) -> np.ndarray:
    """Pointwise value of the FE field at each cell barycenter: a (C,) array
    for P1, a (C, dim) array for N and RT."""
    mesh = space.mesh
    d = mesh.dim
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (space.ndof,):
        raise ValueError("coefficient vector does not match the space")
    if space.kind == "P1":
        return coeffs[mesh.cells].mean(axis=1)
    if space.kind == "N":
        grads, _ = _cell_geometry(mesh)
        dofs, a, b = _edge_dofs(mesh)
        ce = coeffs[dofs]                            # (C, ne)
        # all barycentric coordinates equal 1/(d+1) at the barycenter
        return np.einsum("ce,cex->cx", ce, _gather(grads, b) - _gather(grads, a)) / (d + 1)
    _, vol = _cell_geometry(mesh)
    dofs, sign, popp = _rt_facet_data(mesh)
    bary = mesh.nodes[mesh.cells].mean(axis=1)       # (C, d)
    cf = coeffs[dofs] * sign / (d * vol[:, None])
    return np.einsum("cf,cfx->cx", cf, bary[:, None, :] - popp)


def constrained_dofs(space: FeSpace, selection: BoundarySelection) -> np.ndarray:
    if space.kind == "P1":
        return selection.constrained_nodes
    if space.kind == "N":
        return selection.constrained_edges
    return selection.constrained_facets


def restrict(matrix: sp.spmatrix, space: FeSpace,
             selection: BoundarySelection):
    """Drop rows/columns of constrained DOFs; returns the reduced matrix and
    the free-DOF index map (reduced index -> original index)."""
    fixed = constrained_dofs(space, selection)
    free = np.setdiff1d(np.arange(space.ndof), fixed)
    reduced = matrix.tocsr()[free][:, free]
    return reduced, free
