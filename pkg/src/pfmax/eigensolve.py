"""Smallest positive eigenvalue of the pencil K v = lambda^2 M v with
symmetric K >= 0 and M > 0, including pencils whose stiffness has a large
kernel (handled by range projection or shift-invert)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

DEFAULT_TOL = 1e-10
MAX_ITER = 500


class EigenSolveError(RuntimeError):
    pass


@dataclass
class EigenResult:
    lambda_sq: float
    lam: float
    eigenvector: np.ndarray
    kernel_dim: int | None
    method: str  # 'projected' | 'shift_invert' | 'dense'
    iterations: int | None = None
    residual_norm: float = 0.0
    diagnostics: dict = field(default_factory=dict)

    def diagnostics_json(self) -> dict:
        out = {"method": self.method, "lambda_sq": self.lambda_sq,
               "lambda": self.lam, "kernel_dim": self.kernel_dim,
               "iterations": self.iterations,
               "residual_norm": self.residual_norm}
        out.update(self.diagnostics)
        return out


def _as_sparse(A):
    return A if sp.issparse(A) else sp.csr_matrix(np.atleast_2d(A))


def _finalize(K, M, lam_sq, v, kernel_dim, method, tol=DEFAULT_TOL,
              iterations=None, diagnostics=None) -> EigenResult:
    """Normalize in the M-inner product, fix the sign, check the residual."""
    mv = M @ v
    nrm = float(np.sqrt(v @ mv))
    if nrm == 0.0:
        raise EigenSolveError("zero eigenvector")
    v = v / nrm
    imax = int(np.argmax(np.abs(v)))
    if v[imax] < 0:
        v = -v
    mv = M @ v
    res = float(np.linalg.norm(K @ v - lam_sq * mv))
    bound = tol * float(np.linalg.norm(mv)) * max(lam_sq, 1.0)
    result = EigenResult(lambda_sq=float(lam_sq), lam=float(np.sqrt(lam_sq)),
                         eigenvector=v, kernel_dim=kernel_dim, method=method,
                         iterations=iterations, residual_norm=res,
                         diagnostics=diagnostics or {})
    result.diagnostics["residual_bound"] = bound
    if res > 100 * bound:
        raise EigenSolveError(
            f"eigenpair residual {res:.3e} exceeds bound {bound:.3e}")
    return result


def dense_generalized_eig(K, M):
    """Full ascending spectrum via Cholesky reduction of M (oracle path)."""
    Kd = K.toarray() if sp.issparse(K) else np.asarray(K, dtype=float)
    Md = M.toarray() if sp.issparse(M) else np.asarray(M, dtype=float)
    try:
        w, V = sla.eigh(Kd, Md)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"M is not SPD: {exc}") from exc
    return w, V


def smallest_positive_dense(K, M, kernel_floor_rel=1e-8) -> EigenResult:
    """Smallest eigenvalue above the zero cluster from the full spectrum."""
    w, V = dense_generalized_eig(K, M)
    floor = kernel_floor_rel * max(abs(w[0]), abs(w[-1]), 1.0)
    pos = np.flatnonzero(w > floor)
    if len(pos) == 0:
        raise EigenSolveError("no positive eigenvalue")
    i = int(pos[0])
    return _finalize(_as_sparse(K), _as_sparse(M), w[i], V[:, i],
                     kernel_dim=i, method="dense",
                     diagnostics={"kernel_floor": floor})


def smallest_positive_projected(K, M, rank_tol=None) -> EigenResult:
    """Range-projection method: column-pivoted QR of K detects the numerical
    rank r, and the pencil is reduced onto M^{-1} range(K), the subspace
    containing every eigenvector with a positive eigenvalue.  With Q the
    orthonormal range basis and Y = M^{-1} Q this gives the SPD r x r pencil
    (Y^T K Y) y = lambda^2 (Q^T Y) y and v = Y y."""
    K = _as_sparse(K).tocsc()
    M = _as_sparse(M).tocsc()
    n = K.shape[0]
    if rank_tol is None:
        rank_tol = 1e-9 * n
    Kd = K.toarray()
    Q, R, _ = sla.qr(Kd, pivoting=True)
    diag = np.abs(np.diag(R))
    if diag[0] == 0.0:
        raise EigenSolveError("no positive eigenvalue: K is zero")
    r = int(np.sum(diag > rank_tol * diag[0]))
    kernel_dim = n - r

    Y = spla.splu(M).solve(np.ascontiguousarray(Q[:, :r]))
    A1 = Y.T @ (K @ Y)
    A2 = Q[:, :r].T @ Y
    A1 = 0.5 * (A1 + A1.T)
    A2 = 0.5 * (A2 + A2.T)
    try:
        w, Z = sla.eigh(A1, A2)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"projected pencil reduction failed: {exc}") from exc
    lam_sq = w[0]
    if lam_sq <= 0:
        raise EigenSolveError(f"projected pencil produced lambda^2={lam_sq}")
    v = Y @ Z[:, 0]
    return _finalize(K, M, lam_sq, v, kernel_dim, "projected",
                     diagnostics={"rank_tol": rank_tol, "rank": r})


def smallest_positive_shift_invert(K, M, shift_guess, kernel_dim_hint=None,
                                   tol=DEFAULT_TOL, max_iter=MAX_ITER) -> EigenResult:
    """Shift-invert Lanczos targeting the eigenvalue nearest a positive shift
    (typically the eigenvalue from the next-coarser mesh)."""
    if shift_guess <= 0:
        raise EigenSolveError("shift_guess must be positive")
    K = _as_sparse(K).tocsc()
    M = _as_sparse(M).tocsc()
    sigma = float(shift_guess)
    last_exc = None
    for attempt in range(3):
        try:
            w, V = spla.eigsh(K, k=1, M=M, sigma=sigma, which="LM",
                              tol=tol, maxiter=max_iter)
            break
        except RuntimeError as exc:  # singular factorization at sigma
            last_exc = exc
            sigma *= 1.0 + 1e-3
    else:
        raise EigenSolveError(f"shift-invert failed near {shift_guess}: {last_exc}")
    lam_sq = float(w[0])
    if lam_sq <= 10 * tol:
        raise EigenSolveError(
            f"shift-invert converged into the kernel (lambda^2={lam_sq:.3e})")
    return _finalize(K, M, lam_sq, V[:, 0], kernel_dim_hint, "shift_invert",
                     tol=tol, diagnostics={"sigma": sigma})


def smallest_positive_lowest_k(K, M, kernel_dim, tol=DEFAULT_TOL,
                               dense_limit=1200) -> EigenResult:
    """Computes kernel_dim + 1 lowest eigenvalues and returns the first
    positive one; intended for P1 pencils where dim ker K is 0 or 1."""
    if kernel_dim not in (0, 1):
        raise ValueError("kernel_dim must be 0 or 1")
    K = _as_sparse(K).tocsc()
    M = _as_sparse(M).tocsc()
    n = K.shape[0]
    if n <= dense_limit:
        w, V = dense_generalized_eig(K, M)
        lam_sq, v = w[kernel_dim], V[:, kernel_dim]
        method = "dense"
    else:
        # K - sigma*M is SPD for sigma < 0, so the eigenvalues nearest sigma
        # are exactly the lowest kernel_dim + 1
        scale = K.diagonal().sum() / max(M.diagonal().sum(), 1e-300)
        sigma = -1e-6 * max(scale, 1.0)
        w, V = spla.eigsh(K, k=kernel_dim + 1, M=M, sigma=sigma, which="LM",
                          tol=tol, maxiter=MAX_ITER)
        order = np.argsort(w)
        lam_sq, v = float(w[order[-1]]), V[:, order[-1]]
        method = "shift_invert"
    if lam_sq <= 0:
        raise EigenSolveError(f"first positive eigenvalue not found ({lam_sq})")
    if kernel_dim == 1:
        ones = np.ones(n)
        m1 = M @ ones
        v = v - (v @ m1) / (ones @ m1) * ones
    return _finalize(K, M, lam_sq, v, kernel_dim, method, tol=tol)
