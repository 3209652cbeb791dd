"""Dense symmetric eigensolver and the spectral bounds built on it.

The solver is a cyclic Jacobi iteration: it carries a certified residual (the
off-diagonal Frobenius norm at termination) and needs nothing beyond numpy.
Target matrices are small (a few thousand rows at most), so a full dense
spectrum with multiplicities is always available for the second-eigenvalue
quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10
MAX_SWEEPS = 100


class SpectralError(ValueError):
    """An eigensolver precondition or convergence guarantee failed."""


@dataclass(frozen=True)
class SpectralReport:
    """Full spectrum (descending), second-largest |eigenvalue|, and residual."""

    eigenvalues: tuple[float, ...]
    mu_star: float
    residual: float


def _offdiag_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.linalg.norm(off))


def _check_symmetric(M: np.ndarray, tol: float) -> np.ndarray:
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise SpectralError(f"expected a square matrix, got shape {A.shape}")
    scale = max(float(np.linalg.norm(A)), 1.0)
    if float(np.max(np.abs(A - A.T), initial=0.0)) > tol * scale:
        raise SpectralError("matrix is not symmetric within tolerance")
    return 0.5 * (A + A.T)


def jacobi_eigensystem(
    M: np.ndarray, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray, float]:
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V, residual)`` with eigenvalues ``w`` sorted descending,
    orthogonal ``V`` whose columns match ``w`` (so ``V @ diag(w) @ V.T == M``
    up to the residual), and the off-diagonal Frobenius norm at termination.
    Raises if the target relative off-norm is not reached in ``max_sweeps``.
    """
    A = _check_symmetric(M, tol)
    n = A.shape[0]
    V = np.eye(n)
    norm = float(np.linalg.norm(A))
    if n < 2 or norm == 0.0:
        w = np.diag(A).copy()
        order = np.argsort(-w, kind="stable")
        return w[order], V[:, order], 0.0
    target = tol * norm
    # Rotations below this size cannot push the off-norm above target.
    skip = target / (n * n)
    for _ in range(max_sweeps):
        if _offdiag_norm(A) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= skip:
                    continue
                theta = 0.5 * math.atan2(2.0 * apq, A[q, q] - A[p, p])
                c = math.cos(theta)
                s = math.sin(theta)
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    residual = _offdiag_norm(A)
    if residual > target:
        raise SpectralError(
            f"Jacobi iteration did not converge within {max_sweeps} sweeps "
            f"(off-norm {residual:.3e} > {target:.3e})"
        )
    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order], residual


def _second_largest_abs(eigenvalues: np.ndarray) -> float:
    by_abs = np.sort(np.abs(eigenvalues))[::-1]
    return float(by_abs[1])


def sym_eigenvalues(M: np.ndarray, tol: float = DEFAULT_TOL) -> SpectralReport:
    """All eigenvalues of a symmetric matrix, sorted descending."""
    w, _, residual = jacobi_eigensystem(M, tol)
    mu = _second_largest_abs(w) if w.size >= 2 else math.nan
    return SpectralReport(
        eigenvalues=tuple(float(x) for x in w), mu_star=mu, residual=residual
    )


def mu_star(M: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Second largest eigenvalue in absolute value (with multiplicity)."""
    A = np.asarray(M, dtype=float)
    if A.shape[0] < 2:
        raise SpectralError("mu_star needs a matrix of dimension >= 2")
    w, _, _ = jacobi_eigensystem(A, tol)
    return _second_largest_abs(w)


def laplacian_gap(graph, tol: float = DEFAULT_TOL) -> float:
    """Second-smallest eigenvalue of Q = diag(degree) - A; 0 iff disconnected."""
    adj = np.asarray(graph.adj, dtype=float)
    if adj.shape[0] < 2:
        raise SpectralError("laplacian gap needs at least 2 vertices")
    if np.any(np.diag(adj) != 0):
        raise SpectralError("laplacian_gap rejects graphs with loops")
    Q = np.diag(adj.sum(axis=1)) - adj
    w, _, _ = jacobi_eigensystem(Q, tol)
    return float(np.sort(w)[1])


def tanner_bound(
    n: int, m: int, k: float, r: float, lambda2: float, alpha: float
) -> float:
    """Concentration constant k^2 / (alpha*(k*r - lambda2) + lambda2).

    ``n``/``m`` are input/output counts, ``k``/``r`` the input/output degrees
    of a biregular bipartite graph, ``lambda2`` the second-largest eigenvalue
    of the input-side Gram matrix A A^T.  Valid for 0 < alpha <= m/n; every
    input set X with |X| <= alpha*n then has at least ``bound * |X|``
    neighbors.
    """
    if not 0 < alpha <= m / n + 1e-12:
        raise SpectralError(f"alpha={alpha} outside (0, m/n={m / n}]")
    if abs(r - n * k / m) > 1e-9 * max(1.0, abs(r)):
        raise SpectralError(f"degree mismatch: r={r} but n*k/m={n * k / m}")
    if lambda2 >= k * r:
        raise SpectralError(f"lambda2={lambda2} must be < k*r={k * r}")
    return k * k / (alpha * (k * r - lambda2) + lambda2)


def ramanujan_check(c: float, d: float, mu1: float, tol: float = 1e-9) -> bool:
    """Is mu1 <= sqrt(c-1) + sqrt(d-1) for a (c,d)-biregular graph?"""
    if c < 1 or d < 1:
        raise SpectralError("degrees must be >= 1")
    return mu1 <= math.sqrt(c - 1) + math.sqrt(d - 1) + tol


def magnifier_gap_bound(eps: float) -> float:
    """Laplacian-gap lower bound eps^2 / (4 + 2*eps^2) implied by magnification eps."""
    if eps < 0:
        raise SpectralError("magnification constant must be >= 0")
    return eps * eps / (4.0 + 2.0 * eps * eps)


def magnifier_gap_check(eps: float, lam: float, tol: float = 1e-9) -> bool:
    """Does the observed Laplacian gap meet the magnifier-implied bound?"""
    return lam >= magnifier_gap_bound(eps) - tol
