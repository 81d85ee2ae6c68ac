"""Dense symmetric eigendecomposition and the positive/negative spectral split.

The adjacency matrix decomposes as A = A_plus - A_minus with both parts
positive semidefinite and supported on orthogonal eigenspaces.  s_plus and
s_minus are the sums of squares of the positive and negative eigenvalues,
i.e. the squared Frobenius norms of the two parts, and s_plus + s_minus
equals twice the edge count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, adjacency_matrix

MAX_JACOBI_SWEEPS = 30


class ConvergenceError(RuntimeError):
    """Eigensolver failed to reach its off-diagonal target within the sweep cap."""


def symmetrize(m: np.ndarray) -> np.ndarray:
    """Exactly symmetric copy of m: entry (u,v) is bitwise equal to (v,u)."""
    return (m + m.T) / 2.0


def check_symmetric(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    if not np.array_equal(m, m.T):
        raise ValueError(f"{name} is not symmetric")
    return m


def eigendecompose(m: np.ndarray, tol: float = 1e-12):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues sorted descending
    and eigenvectors as the corresponding orthonormal columns.  Sweeps run
    until the off-diagonal Frobenius norm is at most tol * ||m||_F, with a
    hard cap of MAX_JACOBI_SWEEPS sweeps.  The rotation order is fixed, so
    identical input gives identical output.
    """
    a = check_symmetric(m, "matrix").copy()
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = a.shape[0]
    if n < 1:
        raise ValueError("matrix must be at least 1x1")
    v = np.eye(n)

    frob = float(np.linalg.norm(a))
    target = tol * frob
    # Entries this small can never push the off-diagonal norm above target.
    rotate_floor = target / (4.0 * n * n) if n > 1 else 0.0

    def off_norm():
        off = a - np.diag(np.diag(a))
        return float(np.linalg.norm(off))

    sweeps = 0
    while off_norm() > target:
        if sweeps >= MAX_JACOBI_SWEEPS:
            raise ConvergenceError(
                f"Jacobi did not converge in {MAX_JACOBI_SWEEPS} sweeps; "
                f"off-diagonal norm {off_norm():.3e}, target {target:.3e}"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= rotate_floor:
                    continue
                app, aqq = a[p, p], a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                new_p = c * col_p - s * col_q
                new_q = s * col_p + c * col_q
                a[:, p] = new_p
                a[p, :] = new_p
                a[:, q] = new_q
                a[q, :] = new_q
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


@dataclass(frozen=True)
class SpectralSplit:
    """Eigendecomposition of a symmetric matrix partitioned by eigenvalue sign.

    a_plus collects the strictly positive eigenpairs, a_minus the negated
    strictly negative ones; eigenvalues within zero_threshold of 0 go to
    neither part.  s_plus = ||a_plus||_F^2 and s_minus = ||a_minus||_F^2.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    a_plus: np.ndarray
    a_minus: np.ndarray
    s_plus: float
    s_minus: float
    zero_threshold: float


def split(a: np.ndarray, zero_threshold: float = None) -> SpectralSplit:
    """Split a symmetric matrix into its positive and negative spectral parts.

    zero_threshold defaults to 1e-9 * n; eigenvalues with |lambda| at or
    below it are treated as zero and excluded from both parts.
    """
    a = check_symmetric(a, "matrix")
    n = a.shape[0]
    if zero_threshold is None:
        zero_threshold = 1e-9 * n
    if zero_threshold <= 0:
        raise ValueError(f"zero_threshold must be positive, got {zero_threshold}")
    eigenvalues, v = eigendecompose(a)
    pos = eigenvalues > zero_threshold
    neg = eigenvalues < -zero_threshold
    a_plus = symmetrize(v[:, pos] @ (eigenvalues[pos, None] * v[:, pos].T))
    a_minus = symmetrize(v[:, neg] @ (-eigenvalues[neg, None] * v[:, neg].T))
    return SpectralSplit(
        eigenvalues=eigenvalues,
        eigenvectors=v,
        a_plus=a_plus,
        a_minus=a_minus,
        s_plus=float(np.sum(eigenvalues[pos] ** 2)),
        s_minus=float(np.sum(eigenvalues[neg] ** 2)),
        zero_threshold=float(zero_threshold),
    )


def split_graph(g: Graph, zero_threshold: float = None) -> SpectralSplit:
    return split(adjacency_matrix(g), zero_threshold)


# ---------------------------------------------------------------------------
# Inner products and edge / non-edge partial sums
# ---------------------------------------------------------------------------


def hadamard(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Entrywise product.  For x = y the result is PSD (Schur product theorem)."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x * y


def inner(x: np.ndarray, y: np.ndarray) -> float:
    """Frobenius inner product <X, Y> = sum of entrywise products."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.sum(x * y))


def frobenius_sq(m: np.ndarray) -> float:
    return inner(m, m)


def _check_graph_dim(g: Graph, x: np.ndarray):
    if x.shape != (g.n, g.n):
        raise ValueError(f"matrix shape {x.shape} does not match graph on {g.n} vertices")


def edge_inner(g: Graph, x: np.ndarray, y: np.ndarray = None) -> float:
    """Sum of X_uv * Y_uv over ordered adjacent pairs uv (y defaults to x)."""
    x = np.asarray(x, dtype=float)
    y = x if y is None else np.asarray(y, dtype=float)
    _check_graph_dim(g, x)
    _check_graph_dim(g, y)
    mask = adjacency_matrix(g) != 0.0
    return float(np.sum((x * y)[mask]))


def nonedge_inner(g: Graph, x: np.ndarray, y: np.ndarray = None) -> float:
    """Sum of X_uv * Y_uv over ordered pairs uv that are NOT edges.

    Non-edge positions include the diagonal; with edge_inner this splits
    the full Frobenius inner product in two.
    """
    x = np.asarray(x, dtype=float)
    y = x if y is None else np.asarray(y, dtype=float)
    _check_graph_dim(g, x)
    _check_graph_dim(g, y)
    mask = adjacency_matrix(g) == 0.0
    return float(np.sum((x * y)[mask]))
