"""Small dense semidefinite programs via three-set consensus splitting.

Problems have the form

    maximize  <C, Z>
    s.t.      <A_i, Z> = b_i   (i = 1..k)
              Z >= 0 entrywise (optional)
              Z PSD

and are solved by consensus ADMM: one projection per constraint set
(affine subspace, nonnegative orthant, PSD cone), a consensus average
carrying the linear objective, and scaled dual updates.  Every step is
closed-form or a single dense eigendecomposition, and the iteration is
fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .spectral import check_symmetric, symmetrize

#: Penalty parameter rho = RHO_SCALE * n.  The consensus z-step adds
#: C / (num_sets * rho); scaling rho with the matrix dimension keeps that
#: drift comparable to the entry scale of trace-normalized solutions.
RHO_SCALE = 1.0

#: Over-relaxation factor applied to the projection outputs before the
#: consensus average; values in (1, 2) are the classical accelerated range.
OVER_RELAXATION = 1.0

_CHECK_EVERY = 25


class SdpSetupError(ValueError):
    """Problem assembly failed: degenerate or conflicting constraints."""


@dataclass(frozen=True, eq=False)
class SdpProblem:
    """maximize <objective, Z> over the intersection of the constraint sets."""

    objective: np.ndarray
    constraints: tuple
    require_nonneg: bool = False

    def __post_init__(self):
        c = check_symmetric(self.objective, "objective")
        object.__setattr__(self, "objective", c)
        if len(self.constraints) == 0:
            raise ValueError("constraint list must be non-empty")
        checked = []
        for i, (a, b) in enumerate(self.constraints):
            a = check_symmetric(a, f"constraint matrix {i}")
            if a.shape != c.shape:
                raise ValueError(f"constraint matrix {i} has shape {a.shape}, expected {c.shape}")
            b = float(b)
            if not np.isfinite(b):
                raise ValueError(f"constraint rhs {i} is not finite")
            checked.append((a, b))
        object.__setattr__(self, "constraints", tuple(checked))

    @property
    def n(self) -> int:
        return self.objective.shape[0]


@dataclass
class Residuals:
    """Feasibility violations of a candidate matrix, one per constraint set."""

    affine: float  # max |<A_i, Z> - b_i|
    psd: float     # |min eigenvalue| when negative, else 0
    nonneg: float  # |most negative entry| when negative, else 0

    @property
    def max(self) -> float:
        return max(self.affine, self.psd, self.nonneg)


@dataclass
class SdpSolution:
    z: np.ndarray
    value: float
    residuals: Residuals
    iterations: int
    converged: bool
    plateaued: bool
    residual_history: list


class _AffineProjector:
    """Orthogonal projection onto {Z : <A_i, Z> = b_i} with pruned constraints."""

    def __init__(self, constraints):
        rows, rhs = [], []
        seen = {}
        for a, b in constraints:
            if not np.any(a):
                if b != 0.0:
                    raise SdpSetupError("zero constraint matrix with nonzero right-hand side")
                continue
            key = a.tobytes()
            if key in seen:
                if rhs[seen[key]] != b:
                    raise SdpSetupError("duplicate constraint matrix with conflicting right-hand sides")
                continue
            seen[key] = len(rows)
            rows.append(a.ravel())
            rhs.append(b)
        if not rows:
            raise SdpSetupError("all constraints pruned away; nothing to project onto")
        self.stack = np.array(rows)
        self.rhs = np.array(rhs)
        gram = self.stack @ self.stack.T
        try:
            self.factor = cho_factor(gram)
        except np.linalg.LinAlgError as exc:
            raise SdpSetupError(f"constraint Gram matrix is rank-deficient: {exc}") from exc

    def violations(self, z: np.ndarray) -> np.ndarray:
        return self.stack @ z.ravel() - self.rhs

    def project(self, z: np.ndarray) -> np.ndarray:
        coeff = cho_solve(self.factor, -self.violations(z))
        return z + (self.stack.T @ coeff).reshape(z.shape)


def project_affine(m: np.ndarray, constraints) -> np.ndarray:
    """Nearest (Frobenius) point of the affine subspace {<A_i, Z> = b_i}."""
    m = check_symmetric(m, "matrix")
    return _AffineProjector(constraints).project(m)


def project_psd(m: np.ndarray) -> np.ndarray:
    """Nearest (Frobenius) PSD matrix: clamp negative eigenvalues to zero."""
    m = check_symmetric(m, "matrix")
    w, v = np.linalg.eigh(m)
    return symmetrize((v * np.clip(w, 0.0, None)) @ v.T)


def _psd_step(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    if w[0] >= 0.0:
        return m
    return symmetrize((v * np.clip(w, 0.0, None)) @ v.T)


def _residuals(z, projector, require_nonneg) -> Residuals:
    affine = float(np.max(np.abs(projector.violations(z))))
    min_eig = float(np.linalg.eigvalsh(z)[0])
    psd = max(0.0, -min_eig)
    nonneg = max(0.0, -float(z.min())) if require_nonneg else 0.0
    return Residuals(affine=affine, psd=psd, nonneg=nonneg)


def solve(
    problem: SdpProblem,
    tol: float = 1e-7,
    max_iter: int = 200000,
    rho: float = None,
    over_relaxation: float = None,
) -> SdpSolution:
    """Run consensus ADMM until every feasibility residual is at most tol.

    Returns the best iterate seen (the converged one when converged=True).
    The iteration is deterministic: identical inputs give bitwise-identical
    iterates.  When the residuals stop improving long before max_iter the
    solution is flagged plateaued (typically an infeasible or unbounded
    problem); iteration continues regardless, the caller decides.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    n = problem.n
    if rho is None:
        rho = RHO_SCALE * n
    if rho <= 0:
        raise ValueError(f"rho must be positive, got {rho}")
    alpha = OVER_RELAXATION if over_relaxation is None else over_relaxation
    if not 0.0 < alpha < 2.0:
        raise ValueError(f"over-relaxation must be in (0, 2), got {alpha}")

    projector = _AffineProjector(problem.constraints)
    num_sets = 3 if problem.require_nonneg else 2
    drift = problem.objective / (num_sets * rho)

    z = np.eye(n) / n
    u_aff = np.zeros((n, n))
    u_psd = np.zeros((n, n))
    u_nn = np.zeros((n, n)) if problem.require_nonneg else None

    best_z = z
    best_res = _residuals(z, projector, problem.require_nonneg)
    history = [(0, best_res.max)]
    converged = best_res.max <= tol
    iterations = 0

    while not converged and iterations < max_iter:
        iterations += 1

        x_aff = projector.project(z - u_aff)
        x_psd = _psd_step(z - u_psd)
        if alpha != 1.0:
            x_aff = alpha * x_aff + (1.0 - alpha) * z
            x_psd = alpha * x_psd + (1.0 - alpha) * z
        total = x_aff + u_aff + x_psd + u_psd
        if problem.require_nonneg:
            x_nn = np.maximum(z - u_nn, 0.0)
            if alpha != 1.0:
                x_nn = alpha * x_nn + (1.0 - alpha) * z
            total += x_nn + u_nn
        z = total / num_sets + drift
        u_aff += x_aff - z
        u_psd += x_psd - z
        if problem.require_nonneg:
            u_nn += x_nn - z

        if iterations % _CHECK_EVERY == 0 or iterations == max_iter:
            res = _residuals(z, projector, problem.require_nonneg)
            history.append((iterations, res.max))
            if res.max < best_res.max:
                best_res = res
                best_z = z
            if res.max <= tol:
                converged = True

    return SdpSolution(
        z=best_z,
        value=float(np.sum(problem.objective * best_z)),
        residuals=best_res,
        iterations=iterations,
        converged=converged,
        plateaued=_is_plateaued(history, converged),
        residual_history=history,
    )


def _is_plateaued(history, converged, window: int = 40, improvement: float = 0.5) -> bool:
    """No meaningful residual progress over the trailing window of checks."""
    if converged or len(history) < 2 * window:
        return False
    recent = min(r for _, r in history[-window:])
    earlier = min(r for _, r in history[:-window])
    return recent >= improvement * earlier
