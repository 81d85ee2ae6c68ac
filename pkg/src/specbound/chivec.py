"""The vector chromatic number via two equivalent semidefinite programs.

Formulation 1:  max <J, Z>  s.t.  <I, Z> = 1,  Z zero on non-adjacent pairs,
                Z >= 0, Z PSD.
Formulation 2:  max <J, Z>  s.t.  <I + A_complement, Z> = 1,  Z >= 0, Z PSD.

Every formulation-1 feasible point is formulation-2 feasible with the same
objective, and a constructive lift sends formulation-2 solutions back:
add, for each non-adjacent pair uv carrying positive weight, the PSD
rank-one term Z_uv (e_u - e_v)(e_u - e_v)^T.  That cancels the off-support
entries, moves their mass to the diagonal, and preserves <J, Z>, so the
two optima coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graphs import Graph, adjacency_matrix, complement_adjacency_matrix
from .sdp import SdpProblem, SdpSolution, solve


def _nonadjacent_pairs(g: Graph):
    return [
        (u, v) for u, v in itertools.combinations(range(g.n), 2) if (u, v) not in g.edges
    ]


def build_sdp1(g: Graph) -> SdpProblem:
    """Trace-normalized formulation: one zero constraint per non-adjacent pair."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    n = g.n
    constraints = [(np.eye(n), 1.0)]
    for u, v in _nonadjacent_pairs(g):
        a = np.zeros((n, n))
        a[u, v] = 1.0
        a[v, u] = 1.0
        constraints.append((a, 0.0))
    return SdpProblem(np.ones((n, n)), tuple(constraints), require_nonneg=True)


def build_sdp2(g: Graph) -> SdpProblem:
    """Single-constraint formulation: <I + A_complement, Z> = 1."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    n = g.n
    constraint = np.eye(n) + complement_adjacency_matrix(g)
    return SdpProblem(np.ones((n, n)), ((constraint, 1.0),), require_nonneg=True)


def _check_nonneg_psd(z: np.ndarray, tol: float, what: str):
    min_entry = float(z.min())
    if min_entry < -tol:
        raise ValueError(f"{what} has entry {min_entry:.3e} below -{tol:.1e}")
    min_eig = float(np.linalg.eigvalsh(z)[0])
    if min_eig < -tol * max(1.0, float(np.linalg.norm(z))):
        raise ValueError(f"{what} has eigenvalue {min_eig:.3e} below tolerance")


def lift(z0: np.ndarray, g: Graph, tol: float = 1e-6) -> np.ndarray:
    """Move off-support mass of a formulation-2 feasible point to the diagonal.

    For each non-adjacent pair uv with (Z0)_uv > 0 the rank-one PSD matrix
    (Z0)_uv (e_u - e_v)(e_u - e_v)^T is added, which zeroes the entry at uv
    and credits it to both diagonal positions.  Entries in [-tol, 0] are
    clamped to zero first; anything more negative violates the feasibility
    hypothesis and raises.  Non-adjacent positions of the result are set to
    exactly zero (they cancel analytically).
    """
    z0 = np.asarray(z0, dtype=float)
    if z0.shape != (g.n, g.n):
        raise ValueError(f"matrix shape {z0.shape} does not match graph on {g.n} vertices")
    _check_nonneg_psd(z0, tol, "lift input")
    p = np.clip(z0, 0.0, None)

    off_support = np.zeros_like(p)
    for u, v in _nonadjacent_pairs(g):
        off_support[u, v] = p[u, v]
        off_support[v, u] = p[v, u]
    lifted = p - off_support + np.diag(off_support.sum(axis=1))
    for u, v in _nonadjacent_pairs(g):
        lifted[u, v] = 0.0
        lifted[v, u] = 0.0
    return lifted


class Lemma1Check(NamedTuple):
    """Evaluation of <J,Z> <= chi_vec * <J - A, Z> for one witness Z."""

    lhs: float
    rhs: float
    slack: float


def lemma1_oracle(g: Graph, z: np.ndarray, chi_vec_value: float, tol: float = 1e-8) -> Lemma1Check:
    """Check the universal inequality behind the bound on one PSD nonnegative Z.

    Returns (<J,Z>, chi_vec * <J - A, Z>, rhs - lhs).  The inequality is
    scale-invariant, so z needs no normalization; it must however be
    entrywise nonnegative and PSD within tol (hypothesis of the claim).
    """
    z = np.asarray(z, dtype=float)
    if z.shape != (g.n, g.n):
        raise ValueError(f"matrix shape {z.shape} does not match graph on {g.n} vertices")
    _check_nonneg_psd(z, tol, "oracle witness")
    lhs = float(z.sum())
    edge_mass = float(np.sum(z[adjacency_matrix(g) != 0.0]))
    rhs = chi_vec_value * (lhs - edge_mass)
    return Lemma1Check(lhs=lhs, rhs=rhs, slack=rhs - lhs)


@dataclass
class ChiVecResult:
    """Both formulations solved on one graph, plus the lift of the second."""

    value_sdp1: float
    value_sdp2: float
    z1: np.ndarray
    z2: np.ndarray
    lifted: np.ndarray
    agreement_gap: float
    solution1: SdpSolution
    solution2: SdpSolution

    @property
    def value(self) -> float:
        """Reported vector chromatic number (the single-constraint solve)."""
        return self.value_sdp2

    @property
    def converged(self) -> bool:
        return self.solution1.converged and self.solution2.converged


def chi_vec(g: Graph, tol: float = 1e-7, max_iter: int = 200000) -> ChiVecResult:
    """Solve both formulations and lift the second solution into the first."""
    sol1 = solve(build_sdp1(g), tol=tol, max_iter=max_iter)
    sol2 = solve(build_sdp2(g), tol=tol, max_iter=max_iter)
    lift_tol = max(10.0 * sol2.residuals.max, 1e-12)
    lifted = lift(sol2.z, g, tol=lift_tol)
    return ChiVecResult(
        value_sdp1=sol1.value,
        value_sdp2=sol2.value,
        z1=sol1.z,
        z2=sol2.z,
        lifted=lifted,
        agreement_gap=abs(sol1.value - sol2.value),
        solution1=sol1,
        solution2=sol2,
    )
