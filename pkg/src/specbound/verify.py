"""Certify the spectral bound min(s+, s-) >= 2m / chi_vec on concrete graphs.

check_theorem runs the whole chain on one graph: the spectral split, both
vector-chromatic SDPs, the lift between them, the universal inequality
<J,Z> <= chi_vec <J-A,Z> on the squared split parts, and every identity
of the supporting algebra (the placeholder quantity d computed two ways,
the Cauchy-Schwarz step in both of its forms, and the final implication),
in both (X, Y) = (A+, A-) orientations.  sweep aggregates over corpora.
"""

from __future__ import annotations

import concurrent.futures
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .chivec import chi_vec, lemma1_oracle
from .graphs import Graph, adjacency_matrix, write_graph6
from .spectral import (
    check_symmetric,
    edge_inner,
    frobenius_sq,
    hadamard,
    nonedge_inner,
    split,
)


@dataclass(frozen=True)
class TolProfile:
    """Every tolerance used by certification, pinned in one place.

    Slack-style checks on quantities that scale with the graph use the
    relative factor (1 + 2m); identity checks on floating-point arithmetic
    use absolute thresholds.
    """

    sdp_tol: float = 1e-7          # per-cone solver residuals
    sdp_max_iter: int = 200000
    agreement_tol: float = 1e-5    # |value_sdp1 - value_sdp2|
    cert_slack_tol: float = 1e-5   # min(s+,s-)*chi - 2m >= -cert_slack_tol*(1+2m)
    eq_tol: float = 1e-4           # |min(s+,s-)*chi - 2m| <= eq_tol*(1+2m) flags equality
    lift_feas_tol: float = 1e-7    # lifted point: per-constraint and cone residuals
    lift_objective_tol: float = 1e-9
    d_identity_tol: float = 1e-8   # scaled by (1 + ||A||_F^2) = (1 + 2m)
    cauchy_tol: float = 1e-8       # absolute, both Cauchy-Schwarz forms
    lemma1_tol: float = 1e-6       # oracle slack floor, scaled by (1 + 2m)
    psd_tol: float = 1e-8          # PSD hypothesis tolerance on split parts
    recon_tol: float = 1e-9        # eigendecomposition reconstruction, x n x ||A||_F
    sum_sq_tol: float = 1e-8       # |s+ + s- - 2m| <= sum_sq_tol*(1+2m)
    orth_tol: float = 1e-8         # ||A+ A-||_F
    zero_threshold: float = None   # spectral split cutoff; None = 1e-9 * n


@dataclass(frozen=True)
class Lemma2Report:
    """All quantities of the supporting algebra for one (X, Y) orientation.

    Every field is computed directly from its definition; in particular the
    placeholder d is evaluated independently as the non-edge square sum of X
    and as minus the edge sum of X o Y, and the reported Cauchy-Schwarz
    sides come straight from the edge sums.
    """

    xy_product_norm: float    # ||X Y||_F
    offedge_agreement: float  # max |X_uv - Y_uv| over ordered uv not in E (incl. diagonal)
    d_from_nonedges: float    # sum_{uv not in E} X_uv^2
    d_from_edges: float       # -sum_{uv in E} X_uv Y_uv
    cauchy_lhs: float         # d^2
    cauchy_rhs: float         # (sum_E X_uv^2)(sum_E Y_uv^2)
    mu: float                 # chi_vec - 1
    hypothesis_lhs: float     # ||X||^2
    hypothesis_rhs: float     # (1 + mu) * d
    conclusion_lhs: float     # ||X||^2
    conclusion_rhs: float     # mu * ||Y||^2

    @property
    def d_gap(self) -> float:
        return abs(self.d_from_nonedges - self.d_from_edges)

    def hypothesis_holds(self, tol: float) -> bool:
        return self.hypothesis_lhs <= self.hypothesis_rhs + tol

    def conclusion_holds(self, tol: float) -> bool:
        return self.conclusion_lhs <= self.conclusion_rhs + tol


def check_lemma2(x: np.ndarray, y: np.ndarray, g: Graph, mu: float,
                 psd_tol: float = 1e-8) -> Lemma2Report:
    """Evaluate the algebraic chain for PSD matrices X, Y indexed by g's vertices."""
    x = check_symmetric(x, "x")
    y = check_symmetric(y, "y")
    if x.shape != (g.n, g.n) or y.shape != (g.n, g.n):
        raise ValueError(f"matrices must be {g.n}x{g.n} to match the graph")
    for name, mat in (("x", x), ("y", y)):
        min_eig = float(np.linalg.eigvalsh(mat)[0]) if g.n else 0.0
        if min_eig < -psd_tol * max(1.0, float(np.linalg.norm(mat))):
            raise ValueError(f"{name} is not PSD within tolerance (min eigenvalue {min_eig:.3e})")

    nonedge_mask = adjacency_matrix(g) == 0.0
    d_nonedges = nonedge_inner(g, x, x)
    d_edges = -edge_inner(g, x, y)
    edge_x_sq = edge_inner(g, x, x)
    edge_y_sq = edge_inner(g, y, y)
    x_norm_sq = frobenius_sq(x)
    y_norm_sq = frobenius_sq(y)
    return Lemma2Report(
        xy_product_norm=float(np.linalg.norm(x @ y)),
        offedge_agreement=float(np.max(np.abs((x - y)[nonedge_mask]))) if g.n else 0.0,
        d_from_nonedges=d_nonedges,
        d_from_edges=d_edges,
        cauchy_lhs=d_nonedges * d_nonedges,
        cauchy_rhs=edge_x_sq * edge_y_sq,
        mu=float(mu),
        hypothesis_lhs=x_norm_sq,
        hypothesis_rhs=(1.0 + mu) * d_nonedges,
        conclusion_lhs=x_norm_sq,
        conclusion_rhs=mu * y_norm_sq,
    )


@dataclass(frozen=True)
class VerificationReport:
    """Everything checked on one graph, with slacks, plus the verdict."""

    graph6: str
    n: int
    m: int
    s_plus: float = math.nan
    s_minus: float = math.nan
    chi_vec: float = math.nan
    bound: float = math.nan          # 2m / chi_vec
    slack_main: float = math.nan     # min(s+, s-) - bound
    cross_slack: float = math.nan    # min(s+, s-) * chi_vec - 2m
    value_sdp1: float = math.nan
    value_sdp2: float = math.nan
    agreement_gap: float = math.nan
    sdp_converged: bool = False
    lemma2_forward: Lemma2Report = None
    lemma2_swapped: Lemma2Report = None
    lemma1_slack_plus: float = math.nan   # oracle slack, witness (A+ o A+)
    lemma1_slack_minus: float = math.nan  # oracle slack, witness (A- o A-)
    forward_bound_slack: float = math.nan  # (chi-1) s_minus - s_plus
    swapped_bound_slack: float = math.nan  # (chi-1) s_plus - s_minus
    lift_affine_violation: float = math.nan
    lift_min_eigenvalue: float = math.nan
    lift_min_entry: float = math.nan
    lift_objective_drift: float = math.nan
    spectral_recon_error: float = math.nan
    sum_sq_gap: float = math.nan     # |s+ + s- - 2m|
    equality_case: bool = False
    certified: bool = False
    failures: tuple = ()
    error: str = None


def _lemma2_failures(report: Lemma2Report, label: str, scale: float, tol: TolProfile):
    failures = []
    if report.d_gap > tol.d_identity_tol * scale:
        failures.append(f"d_identity_{label}")
    if report.cauchy_lhs > report.cauchy_rhs + tol.cauchy_tol:
        failures.append(f"cauchy_{label}")
    # Second, equivalent form of the same step: (||X||^2 + ||Y||^2) d <= ||X||^2 ||Y||^2.
    x_sq = report.hypothesis_lhs
    y_sq = x_sq - report.d_from_nonedges + (report.cauchy_rhs / x_sq if False else 0.0)
    if (x_sq + _y_norm_sq(report)) * report.d_from_nonedges > x_sq * _y_norm_sq(report) + tol.cauchy_tol:
        failures.append(f"cauchy_product_form_{label}")
    eta = tol.lemma1_tol * scale
    if report.hypothesis_holds(eta) and not report.conclusion_holds(eta):
        failures.append(f"lemma2_implication_{label}")
    return failures


def _y_norm_sq(report: Lemma2Report) -> float:
    # ||Y||^2 recovered without dividing by mu (mu may be ~0): by the
    # off-edge agreement, ||Y||^2 = sum_E Y^2 + d, and cauchy_rhs encodes
    # the edge sum product.  Simpler and exact: edge_y_sq = cauchy_rhs /
    # edge_x_sq breaks when X vanishes on edges, so carry it directly.
    return report._y_norm_sq


def check_theorem(g: Graph, tol: TolProfile = None) -> VerificationReport:
    """Run the full certification chain on one graph."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    tol = tol or TolProfile()
    m2 = 2 * g.m
    scale = 1.0 + m2
    a = adjacency_matrix(g)
    a_frob = float(np.linalg.norm(a))

    sp = split(a, tol.zero_threshold)
    recon = sp.eigenvectors @ (sp.eigenvalues[:, None] * sp.eigenvectors.T)
    recon_error = float(np.linalg.norm(recon - a))

    cv = chi_vec(g, tol=tol.sdp_tol, max_iter=tol.sdp_max_iter)
    chi = cv.value
    mu = chi - 1.0
    bound = m2 / chi
    s_min = min(sp.s_plus, sp.s_minus)
    cross_slack = s_min * chi - m2

    l1_plus = lemma1_oracle(g, hadamard(sp.a_plus, sp.a_plus), chi, tol=tol.psd_tol)
    l1_minus = lemma1_oracle(g, hadamard(sp.a_minus, sp.a_minus), chi, tol=tol.psd_tol)
    fwd = check_lemma2(sp.a_plus, sp.a_minus, g, mu, psd_tol=tol.psd_tol)
    swp = check_lemma2(sp.a_minus, sp.a_plus, g, mu, psd_tol=tol.psd_tol)

    lifted = cv.lifted
    clamped_z2 = np.clip(cv.z2, 0.0, None)
    nonadj_off = (a == 0.0) & ~np.eye(g.n, dtype=bool)
    lift_affine = abs(float(np.trace(lifted)) - 1.0)
    if nonadj_off.any():
        lift_affine = max(lift_affine, float(np.max(np.abs(lifted[nonadj_off]))))
    lift_min_eig = float(np.linalg.eigvalsh(lifted)[0])
    lift_min_entry = float(lifted.min())
    lift_drift = abs(float(lifted.sum()) - float(clamped_z2.sum()))

    failures = []
    if not cv.converged:
        failures.append("sdp_not_converged")
    if cv.agreement_gap > tol.agreement_tol:
        failures.append("formulation_disagreement")
    if cross_slack < -tol.cert_slack_tol * scale:
        failures.append("main_bound")
    if mu * sp.s_minus - sp.s_plus < -tol.cert_slack_tol * scale:
        failures.append("proof_inequality_forward")
    if mu * sp.s_plus - sp.s_minus < -tol.cert_slack_tol * scale:
        failures.append("proof_inequality_swapped")
    if l1_plus.slack < -tol.lemma1_tol * scale:
        failures.append("lemma1_plus")
    if l1_minus.slack < -tol.lemma1_tol * scale:
        failures.append("lemma1_minus")
    failures += _lemma2_failures(fwd, "forward", scale, tol)
    failures += _lemma2_failures(swp, "swapped", scale, tol)
    if lift_affine > tol.lift_feas_tol:
        failures.append("lift_affine")
    if lift_min_entry < -tol.lift_feas_tol:
        failures.append("lift_nonneg")
    if lift_min_eig < -tol.lift_feas_tol:
        failures.append("lift_psd")
    if lift_drift > tol.lift_objective_tol:
        failures.append("lift_objective")
    if recon_error > tol.recon_tol * g.n * max(a_frob, 1.0):
        failures.append("spectral_reconstruction")
    if abs(sp.s_plus + sp.s_minus - m2) > tol.sum_sq_tol * scale:
        failures.append("sum_of_squares_identity")
    if fwd.xy_product_norm > tol.orth_tol:
        failures.append("split_orthogonality")

    return VerificationReport(
        graph6=write_graph6(g),
        n=g.n,
        m=g.m,
        s_plus=sp.s_plus,
        s_minus=sp.s_minus,
        chi_vec=chi,
        bound=bound,
        slack_main=s_min - bound,
        cross_slack=cross_slack,
        value_sdp1=cv.value_sdp1,
        value_sdp2=cv.value_sdp2,
        agreement_gap=cv.agreement_gap,
        sdp_converged=cv.converged,
        lemma2_forward=fwd,
        lemma2_swapped=swp,
        lemma1_slack_plus=l1_plus.slack,
        lemma1_slack_minus=l1_minus.slack,
        forward_bound_slack=mu * sp.s_minus - sp.s_plus,
        swapped_bound_slack=mu * sp.s_plus - sp.s_minus,
        lift_affine_violation=lift_affine,
        lift_min_eigenvalue=lift_min_eig,
        lift_min_entry=lift_min_entry,
        lift_objective_drift=lift_drift,
        spectral_recon_error=recon_error,
        sum_sq_gap=abs(sp.s_plus + sp.s_minus - m2),
        equality_case=abs(cross_slack) <= tol.eq_tol * scale,
        certified=not failures,
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# Exact chromatic number (sanity oracle: chi_vec <= chi)
# ---------------------------------------------------------------------------


def chromatic_number_bruteforce(g: Graph, max_n: int = 14) -> int:
    """Exact chromatic number by branch and bound; refuses n > max_n."""
    if g.n > max_n:
        raise ValueError(f"graph too large for exact coloring: n={g.n} > {max_n}")
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    adj = g.neighbor_sets()
    order = sorted(range(g.n), key=lambda v: (-len(adj[v]), v))

    # Greedy clique on the degree order gives a true lower bound.
    clique = []
    for v in order:
        if all(v in adj[u] for u in clique):
            clique.append(v)
    lower = len(clique)

    # Greedy coloring gives an upper bound.
    colors = {}
    for v in order:
        used = {colors[u] for u in adj[v] if u in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    upper = max(colors.values()) + 1

    def colorable(k: int) -> bool:
        assignment = [-1] * g.n

        def place(idx: int, used: int) -> bool:
            if idx == len(order):
                return True
            v = order[idx]
            forbidden = {assignment[u] for u in adj[v] if assignment[u] >= 0}
            for c in range(min(used + 1, k)):
                if c in forbidden:
                    continue
                assignment[v] = c
                if place(idx + 1, max(used, c + 1)):
                    return True
                assignment[v] = -1
            return False

        return place(0, 0)

    for k in range(lower, upper):
        if colorable(k):
            return k
    return upper


# ---------------------------------------------------------------------------
# Corpus sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSummary:
    total: int
    certified: int
    equality_cases: int
    failures: tuple  # (index, graph6, reason) triples
    min_slack: float
    min_cross_slack: float


@dataclass(frozen=True)
class SweepResult:
    reports: tuple
    summary: SweepSummary


def _check_one(args) -> VerificationReport:
    g, tol = args
    try:
        return check_theorem(g, tol)
    except Exception as exc:  # per-graph failures must never abort the sweep
        return VerificationReport(
            graph6=write_graph6(g),
            n=g.n,
            m=g.m,
            certified=False,
            failures=("exception",),
            error=f"{type(exc).__name__}: {exc}",
        )


def sweep(graphs, tol: TolProfile = None, parallel: bool = False,
          max_workers: int = None) -> SweepResult:
    """check_theorem over a corpus; reports stay in input order.

    Per-graph errors are captured in the report (error field) rather than
    raised.  With parallel=True graphs are distributed over processes; the
    result is identical to the sequential run.
    """
    graphs = list(graphs)
    tol = tol or TolProfile()
    jobs = [(g, tol) for g in graphs]
    if parallel and len(graphs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(_check_one, jobs, chunksize=1))
    else:
        reports = [_check_one(job) for job in jobs]

    failures = []
    for i, r in enumerate(reports):
        if not r.certified:
            reason = r.error if r.error else ",".join(r.failures)
            failures.append((i, r.graph6, reason))
    finite_slacks = [r.slack_main for r in reports if not math.isnan(r.slack_main)]
    finite_cross = [r.cross_slack for r in reports if not math.isnan(r.cross_slack)]
    summary = SweepSummary(
        total=len(reports),
        certified=sum(r.certified for r in reports),
        equality_cases=sum(r.equality_case for r in reports),
        failures=tuple(failures),
        min_slack=min(finite_slacks) if finite_slacks else math.nan,
        min_cross_slack=min(finite_cross) if finite_cross else math.nan,
    )
    return SweepResult(reports=tuple(reports), summary=summary)
