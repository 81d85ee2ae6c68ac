"""Spectral sums of squares, the vector chromatic number, and numerical
certification that min(s_plus, s_minus) * chi_vec >= 2m on concrete graphs."""

from .graphs import (
    Graph,
    Graph6Error,
    adjacency_matrix,
    complement,
    complement_adjacency_matrix,
    complete,
    complete_bipartite,
    corpus_from_spec,
    cycle,
    empty_graph,
    from_spec,
    generate,
    gnp,
    kneser,
    parse_graph6,
    path,
    write_graph6,
)
from .spectral import (
    ConvergenceError,
    SpectralSplit,
    edge_inner,
    eigendecompose,
    frobenius_sq,
    hadamard,
    inner,
    nonedge_inner,
    split,
    split_graph,
    symmetrize,
)
from .sdp import SdpProblem, SdpSetupError, SdpSolution, project_affine, project_psd, solve
from .chivec import ChiVecResult, build_sdp1, build_sdp2, chi_vec, lemma1_oracle, lift
from .verify import (
    Lemma2Report,
    TolProfile,
    VerificationReport,
    check_lemma2,
    check_theorem,
    chromatic_number_bruteforce,
    sweep,
)

__version__ = "0.1.0"
