"""Ratings and rankings from pairwise comparisons on networks.

The pipeline: a comparison network becomes a 3-clique complex, outcome
counts become a link flow through a logistic link, and the flow's
decomposition into gradient, solenoidal, and harmonic parts yields ratings
(the gradient potential) plus a measure of how consistent the data is.  A
benchmark harness plants known ratings, injects quenched Gaussian
disorder, and maps out where rating and ranking retrieval break down on
lattice, random, scale-free, and small-world topologies.
"""

from .decomposition import (HodgeDecomposition, graph_laplacian_apply,
                            helmholtzian_apply, hodge_decompose,
                            rating_from_cochain)
from .estimator import HodgeRanker
from .experiment import (AllTrialsDiscardedError, ConnectivityError, SweepGrid,
                         SweepRow, TrialConfig, TrialResult,
                         make_disordered_cochain, run_sweep, run_trial,
                         true_ratings)
from .generators import (MODEL_CODES, MODELS, NetworkSpec, barabasi_albert,
                         erdos_renyi, generate, lattice1d, sample,
                         sample_stream, watts_strogatz)
from .ratings import (ComparisonCounts, ProbabilityTriple,
                      comparisons_to_cochain, map_estimate, rank_from_ratings,
                      rho, tau)
from .rng import float_bits, make_rng, mix64, stream_id
from .simplicial import (CliqueComplex, ComplexStats, Graph,
                         build_clique_complex, complex_stats, incidence_1,
                         incidence_2, n_components)
from .solver import ConvergenceError, SolveReport, SolverConfig, min_norm_lsq
from .transition import (Curve, FitConvergenceError, NoTransitionError,
                         PowerLawFit, SigmoidFit, fit_power_law,
                         fit_sigmoid_primitive, select_range_and_fit,
                         softplus_primitive)

__version__ = "0.1.0"

__all__ = [
    "Graph", "CliqueComplex", "ComplexStats", "build_clique_complex",
    "incidence_1", "incidence_2", "complex_stats", "n_components",
    "SolverConfig", "SolveReport", "ConvergenceError", "min_norm_lsq",
    "HodgeDecomposition", "hodge_decompose", "rating_from_cochain",
    "graph_laplacian_apply", "helmholtzian_apply",
    "ProbabilityTriple", "ComparisonCounts", "map_estimate",
    "comparisons_to_cochain", "rank_from_ratings", "tau", "rho",
    "MODELS", "MODEL_CODES", "NetworkSpec", "lattice1d", "erdos_renyi",
    "barabasi_albert", "watts_strogatz", "generate", "sample", "sample_stream",
    "TrialConfig", "TrialResult", "SweepGrid", "SweepRow",
    "AllTrialsDiscardedError", "ConnectivityError", "true_ratings",
    "make_disordered_cochain", "run_trial", "run_sweep",
    "Curve", "SigmoidFit", "PowerLawFit", "NoTransitionError",
    "FitConvergenceError", "softplus_primitive", "fit_sigmoid_primitive",
    "select_range_and_fit", "fit_power_law",
    "mix64", "stream_id", "float_bits", "make_rng",
    "HodgeRanker",
    "__version__",
]
