"""Exact conditional randomization tests for externalities in network
formation: fixed-degree reference sampling, graphicality checks, a
degree-heterogeneity null model, test statistics, and a link-formation
game simulator."""

from .beta_model import (
    BetaModelMLE,
    MleConvergenceError,
    expected_degrees,
    fit_mle,
    link_prob,
    link_probability_matrix,
)
from .enumeration import enumerate_graphs, exact_distribution, exact_pvalue
from .game import (
    GameConfig,
    draw_shocks,
    find_pairwise_stable,
    is_pairwise_stable,
    marginal_utility,
    phi_map,
    sweep,
    two_point_heterogeneity,
)
from .graph import (
    DegreeSequence,
    EdgeListParseError,
    Graph,
    degree_sequence,
    parse_edge_list,
    serialize_edge_list,
)
from .graphical import (
    DeadEndError,
    NotGraphicalError,
    erdos_gallai_violation,
    havel_hakimi_graphical,
    is_graphical,
    require_graphical,
)
from .randomization import (
    RandomizationTest,
    TestReport,
    critical_value,
    critical_value_from_distribution,
    estimate_cardinality,
    estimate_pvalue,
    pvalue_standard_error,
    run_test,
)
from .sampling import RngStream, SampledDraw, sample, sample_batch
from .stats import (
    STATISTIC_NAMES,
    DistanceSummary,
    density,
    distances,
    evaluate_statistic,
    optimal_stat,
    s_tilde,
    s_tilde_matrix,
    transitivity_index,
    triangle_count,
    two_star_count,
)

__version__ = "0.1.0"

__all__ = [
    "BetaModelMLE",
    "DeadEndError",
    "DegreeSequence",
    "DistanceSummary",
    "EdgeListParseError",
    "GameConfig",
    "Graph",
    "MleConvergenceError",
    "NotGraphicalError",
    "RandomizationTest",
    "RngStream",
    "STATISTIC_NAMES",
    "SampledDraw",
    "TestReport",
    "critical_value",
    "critical_value_from_distribution",
    "degree_sequence",
    "density",
    "distances",
    "draw_shocks",
    "enumerate_graphs",
    "erdos_gallai_violation",
    "estimate_cardinality",
    "estimate_pvalue",
    "evaluate_statistic",
    "exact_distribution",
    "exact_pvalue",
    "expected_degrees",
    "find_pairwise_stable",
    "fit_mle",
    "havel_hakimi_graphical",
    "is_graphical",
    "is_pairwise_stable",
    "link_prob",
    "link_probability_matrix",
    "marginal_utility",
    "optimal_stat",
    "parse_edge_list",
    "phi_map",
    "pvalue_standard_error",
    "require_graphical",
    "run_test",
    "s_tilde",
    "s_tilde_matrix",
    "sample",
    "sample_batch",
    "serialize_edge_list",
    "sweep",
    "transitivity_index",
    "triangle_count",
    "two_point_heterogeneity",
    "two_star_count",
    "__version__",
]
