"""Personalized PageRank on sparse random graphs.

Generators for the standard random-graph families, exact PageRank by power
iteration with a dense oracle, closed-form asymptotic approximations,
spectral diagnostics, and a seeded experiment harness with a CLI.
"""

from .errors import (
    DenseSizeError,
    DisconnectedGraphError,
    DuplicateEdgeError,
    EmptyGraphError,
    EmptySetError,
    InadmissibleWeightsError,
    InvalidParameterError,
    LengthMismatchError,
    MaxIterationsError,
    PrlabError,
    ProbabilityVectorError,
    ScenarioError,
    SelfLoopError,
    VertexOutOfRangeError,
    ZeroDegreeError,
)
from .graph_core import (
    Graph,
    apply_P,
    apply_Q,
    build_graph,
    is_connected,
    read_edge_list,
    stationary_distribution,
    write_edge_list,
)
from .generators import (
    SbmParams,
    Seed,
    WeightVector,
    gen_chung_lu,
    gen_er,
    gen_sbm,
    geometric_clipped_weights,
    power_law_weights,
    read_weights,
    write_weights,
)
from .pagerank import (
    PageRankConfig,
    PageRankResult,
    as_probability_vector,
    pagerank_dense_oracle,
    pagerank_power,
    preference_set,
    preference_uniform,
    preference_unit,
    read_vector,
    write_vector,
)
from .asymptotics import (
    SbmAverageOperator,
    asymptotic_mixture,
    sbm_asymptotic,
    sbm_equal_closed_form,
)
from .metrics import ErrorReport, error_report, weak_convergence_bound
from .experiments import (
    CSV_HEADER,
    FAMILIES,
    ExperimentRecord,
    Scenario,
    emit_csv,
    emit_loglog,
    load_config,
    median,
    parse_csv,
    run_scenario,
    success_fraction,
)
from .spectral import (
    SpectralReport,
    chung_lu_deviation_norm,
    degree_concentration_stat,
    dense_spectrum_oracle,
    qtilde_localization_stat,
    sbm_deviation_norm,
    second_eigenvalue_magnitude,
)

__version__ = "0.1.0"
