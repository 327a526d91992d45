"""Adversarial combinatorial semi-bandits with graph-structured feedback.

The library covers the full pipeline: feedback graphs and their structural
numbers, the truncated budget polytope with entropy projection, vertex
decomposition and negatively correlated rounding, the mirror-descent
policy with graph reward estimates, elimination and explore-then-commit
baselines, hard-instance generators, and a seeded experiment harness.
"""

from .environments import (
    BernoulliSource,
    CapacityReduction,
    CliqueAveragedSource,
    FixedSequenceSource,
    capacity_reduction,
    clique_partition_instance,
    emit_round,
    hard_instance_gap,
    lower_bound_instance,
    partition_decision_subset,
)
from .errors import (
    AlignmentBroken,
    BadPartition,
    BudgetExceeded,
    CapExceeded,
    ConfigError,
    DegenerateTuning,
    DenominatorZero,
    EmptyActive,
    EmptyPolytope,
    ExchangeFailure,
    ExhaustedSequence,
    FeedbackAccessError,
    GraphBanditsError,
    InfeasiblePoint,
    InsufficientData,
    InvalidArm,
    NotObservable,
    NumericalFailure,
)
from .feedback import FeedbackView
from .feedback_graph import (
    EXACT_INDEPENDENCE_CAP,
    FeedbackGraph,
    GraphProfile,
    Observability,
    classify_observability,
    clique_partition_graph,
    complete_graph,
    cycle_graph,
    graph_profile,
    greedy_dominating_set,
    greedy_independent_set,
    hub_graph,
    independence_number_exact,
    load_graph,
    make_graph,
    out_neighborhood,
    restricted_subgraph,
    save_graph,
    self_loops_graph,
)
from .harness import (
    ExperimentConfig,
    Instance,
    RegretTrace,
    SeparationReport,
    SweepResult,
    build_instance,
    config_hash,
    fit_scaling_exponent,
    hindsight_best,
    load_config,
    make_policy,
    parse_config,
    read_trace,
    run,
    run_single,
    separation_experiment,
    sweep_and_fit,
    write_trace,
)
from .policies import (
    EliminationPolicy,
    EtcPolicy,
    OsmdgPolicy,
    UniformRandomPolicy,
    as_decision_tuples,
    estimate_losses,
    estimate_rewards,
    recommended_parameters,
)
from .polytope import (
    PolytopeSpec,
    VertexDecomposition,
    decompose,
    dual_step,
    initial_point,
    kl_project,
    validate_point,
)
from .rng import RNG_ALGORITHM, derived_rng, environment_rng, policy_rng
from .sampling import (
    CliqueAlignedSampler,
    MeanOnlySampler,
    SamplerReport,
    SwapRoundingSampler,
    certify_sampler,
    clique_aligned_sample,
    make_sampler,
    mean_only_sample,
    swap_round,
)

__version__ = "0.1.0"
