"""Net-flow outranking analysis.

Rank alternatives by pairwise outranking net flows, migrate rankings
smoothly through a first-order filter when preferences evolve, and
identify criterion weights from decision-maker scores or rankings.
"""

from .core import (
    CriteriaMatrix,
    CriterionFlows,
    FlowResult,
    PreferenceModel,
    RankEntry,
    ThresholdTriple,
    concordance,
    criterion_net_flows,
    discordance,
    flows,
    outranking_degree,
    outranking_matrix,
    pairwise_difference,
    rank,
    static_scores,
    uniform_weights,
    validate_model,
)
from .dynamics import (
    FilterConfig,
    RankEvent,
    Scenario,
    ScheduleEntry,
    Trajectory,
    TrajectoryStep,
    active_parameters,
    closed_form_constant_schedule,
    detect_rank_events,
    filter_step,
    iterate_to_steady,
    make_filter,
    simulate,
    steady_state,
)
from .identify import (
    IdentificationProblem,
    IdentifiedWeights,
    equipartition_targets,
    fit_weights,
    fit_weights_from_ranking,
)
from .io import (
    bundled_criteria,
    bundled_switch_scenario,
    load_criteria,
    load_model,
    load_scenario,
    load_trajectory,
    write_criteria,
    write_model,
    write_scenario,
    write_trajectory,
)

__version__ = "0.1.0"

__all__ = [
    "CriteriaMatrix",
    "CriterionFlows",
    "FilterConfig",
    "FlowResult",
    "IdentificationProblem",
    "IdentifiedWeights",
    "PreferenceModel",
    "RankEntry",
    "RankEvent",
    "Scenario",
    "ScheduleEntry",
    "ThresholdTriple",
    "Trajectory",
    "TrajectoryStep",
    "active_parameters",
    "bundled_criteria",
    "bundled_switch_scenario",
    "closed_form_constant_schedule",
    "concordance",
    "criterion_net_flows",
    "detect_rank_events",
    "discordance",
    "equipartition_targets",
    "filter_step",
    "fit_weights",
    "fit_weights_from_ranking",
    "flows",
    "iterate_to_steady",
    "load_criteria",
    "load_model",
    "load_scenario",
    "load_trajectory",
    "make_filter",
    "outranking_degree",
    "outranking_matrix",
    "pairwise_difference",
    "rank",
    "simulate",
    "static_scores",
    "steady_state",
    "uniform_weights",
    "validate_model",
    "write_criteria",
    "write_model",
    "write_scenario",
    "write_trajectory",
    "__version__",
]
