"""Makespan scheduling on related machines under smoothed inputs.

Library layout:
  model           instances, schedules, loads, JSON formats
  algorithms      list/LPT scheduling, jump and lex-jump local search,
                  near-list diagnostics
  oracle          exact optimum and worst-local-optimum enumeration,
                  closed-form quality bounds
  smoothing       piecewise-constant job-size densities, reproducible
                  sampling, Hoeffding statistics
  constructions   adversarial lower-bound instance families
  classification  machine-level structure diagnostics for near list
                  schedules
  harness         ratio estimation, deterministic CSV sweeps
  plotting        figure rendering for sweep reports
  cli             `smoothsched` command-line entry point
"""

from .algorithms import (
    JUMP,
    LEX_JUMP,
    NEIGHBORHOODS,
    PIVOT_RULES,
    Move,
    SearchResult,
    find_improving_move,
    find_near_list_order,
    greedy_extend,
    is_jump_optimal,
    is_lex_jump_optimal,
    is_near_list,
    list_schedule,
    local_search,
    lpt_order,
    lpt_schedule,
)
from .classification import (
    CheckResult,
    Classification,
    PreconditionError,
    StructureReport,
    classify,
    prefix_set,
    validate_nl_structure,
)
from .constructions import (
    CONSTRUCTION_NAMES,
    DEFAULT_MAX_JOBS,
    Construction,
    ConstructionSample,
    ParameterError,
    build_by_name,
    build_jump_related_lb,
    build_lexlist_lb,
    build_restricted_jump_lb,
    build_restricted_lex_lb,
    class_load_deviation,
    class_load_spread,
    layered_list_structure_ok,
    ratio_bound_margins,
    recurrence_a,
    restricted_lex_size,
)
from .harness import (
    CSV_COLUMNS,
    construction_point,
    estimate_smoothed_ratio,
    evaluate_points,
    random_schedule,
    smoothed_point,
    standard_smoothed_spec,
    sweep,
    worker_count,
    write_csv,
)
from .model import (
    DEFAULT_EPS,
    Instance,
    ModelError,
    Schedule,
    critical_machines,
    ensure_feasible,
    instance_from_dict,
    instance_to_dict,
    load,
    machine_loads,
    makespan,
    normalize,
    schedule_from_dict,
    schedule_to_dict,
    sorted_loads,
    validate_schedule,
)
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    WorstCaseResult,
    assignment_space_size,
    cho_sahni_bound,
    jump_quality_bound,
    local_optima_exact,
    makespan_lower_bound,
    mean_jump_ratio_bound,
    nl_expectation_bound,
    nl_tail_bound,
    optimal_makespan_bruteforce,
    optimal_makespan_exact,
    worst_local_optimum_exact,
)
from .smoothing import (
    DensitySpec,
    RatioEstimate,
    SmoothedInstanceSpec,
    check_sum_lower_tail,
    density_from_dict,
    density_to_dict,
    derive_seed,
    hoeffding_ci,
    hoeffding_tail,
    rng_stream,
    sample_instance,
    spec_from_dict,
    spec_to_dict,
    uniform_spec,
)

__version__ = "0.1.0"

__all__ = [
    "JUMP",
    "LEX_JUMP",
    "NEIGHBORHOODS",
    "PIVOT_RULES",
    "Move",
    "SearchResult",
    "find_improving_move",
    "find_near_list_order",
    "greedy_extend",
    "is_jump_optimal",
    "is_lex_jump_optimal",
    "is_near_list",
    "list_schedule",
    "local_search",
    "lpt_order",
    "lpt_schedule",
    "CheckResult",
    "Classification",
    "PreconditionError",
    "StructureReport",
    "classify",
    "prefix_set",
    "validate_nl_structure",
    "CONSTRUCTION_NAMES",
    "DEFAULT_MAX_JOBS",
    "Construction",
    "ConstructionSample",
    "ParameterError",
    "build_by_name",
    "build_jump_related_lb",
    "build_lexlist_lb",
    "build_restricted_jump_lb",
    "build_restricted_lex_lb",
    "class_load_deviation",
    "class_load_spread",
    "layered_list_structure_ok",
    "ratio_bound_margins",
    "recurrence_a",
    "restricted_lex_size",
    "CSV_COLUMNS",
    "construction_point",
    "estimate_smoothed_ratio",
    "evaluate_points",
    "random_schedule",
    "smoothed_point",
    "standard_smoothed_spec",
    "sweep",
    "worker_count",
    "write_csv",
    "DEFAULT_EPS",
    "Instance",
    "ModelError",
    "Schedule",
    "critical_machines",
    "ensure_feasible",
    "instance_from_dict",
    "instance_to_dict",
    "load",
    "machine_loads",
    "makespan",
    "normalize",
    "schedule_from_dict",
    "schedule_to_dict",
    "sorted_loads",
    "validate_schedule",
    "DEFAULT_BUDGET",
    "BudgetExceededError",
    "WorstCaseResult",
    "assignment_space_size",
    "cho_sahni_bound",
    "jump_quality_bound",
    "local_optima_exact",
    "makespan_lower_bound",
    "mean_jump_ratio_bound",
    "nl_expectation_bound",
    "nl_tail_bound",
    "optimal_makespan_bruteforce",
    "optimal_makespan_exact",
    "worst_local_optimum_exact",
    "DensitySpec",
    "RatioEstimate",
    "SmoothedInstanceSpec",
    "check_sum_lower_tail",
    "density_from_dict",
    "density_to_dict",
    "derive_seed",
    "hoeffding_ci",
    "hoeffding_tail",
    "rng_stream",
    "sample_instance",
    "spec_from_dict",
    "spec_to_dict",
    "uniform_spec",
    "__version__",
]
