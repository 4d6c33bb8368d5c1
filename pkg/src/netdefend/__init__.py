"""Cost-based attack and defense analysis on flow-carrying networks.

Builds networks (grown scale-free, uniformly random, or from edge lists),
assigns each node a capacity proportional to the shortest-path load it
carries, and simulates overload cascades set off by attacks. Defense
budgets are spread by a one-parameter capacity power law; sweeps over that
parameter locate the allocation at which a concentrated strike on the
biggest nodes and a budget-matched distributed strike on the smallest do
equal damage.
"""

from .graph import (
    Graph,
    GeneratorConfig,
    generate,
    load_edge_list,
    components,
    largest_component_size,
)
from .load import CONVENTIONS, compute_load, oracle_load, warm_up
from .cascade import (
    CapacityProfile,
    CascadeResult,
    assign_capacity,
    run_cascade,
    intact_result,
)
from .defense import (
    CA,
    DA,
    DefenseAllocation,
    AttackPlan,
    allocate_defense,
    tie_permutation,
    build_concentrated,
    build_distributed,
)
from .sweep import (
    CSV_COLUMNS,
    STUDY_AXES,
    CrossoverResult,
    NoCrossoverError,
    StudyPoint,
    SweepEngine,
    SweepRecord,
    SweepSettings,
    efficiency_argmin,
    evaluate_pair,
    find_crossover,
    parameter_study,
    read_records_csv,
    records_csv_text,
    write_records_csv,
)
from .config import (
    ExperimentConfig,
    PRESETS,
    beta_range,
    load_config,
    parse_beta_grid,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GeneratorConfig",
    "generate",
    "load_edge_list",
    "components",
    "largest_component_size",
    "CONVENTIONS",
    "compute_load",
    "oracle_load",
    "warm_up",
    "CapacityProfile",
    "CascadeResult",
    "assign_capacity",
    "run_cascade",
    "intact_result",
    "CA",
    "DA",
    "DefenseAllocation",
    "AttackPlan",
    "allocate_defense",
    "tie_permutation",
    "build_concentrated",
    "build_distributed",
    "CSV_COLUMNS",
    "STUDY_AXES",
    "SweepRecord",
    "SweepSettings",
    "SweepEngine",
    "CrossoverResult",
    "NoCrossoverError",
    "StudyPoint",
    "evaluate_pair",
    "find_crossover",
    "efficiency_argmin",
    "parameter_study",
    "records_csv_text",
    "write_records_csv",
    "read_records_csv",
    "ExperimentConfig",
    "PRESETS",
    "beta_range",
    "load_config",
    "parse_beta_grid",
]
