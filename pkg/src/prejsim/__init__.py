"""prejsim: prejudice dynamics in group-structured societies under the
Continuous Prisoner's Dilemma, with a reproducible experiment harness."""

from .engine import HAS_KERNEL, resolve_engine
from .errors import ConfigurationError, UsageError
from .game import payoff
from .interaction import (
    InteractionRecord,
    beta_thresholds,
    cooperation_level,
    faction_prejudice,
    step,
    update_faction_alignment,
    update_prejudice,
)
from .metrics import (
    alignment_series,
    least_squares_slope,
    payoff_ratio_series,
    prejudice_series,
)
from .model import (
    AgentState,
    ExperienceStore,
    SocietyConfig,
    SocietyState,
    new_society,
)
from .opinions import (
    effective_prejudice,
    faction_opinion,
    faction_prejudiced_opinion,
    opinion,
    prejudiced_opinion,
)
from .outputs import write_outputs, write_sweep_summary
from .params import (
    AgentKind,
    MemorySemantics,
    ModelParams,
    PayoffParams,
    UpdateParams,
)
from .runner import (
    AveragedResult,
    RunResult,
    derive_seed,
    run,
    run_repeated,
)
from .scenarios import (
    PRESET_NAMES,
    GroupSpec,
    ScenarioSpec,
    build_scenario,
    load_scenario,
    preset,
)

__version__ = "0.1.0"
