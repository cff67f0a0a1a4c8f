"""Black-box optimizers behind a budgeted, oracle-free interface."""

from .blackbox import BlackBox, BudgetExhausted, TargetReached
from .registry import (
    InvalidParameters,
    OptimizerConfig,
    OptimizerParams,
    UnknownOptimizer,
    get_optimizer,
    list_optimizers,
    register_optimizer,
    run_optimizer,
    validate_params,
)

# Importing the built-ins registers them.
from .de_lpr import DeLprParams, de_lpr, planned_population_size
from .direct_lite import DirectLiteParams, direct_lite, potentially_optimal
from .random_search import RandomSearchParams, random_search

__all__ = [
    "BlackBox",
    "BudgetExhausted",
    "TargetReached",
    "OptimizerConfig",
    "OptimizerParams",
    "UnknownOptimizer",
    "InvalidParameters",
    "register_optimizer",
    "get_optimizer",
    "list_optimizers",
    "validate_params",
    "run_optimizer",
    "random_search",
    "RandomSearchParams",
    "de_lpr",
    "DeLprParams",
    "planned_population_size",
    "direct_lite",
    "DirectLiteParams",
    "potentially_optimal",
]
