"""Optimizer registry and the run driver shared by every optimizer."""

import logging
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..bench.trace import RunTrace
from ..exceptions import LabError
from ..rng import make_generator
from .blackbox import BlackBox, BudgetExhausted, TargetReached

logger = logging.getLogger(__name__)


class UnknownOptimizer(LabError):
    """Raised for a name with no registered optimizer."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown optimizer '{name}'; registered: {', '.join(sorted(_REGISTRY))}")


class InvalidParameters(LabError):
    """Raised when run arguments or an optimizer's parameter map are invalid."""

    def __init__(self, optimizer: str, message: str):
        self.optimizer = optimizer
        self.message = message
        super().__init__(f"Invalid parameters for {optimizer}: {message}")


class OptimizerParams(BaseModel):
    """Base for per-optimizer parameter models; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class OptimizerConfig(BaseModel):
    """Which optimizer to run, with what seed and parameters."""

    model_config = ConfigDict(extra="forbid")

    name: str
    seed: int = Field(default=0, ge=0, lt=2**64)
    params: dict[str, float | int] = Field(default_factory=dict)


RunFunction = Callable[[BlackBox, np.random.Generator, Any], None]


@dataclass(frozen=True)
class RegisteredOptimizer:
    name: str
    params_model: type[OptimizerParams]
    run: RunFunction
    deterministic: bool


_REGISTRY: dict[str, RegisteredOptimizer] = {}


def register_optimizer(name: str, params_model: type[OptimizerParams], deterministic: bool = False):
    """
    Register ``run(box, rng, params)`` under ``name``.

    The run function evaluates through ``box`` until the box stops it, or
    returns early when it has nothing left to try.
    """

    def decorator(run: RunFunction) -> RunFunction:
        _REGISTRY[name] = RegisteredOptimizer(name, params_model, run, deterministic)
        return run

    return decorator


def get_optimizer(name: str) -> RegisteredOptimizer:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownOptimizer(name) from None


def list_optimizers() -> dict[str, dict[str, Any]]:
    """Default parameter map of every registered optimizer."""
    return {name: entry.params_model().model_dump() for name, entry in sorted(_REGISTRY.items())}


def validate_params(name: str, params: dict[str, Any]) -> OptimizerParams:
    entry = get_optimizer(name)
    try:
        return entry.params_model.model_validate(params)
    except ValidationError as e:
        details = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        raise InvalidParameters(name, details) from e


def run_optimizer(config: OptimizerConfig, box: BlackBox, budget: int, stop_error: float) -> RunTrace:
    """
    Run one optimizer on one black box.

    Args:
        config: Optimizer name, seed and parameters
        box: Objective; its counters are reset for this run
        budget: Maximum number of evaluations
        stop_error: The run stops as soon as the best error is at or below it

    Returns:
        The run's improvement trace

    Raises:
        UnknownOptimizer: If no optimizer is registered under ``config.name``
        InvalidParameters: If ``budget`` < 1, ``stop_error`` < 0 or the
            parameter map does not validate
    """
    entry = get_optimizer(config.name)
    if budget < 1:
        raise InvalidParameters(config.name, f"budget must be >= 1, got {budget}")
    if not stop_error >= 0.0:
        raise InvalidParameters(config.name, f"stop error must be >= 0, got {stop_error}")
    params = validate_params(config.name, config.params)

    box.reset(budget=budget, stop_error=stop_error)
    rng = make_generator(config.seed)
    outcome = "returned"
    try:
        entry.run(box, rng, params)
    except BudgetExhausted:
        outcome = "budget exhausted"
    except TargetReached:
        outcome = "target reached"

    improvements = box.improvements
    trace = RunTrace(
        problem=box.label,
        optimizer=config.name,
        seed=config.seed,
        evals=np.array([e for e, _ in improvements], dtype=np.int64),
        errors=np.array([err for _, err in improvements], dtype=np.float64),
        used=box.evaluations,
        budget=budget,
    )
    logger.debug(
        f"{config.name} on {box.label}: {outcome} after {box.evaluations} evaluations, "
        f"best error {trace.final_error:.3e}"
    )
    return trace
