"""Convergence curves aggregated over problems."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..exceptions import LabError
from .trace import RunTrace


class MixedBudgets(LabError):
    """Raised when traces with different budgets are aggregated together."""

    def __init__(self, budgets: Sequence[int]):
        self.budgets = sorted(set(budgets))
        super().__init__(f"Cannot aggregate traces with different budgets: {self.budgets}")


@dataclass(frozen=True)
class ConvergenceTable:
    """Best error per trace on a checkpoint grid, with the cross-trace mean and median."""

    grid: np.ndarray
    labels: list[str]
    per_trace: np.ndarray
    mean: np.ndarray
    median: np.ndarray


def convergence_aggregate(traces: Sequence[RunTrace], grid: np.ndarray) -> ConvergenceTable:
    """
    Interpolate each trace onto ``grid`` (piecewise constant) and aggregate.

    Args:
        traces: Runs sharing one budget
        grid: Evaluation checkpoints

    Returns:
        ConvergenceTable; before a trace's first evaluation its value is inf

    Raises:
        MixedBudgets: If the traces do not share a budget
        ValueError: If ``traces`` is empty
    """
    if not traces:
        raise ValueError("convergence_aggregate needs at least one trace")
    budgets = [t.budget for t in traces]
    if len(set(budgets)) > 1:
        raise MixedBudgets(budgets)
    grid = np.asarray(grid, dtype=np.float64)
    per_trace = np.vstack([t.best_error_at(grid) for t in traces])
    with np.errstate(invalid="ignore"):
        mean = per_trace.mean(axis=0)
        median = np.median(per_trace, axis=0)
    return ConvergenceTable(
        grid=grid,
        labels=[f"{t.problem}/{t.seed}" for t in traces],
        per_trace=per_trace,
        mean=mean,
        median=median,
    )
