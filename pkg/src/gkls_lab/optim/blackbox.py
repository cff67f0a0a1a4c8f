"""The only view of a test problem an optimizer ever gets."""

from typing import Callable, Optional

import numpy as np

from ..generator import GklsProblem, evaluate_many


class BudgetExhausted(Exception):
    """Raised inside a run when the evaluation budget is used up."""


class TargetReached(Exception):
    """Raised inside a run when the best error reaches the stop threshold."""


class BlackBox:
    """
    Budgeted objective on [-1, 1]^D.

    Optimizers see the dimension, the bounds, the evaluation counter and the
    best point found so far. The wrapped problem, its minimizers and its
    optimum stay private; the optimum is only used to turn values into
    errors for the trace.
    """

    def __init__(self, objective: Callable[[np.ndarray], np.ndarray], dim: int, optimum: float, label: str = ""):
        self.__objective = objective
        self.__optimum = float(optimum)
        self.dim = dim
        self.label = label
        self.lower = -np.ones(dim)
        self.upper = np.ones(dim)
        self.reset(budget=1, stop_error=0.0)

    @classmethod
    def for_problem(cls, problem: GklsProblem, label: str = "") -> "BlackBox":
        return cls(lambda points: evaluate_many(problem, points), problem.dim, problem.global_value, label)

    def reset(self, budget: int, stop_error: float) -> None:
        """Start a fresh run with ``budget`` evaluations."""
        self._budget = budget
        self._stop_error = stop_error
        self._evaluations = 0
        self._best_error = np.inf
        self._best_x: Optional[np.ndarray] = None
        self._best_value = np.inf
        self._improvements: list[tuple[int, float]] = []

    @property
    def budget(self) -> int:
        return self._budget

    @property
    def evaluations(self) -> int:
        return self._evaluations

    @property
    def remaining(self) -> int:
        return self._budget - self._evaluations

    @property
    def best_x(self) -> Optional[np.ndarray]:
        return None if self._best_x is None else self._best_x.copy()

    @property
    def best_value(self) -> float:
        return self._best_value

    @property
    def improvements(self) -> list[tuple[int, float]]:
        return list(self._improvements)

    def evaluate(self, x: np.ndarray) -> float:
        """Evaluate one point, counting one evaluation."""
        return float(self.evaluate_batch(np.asarray(x, dtype=np.float64)[None, :])[0])

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate rows of ``points`` in order, one evaluation each.

        Rows beyond the remaining budget are not evaluated. Bookkeeping stops
        at the first row whose error reaches the stop threshold.

        Raises:
            BudgetExhausted: If no budget is left, or the batch did not fit
            TargetReached: If a row reached the stop threshold
            OutOfDomain: If a row lies outside [-1, 1]^D
        """
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        if self._evaluations >= self._budget:
            raise BudgetExhausted()
        take = points[: self.remaining]
        values = self.__objective(take)
        # f* is the exact minimum; clamp rounding noise below it
        errors = np.maximum(values - self.__optimum, 0.0)
        reached = np.flatnonzero(errors <= self._stop_error)
        used = int(reached[0]) + 1 if reached.size else len(errors)
        self._record(take[:used], values[:used], errors[:used])
        if reached.size:
            raise TargetReached()
        if len(take) < len(points):
            raise BudgetExhausted()
        return values

    def _record(self, points: np.ndarray, values: np.ndarray, errors: np.ndarray) -> None:
        start = self._evaluations
        previous = np.concatenate(([self._best_error], np.minimum.accumulate(errors)[:-1]))
        previous = np.minimum(previous, self._best_error)
        for k in np.flatnonzero(errors < previous):
            self._improvements.append((start + int(k) + 1, float(errors[k])))
        if len(errors):
            k = int(np.argmin(errors))
            if errors[k] < self._best_error:
                self._best_error = float(errors[k])
                self._best_value = float(values[k])
                self._best_x = points[k].copy()
        self._evaluations += len(errors)
