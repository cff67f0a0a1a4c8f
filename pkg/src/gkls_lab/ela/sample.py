"""Uniform samples of a landscape, the input of every feature set."""

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from ..config import settings
from ..exceptions import LabError
from ..generator import GklsProblem, evaluate_many
from ..rng import derive_seed, make_generator

Objective = Callable[[np.ndarray], np.ndarray]


class DegenerateSample(LabError):
    """Raised when a feature is undefined on the given sample (e.g. constant values)."""

    def __init__(self, feature_set: str, message: str):
        self.feature_set = feature_set
        self.message = message
        super().__init__(f"{feature_set}: {message}")


@dataclass(frozen=True, eq=False)
class Sample:
    points: np.ndarray
    values: np.ndarray
    seed: int

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def presorted(self) -> "Sample":
        """Rows in lexicographic order of the points, so results do not depend on row order."""
        order = np.lexsort(self.points.T[::-1])
        return Sample(points=self.points[order], values=self.values[order], seed=self.seed)


def sample_seed(master_seed: int, suite: str, problem_index: int) -> int:
    return derive_seed("gkls-ela-sample", master_seed, suite, problem_index)


def draw_sample(
    problem: Union[GklsProblem, Objective],
    n: Optional[int] = None,
    seed: int = 0,
    dim: Optional[int] = None,
) -> Sample:
    """
    Draw ``n`` i.i.d. uniform points in [-1, 1]^D and evaluate them.

    Args:
        problem: A generated problem, or a vectorized objective mapping an
            (n, D) array to n values (then ``dim`` is required)
        n: Sample size; defaults to the configured multiple of D
        seed: Sampling seed
        dim: Dimension of an external objective

    Returns:
        The sample, identical for identical arguments

    Raises:
        ValueError: If ``n`` < 2, ``dim`` is missing, or a value is not finite
    """
    if isinstance(problem, GklsProblem):
        dim = problem.dim
        objective: Objective = lambda points: evaluate_many(problem, points)  # noqa: E731
    else:
        if dim is None:
            raise ValueError("dim is required for an external objective")
        objective = problem
    if n is None:
        n = settings.sample_multiplier * dim
    if n < 2:
        raise ValueError(f"sample size must be >= 2, got {n}")

    rng = make_generator(seed)
    points = rng.uniform(-1.0, 1.0, size=(n, dim))
    values = np.asarray(objective(points), dtype=np.float64)
    if values.shape != (n,) or not np.all(np.isfinite(values)):
        raise ValueError("objective must return one finite value per point")
    return Sample(points=points, values=values, seed=seed)
