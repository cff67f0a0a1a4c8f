"""Empirical cumulative distribution of runtimes over (run, target) pairs."""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..config import settings


@dataclass(frozen=True)
class EcdfCurve:
    """
    Fraction of (run, target) pairs attained within ``x`` evaluations.

    ``hit_times`` holds the sorted first-hit evaluation of every attained
    pair; ``total_pairs`` counts attained and unattained pairs alike.
    """

    x: np.ndarray
    y: np.ndarray
    hit_times: np.ndarray
    total_pairs: int

    @property
    def terminal(self) -> float:
        return float(self.y[-1])

    def at(self, evaluations: float) -> float:
        """Step-function value after ``evaluations`` evaluations (0 below 1)."""
        if evaluations < 1:
            return 0.0
        return int(np.searchsorted(self.hit_times, evaluations, side="right")) / self.total_pairs


def ecdf_grid(budget: int, size: int) -> np.ndarray:
    """``size`` log-spaced abscissae from 1 to ``budget``, the last one exactly ``budget``."""
    if size < 2:
        raise ValueError(f"grid size must be >= 2, got {size}")
    grid = np.geomspace(1.0, float(budget), size)
    grid[0] = 1.0
    grid[-1] = float(budget)
    return grid


def ecdf(
    hits: Sequence[Sequence[Optional[int]]],
    budget: int,
    grid_size: Optional[int] = None,
) -> EcdfCurve:
    """
    Build the runtime distribution from first-hit tables.

    Args:
        hits: One row per run (ordered by problem id), one entry per target;
            None marks a target the run never attained
        budget: Evaluation budget shared by the runs
        grid_size: Number of abscissae (defaults to the configured size)

    Returns:
        EcdfCurve on a log grid from 1 to ``budget``

    Raises:
        ValueError: If ``hits`` is empty or rows differ in length
    """
    if not hits:
        raise ValueError("ecdf needs at least one run")
    width = len(hits[0])
    if width == 0 or any(len(row) != width for row in hits):
        raise ValueError("every run must carry the same non-empty target list")
    grid = ecdf_grid(budget, grid_size or settings.ecdf_grid_size)
    times = np.sort(np.array([h for row in hits for h in row if h is not None], dtype=np.float64))
    total = len(hits) * width
    y = np.searchsorted(times, grid, side="right") / total
    return EcdfCurve(x=grid, y=y, hit_times=times, total_pairs=total)
