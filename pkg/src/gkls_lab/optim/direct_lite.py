"""Deterministic partitioning by hyper-rectangle trisection.

The domain is mapped to the unit cube. A box is stored as its centre and,
per coordinate, the number of times it has been trisected along that
coordinate (its side there is ``3**-level``). Every iteration picks, among
the lowest-valued box of each size, those on the lower-right convex hull of
(size, value) that also promise an improvement of at least ``epsilon``
relative to the best value, and trisects them along their longest sides.
"""

import heapq
import logging
from dataclasses import dataclass, field

import numpy as np
from pydantic import Field

from .blackbox import BlackBox
from .registry import OptimizerParams, register_optimizer

logger = logging.getLogger(__name__)


class DirectLiteParams(OptimizerParams):
    epsilon: float = Field(default=1e-4, ge=0)
    # Boxes trisected this often along every coordinate are no longer divided.
    max_level: int = Field(default=30, ge=1, le=60)


def _box_size(levels: tuple[int, ...]) -> float:
    """Half the diagonal of a box with the given (sorted) trisection levels."""
    return 0.5 * float(np.sqrt(np.sum(np.power(9.0, -np.asarray(levels, dtype=np.float64)))))


@dataclass
class _Partition:
    dim: int
    centers: list[np.ndarray] = field(default_factory=list)
    levels: list[np.ndarray] = field(default_factory=list)
    values: list[float] = field(default_factory=list)
    keys: list[tuple[int, ...]] = field(default_factory=list)
    # size key -> heap of (value, box index); entries whose box moved to another key are stale
    groups: dict[tuple[int, ...], list[tuple[float, int]]] = field(default_factory=dict)

    def add(self, center: np.ndarray, levels: np.ndarray, value: float) -> int:
        index = len(self.centers)
        self.centers.append(center)
        self.levels.append(levels)
        self.values.append(value)
        self.keys.append(())
        self._file(index)
        return index

    def relevel(self, index: int, levels: np.ndarray) -> None:
        self.levels[index] = levels
        self._file(index)

    def _file(self, index: int) -> None:
        key = tuple(sorted(self.levels[index].tolist()))
        self.keys[index] = key
        heapq.heappush(self.groups.setdefault(key, []), (self.values[index], index))

    def group_minima(self, max_level: int) -> list[tuple[float, float, int]]:
        """(size, value, box) of the lowest-valued divisible box of every size, by ascending size."""
        out = []
        for key, heap in self.groups.items():
            while heap and self.keys[heap[0][1]] != key:
                heapq.heappop(heap)
            if heap and key[0] < max_level:
                value, index = heap[0]
                out.append((_box_size(key), value, index))
        out.sort()
        return out


def _cross(o: tuple, a: tuple, b: tuple) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def potentially_optimal(candidates: list[tuple[float, float, int]], f_min: float, epsilon: float) -> list[int]:
    """
    Select boxes from per-size minima sorted by size.

    Args:
        candidates: (size, value, box) with strictly increasing size
        f_min: Best value found so far
        epsilon: Required relative improvement

    Returns:
        Box indices on the lower-right convex hull that pass the improvement
        condition; the largest box on the hull always passes
    """
    if not candidates:
        return []
    best = min(c[1] for c in candidates)
    start = max(k for k, c in enumerate(candidates) if c[1] == best)
    hull: list[tuple[float, float, int]] = []
    for point in candidates[start:]:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)

    threshold = f_min - epsilon * abs(f_min)
    chosen = []
    for k, (size, value, index) in enumerate(hull):
        if k + 1 < len(hull):
            next_size, next_value, _ = hull[k + 1]
            slope = (next_value - value) / (next_size - size)
            if value - slope * size > threshold:
                continue
        chosen.append(index)
    return chosen


def _to_domain(box: BlackBox, unit_points: np.ndarray) -> np.ndarray:
    return box.lower + (box.upper - box.lower) * unit_points


def _trisect(box: BlackBox, partition: _Partition, index: int) -> None:
    center = partition.centers[index]
    levels = partition.levels[index]
    longest = np.flatnonzero(levels == levels.min())
    delta = 3.0 ** -(int(levels.min()) + 1)

    trials = []
    for axis in longest:
        for sign in (1.0, -1.0):
            point = center.copy()
            point[axis] += sign * delta
            trials.append(point)
    values = box.evaluate_batch(_to_domain(box, np.array(trials)))

    pairs = values.reshape(len(longest), 2)
    # Axes with the lowest trial value go first, so their children keep the largest boxes.
    order = np.argsort(pairs.min(axis=1), kind="stable")
    current = levels.copy()
    for k in order:
        axis = longest[k]
        current[axis] += 1
        partition.add(trials[2 * k], current.copy(), float(pairs[k, 0]))
        partition.add(trials[2 * k + 1], current.copy(), float(pairs[k, 1]))
    partition.relevel(index, current)


@register_optimizer("direct_lite", DirectLiteParams, deterministic=True)
def direct_lite(box: BlackBox, rng: np.random.Generator, params: DirectLiteParams) -> None:
    partition = _Partition(box.dim)
    center = np.full(box.dim, 0.5)
    partition.add(center, np.zeros(box.dim, dtype=np.int64), box.evaluate(_to_domain(box, center)))

    iteration = 0
    while True:
        iteration += 1
        selected = potentially_optimal(partition.group_minima(params.max_level), box.best_value, params.epsilon)
        if not selected:
            logger.debug(f"No divisible box left after {iteration} iterations")
            return
        for index in selected:
            _trisect(box, partition, index)
