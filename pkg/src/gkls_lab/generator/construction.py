"""Construction of GKLS problems by rejection sampling of attraction balls."""

import logging
from typing import Optional

import numpy as np

from ..exceptions import LabError
from ..rng import derive_seed, make_generator
from .distortion import distortion_coefficients
from .models import GklsProblem, GklsSpec, InvalidSpec, readonly

logger = logging.getLogger(__name__)

# The vertex is kept this far from the domain faces.
VERTEX_MARGIN = 1e-2
GLOBAL_PLACEMENT_ATTEMPTS = 10_000
DIRECTIONS_PER_VERTEX = 100
LOCAL_ATTEMPTS_PER_MINIMUM = 1_000
# Smallest radius drawn for a local ball, relative to its admissible room.
MIN_RADIUS_FRACTION = 0.1
# A local centre is admissible when a ball of this fraction of r fits there.
ADMISSIBLE_ROOM_FRACTION = 0.5
# Gap kept between local values and both f* and the paraboloid floor, relative to |f*|.
VALUE_GUARD_FRACTION = 1e-3


class PlacementFailure(LabError):
    """Raised when the attraction balls cannot be placed within the attempt cap."""

    def __init__(self, message: str, attempts: int, problem_index: Optional[int] = None):
        self.message = message
        self.attempts = attempts
        self.problem_index = problem_index
        where = f" (problem {problem_index})" if problem_index is not None else ""
        super().__init__(f"Placement failed{where} after {attempts} attempts: {message}")


def problem_seed(spec: GklsSpec, problem_index: int) -> int:
    """Seed of the stream for one problem, mixing every spec field and the index."""
    return derive_seed(
        "gkls-problem",
        spec.class_seed,
        spec.fn_type.value,
        spec.dim,
        spec.num_minima,
        float(spec.global_value),
        float(spec.dist_to_vertex),
        float(spec.global_radius),
        problem_index,
    )


def _place_global(
    rng: np.random.Generator, spec: GklsSpec, problem_index: int
) -> tuple[np.ndarray, np.ndarray, int]:
    """Draw the vertex and a global centre at distance d whose r-ball fits in the domain."""
    d, r = spec.dist_to_vertex, spec.global_radius
    vertex = np.empty(spec.dim)
    for attempt in range(GLOBAL_PLACEMENT_ATTEMPTS):
        # Some vertices near a corner admit no direction at all; move on after a while.
        if attempt % DIRECTIONS_PER_VERTEX == 0:
            vertex = rng.uniform(-1.0 + VERTEX_MARGIN, 1.0 - VERTEX_MARGIN, size=spec.dim)
        direction = rng.standard_normal(spec.dim)
        norm = np.sqrt(np.sum(direction * direction))
        if norm == 0.0:
            continue
        center = vertex + d * (direction / norm)
        if np.all(center - r >= -1.0) and np.all(center + r <= 1.0):
            return vertex, center, attempt + 1
    raise PlacementFailure(
        "global minimizer ball does not fit inside the domain",
        attempts=GLOBAL_PLACEMENT_ATTEMPTS,
        problem_index=problem_index,
    )


def generate_problem(spec: GklsSpec, problem_index: int) -> GklsProblem:
    """
    Construct problem number ``problem_index`` of the class ``spec``.

    Args:
        spec: Class recipe
        problem_index: 1-based index within the class

    Returns:
        The realized problem, identical for identical arguments

    Raises:
        InvalidSpec: If the spec or index is invalid
        PlacementFailure: If disjoint balls cannot be placed
    """
    spec.validate()
    if problem_index < 1:
        raise InvalidSpec(f"problem index must be >= 1, got {problem_index}")

    seed = problem_seed(spec, problem_index)
    rng = make_generator(seed)
    dim, h = spec.dim, spec.num_minima
    f_star, r = spec.global_value, spec.global_radius
    guard = VALUE_GUARD_FRACTION * abs(f_star)
    min_room = ADMISSIBLE_ROOM_FRACTION * r

    vertex, global_center, attempts = _place_global(rng, spec, problem_index)

    centers = np.empty((h - 1, dim))
    radii = np.empty(h - 1)
    values = np.empty(h - 1)
    centers[0], radii[0], values[0] = global_center, r, f_star

    placed = 1
    cap = LOCAL_ATTEMPTS_PER_MINIMUM * h
    local_attempts = 0
    while placed < h - 1:
        if local_attempts >= cap:
            raise PlacementFailure(
                f"placed {placed + 1} of {h} minimizers",
                attempts=attempts + local_attempts,
                problem_index=problem_index,
            )
        local_attempts += 1
        candidate = rng.uniform(-1.0, 1.0, size=dim)
        if np.any(np.abs(candidate) >= 1.0):
            continue
        to_vertex = float(np.sqrt(np.sum((candidate - vertex) ** 2)))
        gaps = np.sqrt(np.sum((centers[:placed] - candidate) ** 2, axis=1)) - radii[:placed]
        room = min(to_vertex, float(np.min(gaps)), r)
        if room < min_room:
            continue
        radius = rng.uniform(MIN_RADIUS_FRACTION * room, room)
        ceiling = (to_vertex - radius) ** 2 - guard
        value = rng.uniform(f_star + guard, ceiling)
        centers[placed], radii[placed], values[placed] = candidate, radius, value
        placed += 1

    coef_radial, coef_directional = distortion_coefficients(spec.fn_type, centers - vertex, radii, values)
    total_attempts = attempts + local_attempts
    logger.debug(
        f"Generated problem {problem_index} ({spec.fn_type.value}, D={dim}, h={h}) "
        f"in {total_attempts} placement attempts"
    )
    return GklsProblem(
        spec=spec,
        problem_index=problem_index,
        seed=seed,
        vertex=readonly(vertex),
        centers=readonly(centers),
        radii=readonly(radii),
        values=readonly(values),
        coef_radial=readonly(coef_radial),
        coef_directional=readonly(coef_directional),
        placement_attempts=total_attempts,
    )


def rebuild_problem(
    spec: GklsSpec,
    problem_index: int,
    seed: int,
    vertex: np.ndarray,
    centers: np.ndarray,
    radii: np.ndarray,
    values: np.ndarray,
    placement_attempts: int = 0,
) -> GklsProblem:
    """Reassemble a problem from stored geometry (used when loading manifests)."""
    vertex = np.asarray(vertex, dtype=np.float64)
    centers = np.asarray(centers, dtype=np.float64).reshape(-1, spec.dim)
    coef_radial, coef_directional = distortion_coefficients(
        spec.fn_type, centers - vertex, np.asarray(radii, dtype=np.float64), np.asarray(values, dtype=np.float64)
    )
    return GklsProblem(
        spec=spec,
        problem_index=problem_index,
        seed=seed,
        vertex=readonly(vertex),
        centers=readonly(centers),
        radii=readonly(radii),
        values=readonly(values),
        coef_radial=readonly(coef_radial),
        coef_directional=readonly(coef_directional),
        placement_attempts=placement_attempts,
    )
