"""Randomized "mod" classes: one independently drawn recipe per problem.

Each problem draws its type by a fair coin over {D, ND}, ``d ~ U[0, 1]``,
``r = d / u`` with ``u`` uniform in {2, ..., 10}, ``h = round(10**c)`` with
``c ~ U[1, 3]`` and ``f* = -1``. A tuple whose global ball may not fit
the domain (``d + r > 1``) or that violates the recipe invariants
(``d == 0``) is discarded and redrawn in full, so every marginal is the
unconditioned one restricted to feasible tuples. Suites additionally redraw
a recipe whose problem cannot be placed at its index in the suite.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import LabError
from ..generator import FunctionType, GklsSpec, InvalidSpec, PlacementFailure, generate_problem
from ..rng import derive_seed, make_generator

logger = logging.getLogger(__name__)

MOD_CLASS_SIZE = 50
MAX_DRAWS = 1_000_000
MIN_DIVISOR, MAX_DIVISOR = 2, 10
MIN_LOG_MINIMA, MAX_LOG_MINIMA = 1.0, 3.0


class SamplerFailure(LabError):
    """Raised when the draw cap is reached before ``n`` feasible recipes were found."""

    def __init__(self, draws: int, accepted: int):
        self.draws = draws
        self.accepted = accepted
        super().__init__(f"Mod-class sampler gave up after {draws} draws with {accepted} feasible recipes")


@dataclass(frozen=True)
class ModTuple:
    """One raw draw, before the feasibility check."""

    fn_type: FunctionType
    dist_to_vertex: float
    divisor: int
    log_minima: float

    @property
    def global_radius(self) -> float:
        return self.dist_to_vertex / self.divisor

    @property
    def num_minima(self) -> int:
        # Half away from zero; 10**c is always positive.
        return int(math.floor(10.0**self.log_minima + 0.5))


def mod_class_seed(dim: int, suite_seed: int) -> int:
    return derive_seed("gkls-mod-class", dim, suite_seed)


def draw_mod_tuple(rng: np.random.Generator) -> ModTuple:
    """Draw one parameter tuple in a fixed order from ``rng``."""
    fn_type = FunctionType.ND if rng.random() < 0.5 else FunctionType.D
    d = float(rng.random())
    u = int(rng.integers(MIN_DIVISOR, MAX_DIVISOR, endpoint=True))
    c = float(rng.uniform(MIN_LOG_MINIMA, MAX_LOG_MINIMA))
    return ModTuple(fn_type=fn_type, dist_to_vertex=d, divisor=u, log_minima=c)


def _placeable(spec: GklsSpec, problem_index: int) -> bool:
    try:
        generate_problem(spec, problem_index)
    except PlacementFailure as e:
        logger.debug(f"Redrawing mod recipe {problem_index} (h={spec.num_minima}, r={spec.global_radius:.4g}): {e}")
        return False
    return True


def draw_mod_class(
    dim: int, n: int, suite_seed: int, check_placement: bool = False
) -> tuple[list[GklsSpec], int]:
    """
    Draw ``n`` feasible mod-class recipes.

    Args:
        dim: Problem dimension
        n: Number of recipes
        suite_seed: Seed of the class; also stored as every recipe's class seed
        check_placement: Also build recipe ``k`` as problem ``k`` and redraw it
            on PlacementFailure, so the recipes materialize as a suite

    Returns:
        Tuple of (recipes, number of discarded tuples)

    Raises:
        ValueError: If ``n`` < 1
        SamplerFailure: If ``MAX_DRAWS`` draws do not yield ``n`` recipes
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = make_generator(mod_class_seed(dim, suite_seed))
    specs: list[GklsSpec] = []
    resampled = 0
    for _ in range(MAX_DRAWS):
        raw = draw_mod_tuple(rng)
        if raw.dist_to_vertex + raw.global_radius > 1.0:
            resampled += 1
            continue
        try:
            spec = GklsSpec(
                fn_type=raw.fn_type,
                dim=dim,
                num_minima=raw.num_minima,
                global_value=-1.0,
                dist_to_vertex=raw.dist_to_vertex,
                global_radius=raw.global_radius,
                class_seed=suite_seed,
            )
        except InvalidSpec:
            resampled += 1
            continue
        if check_placement and not _placeable(spec, len(specs) + 1):
            resampled += 1
            continue
        specs.append(spec)
        if len(specs) == n:
            return specs, resampled
    raise SamplerFailure(draws=MAX_DRAWS, accepted=len(specs))


def sample_mod_class(
    dim: int, n: int = MOD_CLASS_SIZE, suite_seed: int = 0, check_placement: bool = False
) -> list[GklsSpec]:
    """Draw a mod class and log how many infeasible tuples were redrawn."""
    specs, resampled = draw_mod_class(dim, n, suite_seed, check_placement)
    if resampled:
        logger.warning(f"Mod class (D={dim}, seed={suite_seed}): redrew {resampled} infeasible tuples")
    else:
        logger.info(f"Mod class (D={dim}, seed={suite_seed}): no tuples redrawn")
    return specs
