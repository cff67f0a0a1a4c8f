"""Differential evolution with success-history adaptation and linear population reduction.

current-to-pbest/1 mutation with an external archive, binomial crossover,
Cauchy-distributed F and normal CR drawn around a memory of successful
values, and a population that shrinks linearly from its initial size to
``min_population`` as the budget is consumed.
"""

import logging

import numpy as np
from pydantic import Field

from .blackbox import BlackBox
from .registry import OptimizerParams, register_optimizer

logger = logging.getLogger(__name__)

_PARAM_SCALE = 0.1


class DeLprParams(OptimizerParams):
    population_per_dim: float = Field(default=18.0, gt=0)
    min_population: int = Field(default=4, ge=4)
    memory_size: int = Field(default=6, ge=1)
    p_best_rate: float = Field(default=0.11, gt=0, le=1)
    archive_rate: float = Field(default=2.6, ge=0)

    def initial_population(self, dim: int) -> int:
        return max(int(round(self.population_per_dim * dim)), self.min_population)


def planned_population_size(nfe: int, budget: int, n_init: int, n_min: int) -> int:
    """Population size once ``nfe`` of ``budget`` evaluations are spent."""
    return int(round((n_min - n_init) / budget * nfe + n_init))


def _draw_scale_factors(rng: np.random.Generator, centres: np.ndarray) -> np.ndarray:
    f = centres + _PARAM_SCALE * rng.standard_cauchy(len(centres))
    bad = f <= 0.0
    while np.any(bad):
        f[bad] = centres[bad] + _PARAM_SCALE * rng.standard_cauchy(int(bad.sum()))
        bad = f <= 0.0
    return np.minimum(f, 1.0)


def _draw_crossover_rates(rng: np.random.Generator, centres: np.ndarray) -> np.ndarray:
    # A NaN memory slot is terminal: crossover then keeps only the forced coordinate.
    cr = np.clip(rng.normal(np.nan_to_num(centres), _PARAM_SCALE), 0.0, 1.0)
    return np.where(np.isnan(centres), 0.0, cr)


def _distinct_indices(rng: np.random.Generator, n: int, pool: int, exclude: list[np.ndarray]) -> np.ndarray:
    picks = rng.integers(0, pool, n)
    clash = np.zeros(n, dtype=bool)
    for other in exclude:
        clash |= picks == other
    while np.any(clash):
        picks[clash] = rng.integers(0, pool, int(clash.sum()))
        clash = np.zeros(n, dtype=bool)
        for other in exclude:
            clash |= picks == other
    return picks


def _lehmer_mean(values: np.ndarray, weights: np.ndarray) -> float:
    return float(np.sum(weights * values**2) / np.sum(weights * values))


@register_optimizer("de_lpr", DeLprParams)
def de_lpr(box: BlackBox, rng: np.random.Generator, params: DeLprParams) -> None:
    dim = box.dim
    n_init = params.initial_population(dim)
    n_min = params.min_population
    h = params.memory_size

    pop = rng.uniform(box.lower, box.upper, size=(n_init, dim))
    fit = box.evaluate_batch(pop)
    archive = np.empty((0, dim))
    memory_f = np.full(h, 0.5)
    memory_cr = np.full(h, 0.5)
    slot = 0

    while True:
        n = len(pop)
        idx = np.arange(n)
        picks = rng.integers(0, h, n)
        f = _draw_scale_factors(rng, memory_f[picks])
        cr = _draw_crossover_rates(rng, memory_cr[picks])

        order = np.argsort(fit, kind="stable")
        p_num = max(int(round(params.p_best_rate * n)), 2)
        pbest = order[rng.integers(0, p_num, n)]
        r1 = _distinct_indices(rng, n, n, [idx])
        r2 = _distinct_indices(rng, n, n + len(archive), [idx, r1])
        donors = np.vstack([pop, archive])

        mutant = pop + f[:, None] * (pop[pbest] - pop) + f[:, None] * (pop[r1] - donors[r2])
        mutant = np.where(mutant < box.lower, (box.lower + pop) / 2.0, mutant)
        mutant = np.where(mutant > box.upper, (box.upper + pop) / 2.0, mutant)

        cross = rng.random((n, dim)) <= cr[:, None]
        cross[idx, rng.integers(0, dim, n)] = True
        trial = np.where(cross, mutant, pop)

        trial_fit = box.evaluate_batch(trial)

        better = trial_fit < fit
        if np.any(better):
            archive = np.vstack([archive, pop[better]])
            gain = fit[better] - trial_fit[better]
            weights = gain / gain.sum()
            memory_f[slot] = _lehmer_mean(f[better], weights)
            if np.isnan(memory_cr[slot]) or np.max(cr[better]) == 0.0:
                memory_cr[slot] = np.nan
            else:
                memory_cr[slot] = _lehmer_mean(cr[better], weights)
            slot = (slot + 1) % h

        replace = trial_fit <= fit
        pop = np.where(replace[:, None], trial, pop)
        fit = np.where(replace, trial_fit, fit)

        target = max(planned_population_size(box.evaluations, box.budget, n_init, n_min), n_min)
        if target < n:
            keep = np.sort(np.argsort(fit, kind="stable")[:target])
            pop, fit = pop[keep], fit[keep]
            logger.debug(f"Population reduced to {target} after {box.evaluations} evaluations")

        capacity = int(round(params.archive_rate * len(pop)))
        if len(archive) > capacity:
            archive = archive[np.sort(rng.choice(len(archive), size=capacity, replace=False))]
