"""Uniform random sampling of the domain."""

import numpy as np
from pydantic import Field

from .blackbox import BlackBox
from .registry import OptimizerParams, register_optimizer


class RandomSearchParams(OptimizerParams):
    # Points drawn per call; the sequence of points does not depend on it.
    batch_size: int = Field(default=1000, gt=0)


@register_optimizer("random_search", RandomSearchParams)
def random_search(box: BlackBox, rng: np.random.Generator, params: RandomSearchParams) -> None:
    while True:
        points = rng.uniform(box.lower, box.upper, size=(params.batch_size, box.dim))
        box.evaluate_batch(points)
