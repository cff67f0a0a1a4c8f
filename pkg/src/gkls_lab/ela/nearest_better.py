"""Nearest-better clustering features."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .sample import DegenerateSample, Sample

MIN_SAMPLE = 10
CHUNK_ROWS = 512


@dataclass(frozen=True, eq=False)
class NearestBetterGraph:
    """Per point: nearest-neighbour distance, nearest-better distance and parent, graph in-degree.

    Rows follow the lexicographically presorted sample. Points without a
    strictly better point have parent -1 and their largest distance as
    nearest-better distance.
    """

    values: np.ndarray
    nn_dist: np.ndarray
    nb_dist: np.ndarray
    parent: np.ndarray
    in_degree: np.ndarray


def nearest_better_graph(sample: Sample) -> NearestBetterGraph:
    ordered = sample.presorted()
    points, values = ordered.points, ordered.values
    n = len(values)
    nn_dist = np.empty(n)
    nb_dist = np.empty(n)
    parent = np.full(n, -1, dtype=np.int64)

    for start in range(0, n, CHUNK_ROWS):
        rows = np.arange(start, min(start + CHUNK_ROWS, n))
        dist = cdist(points[rows], points)
        far = dist.max(axis=1)
        dist[np.arange(len(rows)), rows] = np.inf
        nn_dist[rows] = dist.min(axis=1)
        better = values[None, :] < values[rows, None]
        masked = np.where(better, dist, np.inf)
        closest = masked.argmin(axis=1)
        has_better = better.any(axis=1)
        parent[rows] = np.where(has_better, closest, -1)
        nb_dist[rows] = np.where(has_better, masked[np.arange(len(rows)), closest], far)

    in_degree = np.bincount(parent[parent >= 0], minlength=n)
    return NearestBetterGraph(values=values, nn_dist=nn_dist, nb_dist=nb_dist, parent=parent, in_degree=in_degree)


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    if np.ptp(a) == 0.0 or np.ptp(b) == 0.0:
        return float("nan")
    return float(np.corrcoef(a, b)[0, 1])


def features_nbc(sample: Sample) -> dict[str, float]:
    if sample.size < MIN_SAMPLE:
        raise DegenerateSample("nbc", f"needs at least {MIN_SAMPLE} points, got {sample.size}")
    if np.ptp(sample.values) == 0.0:
        raise DegenerateSample("nbc", "values are constant")
    graph = nearest_better_graph(sample)
    ratio = graph.nn_dist / graph.nb_dist
    return {
        "nbc.nn_nb.sd_ratio": float(np.std(graph.nn_dist, ddof=1) / np.std(graph.nb_dist, ddof=1)),
        "nbc.nn_nb.mean_ratio": float(graph.nn_dist.mean() / graph.nb_dist.mean()),
        "nbc.nn_nb.cor": _pearson(graph.nn_dist, graph.nb_dist),
        "nbc.dist_ratio.coeff_var": float(np.std(ratio, ddof=1) / ratio.mean()),
        "nbc.nb_fitness.cor": _pearson(graph.in_degree.astype(np.float64), graph.values),
    }
