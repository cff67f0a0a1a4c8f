"""Information-content features along a nearest-neighbour tour of the sample."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .sample import DegenerateSample, Sample

MIN_SAMPLE = 10
EPSILON_POINTS = 1000
EPSILON_LOW = 1e-5
SETTLED_ENTROPY = 0.05


def nearest_neighbour_tour(points: np.ndarray) -> np.ndarray:
    """Greedy tour from row 0, always stepping to the closest unvisited row (lowest index on ties)."""
    n = len(points)
    visited = np.zeros(n, dtype=bool)
    tour = np.empty(n, dtype=np.int64)
    current = 0
    for step in range(n):
        tour[step] = current
        visited[current] = True
        if step == n - 1:
            break
        dist = cdist(points[current : current + 1], points)[0]
        dist[visited] = np.inf
        current = int(dist.argmin())
    return tour


def tour_slopes(sample: Sample) -> np.ndarray:
    """Value change per unit distance between consecutive tour points."""
    ordered = sample.presorted()
    tour = nearest_neighbour_tour(ordered.points)
    steps = np.linalg.norm(np.diff(ordered.points[tour], axis=0), axis=1)
    rises = np.diff(ordered.values[tour])
    with np.errstate(divide="ignore", invalid="ignore"):
        slopes = rises / steps
    return np.where(rises == 0.0, 0.0, slopes)


def epsilon_grid(slopes: np.ndarray) -> np.ndarray:
    top = float(np.abs(slopes).max())
    return np.concatenate(([0.0], np.geomspace(EPSILON_LOW * top, top, EPSILON_POINTS)))


def symbols(slopes: np.ndarray, epsilons: np.ndarray) -> np.ndarray:
    """One row per epsilon: -1, 0 or 1 per slope."""
    grid = epsilons[:, None]
    return np.where(slopes[None, :] > grid, 1, np.where(slopes[None, :] < -grid, -1, 0)).astype(np.int8)


def entropy(codes: np.ndarray) -> np.ndarray:
    """Entropy (base 6) of the unequal adjacent symbol pairs, one value per row."""
    pairs = (codes[:, :-1] + 1) * 3 + (codes[:, 1:] + 1)
    total = pairs.shape[1]
    h = np.zeros(len(codes))
    for p in (-1, 0, 1):
        for q in (-1, 0, 1):
            if p == q:
                continue
            freq = np.count_nonzero(pairs == (p + 1) * 3 + (q + 1), axis=1) / total
            with np.errstate(divide="ignore", invalid="ignore"):
                h -= np.where(freq > 0.0, freq * np.log(freq) / np.log(6.0), 0.0)
    return h


def partial_information(row: np.ndarray) -> float:
    """Length of the sign sequence after dropping zeros and merging repeats, over the slope count."""
    signs = row[row != 0]
    if len(signs) == 0:
        return 0.0
    return (1 + int(np.count_nonzero(signs[1:] != signs[:-1]))) / len(row)


@dataclass(frozen=True, eq=False)
class InformationProfile:
    epsilons: np.ndarray
    entropy: np.ndarray
    partial: np.ndarray


def information_profile(sample: Sample) -> InformationProfile:
    slopes = tour_slopes(sample)
    if not np.any(slopes):
        raise DegenerateSample("ic", "values do not change along the tour")
    epsilons = epsilon_grid(slopes)
    codes = symbols(slopes, epsilons)
    partial = np.array([partial_information(row) for row in codes])
    return InformationProfile(epsilons=epsilons, entropy=entropy(codes), partial=partial)


def features_ic(sample: Sample) -> dict[str, float]:
    if sample.size < MIN_SAMPLE:
        raise DegenerateSample("ic", f"needs at least {MIN_SAMPLE} points, got {sample.size}")
    profile = information_profile(sample)
    eps, h, partial = profile.epsilons, profile.entropy, profile.partial
    m0 = float(partial[0])

    settled = np.flatnonzero((h < SETTLED_ENTROPY) & (eps > 0.0))
    eps_s = float(np.log10(eps[settled[0]])) if len(settled) else float("nan")
    informative = np.flatnonzero((partial > 0.5 * m0) & (eps > 0.0))
    eps_ratio = float(np.log10(eps[informative[-1]])) if len(informative) else float("nan")

    return {
        "ic.h.max": float(h.max()),
        "ic.eps.s": eps_s,
        "ic.eps.max": float(eps[int(h.argmax())]),
        "ic.eps.ratio": eps_ratio,
        "ic.m0": m0,
    }
