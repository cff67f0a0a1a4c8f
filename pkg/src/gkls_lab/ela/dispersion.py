"""Dispersion of the best sample points relative to the whole sample."""

import math

import numpy as np
from scipy.spatial.distance import pdist

from .sample import DegenerateSample, Sample

QUANTILES = {"02": 0.02, "05": 0.05, "10": 0.10, "25": 0.25}
MIN_SAMPLE = 50


def best_subset(sample: Sample, quantile: float) -> np.ndarray:
    """Points of the best ``max(2, ceil(q n))`` values; ties go to the lexicographically first point."""
    ordered = sample.presorted()
    k = max(2, math.ceil(quantile * ordered.size))
    order = np.argsort(ordered.values, kind="stable")
    return ordered.points[order[:k]]


def features_disp(sample: Sample) -> dict[str, float]:
    if sample.size < MIN_SAMPLE:
        raise DegenerateSample("disp", f"needs at least {MIN_SAMPLE} points, got {sample.size}")
    distances = pdist(sample.points)
    mean_all, median_all = float(distances.mean()), float(np.median(distances))

    features: dict[str, float] = {}
    for label, quantile in QUANTILES.items():
        best = pdist(best_subset(sample, quantile))
        mean_best, median_best = float(best.mean()), float(np.median(best))
        features[f"disp.ratio_mean_{label}"] = mean_best / mean_all
        features[f"disp.ratio_median_{label}"] = median_best / median_all
        features[f"disp.diff_mean_{label}"] = mean_best - mean_all
        features[f"disp.diff_median_{label}"] = median_best - median_all
    return features
