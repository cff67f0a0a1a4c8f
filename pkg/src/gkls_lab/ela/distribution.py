"""Shape of the distribution of sampled values."""

import numpy as np
from scipy import stats
from scipy.integrate import trapezoid
from scipy.signal import argrelextrema

from .sample import DegenerateSample, Sample

KDE_GRID_POINTS = 512
KDE_GRID_MARGIN = 3.0  # in standard deviations
PEAK_MASS_THRESHOLD = 0.1


def count_peaks(values: np.ndarray) -> int:
    """
    Modes of a Gaussian KDE (Silverman bandwidth) holding more than 10% of the mass.

    The density is split at its local minima; each segment is one candidate
    peak, counted when its share of the integrated density exceeds the
    threshold.
    """
    sigma = float(np.std(values, ddof=1))
    grid = np.linspace(values.min() - KDE_GRID_MARGIN * sigma, values.max() + KDE_GRID_MARGIN * sigma, KDE_GRID_POINTS)
    density = stats.gaussian_kde(values, bw_method="silverman")(grid)
    minima = argrelextrema(density, np.less_equal)[0]
    cuts = np.unique(np.concatenate(([0], minima, [KDE_GRID_POINTS - 1])))
    total = trapezoid(density, grid)
    masses = [trapezoid(density[a : b + 1], grid[a : b + 1]) / total for a, b in zip(cuts[:-1], cuts[1:])]
    return int(sum(mass > PEAK_MASS_THRESHOLD for mass in masses))


def features_distr(sample: Sample) -> dict[str, float]:
    values = sample.values
    if len(values) < 4:
        raise DegenerateSample("ela_distr", f"needs at least 4 values, got {len(values)}")
    if np.ptp(values) == 0.0:
        raise DegenerateSample("ela_distr", "values are constant")
    return {
        "ela_distr.skewness": float(stats.skew(values, bias=True)),
        "ela_distr.kurtosis": float(stats.kurtosis(values, fisher=True, bias=True)),
        "ela_distr.number_of_peaks": float(count_peaks(values)),
    }
