"""The six feature sets and their canonical column order."""

import logging
from typing import Callable

from .dispersion import QUANTILES, features_disp
from .distribution import features_distr
from .information import features_ic
from .meta_model import SingularFit, features_meta
from .nearest_better import features_nbc
from .principal import features_pca
from .sample import DegenerateSample, Sample

logger = logging.getLogger(__name__)

FeatureSet = Callable[[Sample], dict[str, float]]

FEATURE_SETS: dict[str, tuple[FeatureSet, tuple[str, ...]]] = {
    "ela_distr": (
        features_distr,
        ("ela_distr.skewness", "ela_distr.kurtosis", "ela_distr.number_of_peaks"),
    ),
    "ela_meta": (
        features_meta,
        (
            "ela_meta.lin_simple.adj_r2",
            "ela_meta.lin_simple.intercept",
            "ela_meta.lin_simple.coef.min",
            "ela_meta.lin_simple.coef.max",
            "ela_meta.lin_simple.coef.max_by_min",
            "ela_meta.lin_w_interact.adj_r2",
            "ela_meta.quad_simple.adj_r2",
            "ela_meta.quad_simple.cond",
            "ela_meta.quad_w_interact.adj_r2",
        ),
    ),
    "disp": (
        features_disp,
        tuple(
            f"disp.{stat}_{label}"
            for stat in ("ratio_mean", "ratio_median", "diff_mean", "diff_median")
            for label in QUANTILES
        ),
    ),
    "nbc": (
        features_nbc,
        (
            "nbc.nn_nb.sd_ratio",
            "nbc.nn_nb.mean_ratio",
            "nbc.nn_nb.cor",
            "nbc.dist_ratio.coeff_var",
            "nbc.nb_fitness.cor",
        ),
    ),
    "pca": (
        features_pca,
        tuple(
            f"pca.{kind}.{scatter}_{label}"
            for kind in ("expl_var", "expl_var_PC1")
            for scatter in ("cov", "cor")
            for label in ("x", "init")
        ),
    ),
    "ic": (
        features_ic,
        ("ic.h.max", "ic.eps.s", "ic.eps.max", "ic.eps.ratio", "ic.m0"),
    ),
}

FEATURE_NAMES: tuple[str, ...] = tuple(name for _, names in FEATURE_SETS.values() for name in names)


def compute_features(sample: Sample, sets: tuple[str, ...] = tuple(FEATURE_SETS)) -> dict[str, float]:
    """
    Compute the requested feature sets in canonical order.

    A set that is undefined on the sample contributes NaN for each of its
    features instead of failing the whole problem.
    """
    features: dict[str, float] = {}
    for set_name in sets:
        compute, names = FEATURE_SETS[set_name]
        try:
            values = compute(sample)
        except (DegenerateSample, SingularFit) as e:
            logger.warning(f"Feature set {set_name} marked invalid: {e}")
            values = {}
        for name in names:
            features[name] = float(values.get(name, float("nan")))
    return features
