"""Exploratory landscape analysis: samples, feature sets, feature matrices and their reductions."""

from .dispersion import features_disp
from .distribution import features_distr
from .features import FEATURE_NAMES, FEATURE_SETS, compute_features
from .information import features_ic
from .io import (
    ParseError,
    export_features,
    import_features,
    parse_features,
    write_dropped_report,
    write_embedding,
    write_pca_report,
)
from .matrix import (
    EverythingDropped,
    FeatureMatrix,
    FeatureVector,
    Scaling,
    clean_features,
    denormalize,
    merge,
    normalize,
)
from .meta_model import SingularFit, features_meta
from .nearest_better import features_nbc
from .principal import features_pca
from .reduction import PcaModel, PerplexityTooLarge, RankTooLow, TsneResult, pca_fit, tsne_embed
from .sample import DegenerateSample, Sample, draw_sample, sample_seed

__all__ = [
    "Sample",
    "DegenerateSample",
    "draw_sample",
    "sample_seed",
    "features_distr",
    "features_meta",
    "features_disp",
    "features_nbc",
    "features_pca",
    "features_ic",
    "SingularFit",
    "FEATURE_NAMES",
    "FEATURE_SETS",
    "compute_features",
    "FeatureVector",
    "FeatureMatrix",
    "Scaling",
    "EverythingDropped",
    "merge",
    "clean_features",
    "normalize",
    "denormalize",
    "ParseError",
    "export_features",
    "import_features",
    "parse_features",
    "write_dropped_report",
    "write_embedding",
    "write_pca_report",
    "PcaModel",
    "RankTooLow",
    "pca_fit",
    "TsneResult",
    "PerplexityTooLarge",
    "tsne_embed",
]
