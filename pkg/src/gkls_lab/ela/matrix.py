"""Feature matrices: assembly, cleaning and normalization."""

import logging
from dataclasses import dataclass, field, replace
from typing import Literal, Optional, Sequence

import numpy as np

from ..config import settings
from ..exceptions import LabError
from .features import FEATURE_NAMES

logger = logging.getLogger(__name__)

ScalingMethod = Literal["minmax", "zscore"]


class EverythingDropped(LabError):
    def __init__(self, dropped: dict[str, str]):
        self.dropped = dropped
        super().__init__(f"All {len(dropped)} features were dropped during cleaning")


@dataclass(frozen=True)
class FeatureVector:
    suite: str
    problem: str
    values: dict[str, float]

    def is_valid(self, name: str) -> bool:
        return bool(np.isfinite(self.values.get(name, float("nan"))))


@dataclass(frozen=True)
class Scaling:
    """Per-column affine map: normalized = (raw - offset) / scale."""

    method: ScalingMethod
    offset: np.ndarray
    scale: np.ndarray


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """
    Problems x features with suite labels kept per row.

    Invalid entries are NaN. ``dropped`` maps each feature removed by
    cleaning to the reason, in the order the features were removed.
    """

    suites: tuple[str, ...]
    problems: tuple[str, ...]
    features: tuple[str, ...]
    data: np.ndarray
    dropped: dict[str, str] = field(default_factory=dict)
    scaling: Optional[Scaling] = None

    def __post_init__(self):
        if self.data.shape != (len(self.problems), len(self.features)):
            raise ValueError(f"data shape {self.data.shape} does not match labels")
        if len(self.suites) != len(self.problems):
            raise ValueError("one suite label per row is required")

    @classmethod
    def from_vectors(cls, vectors: Sequence[FeatureVector], features: Sequence[str] = FEATURE_NAMES) -> "FeatureMatrix":
        data = np.array(
            [[vector.values.get(name, float("nan")) for name in features] for vector in vectors], dtype=np.float64
        ).reshape(len(vectors), len(features))
        return cls(
            suites=tuple(v.suite for v in vectors),
            problems=tuple(v.problem for v in vectors),
            features=tuple(features),
            data=data,
        )

    @property
    def rows(self) -> list[FeatureVector]:
        return [
            FeatureVector(suite, problem, dict(zip(self.features, map(float, row))))
            for suite, problem, row in zip(self.suites, self.problems, self.data)
        ]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.features.index(name)]


def merge(first: FeatureMatrix, second: FeatureMatrix) -> FeatureMatrix:
    """Stack rows; features missing on one side become NaN there."""
    features = first.features + tuple(f for f in second.features if f not in first.features)

    def widen(matrix: FeatureMatrix) -> np.ndarray:
        out = np.full((len(matrix.problems), len(features)), np.nan)
        for j, name in enumerate(matrix.features):
            out[:, features.index(name)] = matrix.data[:, j]
        return out

    return FeatureMatrix(
        suites=first.suites + second.suites,
        problems=first.problems + second.problems,
        features=features,
        data=np.vstack([widen(first), widen(second)]),
    )


def clean_features(matrix: FeatureMatrix, corr_threshold: Optional[float] = None) -> FeatureMatrix:
    """
    Drop constant columns, columns with invalid values, then correlated columns.

    Correlation filtering walks the columns in order and keeps a column only
    if its absolute Pearson correlation with every column kept so far is
    below the threshold.

    Raises:
        ValueError: If the matrix has fewer than 2 rows
        EverythingDropped: If no column survives
    """
    if corr_threshold is None:
        corr_threshold = settings.corr_threshold
    if len(matrix.problems) < 2:
        raise ValueError("cleaning needs at least 2 rows")

    dropped = dict(matrix.dropped)
    kept: list[int] = []
    for j, name in enumerate(matrix.features):
        column = matrix.data[:, j]
        finite = column[np.isfinite(column)]
        if len(finite) and finite.max() == finite.min():
            dropped[name] = "constant"
        elif len(finite) < len(column):
            dropped[name] = "invalid"
        else:
            kept.append(j)

    retained: list[int] = []
    for j in kept:
        partner = next(
            (k for k in retained if abs(np.corrcoef(matrix.data[:, j], matrix.data[:, k])[0, 1]) >= corr_threshold),
            None,
        )
        if partner is None:
            retained.append(j)
        else:
            dropped[matrix.features[j]] = f"correlated with {matrix.features[partner]}"

    if not retained:
        raise EverythingDropped(dropped)
    logger.info(f"Cleaning kept {len(retained)} of {len(matrix.features)} features")
    return replace(
        matrix,
        features=tuple(matrix.features[j] for j in retained),
        data=matrix.data[:, retained].copy(),
        dropped=dropped,
    )


def normalize(matrix: FeatureMatrix, method: ScalingMethod = "minmax") -> FeatureMatrix:
    """Scale each column to [0, 1] (minmax) or to zero mean and unit deviation (zscore)."""
    data = matrix.data
    if method == "minmax":
        offset = data.min(axis=0)
        scale = data.max(axis=0) - offset
    elif method == "zscore":
        offset = data.mean(axis=0)
        scale = data.std(axis=0)
    else:
        raise ValueError(f"Unknown scaling method: {method}")
    scale = np.where(scale == 0.0, 1.0, scale)
    return replace(matrix, data=(data - offset) / scale, scaling=Scaling(method=method, offset=offset, scale=scale))


def denormalize(matrix: FeatureMatrix) -> FeatureMatrix:
    if matrix.scaling is None:
        return matrix
    scaling = matrix.scaling
    return replace(matrix, data=matrix.data * scaling.scale + scaling.offset, scaling=None)
