"""Principal-component features of the sample, with and without the values column."""

import numpy as np

from .sample import DegenerateSample, Sample

VARIANCE_LEVEL = 0.9


def explained_variance_shares(matrix: np.ndarray, use_correlation: bool) -> np.ndarray:
    """Eigenvalue shares of the covariance (or correlation) matrix of the columns, descending."""
    scatter = np.corrcoef(matrix, rowvar=False) if use_correlation else np.cov(matrix, rowvar=False)
    scatter = np.atleast_2d(scatter)
    eigenvalues = np.clip(np.linalg.eigvalsh(scatter)[::-1], 0.0, None)
    return eigenvalues / eigenvalues.sum()


def _expl_var(shares: np.ndarray) -> float:
    # first component count whose cumulative share reaches the level, over the column count
    needed = int(np.searchsorted(np.cumsum(shares), VARIANCE_LEVEL, side="left")) + 1
    return min(needed, len(shares)) / len(shares)


def features_pca(sample: Sample) -> dict[str, float]:
    if sample.size <= sample.dim + 1:
        raise DegenerateSample("pca", f"needs more than {sample.dim + 1} points, got {sample.size}")
    matrices = {
        "x": sample.points,
        "init": np.column_stack([sample.points, sample.values]),
    }
    features: dict[str, float] = {}
    for scatter in ("cov", "cor"):
        for label, matrix in matrices.items():
            columns_constant = np.ptp(matrix, axis=0) == 0.0
            if scatter == "cor" and columns_constant.any():
                features[f"pca.expl_var.{scatter}_{label}"] = float("nan")
                features[f"pca.expl_var_PC1.{scatter}_{label}"] = float("nan")
                continue
            shares = explained_variance_shares(matrix, use_correlation=scatter == "cor")
            features[f"pca.expl_var.{scatter}_{label}"] = _expl_var(shares)
            features[f"pca.expl_var_PC1.{scatter}_{label}"] = float(shares[0])
    return features
