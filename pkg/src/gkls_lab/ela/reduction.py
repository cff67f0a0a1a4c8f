"""Dimensionality reduction of feature matrices: PCA and exact t-SNE."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sklearn.decomposition import PCA
from sklearn.manifold import TSNE

from ..config import settings
from ..exceptions import LabError

logger = logging.getLogger(__name__)

EARLY_EXAGGERATION = 12.0
LEARNING_RATE = 200.0
MIN_EMBEDDING_ROWS = 10


class RankTooLow(LabError):
    def __init__(self, rank: int, components: int):
        self.rank = rank
        self.components = components
        super().__init__(f"Cannot keep {components} components of a rank-{rank} matrix")


class PerplexityTooLarge(LabError):
    def __init__(self, perplexity: float, rows: int):
        self.perplexity = perplexity
        self.rows = rows
        super().__init__(f"Perplexity {perplexity} must be below (rows - 1) / 3 = {(rows - 1) / 3:.4g}")


@dataclass(frozen=True, eq=False)
class PcaModel:
    """Orthonormal loadings (one row per component), descending variance ratios and the centring vector."""

    components: np.ndarray
    explained_variance_ratio: np.ndarray
    mean: np.ndarray
    kept: int

    def transform(self, data: np.ndarray) -> np.ndarray:
        return (data - self.mean) @ self.components[: self.kept].T

    def inverse_transform(self, coordinates: np.ndarray) -> np.ndarray:
        return coordinates @ self.components[: self.kept] + self.mean

    @property
    def cumulative_ratio(self) -> float:
        return float(self.explained_variance_ratio[: self.kept].sum())


def pca_fit(data: np.ndarray, k: Optional[int] = None) -> tuple[PcaModel, np.ndarray]:
    """
    Fit a full PCA and project onto the first ``k`` components.

    Args:
        data: Rows x features
        k: Components kept for the projection (defaults to settings)

    Returns:
        The model with every component, and the rows x k projection

    Raises:
        RankTooLow: If ``k`` < 1 or the centred data has rank below ``k``
    """
    if k is None:
        k = settings.pca_components
    data = np.asarray(data, dtype=np.float64)
    rank = int(np.linalg.matrix_rank(data - data.mean(axis=0))) if len(data) > 1 else 0
    if k < 1 or len(data) <= k or rank < k:
        raise RankTooLow(rank, k)

    pca = PCA(svd_solver="full").fit(data)
    model = PcaModel(
        components=pca.components_,
        explained_variance_ratio=pca.explained_variance_ratio_,
        mean=pca.mean_,
        kept=k,
    )
    logger.info(f"PCA: first {k} of {len(pca.components_)} components explain {model.cumulative_ratio:.4%}")
    return model, model.transform(data)


@dataclass(frozen=True, eq=False)
class TsneResult:
    embedding: np.ndarray
    kl_divergence: float
    iterations: int


def tsne_embed(
    data: np.ndarray,
    perplexity: Optional[float] = None,
    iterations: Optional[int] = None,
    seed: int = 0,
) -> TsneResult:
    """
    Exact t-SNE into two dimensions.

    Bandwidths are found by bisection on the target perplexity, the first 250
    iterations use early exaggeration 12 with momentum 0.5 (0.8 afterwards)
    at learning rate 200, and the start is the PCA projection scaled to
    standard deviation 1e-4.

    Raises:
        ValueError: For fewer than 10 rows or fewer than 2 columns
        PerplexityTooLarge: If perplexity >= (rows - 1) / 3
    """
    perplexity = settings.tsne_perplexity if perplexity is None else perplexity
    iterations = settings.tsne_iterations if iterations is None else iterations
    data = np.asarray(data, dtype=np.float64)
    rows = len(data)
    if rows < MIN_EMBEDDING_ROWS:
        raise ValueError(f"t-SNE needs at least {MIN_EMBEDDING_ROWS} rows, got {rows}")
    if data.ndim != 2 or data.shape[1] < 2:
        raise ValueError("t-SNE needs at least 2 input columns")
    if perplexity >= (rows - 1) / 3:
        raise PerplexityTooLarge(perplexity, rows)

    tsne = TSNE(
        n_components=2,
        perplexity=perplexity,
        early_exaggeration=EARLY_EXAGGERATION,
        learning_rate=LEARNING_RATE,
        max_iter=iterations,
        init="pca",
        method="exact",
        random_state=seed % 2**32,
    )
    embedding = tsne.fit_transform(data)
    logger.info(f"t-SNE: {rows} rows, KL divergence {tsne.kl_divergence_:.6g} after {tsne.n_iter_} iterations")
    return TsneResult(embedding=embedding, kl_divergence=float(tsne.kl_divergence_), iterations=int(tsne.n_iter_))
