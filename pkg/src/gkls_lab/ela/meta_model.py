"""Least-squares meta-models of the sampled values."""

from itertools import combinations

import numpy as np

from ..exceptions import LabError
from .sample import DegenerateSample, Sample


class SingularFit(LabError):
    def __init__(self, model: str, rank: int, columns: int):
        self.model = model
        self.rank = rank
        self.columns = columns
        super().__init__(f"{model}: design matrix has rank {rank} < {columns}")


def design_matrix(points: np.ndarray, interactions: bool, squares: bool) -> np.ndarray:
    """Intercept, linear terms, then optional pairwise products and squares."""
    columns = [np.ones(len(points)), *points.T]
    if interactions:
        columns += [points[:, i] * points[:, j] for i, j in combinations(range(points.shape[1]), 2)]
    if squares:
        columns += [points[:, i] ** 2 for i in range(points.shape[1])]
    return np.column_stack(columns)


def fit_model(name: str, design: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, float]:
    """
    Fit ``values ~ design`` and return (coefficients, adjusted R^2).

    Raises:
        SingularFit: If there are too few rows or the design is rank deficient
    """
    n, columns = design.shape
    predictors = columns - 1
    if n <= columns:
        raise SingularFit(name, n, columns)
    coefficients, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < columns:
        raise SingularFit(name, int(rank), columns)
    residuals = values - design @ coefficients
    total = float(np.sum((values - values.mean()) ** 2))
    r2 = 1.0 - float(residuals @ residuals) / total
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / (n - predictors - 1)
    return coefficients, adj_r2


def features_meta(sample: Sample) -> dict[str, float]:
    points, values = sample.points, sample.values
    if np.ptp(values) == 0.0:
        raise DegenerateSample("ela_meta", "values are constant")
    dim = sample.dim

    lin, lin_adj = fit_model("lin_simple", design_matrix(points, False, False), values)
    _, lin_int_adj = fit_model("lin_w_interact", design_matrix(points, True, False), values)
    quad, quad_adj = fit_model("quad_simple", design_matrix(points, False, True), values)
    _, quad_int_adj = fit_model("quad_w_interact", design_matrix(points, True, True), values)

    slopes = np.abs(lin[1 : dim + 1])
    curvature = np.abs(quad[dim + 1 :])
    with np.errstate(divide="ignore", invalid="ignore"):
        max_by_min = float(slopes.max() / slopes.min())
        cond = float(curvature.max() / curvature.min())

    return {
        "ela_meta.lin_simple.adj_r2": lin_adj,
        "ela_meta.lin_simple.intercept": float(lin[0]),
        "ela_meta.lin_simple.coef.min": float(slopes.min()),
        "ela_meta.lin_simple.coef.max": float(slopes.max()),
        "ela_meta.lin_simple.coef.max_by_min": max_by_min,
        "ela_meta.lin_w_interact.adj_r2": lin_int_adj,
        "ela_meta.quad_simple.adj_r2": quad_adj,
        "ela_meta.quad_simple.cond": cond,
        "ela_meta.quad_w_interact.adj_r2": quad_int_adj,
    }
