import math

import numpy as np
import pytest

from gkls_lab.ela import (
    FEATURE_NAMES,
    DegenerateSample,
    Sample,
    compute_features,
    draw_sample,
    features_disp,
    features_distr,
    features_ic,
    features_meta,
    features_nbc,
    features_pca,
)
from gkls_lab.ela.nearest_better import nearest_better_graph
from gkls_lab.ela.principal import explained_variance_shares
from gkls_lab.generator import generate_problem
from gkls_lab.suites import canonical_class

from .naive_features import naive_disp, naive_distr, naive_ic, naive_meta, naive_nbc, naive_pca


def _sample(points, values, seed=0):
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    return Sample(points=points, values=np.asarray(values, dtype=np.float64), seed=seed)


def _line(values):
    """Points 0, 1, 2, ... on a line, with the given values."""
    return _sample(np.arange(len(values), dtype=np.float64), values)


@pytest.fixture(scope="module")
def gkls_sample():
    return draw_sample(generate_problem(canonical_class(7), 2), n=300, seed=17)


# sampling


def test_default_sample_size():
    sample = draw_sample(lambda p: p.sum(axis=1), seed=1, dim=10)
    assert sample.size == 2500
    assert sample.dim == 10


def test_two_point_sample(h2_problem):
    sample = draw_sample(h2_problem, n=2, seed=3)
    assert sample.points.shape == (2, 2)


@pytest.mark.parametrize("kwargs", [{"n": 1, "dim": 2}, {"n": 10}])
def test_bad_sample_requests(kwargs):
    with pytest.raises(ValueError):
        draw_sample(lambda p: p.sum(axis=1), **kwargs)


def test_non_finite_objective_is_rejected():
    with pytest.raises(ValueError):
        draw_sample(lambda p: np.full(len(p), np.nan), n=5, dim=2)


def test_sample_is_uniform_and_deterministic():
    sample = draw_sample(lambda p: p[:, 0], n=100_000, seed=5, dim=3)
    assert np.all(np.abs(sample.points.mean(axis=0)) <= 0.01)
    assert np.all(np.abs(sample.points) <= 1.0)
    again = draw_sample(lambda p: p[:, 0], n=100_000, seed=5, dim=3)
    np.testing.assert_array_equal(sample.points, again.points)


# distribution


def test_symmetric_values_have_no_skew():
    features = features_distr(_line([-1.0, 0.0, 0.0, 1.0]))
    assert features["ela_distr.skewness"] == 0.0


def test_constant_values_are_degenerate():
    sample = _line(np.full(60, 2.0))
    with pytest.raises(DegenerateSample):
        features_distr(sample)
    features = compute_features(sample, ("ela_distr", "ela_meta"))
    assert all(math.isnan(v) for v in features.values())


def test_normal_values():
    rng = np.random.default_rng(3)
    features = features_distr(_sample(rng.uniform(size=10_000), rng.standard_normal(10_000)))
    assert -0.08 <= features["ela_distr.skewness"] <= 0.08
    assert -0.15 <= features["ela_distr.kurtosis"] <= 0.15
    assert features["ela_distr.number_of_peaks"] == 1.0


def test_two_separated_modes():
    rng = np.random.default_rng(4)
    values = np.concatenate([rng.normal(-10, 1, 500), rng.normal(10, 1, 500)])
    assert features_distr(_sample(rng.uniform(size=1000), values))["ela_distr.number_of_peaks"] == 2.0


# meta-models


def test_quadratic_model_recovers_a_paraboloid(rng):
    points = rng.uniform(-1, 1, size=(200, 3))
    target = np.array([0.2, -0.4, 0.7])
    features = features_meta(_sample(points, np.sum((points - target) ** 2, axis=1)))
    assert features["ela_meta.quad_simple.adj_r2"] == pytest.approx(1.0, abs=1e-10)
    assert features["ela_meta.quad_simple.cond"] == pytest.approx(1.0, abs=1e-8)


def test_linear_model_recovers_a_plane(rng):
    points = rng.uniform(-1, 1, size=(100, 2))
    features = features_meta(_sample(points, 3.0 + 2.0 * points[:, 0]))
    assert features["ela_meta.lin_simple.intercept"] == pytest.approx(3.0, abs=1e-8)
    assert features["ela_meta.lin_simple.adj_r2"] == pytest.approx(1.0, abs=1e-10)
    assert features["ela_meta.lin_simple.coef.max"] == pytest.approx(2.0, abs=1e-8)


def test_too_few_points_for_the_full_model(rng):
    points = rng.uniform(-1, 1, size=(12, 4))
    features = compute_features(_sample(points, points.sum(axis=1) ** 2), ("ela_meta",))
    assert all(math.isnan(v) for v in features.values())


# dispersion


def test_best_points_of_a_bowl_cluster(rng):
    points = rng.uniform(-1, 1, size=(500, 2))
    features = features_disp(_sample(points, np.sum(points**2, axis=1)))
    assert features["disp.ratio_mean_25"] < 1.0
    assert features["disp.ratio_mean_02"] < features["disp.ratio_mean_25"]
    assert features["disp.diff_mean_10"] < 0.0


def test_dispersion_needs_fifty_points(rng):
    with pytest.raises(DegenerateSample):
        features_disp(_sample(rng.uniform(size=(49, 2)), rng.uniform(size=49)))


def test_tied_values_give_an_order_independent_subset(rng):
    points = rng.uniform(-1, 1, size=(100, 2))
    values = np.zeros(100)
    order = rng.permutation(100)
    shuffled = features_disp(_sample(points[order], values[order]))
    assert features_disp(_sample(points, values)) == pytest.approx(shuffled, rel=1e-12)


# nearest better


def test_increasing_chain():
    graph = nearest_better_graph(_line(np.arange(12, dtype=np.float64)))
    np.testing.assert_array_equal(graph.parent, [-1, *range(11)])
    np.testing.assert_array_equal(graph.in_degree, [1] * 11 + [0])
    assert graph.nb_dist[0] == 11.0
    np.testing.assert_array_equal(graph.nn_dist, np.ones(12))


def test_nbc_degenerate_cases(rng):
    with pytest.raises(DegenerateSample):
        features_nbc(_sample(rng.uniform(size=(9, 2)), rng.uniform(size=9)))
    with pytest.raises(DegenerateSample):
        features_nbc(_sample(rng.uniform(size=(20, 2)), np.ones(20)))


# principal components


def test_isotropic_points_share_variance_evenly():
    rng = np.random.default_rng(8)
    points = rng.uniform(-1, 1, size=(20_000, 4))
    features = features_pca(_sample(points, np.zeros(20_000)))
    assert features["pca.expl_var_PC1.cov_x"] == pytest.approx(0.25, abs=0.02)
    assert features["pca.expl_var.cov_x"] == 1.0
    assert math.isnan(features["pca.expl_var.cor_init"])


def test_duplicated_column_leaves_a_null_direction(rng):
    column = rng.uniform(-1, 1, size=(100, 1))
    shares = explained_variance_shares(np.hstack([column, column, rng.uniform(-1, 1, size=(100, 1))]), True)
    assert shares[-1] == pytest.approx(0.0, abs=1e-12)


def test_expl_var_is_a_multiple_of_the_column_share(gkls_sample):
    value = features_pca(gkls_sample)["pca.expl_var.cor_init"] * 6
    assert value == pytest.approx(round(value), abs=1e-12)


# information content


def test_monotone_tour():
    n = 20
    features = features_ic(_line(np.arange(n, dtype=np.float64)))
    assert features["ic.h.max"] == 0.0
    assert features["ic.eps.max"] == 0.0
    assert features["ic.m0"] == pytest.approx(1.0 / (n - 1))
    # every slope is 1, so the first positive epsilon already settles the entropy
    assert features["ic.eps.s"] == pytest.approx(-5.0)


def test_alternating_tour():
    values = np.array([0.0, 1.0] * 10)
    assert features_ic(_line(values))["ic.m0"] == 1.0


def test_flat_tour_is_degenerate():
    with pytest.raises(DegenerateSample):
        features_ic(_line(np.ones(15)))


# all sets together


def test_compute_features_order(gkls_sample):
    features = compute_features(gkls_sample)
    assert tuple(features) == FEATURE_NAMES
    assert len(FEATURE_NAMES) == 46


def test_features_ignore_row_order(gkls_sample):
    order = np.random.default_rng(1).permutation(gkls_sample.size)
    shuffled = _sample(gkls_sample.points[order], gkls_sample.values[order], gkls_sample.seed)
    first, second = compute_features(gkls_sample), compute_features(shuffled)
    np.testing.assert_allclose(
        [first[name] for name in FEATURE_NAMES], [second[name] for name in FEATURE_NAMES], rtol=1e-10, equal_nan=True
    )


_REFERENCE_PAIRS = [
    (features_distr, lambda p, v: naive_distr(v), 1e-10),
    (features_meta, naive_meta, 1e-8),
    (features_disp, naive_disp, 1e-10),
    (features_nbc, naive_nbc, 1e-10),
    (features_pca, naive_pca, 1e-10),
    (features_ic, naive_ic, 1e-10),
]


def _assert_matches_reference(sample, compute, reference, rtol):
    features = compute(sample)
    expected = reference(sample.points.tolist(), sample.values.tolist())
    for name, value in expected.items():
        assert features[name] == pytest.approx(value, rel=rtol, abs=1e-12, nan_ok=True), name


@pytest.mark.parametrize(
    "compute, reference, rtol", _REFERENCE_PAIRS, ids=["distr", "meta", "disp", "nbc", "pca", "ic"]
)
def test_matches_loop_reference(gkls_sample, compute, reference, rtol):
    _assert_matches_reference(gkls_sample, compute, reference, rtol)


@pytest.mark.slow
@pytest.mark.parametrize(
    "class_id, problem_index, seed",
    [(c, 1 + 3 * c, 100 + c) for c in range(1, 9)] + [(3, 7, 5), (6, 50, 9)],
)
def test_matches_loop_reference_across_problems(class_id, problem_index, seed):
    sample = draw_sample(generate_problem(canonical_class(class_id), problem_index), n=300, seed=seed)
    for compute, reference, rtol in _REFERENCE_PAIRS:
        _assert_matches_reference(sample, compute, reference, rtol)
