import math

import numpy as np
import pytest
from scipy import stats

from gkls_lab.generator import FunctionType, GklsSpec, PlacementFailure
from gkls_lab.generator.manifest import SpecModel
from gkls_lab.suites import (
    Difficulty,
    SuiteEntry,
    SuiteManifest,
    UnknownClass,
    canonical_class,
    canonical_suite,
    class_difficulty,
    draw_mod_class,
    draw_mod_tuple,
    extended_class,
    extended_suite,
    materialize,
    mod_suite,
    problem_id,
    sample_mod_class,
    suite_from_selection,
)
from gkls_lab.suites import mod_class
from gkls_lab.suites.mod_class import ModTuple


@pytest.mark.parametrize(
    "class_id, dim, d, r",
    [(1, 2, 0.90, 0.20), (2, 2, 0.90, 0.10), (4, 3, 0.90, 0.20), (7, 5, 0.66, 0.30), (8, 5, 0.66, 0.20)],
)
def test_canonical_rows(class_id, dim, d, r):
    spec = canonical_class(class_id)
    assert (spec.fn_type, spec.dim, spec.dist_to_vertex, spec.global_radius) == (FunctionType.D, dim, d, r)
    assert spec.global_value == -1.0
    assert spec.num_minima == 10


@pytest.mark.parametrize("class_id", [0, 9, -3])
def test_unknown_class(class_id):
    with pytest.raises(UnknownClass):
        canonical_class(class_id)
    with pytest.raises(UnknownClass):
        class_difficulty(class_id)


def test_difficulty_alternates():
    assert [class_difficulty(i).value for i in range(1, 9)] == ["simple", "hard"] * 4


@pytest.mark.parametrize("difficulty, r", [(Difficulty.SIMPLE, 0.3), ("hard", 0.2)])
def test_extended_classes(difficulty, r):
    spec = extended_class(10, difficulty)
    assert spec.dim == 10
    assert spec.dist_to_vertex == 0.66
    assert spec.global_radius == r
    assert spec.num_minima == 10


def test_extended_dim5_simple_is_class7():
    assert extended_class(5, "simple") == canonical_class(7)


def test_mod_sampler_bounds():
    specs = sample_mod_class(5, n=2000, suite_seed=3)
    assert len(specs) == 2000
    for spec in specs:
        assert 10 <= spec.num_minima <= 1000
        ratio = spec.global_radius / spec.dist_to_vertex
        assert 0.1 - 1e-12 <= ratio <= 0.5 + 1e-12
        assert spec.dist_to_vertex + spec.global_radius <= 1.0
        assert spec.global_value == -1.0
        assert spec.fn_type in (FunctionType.D, FunctionType.ND)
        assert spec.class_seed == 3


def test_mod_sampler_is_reproducible():
    first, resampled = draw_mod_class(4, 50, suite_seed=17)
    second, resampled_again = draw_mod_class(4, 50, suite_seed=17)
    assert first == second
    assert resampled == resampled_again
    assert draw_mod_class(4, 50, suite_seed=18)[0] != first


def test_mod_sampler_reports_resampling():
    # d + r > 1 is common for d near 1, so 200 draws always discard some
    _, resampled = draw_mod_class(5, 200, suite_seed=1)
    assert resampled > 0


def test_mod_sampler_rejects_empty_class():
    with pytest.raises(ValueError):
        draw_mod_class(5, 0, suite_seed=1)


def test_h_rounds_half_away_from_zero():
    raw = ModTuple(fn_type=FunctionType.D, dist_to_vertex=0.5, divisor=2, log_minima=math.log10(12.5))
    assert raw.num_minima == 13


def _rounded_log_minima_shares(edges):
    """Probability of each log10(h) bin once 10**c, c ~ U[1, 3], is rounded to an integer."""
    h = np.arange(10, 1001)
    low = np.log10(np.maximum(h - 0.5, 10.0))
    high = np.log10(np.minimum(h + 0.5, 1000.0))
    shares, _ = np.histogram(np.log10(h), bins=edges, weights=(high - low) / 2.0)
    return shares


@pytest.mark.slow
def test_mod_sampler_statistics():
    specs = sample_mod_class(5, n=10_000, suite_seed=2024)
    nd_share = np.mean([spec.fn_type is FunctionType.ND for spec in specs])
    assert 0.48 <= nd_share <= 0.52
    edges = np.linspace(1.0, 3.0, 11)
    counts, _ = np.histogram(np.log10([spec.num_minima for spec in specs]), bins=edges)
    expected = _rounded_log_minima_shares(edges) * len(specs)
    assert stats.chisquare(counts, f_exp=expected).pvalue > 0.01


def test_raw_draws_cover_the_log_range():
    rng = np.random.default_rng(7)
    log_minima = np.array([draw_mod_tuple(rng).log_minima for _ in range(2000)])
    assert log_minima.min() >= 1.0
    assert log_minima.max() <= 3.0


def test_unplaceable_recipes_are_redrawn(monkeypatch):
    build = mod_class.generate_problem
    refused = []

    def refuse_second_problem(spec, index):
        if index == 2 and not refused:
            refused.append(spec)
            raise PlacementFailure("no room", attempts=1, problem_index=index)
        return build(spec, index)

    monkeypatch.setattr(mod_class, "generate_problem", refuse_second_problem)
    checked, resampled = draw_mod_class(3, 4, suite_seed=8, check_placement=True)
    plain, plain_resampled = draw_mod_class(3, 5, suite_seed=8)
    assert refused == [plain[1]]
    assert checked == [plain[0], *plain[2:]]
    assert resampled == plain_resampled + 1


def test_mod_suite_recipes_build_at_their_index():
    manifest = mod_suite(3, suite_seed=11, count=5)
    specs, _ = draw_mod_class(3, 5, suite_seed=11, check_placement=True)
    assert [spec.to_spec() for _, spec in manifest.numbered_specs()] == specs
    assert [p.spec for p in materialize(manifest)] == specs


@pytest.mark.slow
@pytest.mark.parametrize("seed", [0, 1, 42])
def test_two_dimensional_mod_suites_materialize(seed):
    problems = materialize(mod_suite(2, suite_seed=seed))
    assert len(problems) == 50
    assert [p.problem_index for p in problems] == list(range(1, 51))


def test_suite_sizes_and_names():
    assert canonical_suite(2).size == 100
    assert canonical_suite(2).name == "class2"
    assert extended_suite(10, "hard").name == "hard10"
    manifest = mod_suite(10, suite_seed=42)
    assert manifest.size == 50
    assert manifest.name == "mod10"
    assert problem_id(7) == "0007"


@pytest.mark.parametrize(
    "kwargs",
    [
        {},
        {"class_id": 1, "mod": True, "dim": 2},
        {"difficulty": "simple"},
        {"mod": True},
    ],
)
def test_selection_errors(kwargs):
    with pytest.raises(ValueError):
        suite_from_selection(**kwargs)


def test_selection_count_override():
    manifest = suite_from_selection(difficulty="simple", dim=6, count=3, suite_seed=9)
    assert manifest.size == 3
    assert manifest.name == "simple6"
    assert manifest.suite_seed == 9


def test_materialize_orders_by_index_and_ignores_threads():
    manifest = suite_from_selection(difficulty="hard", dim=3, count=6, suite_seed=4)
    serial = materialize(manifest)
    parallel = materialize(manifest, threads=3)
    assert [p.problem_index for p in serial] == list(range(1, 7))
    assert all(a.identical_to(b) for a, b in zip(serial, parallel))


def test_materialize_empty_manifest():
    assert materialize(SuiteManifest(name="empty", dim=2)) == []


def test_materialize_canonical_class():
    problems = materialize(canonical_suite(1, count=10))
    assert len(problems) == 10
    assert all(p.dim == 2 for p in problems)


def test_materialize_reports_failing_index():
    crowded = GklsSpec(
        fn_type=FunctionType.D, dim=2, num_minima=100, global_value=-1.0, dist_to_vertex=0.5, global_radius=0.45
    )
    fine = canonical_class(2)
    manifest = SuiteManifest(
        name="mixed",
        dim=2,
        entries=[
            SuiteEntry(spec=SpecModel.from_spec(fine), count=2),
            SuiteEntry(spec=SpecModel.from_spec(crowded), count=1),
        ],
    )
    with pytest.raises(PlacementFailure) as info:
        materialize(manifest)
    assert info.value.problem_index == 3
