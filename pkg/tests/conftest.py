import numpy as np
import pytest

from gkls_lab.generator import FunctionType, GklsSpec, generate_problem
from gkls_lab.suites import canonical_class


def two_minima_spec(fn_type: FunctionType = FunctionType.D, dim: int = 2) -> GklsSpec:
    """Paraboloid with a single extra (global) minimizer."""
    return GklsSpec(
        fn_type=fn_type,
        dim=dim,
        num_minima=2,
        global_value=-1.0,
        dist_to_vertex=0.9,
        global_radius=0.1,
    )


@pytest.fixture
def h2_problem():
    return generate_problem(two_minima_spec(), 1)


@pytest.fixture
def class7_problem():
    return generate_problem(canonical_class(7), 1)


@pytest.fixture
def class1_problem():
    return generate_problem(canonical_class(1), 1)


@pytest.fixture(params=[FunctionType.ND, FunctionType.D, FunctionType.D2], ids=lambda t: t.value)
def typed_problem(request):
    spec = GklsSpec(
        fn_type=request.param,
        dim=3,
        num_minima=10,
        global_value=-1.0,
        dist_to_vertex=0.66,
        global_radius=0.2,
        class_seed=11,
    )
    return generate_problem(spec, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
