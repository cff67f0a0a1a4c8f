"""Data types describing GKLS problem classes and realized problems."""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..exceptions import LabError


class InvalidSpec(LabError):
    """Raised when a class recipe violates the generator's invariants."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(f"Invalid GKLS spec: {message}")


class FunctionType(str, Enum):
    """Smoothness class of the generated function."""

    ND = "ND"  # non-differentiable at the minimizers
    D = "D"  # continuously differentiable
    D2 = "D2"  # twice continuously differentiable


@dataclass(frozen=True)
class GklsSpec:
    """Recipe for a class of GKLS problems."""

    fn_type: FunctionType
    dim: int
    num_minima: int
    global_value: float
    dist_to_vertex: float
    global_radius: float
    class_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "fn_type", FunctionType(self.fn_type))
        self.validate()

    def validate(self) -> None:
        """
        Check the class invariants.

        Raises:
            InvalidSpec: If any invariant is violated
        """
        if self.dim < 2:
            raise InvalidSpec(f"dimension must be >= 2, got {self.dim}")
        if self.num_minima < 2:
            raise InvalidSpec(f"number of minima must be >= 2, got {self.num_minima}")
        if not math.isfinite(self.global_value) or self.global_value >= 0.0:
            raise InvalidSpec(f"global value must be < 0, got {self.global_value}")
        d, r = self.dist_to_vertex, self.global_radius
        if not (0.0 < r < d):
            raise InvalidSpec(f"need 0 < r < d, got r={r}, d={d}")
        if d >= 1.0:
            raise InvalidSpec(f"need d < 1, got d={d}")
        if not (0 <= self.class_seed < 2**64):
            raise InvalidSpec(f"class seed must be an unsigned 64-bit integer, got {self.class_seed}")


@dataclass(frozen=True)
class Minimizer:
    """A known minimizer and its attraction ball."""

    location: np.ndarray
    radius: float
    value: float


@dataclass(frozen=True, eq=False)
class GklsProblem:
    """
    One realized test function.

    The arrays below are read-only views; a constructed problem is never
    mutated, so it can be evaluated from many threads at once.

    ``centers``, ``radii`` and ``values`` describe the attraction balls of
    minimizers #2..#h (row 0 is the global minimizer). ``coef_radial`` and
    ``coef_directional`` hold, per ball, the polynomial coefficients of the
    distortion in powers 0..5 of the distance to the ball's centre.
    """

    spec: GklsSpec
    problem_index: int
    seed: int
    vertex: np.ndarray
    centers: np.ndarray
    radii: np.ndarray
    values: np.ndarray
    coef_radial: np.ndarray = field(repr=False)
    coef_directional: np.ndarray = field(repr=False)
    placement_attempts: int = 0

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def fn_type(self) -> FunctionType:
        return self.spec.fn_type

    @property
    def global_value(self) -> float:
        return self.spec.global_value

    @property
    def global_minimizer(self) -> np.ndarray:
        return self.centers[0]

    @property
    def vertex_radius(self) -> float:
        """Radius of the undistorted neighbourhood around the vertex."""
        gaps = np.sqrt(np.sum((self.centers - self.vertex) ** 2, axis=1)) - self.radii
        return float(np.min(gaps))

    def identical_to(self, other: "GklsProblem") -> bool:
        """Bit-level equality of everything that defines the function."""
        return (
            self.spec == other.spec
            and self.problem_index == other.problem_index
            and self.seed == other.seed
            and all(
                np.array_equal(getattr(self, name), getattr(other, name))
                for name in ("vertex", "centers", "radii", "values", "coef_radial", "coef_directional")
            )
        )


@dataclass(frozen=True)
class MinimaStats:
    """Summary of minimizer values over a list of problems."""

    bin_edges: np.ndarray
    frequencies: np.ndarray
    negative_counts: list[int]
    count_scatter: list[tuple[int, int]]
    negative_value_scatter: list[tuple[int, float]]


def readonly(array: np.ndarray) -> np.ndarray:
    """Return a C-contiguous float64 copy that cannot be written to."""
    out = np.array(array, dtype=np.float64, order="C", copy=True)
    out.setflags(write=False)
    return out
