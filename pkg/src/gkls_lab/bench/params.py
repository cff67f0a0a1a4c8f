"""Per-problem table relating mod-class parameters to the best error found."""

from dataclasses import dataclass
from typing import Sequence

from ..exceptions import LabError
from ..generator import GklsSpec


class LengthMismatch(LabError):
    """Raised when results and recipes are not aligned."""

    def __init__(self, results: int, specs: int):
        self.results = results
        self.specs = specs
        super().__init__(f"Got {results} results for {specs} problem recipes")


@dataclass(frozen=True)
class ParamRow:
    fn_type: str
    dist_to_vertex: float
    global_radius: float
    num_minima: int
    best_error: float


def param_dependence(results: Sequence[float], specs: Sequence[GklsSpec]) -> list[ParamRow]:
    """One row per problem: type, d, r, h and the best error reached on it."""
    if len(results) != len(specs):
        raise LengthMismatch(len(results), len(specs))
    return [
        ParamRow(
            fn_type=spec.fn_type.value,
            dist_to_vertex=spec.dist_to_vertex,
            global_radius=spec.global_radius,
            num_minima=spec.num_minima,
            best_error=float(error),
        )
        for error, spec in zip(results, specs)
    ]
