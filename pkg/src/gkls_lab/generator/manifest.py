"""JSON manifests for single problems.

Floats are written by pydantic's serializer, which emits the shortest
representation that parses back to the same double, so a manifest
round-trips bit-exactly.
"""

from pathlib import Path

from pydantic import BaseModel, ConfigDict, model_validator

from ..storage import write_text_atomic
from .construction import rebuild_problem
from .models import FunctionType, GklsProblem, GklsSpec
from .oracle import known_minima


class SpecModel(BaseModel):
    """Serialized form of a GklsSpec."""

    model_config = ConfigDict(extra="forbid")

    fn_type: FunctionType
    dim: int
    num_minima: int
    global_value: float
    dist_to_vertex: float
    global_radius: float
    class_seed: int = 0

    @classmethod
    def from_spec(cls, spec: GklsSpec) -> "SpecModel":
        return cls(
            fn_type=spec.fn_type,
            dim=spec.dim,
            num_minima=spec.num_minima,
            global_value=spec.global_value,
            dist_to_vertex=spec.dist_to_vertex,
            global_radius=spec.global_radius,
            class_seed=spec.class_seed,
        )

    def to_spec(self) -> GklsSpec:
        return GklsSpec(**self.model_dump())


class MinimizerModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    location: list[float]
    radius: float
    value: float


class ProblemManifest(BaseModel):
    """
    Everything needed to rebuild a problem without regenerating it.

    ``minimizers`` is the full list in oracle order: the vertex (value 0)
    first, then the global minimizer, then the local ones.
    """

    model_config = ConfigDict(extra="forbid")

    spec: SpecModel
    problem_index: int
    seed: int
    vertex: list[float]
    minimizers: list[MinimizerModel]
    placement_attempts: int = 0

    @classmethod
    def from_problem(cls, problem: GklsProblem) -> "ProblemManifest":
        minimizers = [
            MinimizerModel(location=m.location.tolist(), radius=m.radius, value=m.value) for m in known_minima(problem)
        ]
        return cls(
            spec=SpecModel.from_spec(problem.spec),
            problem_index=problem.problem_index,
            seed=problem.seed,
            vertex=problem.vertex.tolist(),
            minimizers=minimizers,
            placement_attempts=problem.placement_attempts,
        )

    @model_validator(mode="after")
    def _vertex_comes_first(self) -> "ProblemManifest":
        if len(self.minimizers) < 2:
            raise ValueError("a problem has at least two minimizers")
        first = self.minimizers[0]
        if first.location != self.vertex or first.value != 0.0:
            raise ValueError("minimizer #1 must be the vertex with value 0")
        return self

    def to_problem(self) -> GklsProblem:
        """Rebuild the problem; the vertex radius is recomputed from the geometry."""
        balls = self.minimizers[1:]
        return rebuild_problem(
            spec=self.spec.to_spec(),
            problem_index=self.problem_index,
            seed=self.seed,
            vertex=self.vertex,
            centers=[m.location for m in balls],
            radii=[m.radius for m in balls],
            values=[m.value for m in balls],
            placement_attempts=self.placement_attempts,
        )


def dump_problem(problem: GklsProblem) -> str:
    """Serialize a problem to its JSON manifest text."""
    return ProblemManifest.from_problem(problem).model_dump_json(indent=2) + "\n"


def parse_problem(text: str) -> GklsProblem:
    """Parse a JSON manifest back into a problem."""
    return ProblemManifest.model_validate_json(text).to_problem()


def save_problem(problem: GklsProblem, path: Path) -> None:
    write_text_atomic(path, dump_problem(problem))


def load_problem(path: Path) -> GklsProblem:
    return parse_problem(path.read_text(encoding="utf-8"))
