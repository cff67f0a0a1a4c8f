"""Suite manifests: which recipes make up a suite, and how to realize them."""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ..generator import GklsProblem, PlacementFailure, generate_problem
from ..generator.manifest import SpecModel
from ..storage import write_text_atomic
from .classes import CANONICAL_CLASS_SIZE, Difficulty, canonical_class, extended_class
from .mod_class import MOD_CLASS_SIZE, sample_mod_class

logger = logging.getLogger(__name__)


class SuiteEntry(BaseModel):
    """``count`` consecutive problems drawn from one recipe."""

    model_config = ConfigDict(extra="forbid")

    spec: SpecModel
    count: int = Field(ge=1)


class SuiteManifest(BaseModel):
    """
    A named list of recipes.

    Problems are numbered 1..N across the entries in order; that number is
    the problem index passed to the generator and the problem id used in
    every output file.
    """

    model_config = ConfigDict(extra="forbid")

    name: str
    dim: int
    suite_seed: int = 0
    entries: list[SuiteEntry] = Field(default_factory=list)

    @property
    def size(self) -> int:
        return sum(entry.count for entry in self.entries)

    def numbered_specs(self) -> list[tuple[int, SpecModel]]:
        """(problem index, recipe) for every problem of the suite."""
        out = []
        index = 1
        for entry in self.entries:
            for _ in range(entry.count):
                out.append((index, entry.spec))
                index += 1
        return out


def problem_id(index: int) -> str:
    return f"{index:04d}"


def _generate(index: int, spec: SpecModel) -> GklsProblem:
    try:
        return generate_problem(spec.to_spec(), index)
    except PlacementFailure as e:
        if e.problem_index is None:
            raise PlacementFailure(e.message, e.attempts, problem_index=index) from e
        raise


def materialize(manifest: SuiteManifest, threads: int = 1) -> list[GklsProblem]:
    """
    Generate every problem of the suite.

    Args:
        manifest: Suite to realize
        threads: Worker threads; the result does not depend on it

    Returns:
        Problems ordered by problem index

    Raises:
        PlacementFailure: For the lowest-indexed problem that cannot be placed
    """
    numbered = manifest.numbered_specs()
    if not numbered:
        return []
    if threads <= 1:
        problems = [_generate(index, spec) for index, spec in numbered]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            futures = [executor.submit(_generate, index, spec) for index, spec in numbered]
            problems = [future.result() for future in futures]
    attempts = sum(p.placement_attempts for p in problems)
    logger.info(
        f"Materialized suite {manifest.name}: {len(problems)} problems, "
        f"{attempts} placement attempts ({attempts / len(problems):.1f} per problem)"
    )
    return problems


def canonical_suite(class_id: int, suite_seed: int = 0, count: int = CANONICAL_CLASS_SIZE) -> SuiteManifest:
    spec = canonical_class(class_id, class_seed=suite_seed)
    return SuiteManifest(
        name=f"class{class_id}",
        dim=spec.dim,
        suite_seed=suite_seed,
        entries=[SuiteEntry(spec=SpecModel.from_spec(spec), count=count)],
    )


def extended_suite(
    dim: int, difficulty: Difficulty | str, suite_seed: int = 0, count: int = CANONICAL_CLASS_SIZE
) -> SuiteManifest:
    difficulty = Difficulty(difficulty)
    spec = extended_class(dim, difficulty, class_seed=suite_seed)
    return SuiteManifest(
        name=f"{difficulty.value}{dim}",
        dim=dim,
        suite_seed=suite_seed,
        entries=[SuiteEntry(spec=SpecModel.from_spec(spec), count=count)],
    )


def mod_suite(dim: int, suite_seed: int = 0, count: int = MOD_CLASS_SIZE) -> SuiteManifest:
    """One recipe per problem; recipes whose problem cannot be placed are redrawn."""
    specs = sample_mod_class(dim, count, suite_seed, check_placement=True)
    return SuiteManifest(
        name=f"mod{dim}",
        dim=dim,
        suite_seed=suite_seed,
        entries=[SuiteEntry(spec=SpecModel.from_spec(spec), count=1) for spec in specs],
    )


def suite_from_selection(
    class_id: Optional[int] = None,
    dim: Optional[int] = None,
    difficulty: Optional[Difficulty | str] = None,
    mod: bool = False,
    suite_seed: int = 0,
    count: Optional[int] = None,
) -> SuiteManifest:
    """
    Build the manifest for one command-line suite selection.

    Exactly one of ``class_id``, ``(dim, difficulty)`` or ``(mod, dim)`` must
    be given. ``count`` overrides the default suite size.
    """
    chosen = sum([class_id is not None, difficulty is not None, mod])
    if chosen != 1:
        raise ValueError("select exactly one of a canonical class, an extended class or a mod class")
    if class_id is not None:
        return canonical_suite(class_id, suite_seed, count or CANONICAL_CLASS_SIZE)
    if dim is None:
        raise ValueError("extended and mod suites need a dimension")
    if mod:
        return mod_suite(dim, suite_seed, count or MOD_CLASS_SIZE)
    return extended_suite(dim, difficulty, suite_seed, count or CANONICAL_CLASS_SIZE)


def dump_suite(manifest: SuiteManifest) -> str:
    return manifest.model_dump_json(indent=2) + "\n"


def save_suite(manifest: SuiteManifest, path: Path) -> None:
    write_text_atomic(path, dump_suite(manifest))


def load_suite(path: Path) -> SuiteManifest:
    return SuiteManifest.model_validate_json(path.read_text(encoding="utf-8"))
