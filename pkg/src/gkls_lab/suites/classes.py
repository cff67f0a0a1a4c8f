"""The eight commonly used GKLS classes and their higher-dimensional variants."""

from enum import Enum

from ..exceptions import LabError
from ..generator import FunctionType, GklsSpec

CANONICAL_CLASS_SIZE = 100
GLOBAL_VALUE = -1.0
NUM_MINIMA = 10


class UnknownClass(LabError):
    """Raised for a class id outside the table."""

    def __init__(self, class_id: int):
        self.class_id = class_id
        super().__init__(f"Unknown canonical class {class_id}; valid ids are 1..{len(_TABLE)}")


class Difficulty(str, Enum):
    SIMPLE = "simple"
    HARD = "hard"


# class id -> (difficulty, dim, d, r)
_TABLE: dict[int, tuple[Difficulty, int, float, float]] = {
    1: (Difficulty.SIMPLE, 2, 0.90, 0.20),
    2: (Difficulty.HARD, 2, 0.90, 0.10),
    3: (Difficulty.SIMPLE, 3, 0.66, 0.20),
    4: (Difficulty.HARD, 3, 0.90, 0.20),
    5: (Difficulty.SIMPLE, 4, 0.66, 0.20),
    6: (Difficulty.HARD, 4, 0.90, 0.20),
    7: (Difficulty.SIMPLE, 5, 0.66, 0.30),
    8: (Difficulty.HARD, 5, 0.66, 0.20),
}

# Dimensions above 5 reuse the dimension-5 parameters.
_EXTENSION_SOURCE = {Difficulty.SIMPLE: 7, Difficulty.HARD: 8}


def canonical_class_ids() -> list[int]:
    return sorted(_TABLE)


def canonical_class(class_id: int, class_seed: int = 0) -> GklsSpec:
    """
    Return the recipe of one of the eight standard classes.

    Args:
        class_id: Row of the class table, 1..8
        class_seed: Seed mixed into every problem stream of the class

    Returns:
        Type D spec with f* = -1 and h = 10

    Raises:
        UnknownClass: If ``class_id`` is not in the table
    """
    try:
        _, dim, d, r = _TABLE[class_id]
    except KeyError:
        raise UnknownClass(class_id) from None
    return GklsSpec(
        fn_type=FunctionType.D,
        dim=dim,
        num_minima=NUM_MINIMA,
        global_value=GLOBAL_VALUE,
        dist_to_vertex=d,
        global_radius=r,
        class_seed=class_seed,
    )


def class_difficulty(class_id: int) -> Difficulty:
    try:
        return _TABLE[class_id][0]
    except KeyError:
        raise UnknownClass(class_id) from None


def extended_class(dim: int, difficulty: Difficulty | str, class_seed: int = 0) -> GklsSpec:
    """The dimension-5 simple or hard parameters applied at ``dim``."""
    base = canonical_class(_EXTENSION_SOURCE[Difficulty(difficulty)], class_seed=class_seed)
    return GklsSpec(
        fn_type=base.fn_type,
        dim=dim,
        num_minima=base.num_minima,
        global_value=base.global_value,
        dist_to_vertex=base.dist_to_vertex,
        global_radius=base.global_radius,
        class_seed=class_seed,
    )
