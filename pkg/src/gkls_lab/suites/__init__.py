"""Canonical, extended and randomized GKLS suites."""

from .classes import (
    CANONICAL_CLASS_SIZE,
    Difficulty,
    UnknownClass,
    canonical_class,
    canonical_class_ids,
    class_difficulty,
    extended_class,
)
from .manifest import (
    SuiteEntry,
    SuiteManifest,
    canonical_suite,
    dump_suite,
    extended_suite,
    load_suite,
    materialize,
    mod_suite,
    problem_id,
    save_suite,
    suite_from_selection,
)
from .mod_class import MOD_CLASS_SIZE, ModTuple, SamplerFailure, draw_mod_class, draw_mod_tuple, sample_mod_class

__all__ = [
    "CANONICAL_CLASS_SIZE",
    "MOD_CLASS_SIZE",
    "Difficulty",
    "UnknownClass",
    "SamplerFailure",
    "ModTuple",
    "SuiteEntry",
    "SuiteManifest",
    "canonical_class",
    "canonical_class_ids",
    "class_difficulty",
    "extended_class",
    "draw_mod_tuple",
    "draw_mod_class",
    "sample_mod_class",
    "canonical_suite",
    "extended_suite",
    "mod_suite",
    "suite_from_selection",
    "materialize",
    "problem_id",
    "dump_suite",
    "save_suite",
    "load_suite",
]
