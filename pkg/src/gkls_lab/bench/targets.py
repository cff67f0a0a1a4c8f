"""The target ladder: error thresholds a run is scored against."""

from dataclasses import dataclass

import numpy as np

# Exponents 2.0, 1.8, ..., -8.0, computed as integers / 5 so that every
# integer exponent (and therefore the target 1.0) is exact.
TARGET_EXPONENTS = np.arange(10, -41, -1) / 5.0


@dataclass(frozen=True)
class TargetLadder:
    """Descending error thresholds."""

    errors: np.ndarray

    def __len__(self) -> int:
        return len(self.errors)

    def __iter__(self):
        return iter(self.errors.tolist())


def make_targets() -> TargetLadder:
    """The 51 targets 10**2 ... 10**-8, evenly spaced in the exponent."""
    errors = np.power(10.0, TARGET_EXPONENTS)
    errors.setflags(write=False)
    return TargetLadder(errors=errors)
