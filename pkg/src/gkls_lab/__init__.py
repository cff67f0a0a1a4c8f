"""GKLS test-function laboratory: generation, benchmarking and landscape analysis."""

__version__ = "0.1.0"
