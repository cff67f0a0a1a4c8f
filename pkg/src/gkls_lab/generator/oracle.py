"""Exact knowledge about a problem's minima."""

from typing import Optional, Sequence

import numpy as np

from .models import GklsProblem, MinimaStats, Minimizer


def known_minima(problem: GklsProblem) -> list[Minimizer]:
    """
    All ``h`` minimizers of the problem, in construction order.

    Entry 0 is the paraboloid vertex (value 0), entry 1 the unique global
    minimizer (value f*), followed by the local minimizers.
    """
    minima = [Minimizer(location=problem.vertex.copy(), radius=problem.vertex_radius, value=0.0)]
    for center, radius, value in zip(problem.centers, problem.radii, problem.values):
        minima.append(Minimizer(location=center.copy(), radius=float(radius), value=float(value)))
    return minima


def _all_values(problem: GklsProblem) -> np.ndarray:
    return np.concatenate(([0.0], problem.values))


def local_minima_stats(
    problems: Sequence[GklsProblem],
    bin_edges: Optional[Sequence[float]] = None,
    bins: int = 20,
) -> MinimaStats:
    """
    Distribution of minimizer values over a list of problems.

    Args:
        problems: Non-empty list of problems
        bin_edges: Explicit histogram edges; by default ``bins`` equal-width
            bins spanning all values
        bins: Number of bins when ``bin_edges`` is not given

    Returns:
        MinimaStats with relative frequencies (summing to 1 over the values
        inside the edges), per-problem counts of minima below zero, the
        (h, count) scatter and the (h, value) scatter of negative minima
    """
    if not problems:
        raise ValueError("local_minima_stats needs at least one problem")
    per_problem = [_all_values(p) for p in problems]
    pooled = np.concatenate(per_problem)
    edges = np.asarray(bin_edges, dtype=np.float64) if bin_edges is not None else bins
    counts, edges = np.histogram(pooled, bins=edges)
    total = counts.sum()
    frequencies = counts / total if total else counts.astype(np.float64)

    negative_counts = [int(np.sum(values < 0.0)) for values in per_problem]
    count_scatter = [(p.spec.num_minima, c) for p, c in zip(problems, negative_counts)]
    value_scatter = [
        (p.spec.num_minima, float(v)) for p, values in zip(problems, per_problem) for v in values if v < 0.0
    ]
    return MinimaStats(
        bin_edges=np.asarray(edges, dtype=np.float64),
        frequencies=frequencies,
        negative_counts=negative_counts,
        count_scatter=count_scatter,
        negative_value_scatter=value_scatter,
    )
