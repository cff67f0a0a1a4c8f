"""Closed-form distortion polynomials and function evaluation.

Inside the attraction ball of minimizer ``M`` (radius ``rho``, value ``f``)
the function is

    f + sum_k a_k s**k + <x - M, w> * sum_k b_k s**(k - 1)

with ``s = |x - M|`` and ``w = M - T``. The directional part is linear in
``<v, w>`` for a unit direction ``v``, which is exactly how the paraboloid
``|x - T|**2 = |w|**2 + 2 s <v, w> + s**2`` depends on direction, so the
matching conditions on the sphere ``s = rho`` split into a radial and a
directional system that are solved once per ball:

* ND: value only. Minimal form is the cone ``a_1 s + 2 <x - M, w>``.
* D: value and radial derivative, zero gradient at ``M``. Cubic.
* D2: value, first and second radial derivatives, zero gradient and a
  direction-free second-order term at ``M``. Quartic radial, quintic
  directional.
"""

import numpy as np
from scipy.spatial.distance import cdist

from ..exceptions import LabError
from .models import FunctionType, GklsProblem

NUM_COEFFICIENTS = 6
_CHUNK_ROWS = 4096


class OutOfDomain(LabError):
    """Raised when a point lies outside [-1, 1]^D or has the wrong shape."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(f"Point outside the domain: {message}")


class Unsupported(LabError):
    """Raised when an operation is not defined for the problem's type."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


def distortion_coefficients(
    fn_type: FunctionType,
    offsets: np.ndarray,
    radii: np.ndarray,
    values: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Solve the boundary-matching systems for every ball.

    Args:
        fn_type: Smoothness class
        offsets: (m, D) vectors ``M_i - T``
        radii: (m,) ball radii
        values: (m,) minimizer values

    Returns:
        Tuple of (radial, directional) coefficient arrays, each (m, 6),
        indexed by power of ``s``
    """
    m = len(radii)
    a = np.zeros((m, NUM_COEFFICIENTS))
    b = np.zeros((m, NUM_COEFFICIENTS))
    rho = np.asarray(radii, dtype=np.float64)
    norm_sq = np.sum(offsets * offsets, axis=1)
    excess = norm_sq - values  # paraboloid value at M_i minus f_i
    boundary = excess + rho**2  # paraboloid average on the sphere minus f_i

    if fn_type is FunctionType.ND:
        a[:, 1] = boundary / rho
        b[:, 1] = 2.0
    elif fn_type is FunctionType.D:
        a[:, 2] = 3.0 * boundary / rho**2 - 2.0
        a[:, 3] = 2.0 / rho - 2.0 * boundary / rho**3
        b[:, 2] = 4.0 / rho
        b[:, 3] = -2.0 / rho**2
    else:
        a[:, 2] = (6.0 * excess + rho**2) / rho**2
        a[:, 3] = -8.0 * excess / rho**3
        a[:, 4] = 3.0 * excess / rho**4
        b[:, 3] = 12.0 / rho**2
        b[:, 4] = -16.0 / rho**3
        b[:, 5] = 6.0 / rho**4
    return a, b


def _horner(coef: np.ndarray, s: np.ndarray) -> np.ndarray:
    out = coef[..., -1]
    for k in range(coef.shape[-1] - 2, -1, -1):
        out = out * s + coef[..., k]
    return out


def paraboloid_value(vertex: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Undistorted value ``|x - T|**2`` along the last axis."""
    diff = points - vertex
    return np.sum(diff * diff, axis=-1)


def _check_domain(problem: GklsProblem, points: np.ndarray) -> None:
    if points.ndim != 2 or points.shape[1] != problem.dim:
        raise OutOfDomain(f"expected shape (n, {problem.dim}), got {points.shape}")
    if not np.all(np.abs(points) <= 1.0):
        raise OutOfDomain(f"coordinates must lie in [-1, 1]^{problem.dim}")


def _ball_values(problem: GklsProblem, points: np.ndarray, ball: np.ndarray) -> np.ndarray:
    diff = points - problem.centers[ball]
    s = np.sqrt(np.sum(diff * diff, axis=1))
    offsets = problem.centers[ball] - problem.vertex
    p = np.sum(diff * offsets, axis=1)
    radial = _horner(problem.coef_radial[ball], s)
    directional = _horner(problem.coef_directional[ball][:, 1:], s)
    return problem.values[ball] + radial + p * directional


def locate(problem: GklsProblem, points: np.ndarray) -> np.ndarray:
    """
    Index of the attraction ball containing each point, or -1.

    Boundary points belong to the ball (``|x - M_i| <= rho_i``).
    """
    dist = cdist(points, problem.centers)
    inside = dist <= problem.radii
    ball = np.argmax(inside, axis=1)
    return np.where(inside.any(axis=1), ball, -1)


def evaluate_many(problem: GklsProblem, points: np.ndarray) -> np.ndarray:
    """
    Evaluate the problem at every row of ``points``.

    Args:
        problem: The test function
        points: (n, D) array inside [-1, 1]^D

    Returns:
        (n,) function values

    Raises:
        OutOfDomain: If any point is outside the domain
    """
    points = np.asarray(points, dtype=np.float64)
    _check_domain(problem, points)
    out = np.empty(points.shape[0])
    for start in range(0, points.shape[0], _CHUNK_ROWS):
        chunk = points[start : start + _CHUNK_ROWS]
        values = paraboloid_value(problem.vertex, chunk)
        ball = locate(problem, chunk)
        hit = ball >= 0
        if np.any(hit):
            values[hit] = _ball_values(problem, chunk[hit], ball[hit])
        out[start : start + len(chunk)] = values
    return out


def evaluate(problem: GklsProblem, x: np.ndarray) -> float:
    """
    Evaluate the problem at a single point.

    Args:
        problem: The test function
        x: Point of shape (D,) in [-1, 1]^D

    Returns:
        Function value

    Raises:
        OutOfDomain: If ``x`` is outside the domain
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise OutOfDomain(f"expected shape ({problem.dim},), got {x.shape}")
    return float(evaluate_many(problem, x[None, :])[0])


def evaluate_gradient(problem: GklsProblem, x: np.ndarray) -> np.ndarray:
    """
    Gradient of the piecewise function at ``x``.

    Args:
        problem: A type D or D2 test function
        x: Point of shape (D,) in [-1, 1]^D

    Returns:
        Gradient vector of shape (D,)

    Raises:
        Unsupported: For ND problems
        OutOfDomain: If ``x`` is outside the domain
    """
    if problem.fn_type is FunctionType.ND:
        raise Unsupported("gradient is not defined for ND problems")
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise OutOfDomain(f"expected shape ({problem.dim},), got {x.shape}")
    _check_domain(problem, x[None, :])

    ball = int(locate(problem, x[None, :])[0])
    if ball < 0:
        return 2.0 * (x - problem.vertex)

    diff = x - problem.centers[ball]
    s = float(np.sqrt(np.sum(diff * diff)))
    if s == 0.0:
        return np.zeros(problem.dim)
    v = diff / s
    w = problem.centers[ball] - problem.vertex
    p = float(np.dot(diff, w))
    a = problem.coef_radial[ball]
    b = problem.coef_directional[ball]

    powers = np.arange(NUM_COEFFICIENTS)
    radial_slope = float(np.sum(powers[1:] * a[1:] * s ** (powers[1:] - 1)))
    q = float(np.sum(b[1:] * s ** (powers[1:] - 1)))
    q_slope = float(np.sum(powers[1:-1] * b[2:] * s ** (powers[1:-1] - 1)))
    return (radial_slope + p * q_slope) * v + q * w
