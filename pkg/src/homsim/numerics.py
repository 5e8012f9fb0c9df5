"""Fixed-grid Simpson quadrature with explicit convergence contracts.

All integrals in this package run over uniform grids so that the
oscillatory-integrand sampling policy (a minimum number of points per
oscillation period) stays enforceable and results stay bitwise
reproducible.  Adaptive subdivision is deliberately not offered.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ConvergenceError(RuntimeError):
    """Grid refinement did not reach the requested tolerance.

    Carries the last two successive quadrature values so callers can
    report how far apart they still were.
    """

    def __init__(self, message, last_value=None, previous_value=None):
        super().__init__(message)
        self.last_value = last_value
        self.previous_value = previous_value


class QuadratureError(RuntimeError):
    """A quadrature self-check failed (e.g. a residue that must vanish)."""


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    estimated_error: float
    n_points_used: int


def simpson(values, dx):
    """Composite Simpson sum of uniformly sampled values.

    ``values`` must have odd length >= 3 (an even number of intervals).
    Accepts real or complex samples; sums along the last axis.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    if n < 3 or n % 2 == 0:
        raise ValueError(f"Simpson rule needs an odd number of samples >= 3, got {n}")
    acc = values[..., 0] + values[..., -1]
    acc = acc + 4.0 * values[..., 1:-1:2].sum(axis=-1)
    acc = acc + 2.0 * values[..., 2:-2:2].sum(axis=-1)
    return acc * (dx / 3.0)


def simpson_with_error(values, dx):
    """Simpson value plus an error estimate from the embedded half grid.

    The estimate is the plain difference against the Simpson sum over
    every other sample (conservative by roughly the usual factor of 15
    for smooth integrands).  When the sample count does not admit a half
    grid, the trapezoid sum serves as the comparison value instead.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    full = simpson(values, dx)
    if (n - 1) % 4 == 0 and n >= 5:
        coarse = simpson(values[..., ::2], 2.0 * dx)
    else:
        coarse = np.trapezoid(values, dx=dx, axis=-1)
    return full, np.abs(full - coarse)


def integrate(values, dx):
    """Integrate a sampled integrand on a uniform grid.

    Parameters
    ----------
    values : array_like
        Samples on a uniform grid, odd length >= 3.
    dx : float
        Grid spacing.

    Returns
    -------
    QuadratureResult
    """
    values = np.asarray(values)
    value, err = simpson_with_error(values, dx)
    return QuadratureResult(value=complex(value), estimated_error=float(err),
                            n_points_used=int(values.shape[-1]))


def refine_until(integrand, a, b, target_rel_error, *, n_initial=129,
                 max_doublings=16):
    """Double the grid until successive Simpson values agree.

    Parameters
    ----------
    integrand : callable
        Vectorized function of a frequency/abscissa array.
    a, b : float
        Integration bounds, a < b.
    target_rel_error : float
        Successive values must agree to this relative tolerance.
    n_initial : int
        Starting grid size; (n_initial - 1) must be divisible by 4 so the
        first convergence check can use the embedded half grid without
        extra evaluations.
    max_doublings : int
        At most this many grid doublings (spec'd ceiling: 16).

    Returns
    -------
    QuadratureResult
        Value on the finest grid used, with the achieved error estimate.

    Raises
    ------
    ConvergenceError
        If the target is not met after ``max_doublings`` doublings.
    """
    if target_rel_error <= 0:
        raise ValueError("target_rel_error must be positive")
    if max_doublings > 16:
        raise ValueError("max_doublings must be <= 16")
    if n_initial < 5 or (n_initial - 1) % 4 != 0:
        raise ValueError("n_initial - 1 must be a positive multiple of 4")
    if not a < b:
        raise ValueError("need a < b")

    n = n_initial
    x = np.linspace(a, b, n)
    y = np.asarray(integrand(x))
    value, err = simpson_with_error(y, x[1] - x[0])
    if err <= target_rel_error * abs(value):
        return QuadratureResult(complex(value), float(err), n)

    previous = value
    for _ in range(max_doublings):
        n = 2 * (n - 1) + 1
        x = np.linspace(a, b, n)
        y = np.asarray(integrand(x))
        value = simpson(y, x[1] - x[0])
        err = abs(value - previous)
        if err <= target_rel_error * abs(value):
            return QuadratureResult(complex(value), float(err), n)
        previous = value

    raise ConvergenceError(
        f"quadrature did not converge to rel. error {target_rel_error:g} "
        f"after {max_doublings} doublings ({n} points); "
        f"last two values {value!r}, {previous!r}",
        last_value=complex(value), previous_value=complex(previous),
    )
