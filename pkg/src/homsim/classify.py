"""Type-A/B classification of packet pairs.

The indicator F(4s) is the Fourier transform, over the detuning nu from
the degenerate frequency Omega/2, of exactly the kernel that drives the
correlated interference term.  A pair whose indicator stays non-negative
for every s ("type A") can never push the normalized coincidence rate
above one; a pair with negative indicator values ("type B") can.

Conventions: a packet tabulated at absolute frequency omega enters the
indicator at nu = omega - Omega/2; the window restricts |nu| < Omega/2.
Outside its tabulated span a packet is treated as zero (the tabulation
policy keeps all non-negligible spectral mass inside the span).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .multilayer import SPEED_OF_LIGHT
from .numerics import QuadratureError, simpson

_IMAG_REL_TOL = 1e-9
_IMAG_ABS_TOL = 1e-12
DEFAULT_VERDICT_TOLERANCE = 1e-6


class DegeneratePacketError(ValueError):
    """The indicator vanishes identically; the packets carry no overlap."""


@dataclass(frozen=True)
class TypeVerdict:
    verdict: str  # "A" or "B"
    min_indicator: float
    argmin_s: float  # meters

    @property
    def is_type_a(self):
        return self.verdict == "A"


def _common_grid(packet_i, packet_ii):
    gi = packet_i.spectrum.frequencies
    gii = packet_ii.spectrum.frequencies
    if gi.shape != gii.shape or not np.array_equal(gi, gii):
        raise ValueError("packets must be tabulated on a common frequency grid")
    return gi


def _indicator_kernel(packet_i, packet_ii, pump):
    """Detuning grid nu and the s-independent part of the integrand."""
    grid = _common_grid(packet_i, packet_ii)
    half_pump = 0.5 * pump.frequency
    if grid[0] >= half_pump or grid[-1] <= half_pump:
        raise ValueError("packet grid must bracket the degenerate frequency "
                         "Omega/2")
    vi = packet_i.spectrum.values
    vii = packet_ii.spectrum.values

    step = grid[1] - grid[0]
    uniform = np.allclose(np.diff(grid), step, rtol=1e-9, atol=0.0)
    symmetric = np.allclose(grid + grid[::-1], pump.frequency,
                            rtol=0.0, atol=1e-9 * pump.frequency)
    if uniform and symmetric and grid.size % 2 == 1:
        # mirror-symmetric tabulation: reflection is an exact index flip
        nu = grid - half_pump
        vi_neg = vi[::-1]
        vii_neg = vii[::-1]
    else:
        width = min(half_pump, grid[-1] - half_pump, half_pump - grid[0])
        n = grid.size if grid.size % 2 == 1 else grid.size + 1
        nu = np.linspace(-width, width, n)
        vi = _resample(grid, packet_i.spectrum.values, half_pump + nu)
        vii = _resample(grid, packet_ii.spectrum.values, half_pump + nu)
        vi_neg = vi[::-1]
        vii_neg = vii[::-1]

    window = (half_pump ** 2 - nu ** 2)
    kernel = window * vi * np.conj(vii) * vii_neg * np.conj(vi_neg)
    return nu, kernel


def _resample(grid, values, where):
    re = np.interp(where, grid, values.real, left=0.0, right=0.0)
    im = np.interp(where, grid, values.imag, left=0.0, right=0.0)
    return re + 1j * im


def _real_indicator(raw, scale):
    if abs(raw.imag) > _IMAG_REL_TOL * abs(raw.real) + _IMAG_ABS_TOL * scale:
        raise QuadratureError(
            f"indicator came out complex ({raw!r}; kernel scale {scale:g}); "
            "refusing to take the real part silently")
    return raw.real


def fourier_indicator(packet_i, packet_ii, pump, s):
    """Indicator value F(4s) at one prism translation s (meters)."""
    nu, kernel = _indicator_kernel(packet_i, packet_ii, pump)
    dnu = nu[1] - nu[0]
    scale = float(simpson(np.abs(kernel), dnu))
    phase = np.exp(4j * s * nu / SPEED_OF_LIGHT)
    return float(_real_indicator(simpson(kernel * phase, dnu), scale))


def classify_type(packet_i, packet_ii, pump, s_range, n_points,
                  tolerance=DEFAULT_VERDICT_TOLERANCE):
    """Scan the indicator over s and classify the packet pair.

    Parameters
    ----------
    s_range : (float, float)
        Scan interval in meters.
    n_points : int
        Grid size, at least 32.
    tolerance : float
        Verdict is A when min F >= -tolerance * max |F| over the grid.
    """
    if n_points < 32:
        raise ValueError("need at least 32 indicator scan points")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    s_lo, s_hi = s_range
    if not s_lo < s_hi:
        raise ValueError("need s_range[0] < s_range[1]")

    nu, kernel = _indicator_kernel(packet_i, packet_ii, pump)
    dnu = nu[1] - nu[0]
    scale = float(simpson(np.abs(kernel), dnu))
    s_values = np.linspace(s_lo, s_hi, n_points)
    values = np.empty(n_points)
    for k, s in enumerate(s_values):
        phase = np.exp(4j * s * nu / SPEED_OF_LIGHT)
        values[k] = _real_indicator(simpson(kernel * phase, dnu), scale)

    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        raise DegeneratePacketError("indicator is identically zero")
    i_min = int(np.argmin(values))
    verdict = "A" if values[i_min] >= -tolerance * peak else "B"
    return TypeVerdict(verdict=verdict, min_indicator=float(values[i_min]),
                       argmin_s=float(s_values[i_min]))
