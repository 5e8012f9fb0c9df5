"""Spectral amplitudes of the down-conversion photons.

Two pulse models are provided.  ``rect_time`` is a rectangular temporal
window of full width 2*t0, whose spectral amplitude is
sinc((omega - center) * t0); ``gaussian`` uses exp(-(omega - center)^2
* t0^2 / 2) with t0 the 1/e half-width of the temporal amplitude.  Both
are real and even about the center frequency.

The pump is monochromatic: all rate integrals reduce to a single
integral over omega in (0, Omega).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .multilayer import ComplexSpectrum, transmission_spectrum

PULSE_MODELS = ("rect_time", "gaussian")


class DegenerateSpectrumError(ValueError):
    """A spectrum with no power where some was required."""


@dataclass(frozen=True)
class BandShape:
    model: str
    center: float  # rad/s
    half_duration: float  # t0, seconds

    def __post_init__(self):
        if self.model not in PULSE_MODELS:
            raise ValueError(f"pulse model must be one of {PULSE_MODELS}, got {self.model!r}")
        if not self.center > 0:
            raise ValueError("center frequency must be > 0")
        if not self.half_duration > 0:
            raise ValueError("half duration t0 must be > 0")


@dataclass(frozen=True)
class PumpSpec:
    frequency: float  # Omega, rad/s

    def __post_init__(self):
        if not self.frequency > 0:
            raise ValueError("pump frequency must be > 0")


@dataclass(frozen=True)
class EffectivePacket:
    """Band shape filtered by a barrier: the packet entering one input port."""

    spectrum: ComplexSpectrum


def evaluate_band_shape(shape, frequency):
    """Spectral amplitude at one or many frequencies (real-valued).

    Scalar in, scalar out; array in, array out.
    """
    omega = np.asarray(frequency, dtype=float)
    if np.any(omega < 0):
        raise ValueError("frequencies must be >= 0")
    x = (omega - shape.center) * shape.half_duration
    if shape.model == "rect_time":
        out = np.sinc(x / np.pi)
    else:
        out = np.exp(-0.5 * x * x)
    if np.isscalar(frequency):
        return float(out)
    return out


def normalize(spectrum):
    """Rescale so the trapezoid integral of |f|^2 over the grid is 1."""
    power = np.trapezoid(np.abs(spectrum.values) ** 2, spectrum.frequencies)
    if power <= 0.0:
        raise DegenerateSpectrumError("spectrum carries no power on this grid")
    return ComplexSpectrum(frequencies=spectrum.frequencies,
                           values=spectrum.values / np.sqrt(power))


def band_shape_spectrum(shape, grid):
    """Normalized band shape tabulated on a grid."""
    grid = np.asarray(grid, dtype=float)
    return normalize(ComplexSpectrum(grid, evaluate_band_shape(shape, grid)))


def effective_packet(shape, stack, grid):
    """Barrier-filtered packet: T21(omega) times the normalized band shape."""
    base = band_shape_spectrum(shape, grid)
    trans = transmission_spectrum(stack, base.frequencies)
    return EffectivePacket(ComplexSpectrum(base.frequencies,
                                           base.values * trans.values))


def frequency_window(shape, pump):
    """Integration window for rate integrals, clipped to (0, Omega).

    Spans 12 pi / t0 either side of the pulse center.  When the pulse
    sits at the degenerate frequency Omega/2 the clip is applied
    symmetrically so grids stay exactly mirror-symmetric about Omega/2,
    which the coincidence kernels exploit.
    """
    omega_p = pump.frequency
    span = 12.0 * np.pi / shape.half_duration
    eps = 1e-9 * omega_p
    if abs(shape.center - 0.5 * omega_p) <= 1e-12 * omega_p:
        half = min(span, 0.5 * omega_p - eps)
        return 0.5 * omega_p - half, 0.5 * omega_p + half
    lo = max(shape.center - span, eps)
    hi = min(shape.center + span, omega_p - eps)
    if not lo < hi:
        raise ValueError("pulse window does not overlap (0, Omega)")
    return lo, hi
