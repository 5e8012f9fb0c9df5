"""Coincidence-rate integrals and normalized fringe scans.

Four regimes are covered: quantum or classical statistics, with the two
input packets either correlated (one phase-locked pair source) or
produced by independent sources.  Everything is reduced to single
integrals over omega in (0, Omega) by the monochromatic-pump model.

The normalized scan is R(s) = (baseline - interference(s)) / baseline:

* quantum correlated:    baseline K0, interference K1(s)
* classical correlated:  baseline G0 (K0 term doubled plus the two
  single-arm self terms), interference G1(s) = 2 K1(s)
* quantum independent:   baseline is the product of the two single-arm
  rate integrals, interference the squared cross-overlap
* classical independent: same overlap with prefactor 2, baseline gains
  the two classical self terms

Scan evaluation is sequential and deterministic; every grid point is a
pure function of the scenario, so outputs are bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .multilayer import SPEED_OF_LIGHT, StackSpec, _amplitudes
from .numerics import ConvergenceError, QuadratureError, simpson
from .spectra import BandShape, PumpSpec, evaluate_band_shape, frequency_window

REGIMES = ("quantum", "classical")
CORRELATIONS = ("correlated", "independent")

_DEFAULT_TARGET = 1e-7
_DEFAULT_POINTS_PER_PERIOD = 12.0
_IMAG_REL_TOL = 1e-9
_IMAG_ABS_TOL = 1e-12
_NEGATIVE_R_TOL = 1e-9
_CLASSICAL_BOUND_TOL = 1e-9


class DegenerateScenarioError(ValueError):
    """The baseline rate vanishes, so the normalized scan is undefined."""


class UndefinedVisibilityError(ValueError):
    """Visibility requested for an all-zero scan."""


class BoundaryExtremumError(ValueError):
    """The scan minimum sits on the grid boundary; the range is too small."""


class InternalConsistencyError(RuntimeError):
    """A bound that must hold analytically was violated numerically."""


@dataclass(frozen=True)
class ScanGrid:
    s_min: float  # meters
    s_max: float
    n_points: int

    def __post_init__(self):
        if not self.s_min < self.s_max:
            raise ValueError("need s_min < s_max")
        if self.n_points < 2:
            raise ValueError("need at least 2 scan points")

    def values(self):
        return np.linspace(self.s_min, self.s_max, self.n_points)


@dataclass(frozen=True)
class Scenario:
    regime: str
    correlation: str
    barrier_I: StackSpec
    barrier_II: StackSpec
    pump: PumpSpec
    pulse: BandShape
    scan: ScanGrid

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"regime must be one of {REGIMES}, got {self.regime!r}")
        if self.correlation not in CORRELATIONS:
            raise ValueError(f"correlation must be one of {CORRELATIONS}, "
                             f"got {self.correlation!r}")


def make_scenario(regime, correlation, pump_frequency, t0, scan, *,
                  model="rect_time", pulse_center=None,
                  barrier_I=StackSpec(), barrier_II=StackSpec()):
    """Scenario with the degenerate default: pulse centered at Omega/2."""
    pump = PumpSpec(pump_frequency)
    center = 0.5 * pump_frequency if pulse_center is None else pulse_center
    pulse = BandShape(model=model, center=center, half_duration=t0)
    return Scenario(regime=regime, correlation=correlation,
                    barrier_I=barrier_I, barrier_II=barrier_II,
                    pump=pump, pulse=pulse, scan=scan)


@dataclass(frozen=True)
class FringeScan:
    s_values: np.ndarray  # meters
    r_normalized: np.ndarray
    baseline: float
    visibility: float
    dip_position: float | None
    n_quadrature_points: int

    def __post_init__(self):
        s = np.asarray(self.s_values, dtype=float).copy()
        r = np.asarray(self.r_normalized, dtype=float).copy()
        s.flags.writeable = False
        r.flags.writeable = False
        object.__setattr__(self, "s_values", s)
        object.__setattr__(self, "r_normalized", r)


def scenario_frequency_grid(scenario, n_points):
    lo, hi = frequency_window(scenario.pulse, scenario.pump)
    return np.linspace(lo, hi, n_points)


class _Tables:
    """Integrand tables for one scenario on one uniform frequency grid.

    Tests may construct these directly with synthetic transmission
    arrays; production code goes through ``from_scenario``.
    """

    def __init__(self, omega, pump_frequency, f, f_mirror, t_i, t_i_mirror,
                 t_ii, t_ii_mirror):
        self.omega = omega
        self.dx = omega[1] - omega[0]
        self.pump_frequency = pump_frequency
        mirror_weight = omega * (pump_frequency - omega)
        mu = mirror_weight * (f * f_mirror) ** 2
        self.mu = mu
        # correlated interference kernel of K1(s) before the phase factor
        self.q = mu * np.conj(t_i) * t_i_mirror * np.conj(t_ii_mirror) * t_ii
        self.q_abs_int = simpson(np.abs(self.q), self.dx)
        # baseline integrands
        self.b0 = mu * np.abs(t_i) ** 2 * np.abs(t_ii_mirror) ** 2
        self.b_self_i = mu * np.abs(t_i) ** 2 * np.abs(t_i_mirror) ** 2
        self.b_self_ii = mu * np.abs(t_ii) ** 2 * np.abs(t_ii_mirror) ** 2
        # independent-source kernels: single omega weight, single f^2
        self.u = omega * f ** 2 * np.conj(t_i) * t_ii
        self.w_i = omega * f ** 2 * np.abs(t_i) ** 2
        self.w_ii = omega * f ** 2 * np.abs(t_ii) ** 2

    @classmethod
    def from_scenario(cls, scenario, n_points):
        omega = scenario_frequency_grid(scenario, n_points)
        pump_frequency = scenario.pump.frequency
        mirror = pump_frequency - omega
        f = evaluate_band_shape(scenario.pulse, omega)
        f_mirror = evaluate_band_shape(scenario.pulse, mirror)
        t_i, _ = _amplitudes(scenario.barrier_I, omega)
        t_ii, _ = _amplitudes(scenario.barrier_II, omega)
        t_i_mirror, _ = _amplitudes(scenario.barrier_I, mirror)
        t_ii_mirror, _ = _amplitudes(scenario.barrier_II, mirror)
        return cls(omega, pump_frequency, f, f_mirror, t_i, t_i_mirror,
                   t_ii, t_ii_mirror)

    def _pair(self, samples):
        """(full, embedded-half) Simpson values of a sample array."""
        return simpson(samples, self.dx), simpson(samples[::2], 2.0 * self.dx)

    def baseline_terms(self):
        return {
            "k0": self._pair(self.b0),
            "self_i": self._pair(self.b_self_i),
            "self_ii": self._pair(self.b_self_ii),
            "singles_i": self._pair(self.w_i),
            "singles_ii": self._pair(self.w_ii),
        }

    def correlated_interference(self, s):
        """Complex K1(s) on the full and the embedded half grid."""
        phase = np.exp((2j * s / SPEED_OF_LIGHT)
                       * (2.0 * self.omega - self.pump_frequency))
        return self._pair(self.q * phase)

    def independent_overlap(self, s):
        """Complex cross-overlap integral for independent sources."""
        phase = np.exp((2j * s / SPEED_OF_LIGHT) * self.omega)
        return self._pair(self.u * phase)


def _initial_grid_points(scenario, points_per_period, s_abs_max):
    lo, hi = frequency_window(scenario.pulse, scenario.pump)
    n_needed = 1025
    if s_abs_max > 0:
        # fastest kernel oscillation exp(4 i omega s / c)
        period = np.pi * SPEED_OF_LIGHT / (2.0 * s_abs_max)
        n_needed = max(n_needed, int(np.ceil((hi - lo) / (period / points_per_period))) + 1)
    n = 129
    while n < n_needed:
        n = 2 * (n - 1) + 1
    return n


def _take_real(value, scale):
    if abs(value.imag) > _IMAG_REL_TOL * abs(value.real) + _IMAG_ABS_TOL * scale:
        raise QuadratureError(
            f"interference integral has a non-vanishing imaginary part "
            f"({value!r}; kernel scale {scale:g})")
    return value.real


class _Engine:
    """Converged integrals for one scenario on a shared frequency grid."""

    def __init__(self, scenario, s_values, target_rel_error, points_per_period,
                 max_doublings):
        s_values = np.asarray(s_values, dtype=float)
        need_correlated = scenario.correlation == "correlated"
        s_abs_max = float(np.max(np.abs(s_values))) if s_values.size else 0.0
        n = _initial_grid_points(scenario, points_per_period, s_abs_max)

        worst = None
        for _ in range(max_doublings + 1):
            tables = _Tables.from_scenario(scenario, n)
            terms = tables.baseline_terms()
            if need_correlated:
                base_keys = (("k0",) if scenario.regime == "quantum"
                             else ("k0", "self_i", "self_ii"))
            else:
                base_keys = ("singles_i", "singles_ii")
            base_ok = all(
                abs(terms[k][0] - terms[k][1])
                <= target_rel_error * abs(terms[k][0])
                for k in base_keys)

            baseline = self._baseline_from_terms(scenario, terms)
            if baseline <= 0.0:
                raise DegenerateScenarioError(
                    "baseline rate vanishes (an arm is fully blocked); "
                    "the normalized scan is undefined")

            if need_correlated:
                scale = max(abs(terms["k0"][0]), tables.q_abs_int)
                pairs = [tables.correlated_interference(s) for s in s_values]
            else:
                scale = np.sqrt(abs(terms["singles_i"][0])
                                * abs(terms["singles_ii"][0]))
                pairs = [tables.independent_overlap(s) for s in s_values]

            errs = np.array([abs(full - half) for full, half in pairs])
            tols = np.array([target_rel_error * max(abs(full), scale)
                             for full, _ in pairs])
            if errs.size:
                i_worst = int(np.argmax(errs - tols))
                worst = (s_values[i_worst], errs[i_worst], tols[i_worst])
            if base_ok and np.all(errs <= tols):
                self.tables = tables
                self.terms = {k: v[0] for k, v in terms.items()}
                self.raw = np.array([full for full, _ in pairs])
                self.scale = scale
                self.n_points = n
                self.scenario = scenario
                self.s_values = s_values
                return
            n = 2 * (n - 1) + 1

        if worst is not None:
            raise ConvergenceError(
                f"K/G interference integral did not converge at s = {worst[0]:g} m "
                f"(error {worst[1]:g}, tolerance {worst[2]:g}) "
                f"after {max_doublings} doublings ({n} points)")
        raise ConvergenceError(
            f"baseline integral did not converge after {max_doublings} "
            f"doublings ({n} points)")

    @staticmethod
    def _baseline_from_terms(scenario, terms):
        if scenario.correlation == "correlated":
            k0 = terms["k0"][0]
            if scenario.regime == "quantum":
                return k0
            return 2.0 * k0 + terms["self_i"][0] + terms["self_ii"][0]
        singles = terms["singles_i"][0] * terms["singles_ii"][0]
        if scenario.regime == "quantum":
            return singles
        return (2.0 * singles + terms["singles_i"][0] ** 2
                + terms["singles_ii"][0] ** 2)

    def baseline(self):
        return self._baseline_from_terms(self.scenario, {k: (v,) for k, v in self.terms.items()})

    def interference_values(self):
        """Real interference term per scan point (K1, G1, or the
        independent-source counterparts)."""
        if self.scenario.correlation == "correlated":
            k1 = np.array([_take_real(v, self.scale) for v in self.raw])
            return k1 if self.scenario.regime == "quantum" else 2.0 * k1
        overlap_sq = np.abs(self.raw) ** 2
        return overlap_sq if self.scenario.regime == "quantum" else 2.0 * overlap_sq


def _engine(scenario, s_values, target_rel_error, points_per_period,
            max_doublings=16):
    return _Engine(scenario, s_values, target_rel_error, points_per_period,
                   max_doublings)


def _require(scenario, regime, correlation):
    if scenario.regime != regime or scenario.correlation != correlation:
        raise ValueError(f"operation requires a {regime} {correlation} scenario, "
                         f"got {scenario.regime} {scenario.correlation}")


def k0(scenario, *, target_rel_error=_DEFAULT_TARGET):
    """Prism-independent baseline of the correlated quantum rate."""
    _require(scenario, "quantum", "correlated")
    eng = _engine(scenario, (), target_rel_error, _DEFAULT_POINTS_PER_PERIOD)
    return eng.baseline()


def k1(scenario, s, *, target_rel_error=_DEFAULT_TARGET):
    """Position-dependent part of the correlated quantum rate at prism
    translation s (meters)."""
    _require(scenario, "quantum", "correlated")
    ppp = _DEFAULT_POINTS_PER_PERIOD
    eng = _engine(scenario, (float(s),), target_rel_error, ppp)
    return float(eng.interference_values()[0])


def g0(scenario, *, target_rel_error=_DEFAULT_TARGET):
    """Constant part of the correlated classical rate (three terms: the
    doubled cross term plus one self term per arm)."""
    _require(scenario, "classical", "correlated")
    eng = _engine(scenario, (), target_rel_error, _DEFAULT_POINTS_PER_PERIOD)
    return eng.baseline()


def g1(scenario, s, *, target_rel_error=_DEFAULT_TARGET):
    """Correlated classical interference term: twice the quantum kernel.

    Raises InternalConsistencyError if the analytic bound
    |G1| <= G0/2 is violated beyond tolerance.
    """
    _require(scenario, "classical", "correlated")
    eng = _engine(scenario, (float(s),), target_rel_error,
                  _DEFAULT_POINTS_PER_PERIOD)
    value = float(eng.interference_values()[0])
    bound = 0.5 * eng.baseline()
    if abs(value) > bound * (1.0 + _CLASSICAL_BOUND_TOL):
        raise InternalConsistencyError(
            f"|G1(s)| = {abs(value):g} exceeds G0/2 = {bound:g}")
    return value


def k1_independent(scenario, s, *, target_rel_error=_DEFAULT_TARGET):
    """Interference term for independent quantum sources (non-negative)."""
    _require(scenario, "quantum", "independent")
    eng = _engine(scenario, (float(s),), target_rel_error,
                  _DEFAULT_POINTS_PER_PERIOD)
    return float(eng.interference_values()[0])


def g1_independent(scenario, s, *, target_rel_error=_DEFAULT_TARGET):
    """Interference term for independent classical sources (non-negative)."""
    _require(scenario, "classical", "independent")
    eng = _engine(scenario, (float(s),), target_rel_error,
                  _DEFAULT_POINTS_PER_PERIOD)
    return float(eng.interference_values()[0])


def visibility(scan_values):
    """Fringe visibility (max - min) / (max + min) over scanned values."""
    values = np.asarray(scan_values, dtype=float)
    if values.size == 0:
        raise ValueError("empty scan")
    if np.any(values < -_NEGATIVE_R_TOL):
        raise ValueError("scan values must be non-negative")
    if np.all(values == 0.0):
        raise UndefinedVisibilityError("visibility undefined for an all-zero scan")
    r_max = float(values.max())
    r_min = float(values.min())
    return (r_max - r_min) / (r_max + r_min)


def _refined_minimum(s_values, r_values):
    """Quadratic refinement of the grid argmin; None when not a strict
    interior minimum."""
    i = int(np.argmin(r_values))
    if i == 0 or i == len(r_values) - 1:
        return None
    y0, y1, y2 = r_values[i - 1], r_values[i], r_values[i + 1]
    if not (y1 < y0 and y1 < y2):
        return None
    h = s_values[1] - s_values[0]
    denom = y0 - 2.0 * y1 + y2
    return float(s_values[i] + 0.5 * h * (y0 - y2) / denom)


def dip_position(scan):
    """Location of the scan's global minimum, quadratically refined.

    Accepts a FringeScan or an (s_values, r_values) pair.
    """
    if isinstance(scan, FringeScan):
        s_values, r_values = scan.s_values, scan.r_normalized
    else:
        s_values, r_values = scan
        s_values = np.asarray(s_values, dtype=float)
        r_values = np.asarray(r_values, dtype=float)
    i = int(np.argmin(r_values))
    if i == 0 or i == len(r_values) - 1:
        raise BoundaryExtremumError(
            f"scan minimum sits on the boundary at s = {s_values[i]:g} m; "
            "the scan range is too small")
    refined = _refined_minimum(s_values, r_values)
    if refined is None:
        raise BoundaryExtremumError("scan has no strict interior minimum")
    return refined


def scan(scenario, *, target_rel_error=_DEFAULT_TARGET,
         points_per_period=_DEFAULT_POINTS_PER_PERIOD, max_doublings=16):
    """Evaluate the normalized fringe scan R(s) over the scenario's grid.

    All scan points share one converged frequency grid, so exact
    identities between points (the s = 0 dip, mirror symmetry) survive
    discretization.
    """
    s_values = scenario.scan.values()
    eng = _engine(scenario, s_values, target_rel_error, points_per_period,
                  max_doublings)
    baseline = eng.baseline()
    interference = eng.interference_values()
    r = (baseline - interference) / baseline

    if np.any(r < -_NEGATIVE_R_TOL):
        raise QuadratureError(
            f"normalized rate went negative (min {r.min():g}); "
            "this signals a quadrature bug")
    if scenario.regime == "classical" and scenario.correlation == "correlated":
        ratio = np.max(np.abs(interference)) / baseline
        if ratio > 0.5 * (1.0 + _CLASSICAL_BOUND_TOL):
            raise InternalConsistencyError(
                f"max |G1|/G0 = {ratio!r} exceeds the classical bound 1/2")

    vis = visibility(r)
    if not -1e-12 <= vis <= 1.0 + _NEGATIVE_R_TOL:
        raise InternalConsistencyError(f"visibility {vis!r} outside [0, 1]")
    return FringeScan(
        s_values=s_values,
        r_normalized=r,
        baseline=float(baseline),
        visibility=float(vis),
        dip_position=_refined_minimum(s_values, r),
        n_quadrature_points=eng.n_points,
    )
