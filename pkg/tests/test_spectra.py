import numpy as np
import pytest

from homsim import (BandShape, ComplexSpectrum, DegenerateSpectrumError,
                    PumpSpec, StackSpec, band_shape_spectrum,
                    build_quarter_wave_stack, effective_packet,
                    evaluate_band_shape, frequency_window, normalize)

T0 = 2.0e-14
CENTER = 2.68e15


@pytest.fixture
def rect_pulse():
    return BandShape("rect_time", CENTER, T0)


@pytest.fixture
def gaussian_pulse():
    return BandShape("gaussian", CENTER, T0)


def test_rect_time_values(rect_pulse):
    assert evaluate_band_shape(rect_pulse, CENTER) == 1.0
    first_zero = CENTER + np.pi / T0
    assert abs(evaluate_band_shape(rect_pulse, first_zero)) < 1e-12
    # generic point against the sin(x)/x definition
    omega = CENTER + 0.37 / T0
    x = (omega - CENTER) * T0
    assert evaluate_band_shape(rect_pulse, omega) == pytest.approx(
        np.sin(x) / x, rel=1e-12)


def test_gaussian_values(gaussian_pulse):
    assert evaluate_band_shape(gaussian_pulse, CENTER) == 1.0
    assert evaluate_band_shape(gaussian_pulse, CENTER + 1.0 / T0) == pytest.approx(
        np.exp(-0.5), rel=1e-12)


@pytest.mark.parametrize("model", ["rect_time", "gaussian"])
def test_symmetry_about_center_is_exact(model):
    shape = BandShape(model, CENTER, T0)
    deltas = np.linspace(0.0, 10.0 / T0, 101)[1:]
    left = evaluate_band_shape(shape, CENTER - deltas)
    right = evaluate_band_shape(shape, CENTER + deltas)
    assert np.array_equal(left, right)


@pytest.mark.parametrize("model", ["rect_time", "gaussian"])
def test_values_are_real_and_finite(model):
    shape = BandShape(model, CENTER, T0)
    grid = np.linspace(0.0, 6e15, 2001)
    values = evaluate_band_shape(shape, grid)
    assert values.dtype == np.float64
    assert np.all(np.isfinite(values))


def test_rejects_negative_frequency(rect_pulse):
    with pytest.raises(ValueError):
        evaluate_band_shape(rect_pulse, -1.0)


def test_band_shape_validation():
    with pytest.raises(ValueError):
        BandShape("triangle", CENTER, T0)
    with pytest.raises(ValueError):
        BandShape("gaussian", -CENTER, T0)
    with pytest.raises(ValueError):
        BandShape("gaussian", CENTER, 0.0)
    with pytest.raises(ValueError):
        PumpSpec(0.0)


class TestNormalize:
    def test_constant_over_width(self):
        grid = np.linspace(1.0e15, 3.0e15, 501)
        width = grid[-1] - grid[0]
        out = normalize(ComplexSpectrum(grid, np.ones_like(grid, complex)))
        assert np.allclose(out.values, 1.0 / np.sqrt(width), rtol=1e-12)

    def test_idempotent(self):
        grid = np.linspace(1.0e15, 3.0e15, 501)
        once = normalize(ComplexSpectrum(grid, np.exp(-((grid - 2e15) * 1e-14) ** 2)))
        twice = normalize(once)
        assert np.allclose(twice.values, once.values, rtol=1e-12)

    def test_gaussian_against_closed_form(self):
        # normalize by trapezoid, then check the exact Gaussian integral
        shape = BandShape("gaussian", CENTER, T0)
        grid = np.linspace(CENTER - 8.0 / T0, CENTER + 8.0 / T0, 2001)
        out = normalize(ComplexSpectrum(grid, evaluate_band_shape(shape, grid)))
        scale = out.values[np.argmin(np.abs(grid - CENTER))].real
        exact_power = scale ** 2 * np.sqrt(np.pi) / T0  # integral of |scale*f|^2
        assert exact_power == pytest.approx(1.0, abs=1e-8)

    def test_all_zero_raises(self):
        grid = np.linspace(1.0e15, 2.0e15, 33)
        with pytest.raises(DegenerateSpectrumError):
            normalize(ComplexSpectrum(grid, np.zeros_like(grid, complex)))


class TestEffectivePacket:
    def test_free_space_equals_band_shape(self, rect_pulse):
        grid = np.linspace(1.0e15, 4.0e15, 257)
        packet = effective_packet(rect_pulse, StackSpec(), grid)
        base = band_shape_spectrum(rect_pulse, grid)
        assert np.array_equal(packet.spectrum.values, base.values)

    def test_gap_centered_suppression(self, rect_pulse):
        stack = build_quarter_wave_stack(57, 2.22, 1.41, CENTER)
        grid = np.linspace(1.0e15, 4.0e15, 1025)
        filtered = effective_packet(rect_pulse, stack, grid)
        free = effective_packet(rect_pulse, StackSpec(), grid)
        i = np.argmin(np.abs(grid - CENTER))
        ratio = abs(free.spectrum.values[i]) ** 2 / abs(filtered.spectrum.values[i]) ** 2
        assert ratio > 1e3

    def test_edge_centered_packet_bridges_gap_edge(self):
        # pulse centered at the upper band-gap edge: blocked below,
        # partially transmitted above
        shape = BandShape("rect_time", 3.06e15, T0)
        stack = build_quarter_wave_stack(57, 2.22, 1.41, CENTER)
        grid = np.linspace(2.4e15, 3.8e15, 2049)
        packet = effective_packet(shape, stack, grid)
        free = band_shape_spectrum(shape, grid)
        power = np.abs(packet.spectrum.values) ** 2
        power_free = np.abs(free.values) ** 2
        below = (grid > 2.8e15) & (grid < 3.0e15)
        above = (grid > 3.1e15) & (grid < 3.3e15)
        assert power[below].sum() < 1e-3 * power_free[below].sum()
        assert power[above].sum() > 0.05 * power_free[above].sum()

    def test_filtering_never_amplifies(self, rect_pulse):
        rng = np.random.default_rng(41)
        from conftest import random_stack
        grid = np.linspace(1.0e15, 4.0e15, 513)
        base = band_shape_spectrum(rect_pulse, grid)
        for _ in range(20):
            stack = random_stack(rng, max_layers=20)
            packet = effective_packet(rect_pulse, stack, grid)
            assert np.all(np.abs(packet.spectrum.values)
                          <= np.abs(base.values) + 1e-12)


class TestFrequencyWindow:
    def test_symmetric_about_degenerate_frequency(self):
        pump = PumpSpec(5.36e15)
        shape = BandShape("rect_time", 2.68e15, T0)
        lo, hi = frequency_window(shape, pump)
        assert lo + hi == pytest.approx(pump.frequency, rel=1e-12)
        assert hi - lo == pytest.approx(24.0 * np.pi / T0, rel=1e-9)

    def test_clipped_to_pump_interval(self):
        pump = PumpSpec(5.36e15)
        shape = BandShape("rect_time", 2.68e15, 1.0e-15)  # very wide spectrum
        lo, hi = frequency_window(shape, pump)
        assert 0.0 < lo < hi < pump.frequency
        assert lo + hi == pytest.approx(pump.frequency, rel=1e-12)

    def test_off_center_window(self):
        pump = PumpSpec(6.22e15)
        shape = BandShape("rect_time", 3.06e15, T0)
        lo, hi = frequency_window(shape, pump)
        assert lo == pytest.approx(3.06e15 - 12 * np.pi / T0, rel=1e-12)
        assert hi == pytest.approx(3.06e15 + 12 * np.pi / T0, rel=1e-12)
