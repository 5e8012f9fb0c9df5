import numpy as np
import pytest

from homsim import (BandShape, ComplexSpectrum, DegeneratePacketError,
                    EffectivePacket, PumpSpec, SPEED_OF_LIGHT, ScanGrid,
                    StackSpec, build_quarter_wave_stack, classify_type,
                    effective_packet, fourier_indicator, frequency_window,
                    k1, make_scenario)
from homsim.numerics import simpson

T0 = 2.0e-14
CT0 = SPEED_OF_LIGHT * T0


def packet_pair(model, pump_frequency, stack_i, stack_ii, n=8193):
    pump = PumpSpec(pump_frequency)
    shape = BandShape(model, 0.5 * pump_frequency, T0)
    lo, hi = frequency_window(shape, pump)
    grid = np.linspace(lo, hi, n)
    return (effective_packet(shape, stack_i, grid),
            effective_packet(shape, stack_ii, grid), pump)


FREE = StackSpec()
N57 = build_quarter_wave_stack(57, 2.22, 1.41, 2.68e15)
N11 = build_quarter_wave_stack(11, 2.22, 1.41, 2.68e15)
S_RANGE = (-40.0 * CT0, 40.0 * CT0)


def test_free_space_gaussian_pair_is_type_a():
    pi, pii, pump = packet_pair("gaussian", 5.36e15, FREE, FREE)
    verdict = classify_type(pi, pii, pump, S_RANGE, 257)
    assert verdict.is_type_a
    for s in (0.0, 1.7 * CT0, -6.0 * CT0):
        assert fourier_indicator(pi, pii, pump, s) >= -1e-9 * abs(
            fourier_indicator(pi, pii, pump, 0.0))


def test_free_space_time_limited_pair_verdict():
    # recorded from the numerical scan: the sinc pair stays type A
    pi, pii, pump = packet_pair("rect_time", 5.36e15, FREE, FREE)
    verdict = classify_type(pi, pii, pump, S_RANGE, 257)
    assert verdict.verdict == "A"


def test_indicator_at_zero_for_identical_real_packets():
    pi, pii, pump = packet_pair("gaussian", 5.36e15, FREE, FREE)
    value = fourier_indicator(pi, pii, pump, 0.0)
    # non-negative integrand: (Omega^2/4 - nu^2) |f|^4 over the window
    grid = pi.spectrum.frequencies
    nu = grid - 0.5 * pump.frequency
    integrand = (0.25 * pump.frequency ** 2 - nu ** 2) * np.abs(pi.spectrum.values) ** 4
    oracle = simpson(integrand, grid[1] - grid[0])
    assert value == pytest.approx(float(oracle), rel=1e-9)
    assert value >= 0.0


def test_edge_straddling_deep_barrier_is_type_b():
    pi, pii, pump = packet_pair("rect_time", 6.22e15, FREE, N57)
    verdict = classify_type(pi, pii, pump, S_RANGE, 257)
    assert verdict.verdict == "B"
    assert verdict.min_indicator < 0.0
    assert fourier_indicator(pi, pii, pump, verdict.argmin_s) == pytest.approx(
        verdict.min_indicator, rel=1e-12)


def test_indicator_is_fourier_pair_of_interference_kernel():
    # F(4s) is proportional to K1(-s); calibrate the packet-normalization
    # constant at a strong fringe and compare elsewhere
    scn = make_scenario("quantum", "correlated", 6.22e15, T0,
                        ScanGrid(-CT0, CT0, 3), barrier_II=N57)
    pi, pii, pump = packet_pair("rect_time", 6.22e15, FREE, N57, n=32769)
    s_ref = 1.0e-5  # a strong fringe: |K1| is about 0.45 of the baseline
    const = fourier_indicator(pi, pii, pump, s_ref) / k1(scn, -s_ref)
    assert const > 0.0
    for s in (2.3e-5, 3.0e-5):
        f_val = fourier_indicator(pi, pii, pump, s)
        k_val = k1(scn, -s)
        assert f_val == pytest.approx(const * k_val, rel=1e-4)


def test_scale_invariance():
    pi, pii, pump = packet_pair("rect_time", 6.22e15, FREE, N57, n=2049)
    scaled = EffectivePacket(ComplexSpectrum(pi.spectrum.frequencies,
                                             3.0 * pi.spectrum.values))
    v_raw = classify_type(pi, pii, pump, S_RANGE, 129)
    v_scaled = classify_type(scaled, pii, pump, S_RANGE, 129)
    assert v_scaled.verdict == v_raw.verdict
    assert v_scaled.min_indicator == pytest.approx(9.0 * v_raw.min_indicator,
                                                   rel=1e-12)
    s = 2.0e-6
    assert fourier_indicator(scaled, pii, pump, s) == pytest.approx(
        9.0 * fourier_indicator(pi, pii, pump, s), rel=1e-12)


def test_asymmetric_tabulation_resamples():
    pump = PumpSpec(5.36e15)
    shape = BandShape("gaussian", 2.68e15, T0)
    lo, hi = frequency_window(shape, pump)
    sym = np.linspace(lo, hi, 4097)
    asym = np.linspace(lo, hi + 0.07e15, 4097)  # breaks mirror symmetry
    ref = [effective_packet(shape, FREE, sym),
           effective_packet(shape, FREE, sym)]
    off = [effective_packet(shape, FREE, asym),
           effective_packet(shape, FREE, asym)]
    s = 0.8 * CT0
    a = fourier_indicator(ref[0], ref[1], pump, s)
    b = fourier_indicator(off[0], off[1], pump, s)
    assert b == pytest.approx(a, rel=1e-3)


def test_input_validation():
    pi, pii, pump = packet_pair("gaussian", 5.36e15, FREE, N11, n=2049)
    with pytest.raises(ValueError):
        classify_type(pi, pii, pump, S_RANGE, 16)
    with pytest.raises(ValueError):
        classify_type(pi, pii, pump, S_RANGE, 64, tolerance=0.0)
    with pytest.raises(ValueError):
        classify_type(pi, pii, pump, (CT0, -CT0), 64)
    other_grid = np.linspace(1.1e15, 4.1e15, 2049)
    shape = BandShape("gaussian", 2.68e15, T0)
    mismatched = effective_packet(shape, FREE, other_grid)
    with pytest.raises(ValueError):
        fourier_indicator(pi, mismatched, pump, 0.0)
    # grid that misses the degenerate frequency entirely
    low_grid = np.linspace(0.5e15, 1.5e15, 129)
    low = EffectivePacket(ComplexSpectrum(low_grid, np.ones(129, complex)))
    with pytest.raises(ValueError):
        fourier_indicator(low, low, pump, 0.0)


def test_zero_packets_degenerate():
    grid = np.linspace(1.0e15, 4.36e15, 513)
    zero = EffectivePacket(ComplexSpectrum(grid, np.zeros(513, complex)))
    with pytest.raises(DegeneratePacketError):
        classify_type(zero, zero, PumpSpec(5.36e15), S_RANGE, 64)
