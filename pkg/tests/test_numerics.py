import numpy as np
import pytest
from conftest import trapezoid_richardson

from homsim.numerics import (ConvergenceError, integrate, refine_until,
                             simpson, simpson_with_error)


def test_simpson_exact_for_cubics():
    x = np.linspace(0.0, 1.0, 65)
    assert abs(integrate(x ** 2, x[1] - x[0]).value.real - 1.0 / 3.0) < 1e-10
    assert abs(simpson(x ** 3, x[1] - x[0]) - 0.25) < 1e-15


@pytest.mark.parametrize("n", [2, 4, 64])
def test_simpson_rejects_even_grids(n):
    with pytest.raises(ValueError):
        simpson(np.ones(n), 0.1)


@pytest.mark.parametrize("freq", [1, 3, 5])
def test_oscillatory_integral_over_full_periods(freq):
    # at >= 12 points per period the periodic sum cancels to roundoff
    n = max(129, 12 * freq + 1)
    if n % 2 == 0:
        n += 1
    x = np.linspace(0.0, 2.0 * np.pi, n)
    result = integrate(np.exp(1j * freq * x), x[1] - x[0])
    assert abs(result.value) < 1e-8


def test_agrees_with_trapezoid_extrapolation_oracle():
    rng = np.random.default_rng(7)
    for _ in range(10):
        a_coef = rng.uniform(0.5, 3.0)
        b_coef = rng.uniform(-2.0, 2.0)
        c_coef = rng.uniform(1.0, 6.0)

        def f(x, a=a_coef, b=b_coef, c=c_coef):
            return np.exp(-a * x ** 2) * np.cos(c * x) + b * x ** 2

        x = np.linspace(-2.0, 3.0, 513)
        ours = integrate(f(x), x[1] - x[0]).value.real
        oracle = trapezoid_richardson(f, -2.0, 3.0)
        assert ours == pytest.approx(oracle, rel=1e-7)


def test_error_estimate_conservative_on_smooth_integrals():
    cases = [
        (lambda x: np.sin(x), 0.0, np.pi, 2.0),
        (lambda x: np.exp(x), 0.0, 1.0, np.e - 1.0),
        (lambda x: 1.0 / (1.0 + x ** 2), 0.0, 1.0, np.pi / 4.0),
    ]
    for f, a, b, exact in cases:
        x = np.linspace(a, b, 33)
        value, estimate = simpson_with_error(f(x), x[1] - x[0])
        true_error = abs(value - exact)
        assert true_error <= 10.0 * estimate + 1e-14


def test_refine_until_smooth_gaussian():
    result = refine_until(lambda x: np.exp(-x * x), -8.0, 8.0, 1e-7)
    doublings = int(np.log2((result.n_points_used - 1) / 128))
    assert doublings <= 6
    assert result.value.real == pytest.approx(np.sqrt(np.pi), rel=1e-9)
    # power-of-two multiple of the initial grid intervals
    assert (result.n_points_used - 1) % 128 == 0


def test_refine_until_constant_returns_after_first_comparison():
    result = refine_until(lambda x: np.full_like(x, 2.5), 0.0, 4.0, 1e-7)
    assert result.n_points_used == 129
    assert result.value.real == pytest.approx(10.0, rel=1e-14)


def test_refine_until_discontinuous_integrand_fails():
    with pytest.raises(ConvergenceError) as info:
        refine_until(lambda x: np.where(x < 0.3333, 0.0, 1.0), 0.0, 1.0,
                     1e-12, max_doublings=6)
    assert info.value.last_value is not None
    assert info.value.previous_value is not None


def test_refine_until_input_validation():
    f = np.cos
    with pytest.raises(ValueError):
        refine_until(f, 0.0, 1.0, 1e-7, max_doublings=17)
    with pytest.raises(ValueError):
        refine_until(f, 0.0, 1.0, 1e-7, n_initial=130)
    with pytest.raises(ValueError):
        refine_until(f, 0.0, 1.0, -1e-7)
    with pytest.raises(ValueError):
        refine_until(f, 1.0, 0.0, 1e-7)


def test_deterministic_reproducibility():
    x = np.linspace(0.0, 3.0, 257)
    y = np.exp(1j * 7.3 * x) / (1.0 + x ** 2)
    first = integrate(y, x[1] - x[0])
    second = integrate(y, x[1] - x[0])
    assert first.value == second.value
    assert first.estimated_error == second.estimated_error
