"""Shared helpers for the test suite."""

import numpy as np

from homsim import LayerSpec, StackSpec


def trapezoid_richardson(f, a, b, n_initial=65, levels=12, tol=1e-12):
    """Trapezoid rule with Richardson extrapolation (Romberg table).

    Independent oracle for the production Simpson path: different rule,
    different refinement logic.
    """
    table = []
    n = n_initial
    for level in range(levels):
        x = np.linspace(a, b, n)
        t = np.trapezoid(f(x), dx=x[1] - x[0])
        row = [t]
        for k, prev in enumerate(table[-1] if table else []):
            factor = 4.0 ** (k + 1)
            row.append((factor * row[k] - prev) / (factor - 1.0))
        table.append(row)
        if level > 0 and abs(row[-1] - table[-2][-1]) <= tol * abs(row[-1]):
            return row[-1]
        n = 2 * (n - 1) + 1
    return table[-1][-1]


def random_stack(rng, max_layers=8, min_layers=0):
    """Random lossless stack within the property-test parameter box."""
    n_layers = int(rng.integers(min_layers, max_layers + 1))
    layers = tuple(
        LayerSpec(float(rng.uniform(1.2, 3.0)), float(rng.uniform(10e-9, 500e-9)))
        for _ in range(n_layers))
    return StackSpec(layers)
