#!/usr/bin/env python3
"""Bounds that separate the four source regimes.

Same free-space interferometer, four ways to feed it:

                     independent sources      one correlated source
    quantum          R <= 1, V <= 1           R <= 1 here (type A), V <= 1
    classical        R <= 1, V <= 1/3         1/2 <= R <= 3/2, V <= 1/2

Only correlated type-B packets (see demo_edge_enhancement.py) can push
R above one, so an observed enhancement certifies source correlation.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from homsim import SPEED_OF_LIGHT, ScanGrid, make_scenario, scan

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

T0 = 2.0e-14
CT0 = SPEED_OF_LIGHT * T0
grid = ScanGrid(-8 * CT0, 8 * CT0, 321)

fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True, sharey=True)
print(f"{'regime':<10s} {'correlation':<12s} {'min R':>8s} {'max R':>8s} {'V':>8s}")
for row, regime in enumerate(("quantum", "classical")):
    for col, correlation in enumerate(("independent", "correlated")):
        fringe = scan(make_scenario(regime, correlation, 5.36e15, T0, grid))
        ax = axes[row][col]
        ax.plot(fringe.s_values * 1e6, fringe.r_normalized)
        ax.axhline(1.0, color="gray", lw=0.5)
        ax.set_title(f"{regime}, {correlation}", fontsize=10)
        print(f"{regime:<10s} {correlation:<12s} "
              f"{fringe.r_normalized.min():8.4f} "
              f"{fringe.r_normalized.max():8.4f} {fringe.visibility:8.4f}")

for ax in axes[1]:
    ax.set_xlabel("s (um)")
for ax in axes[:, 0]:
    ax.set_ylabel(r"$R^{(n)}(s)$")
fig.tight_layout()
fig.savefig(OUT / "four_regimes.png", dpi=150)
print(f"wrote {OUT / 'four_regimes.png'}")
