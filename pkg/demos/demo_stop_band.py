#!/usr/bin/env python3
"""Bragg-mirror stop band versus photon line shape.

Builds TiO2/SiO2 quarter-wave stacks (n = 2.22 / 1.41, centered at
2.68 PHz) with 11 and 57 layers, tabulates |t(omega)|^2 across the
band gap, and overlays the spectral line shape of a 40 fs time-limited
pulse centered in the gap.  The 57-layer gap is deep enough to suppress
the packet by more than ten orders of magnitude at the center.

Writes CSV spectra and a PNG overview into demos/output/.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from homsim import (BandShape, StackSpec, build_quarter_wave_stack,
                    evaluate_band_shape, spectrum_to_csv,
                    transmission_spectrum)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

GAP_CENTER = 2.68e15  # rad/s
T0 = 2.0e-14          # 2 t0 = 40 fs

grid = np.linspace(1.8e15, 3.6e15, 3001)
pulse = BandShape("rect_time", GAP_CENTER, T0)

fig, ax = plt.subplots(figsize=(8, 5))
for n_layers, color in ((11, "tab:blue"), (57, "tab:red")):
    stack = build_quarter_wave_stack(n_layers, 2.22, 1.41, GAP_CENTER)
    spectrum = transmission_spectrum(stack, grid)
    spectrum_to_csv(spectrum, OUT / f"transmittance_N{n_layers}.csv")
    ax.plot(grid / 1e15, np.abs(spectrum.values) ** 2, color=color,
            label=f"$|t|^2$, N = {n_layers}")
    print(f"N = {n_layers:2d}:  |t|^2 at gap center = "
          f"{abs(spectrum.values[np.argmin(np.abs(grid - GAP_CENTER))])**2:.3e}")

line_shape = np.abs(evaluate_band_shape(pulse, grid))
ax.plot(grid / 1e15, line_shape / line_shape.max(), "k--",
        label=r"$|f(\omega)|$ (normalized)")
ax.set_xlabel(r"$\omega$ (PHz, $10^{15}$ rad/s)")
ax.set_ylabel("transmittance / line shape")
ax.set_ylim(0, 1.05)
ax.legend()
ax.set_title("Quarter-wave stack stop band and the photon line shape")
fig.tight_layout()
fig.savefig(OUT / "stop_band.png", dpi=150)
print(f"wrote {OUT / 'stop_band.png'}")
