#!/usr/bin/env python3
"""What happens when the cyclic prefix is too short.

The prefix must cover M-1 samples for the echo window to close into a
circular convolution. Shorter prefixes leave interference between range
cells; this script reconstructs the same line at several prefix lengths,
verifies the closed-form interference prediction, and traces the Monte
Carlo reconstruction error as the prefix shrinks.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cpsar.echo import simulate_echo_line, weighting_coefficients
from cpsar.metrics import mse_vs_cp
from cpsar.model import RadarParams, derive_timings, scene_to_range_line
from cpsar.rangecomp import cp_ofdm_range_compress, irci_oracle
from cpsar.scenes import builtin_scene
from cpsar.waveform import pn_weights, truncated_cp_pulse

params = RadarParams(
    carrier_freq=9e9,
    bandwidth=150e6,
    num_subcarriers=512,
    num_range_cells=96,
    cp_len=95,
    prf=800.0,
    platform_velocity=150.0,
    platform_height=5000.0,
    antenna_length=1.0,
    aperture_time=1.0,
    swath_center_range=5000.0 * np.sqrt(2.0),
)
timings = derive_timings(params)
N, M = params.num_subcarriers, params.num_range_cells

print("=" * 64)
print("INSUFFICIENT PREFIX: INTERFERENCE BETWEEN RANGE CELLS")
print("=" * 64)

scene = builtin_scene("rangeline18", params, timings, seed=3)
line = scene_to_range_line(scene, 0.0, params, timings)
d = weighting_coefficients(line, 0.0, params, timings)
truth = np.abs(line.rcs)
weights = pn_weights(N, seed=3)

prefix_lengths = [95, 80, 40, 0]
fig, axes = plt.subplots(2, 2, figsize=(12, 7), sharey=True)
for ax, cp in zip(axes.ravel(), prefix_lengths):
    pulse = truncated_cp_pulse(weights, M, cp)
    est = cp_ofdm_range_compress(
        simulate_echo_line(pulse, d), weights, M, cp_len=cp
    ).d_hat
    # interference predicted from the reflectivity and the weights alone
    xi = irci_oracle(d.d, weights, cp)
    predicted = np.sqrt(N) * d.d - xi
    agreement = np.max(np.abs(est - predicted))
    interference_db = 10 * np.log10(
        np.sum(np.abs(xi) ** 2) / np.sum(np.abs(np.sqrt(N) * d.d) ** 2) + 1e-300
    )
    print(f"prefix {cp:3d}: interference/signal {interference_db:7.1f} dB, "
          f"prediction agrees to {agreement:.2e}")

    mag = np.abs(est)
    db = 20 * np.log10(mag / mag.max() + 1e-300)
    occ = truth > 0
    ax.stem(np.where(occ)[0], 20 * np.log10(truth[occ] / truth.max()),
            linefmt="r-", markerfmt="ro", basefmt=" ")
    ax.plot(db, "b*", ms=4)
    ax.set_ylim(-320, 5)
    ax.set_title(f"prefix = {cp}", fontsize=10)
axes[1][0].set_xlabel("range cell")
axes[1][1].set_xlabel("range cell")
fig.tight_layout()
fig.savefig("insufficient_cp_lines.png", dpi=120)
print("saved insufficient_cp_lines.png")

print("\nMonte Carlo error vs prefix length (uniform unit line, 100 trials):")
cps = sorted(set(range(0, M - 1, 8)) | {M - 1})
curve = mse_vs_cp(params, cps, trials=100, seed=1)
for cp, mse in zip(curve.cp_lengths, curve.mse):
    print(f"  prefix {cp:3d}: mse {mse:.3e}")

fig2, ax = plt.subplots(figsize=(7, 4))
ax.semilogy(curve.cp_lengths, np.maximum(curve.mse, 1e-32), "o-")
ax.set_xlabel("prefix length")
ax.set_ylabel("reconstruction MSE")
ax.grid(True, alpha=0.3)
fig2.tight_layout()
fig2.savefig("mse_vs_cp.png", dpi=120)
print("saved mse_vs_cp.png")
