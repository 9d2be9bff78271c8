#!/usr/bin/env python3
"""Leakage-free range reconstruction on a single range line.

A sparse reflectivity line (18 occupied cells out of 96) is measured with
a prefixed OFDM pulse and reconstructed by the FFT pipeline; the same
line measured with an LFM pulse is compressed by correlation. The OFDM
route recovers empty cells at the numerical noise floor, the correlation
route leaves sidelobes that bury the weak targets.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cpsar.echo import simulate_echo_line, weighting_coefficients
from cpsar.model import RadarParams, derive_timings, scene_to_range_line
from cpsar.rangecomp import cp_ofdm_range_compress, matched_filter_compress
from cpsar.scenes import builtin_scene
from cpsar.waveform import lfm_pulse, ofdm_pulse, pn_weights

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
print("RANGE RECONSTRUCTION: FFT PIPELINE vs CORRELATION")
print("=" * 64)
print(f"N = {N} subcarriers, M = {M} cells, prefix = {params.cp_len}")
print(f"range resolution = {timings.range_resolution:.4f} m")

scene = builtin_scene("rangeline18", params, timings, seed=3)
line = scene_to_range_line(scene, 0.0, params, timings)
d = weighting_coefficients(line, 0.0, params, timings)
truth = np.abs(line.rcs)
occupied = truth > 0

weights = pn_weights(N, seed=3)
pulse = ofdm_pulse(weights, params.cp_len)
echo = simulate_echo_line(pulse, d)
est_ofdm = np.abs(cp_ofdm_range_compress(echo, weights, M).d_hat)

ref = lfm_pulse(N + M - 1)
est_lfm = np.abs(matched_filter_compress(simulate_echo_line(ref, d), ref))

def db(v):
    return 20 * np.log10(v / v.max() + 1e-300)

print(f"\nOFDM empty-cell floor:   {db(est_ofdm)[~occupied].max():8.1f} dB")
print(f"LFM  empty-cell maximum: {db(est_lfm)[~occupied].max():8.1f} dB")
print(f"weakest target:          {db(truth)[occupied].min():8.1f} dB")
print("\nEvery cell the OFDM route reports above -250 dB is a real target;")
print("the correlation route's sidelobes sit far above the weak targets.")

fig, axes = plt.subplots(1, 2, figsize=(12, 4), sharey=True)
for ax, est, title in (
    (axes[0], est_ofdm, "prefixed OFDM, FFT reconstruction"),
    (axes[1], est_lfm, "LFM, correlation"),
):
    ax.stem(np.where(occupied)[0], db(truth)[occupied], linefmt="r-",
            markerfmt="ro", basefmt=" ", label="targets")
    ax.plot(db(est), "b*", ms=5, label="estimate")
    ax.set_ylim(-320, 5)
    ax.set_xlabel("range cell")
    ax.set_title(title, fontsize=10)
    ax.legend(fontsize=8)
axes[0].set_ylabel("normalized dB")
fig.tight_layout()
fig.savefig("range_reconstruction.png", dpi=120)
print("\nsaved range_reconstruction.png")
