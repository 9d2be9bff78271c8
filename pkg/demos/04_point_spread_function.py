#!/usr/bin/env python3
"""Point spread function of the full imaging chain, all four waveforms.

Simulates a point target at the swath center over a one-second aperture,
focuses it with the identical azimuth chain for every waveform branch,
and compares range and azimuth cuts through the image peak.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cpsar.azimuth import azimuth_compress, range_compress_all, rcmc
from cpsar.echo import simulate_raw
from cpsar.metrics import (
    extract_profiles,
    mainlobe_width_3db,
    peak_sidelobe_level,
)
from cpsar.model import RadarParams, derive_timings
from cpsar.scenes import builtin_scene
from cpsar.waveform import lfm_pulse, noise_pulse, ofdm_pulse, pn_weights

params = RadarParams(
    carrier_freq=9e9,
    bandwidth=150e6,
    num_subcarriers=512,
    num_range_cells=96,
    cp_len=95,
    prf=256.0,  # desk scale: 256 pulses across the aperture
    platform_velocity=150.0,
    platform_height=5000.0,
    antenna_length=1.0,
    aperture_time=1.0,
    swath_center_range=5000.0 * np.sqrt(2.0),
)
timings = derive_timings(params)
N, M = params.num_subcarriers, params.num_range_cells
weights = pn_weights(N, seed=1)

print("=" * 64)
print("POINT SPREAD FUNCTION, FOUR WAVEFORM BRANCHES")
print("=" * 64)

scene = builtin_scene("point", params, timings)
branches = {
    "cp_ofdm": ("cp_ofdm", ofdm_pulse(weights, params.cp_len)),
    "conventional_ofdm": ("matched_filter", ofdm_pulse(weights, params.cp_len)),
    "lfm": ("matched_filter", lfm_pulse(N + params.cp_len)),
    "noise": ("matched_filter", noise_pulse(N + params.cp_len, seed=9)),
}

profiles = {}
print(f"\n{'branch':20s} {'range PSL dB':>13s} {'range 3dB':>10s} {'azimuth 3dB':>12s}")
for name, (method, pulse) in branches.items():
    raw = simulate_raw(scene, pulse, params, timings)
    rc = range_compress_all(
        raw, method, pulse, params, timings,
        weights=weights if method == "cp_ofdm" else None,
    )
    image = azimuth_compress(rcmc(rc, params, timings), params, timings)
    rp, ap = extract_profiles(image)
    profiles[name] = (rp, ap)
    print(f"{name:20s} {peak_sidelobe_level(rp):13.1f} "
          f"{mainlobe_width_3db(rp):10.2f} {mainlobe_width_3db(ap):12.2f}")

print("\nRange sidelobes vanish only for the prefixed-OFDM reconstruction;")
print("azimuth behavior is identical because the azimuth chain is shared.")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(12, 4))
for name, (rp, ap) in profiles.items():
    ax1.plot(rp.index, rp.db, label=name, lw=0.9)
    ax2.plot(ap.index, ap.db, label=name, lw=0.9)
ax1.set_title("range profile through the peak", fontsize=10)
ax1.set_xlabel("range cell")
ax1.set_ylabel("dB")
ax1.set_ylim(-320, 5)
ax2.set_title("azimuth profile through the peak", fontsize=10)
ax2.set_xlabel("azimuth row")
ax2.set_ylim(-60, 5)
ax2.set_xlim(96, 160)
ax1.legend(fontsize=8)
fig.tight_layout()
fig.savefig("psf_profiles.png", dpi=120)
print("saved psf_profiles.png")
