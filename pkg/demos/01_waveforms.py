#!/usr/bin/env python3
"""Weight families and transmit pulses.

Generates the three subcarrier weight families (binary PN, Zadoff-Chu,
constant), builds pulses from them, and compares their peak-to-average
power ratios and spectra. Also embeds an ordinary chirp into the OFDM
framework to show that any waveform has a matching weight vector.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cpsar.waveform import (
    constant_weights,
    lfm_pulse,
    ofdm_pulse,
    papr,
    pn_weights,
    weights_from_signal,
    zadoff_chu_weights,
)

N = 512
CP = 95

print("=" * 64)
print("WEIGHT FAMILIES AND PULSES")
print("=" * 64)

families = {
    "binary PN (seed 42)": pn_weights(N, seed=42),
    "Zadoff-Chu (root 1)": zadoff_chu_weights(N, root=1),
    "constant": constant_weights(N),
    "embedded chirp": weights_from_signal(lfm_pulse(N).samples),
}

print(f"\n{'family':24s} {'sum |S|^2':>12s} {'PAPR of core':>14s}")
for name, w in families.items():
    core = ofdm_pulse(w, 0).samples
    print(f"{name:24s} {np.sum(np.abs(w.S)**2):12.6f} {papr(core):14.3f}")

print("\nThe constant family degenerates to a single-sample spike (PAPR = N);")
print("Zadoff-Chu keeps unit modulus in both domains (PAPR = 1); PN sits in")
print("between and is what the imaging experiments transmit.")

pulse = ofdm_pulse(pn_weights(N, seed=42), CP)
print(f"\nPN pulse: {len(pulse)} samples = {N} core + {CP} cyclic prefix")
print("prefix replicates the head:",
      np.array_equal(pulse.samples[N:], pulse.samples[:CP]))

fig, axes = plt.subplots(2, 2, figsize=(11, 7))
for ax, (name, w) in zip(axes.ravel(), families.items()):
    core = ofdm_pulse(w, 0).samples
    ax.plot(np.abs(core), lw=0.7)
    ax.set_title(f"{name}  (PAPR {papr(core):.2f})", fontsize=10)
    ax.set_xlabel("sample")
    ax.set_ylabel("|s|")
fig.tight_layout()
fig.savefig("waveforms.png", dpi=120)
print("\nsaved waveforms.png")
