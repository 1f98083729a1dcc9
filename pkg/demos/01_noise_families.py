#!/usr/bin/env python3
# Spectra of the four benchmark noise differentials: white dW, red U*dt,
# the OU increment dU, and the mixed gamma*U*dt + dW — band-averaged
# periodograms against their closed-form densities.
#
# Expected picture: white is flat at 1, red decays ~ omega^-2 past theta,
# dU climbs from ~0 toward 1 (it *whitens* at high frequency), and mixed
# interpolates: low-frequency level ((gamma+theta)^2/theta^2), high-
# frequency floor 1 from its Brownian part.

import numpy as np

from rednoise import (DiffU, GaussianStream, Mixed, RedOuDt, White,
                      band_average, increments, loglog_slope, periodogram,
                      theoretical_psd)

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

theta = 0.1
gamma = 0.5
dt = 0.1
n = 2**20            # ~10 s of work; the paper-scale run (2e7) is `rednoise fig1`
band_width = 1024
seed = 20

# ---------------------------------------------------------------------------
models = [("white", White()), ("red", RedOuDt(theta)), ("du", DiffU(theta)),
          ("mixed", Mixed(theta, gamma))]

stream = GaussianStream(seed)
curves = {}
for (name, model), child in zip(models, stream.spawn(len(models))):
    incr = increments(model, dt, n, child)
    avg = band_average(periodogram(incr), band_width)
    curves[name] = avg
    theory = theoretical_psd(model, avg.omegas)
    # compare away from Nyquist, where sampling at step dt tilts the spectrum
    sel = avg.omegas <= 0.25 * np.pi / dt
    ratio = np.mean(avg.powers[sel] / theory[sel])
    print(f"{name:6s} bands={len(avg)}  mean power ratio vs closed form "
          f"(low quarter of the axis): {ratio:.3f}")

print(f"\n(per-band noise sd here is 1/sqrt({band_width}) ~ 3%; systematic "
      "drift of the ratio away from 1 is the discrete-sampling tilt, whose "
      "sign depends on the model — red is pushed up toward Nyquist, mixed "
      "slightly down)")

slope, _ = loglog_slope(curves["red"], 1.0, 10.0)
print(f"\nred-noise slope over omega in [1, 10]: {slope:.3f}  (omega^-2 -> -2)")

# ---------------------------------------------------------------------------
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, avg in curves.items():
        ax.loglog(avg.omegas, avg.powers, lw=0.8, label=name)
        ax.loglog(avg.omegas, theoretical_psd(dict(models)[name], avg.omegas),
                  "k--", lw=0.6)
    ax.set_xlabel("omega")
    ax.set_ylabel("band-averaged power")
    ax.legend()
    ax.set_title("noise differentials vs closed-form spectra (dashed)")
    fig.tight_layout()
    fig.savefig("noise_families.png", dpi=120)
    print("wrote noise_families.png")
