#!/usr/bin/env python3
# The exact one-step law of the Ornstein-Uhlenbeck process.
#
# Sampled on a grid of step dt, the OU process *is* an AR(1) chain:
#   U_{k+1} = e^{-theta dt} U_k + s z_k,   s^2 = (1 - e^{-2 theta dt})/(2 theta)
# No integration error is involved — the recursion coefficients below are
# recovered from data and compared with the formulas, and the sampled chain's
# autocovariance is checked against e^{-theta |tau|}/(2 theta).

import numpy as np

from rednoise import GaussianStream, ou_autocov, ou_exact_sample

theta = 0.1
dt = 0.1
n = 1_000_001
seed = 0

u = ou_exact_sample(theta, dt, n, GaussianStream(seed)).values

# regression of each value on its predecessor
x, y = u[:-1], u[1:]
coeff, intercept = np.polyfit(x, y, 1)
resid_sd = np.std(y - coeff * x - intercept)

print(f"recursion coefficient:  fitted {coeff:.6f}   "
      f"exact e^(-theta dt) = {np.exp(-theta * dt):.6f}")
print(f"innovation scale:       fitted {resid_sd:.6f}   "
      f"exact {np.sqrt(-np.expm1(-2 * theta * dt) / (2 * theta)):.6f}")

# ---------------------------------------------------------------------------
# stationary autocovariance along the path
print(f"\n{'tau':>6s} {'empirical':>12s} {'exact':>12s}")
centered = u - u.mean()
for m in (0, 10, 50, 100, 300):
    tau = m * dt
    emp = np.mean(centered[: n - m] * centered[m:])
    print(f"{tau:6.1f} {emp:12.4f} {ou_autocov(theta, tau):12.4f}")

print(f"\nstationary variance target 1/(2 theta) = {1 / (2 * theta):.1f}; "
      f"sample {u.var():.4f}")
