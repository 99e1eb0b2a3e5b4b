"""
Entropy, dimension and density trajectories
===========================================

log(mu(Q_n(x)) / |Q_n(x)|) drifts to minus infinity for Lebesgue-typical x
and to plus infinity for mu-typical x.  The drift per step is small, so the
trend only shows up clearly over long trajectories.
"""
from fractions import Fraction as F

import numpy as np

from bernoulli_adc import density_trajectory, dimension, entropy, expected_log, lln_experiment
from bernoulli_adc.coeffs import epsilon_measure
from bernoulli_adc.diagnostics import LEBESGUE, MU, sample_point, slope_sign_rate, slope_target

mu = epsilon_measure(F(1, 72))
print(f"entropy {entropy(mu):.6f}, dimension {dimension(mu):.6f}")
for law in (LEBESGUE, MU):
    print(f"{law}: E[log p] = {expected_log(mu, law):.6f}, limit slope {slope_target(mu, law):+.5f}")

for law in (LEBESGUE, MU):
    stats = lln_experiment(mu, law, 1000, 40, seed=12345)
    print(f"{law}: mean S_n/n {stats.mean:.5f} vs {stats.target:.5f} (tolerance {stats.tolerance:.5f}) pass={stats.passed}")

for depth in (40, 160, 400):
    rates = [slope_sign_rate(mu, law, 300, depth, seed=1) for law in (LEBESGUE, MU)]
    print(f"depth {depth}: correct slope sign {rates[0]:.2f} (lebesgue), {rates[1]:.2f} (mu)")

x = sample_point(mu, MU, 300, seed=3)
traj = density_trajectory(mu, x, 300)
print("mu-typical trajectory every 50 steps:", np.round(traj.values[::50], 2))
print(f"fitted slope {traj.slope_estimate:+.4f}, limit {slope_target(mu, MU):+.4f}")
