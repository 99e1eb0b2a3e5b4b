"""
The l1 distance breaks annular decay
====================================

A diagonal chain of 3^n small squares gains mass (1/3 + 3 eps)^n, and the l1
annulus ratios at center (0, 1/2), R = 1, r_n = 1 - 3^-n grow by about
1 + 9 eps per step.
"""
from fractions import Fraction as F

from bernoulli_adc.audit import chain_measure, d1_blowup_series, growth_quotients
from bernoulli_adc.coeffs import epsilon_measure

eps = F(1, 72)
mu = epsilon_measure(eps)

for n in range(1, 8):
    print(f"n={n}: chain mass {chain_measure(mu, n)}, (1/3 + 3 eps)^n = {(F(1, 3) + 3 * eps) ** n}")

reports = d1_blowup_series(mu, 10)
for n, (rep, q) in enumerate(zip(reports[1:], growth_quotients(reports)), start=2):
    print(f"n={n}: ratio {float(rep.ratio_lo):.4f}, quotient {float(q):.4f}")
print("1 + 9 eps =", float(1 + 9 * eps))

# coarse cell covers cannot resolve an annulus only a few cells wide
cells = d1_blowup_series(mu, 5, method="cells")
for rep in cells:
    print(f"r={rep.r}: cell-cover ratio in [{float(rep.ratio_lo):.3f}, {float(rep.ratio_hi):.3f}]")
