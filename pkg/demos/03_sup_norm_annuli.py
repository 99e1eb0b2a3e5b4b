"""
Annular decay for the sup-norm
===============================

For cubes Q(x, R) the ratio mu(Q_R minus Q_r) / (((R - r)/R) mu(Q_R)) stays
bounded as the annulus gets thinner.  Everything below is exact.
"""
from fractions import Fraction as F

from bernoulli_adc import adc_scan
from bernoulli_adc.audit import cube_center_grid, radius_family, strip_constant
from bernoulli_adc.coeffs import epsilon_measure

mu = epsilon_measure(F(1, 72))
centers = cube_center_grid(2, 2)

for j in range(1, 7):
    scan = adc_scan(mu, "linf", centers, radius_family(range(3), [j]))
    worst = scan.argmax_report
    print(f"r = R(1 - 3^-{j}): max ratio {float(scan.max_ratio_upper):.4f} at x={tuple(map(str, worst.center))}, R={worst.R}")

# the annulus is covered by 2N coordinate strips
ann, strips, c = strip_constant(mu, (F(1, 6), F(-1, 6)), F(4, 27), F(1, 6))
print("annulus", ann, "<= strips", strips, "; worst strip constant", float(c))
