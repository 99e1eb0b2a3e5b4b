"""
The slab-balance equations and their solution set
=================================================

Requiring each third-slab {nu_1 = i} to carry mass 1/3 gives two linear
equations in (a_0, ..., a_N).  The solutions form an (N-1)-dimensional affine
family through the uniform point.
"""
from fractions import Fraction as F

from bernoulli_adc import AxisBox, box_measure_exact, build_adc_system, sample_coefficients, solve_affine
from bernoulli_adc.errors import OutOfOpenBox

for n in (2, 3, 4):
    system = build_adc_system(n)
    param = solve_affine(system)
    print(f"N={n}")
    for row, rhs in zip(system.rows, system.rhs):
        print("   ", [int(c) for c in row], "=", rhs)
    print("    basis:", [tuple(int(x) for x in v) for v in param.basis])

# on the plane the family is the line (1/9 - 4t, 1/9 + 2t, 1/9 - t)
param = solve_affine(build_adc_system(2))
for t in (F(-1, 40), F(0), F(1, 72)):
    print("t =", t, "->", [str(a) for a in sample_coefficients(param, (t,)).coefficients])

try:
    sample_coefficients(param, (F(1, 36),))
except OutOfOpenBox as exc:
    print("t = 1/36 rejected:", exc)

# every slab of a sampled three-dimensional measure has mass 1/3
param3 = solve_affine(build_adc_system(3))
mu3 = sample_coefficients(param3, (F(1, 400), F(-1, 500)))
half = F(1, 2)
for i in (-1, 0, 1):
    lo = -half + F(i + 1, 3)
    box = AxisBox((-half, lo, -half), (half, lo + F(1, 3), half))
    print(f"slab nu_2 = {i:+d}:", box_measure_exact(mu3, box))
