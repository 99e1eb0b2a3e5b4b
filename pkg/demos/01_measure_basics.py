"""
Building a Bernoulli product measure and measuring boxes
========================================================

A length-class measure on the plane splits every triadic square into nine
children.  The center child gets a_0, the four edge children a_1 and the
four corners a_2.
"""
from fractions import Fraction as F

from bernoulli_adc import AxisBox, BernoulliSpec, PAdicCube, PAdicPath, box_decompose, cube_measure, validate_spec
from bernoulli_adc import box_measure_enclosure, box_measure_exact, box_measure_rational

mu = validate_spec(BernoulliSpec.length_class((F(1, 18), F(5, 36), F(7, 72))))
print("child probabilities:", [str(w) for w in mu.probs])

# a generation-2 cube: first the right edge child, then a corner child
cube = PAdicCube(PAdicPath(2, 3, ((1, 0), (1, 1))))
print("cube", cube.lower(), "side", cube.side, "mass", cube_measure(mu, cube))

# the left third of the unit square carries exactly 1/3
third = AxisBox((F(-1, 2), F(-1, 2)), (F(-1, 6), F(1, 2)))
print("left third:", box_measure_exact(mu, third))
print("  as cubes:", [c.path.steps for c in box_decompose(third)])

# boxes off the triadic grid still have exact rational masses
quarter = AxisBox((F(0), F(0)), (F(1, 4), F(1, 4)))
print("[0,1/4)^2:", box_measure_rational(mu, quarter))
for g in (2, 4, 6):
    enc = box_measure_enclosure(mu, quarter, g)
    print(f"  generation {g} cell cover: [{float(enc.lo):.6f}, {float(enc.hi):.6f}]")

# the measure is periodic with period 1 in each coordinate
print("shifted by (3,-2):", box_measure_rational(mu, quarter.translate((3, -2))))
