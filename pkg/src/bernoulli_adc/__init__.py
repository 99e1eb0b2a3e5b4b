"""Exact computations with singular Bernoulli product measures on R^N.

The measures split each cube of the shifted p-adic grid into ``p^N``
children with fixed probabilities.  With ``p = 3`` and probabilities that
depend only on how many coordinates of the child label are nonzero, suitable
choices balance every third-slab; such measures are singular yet satisfy the
strong annular decay condition for the sup-norm distance, while failing it
for the l1 distance.
"""
from .audit import (
    AnnulusReport,
    ScanReport,
    adc_scan,
    annulus_ratio,
    ball_measure,
    chain_measure,
    contiguous_pair_audit,
    d1_blowup_series,
    doubling_constant,
    doubling_ratio,
)
from .boxes import (
    AxisBox,
    MeasureEnclosure,
    box_decompose,
    box_measure_enclosure,
    box_measure_exact,
    box_measure_rational,
    strip_measure,
)
from .coeffs import (
    ConstraintSystem,
    SolutionParametrization,
    build_adc_system,
    epsilon_measure,
    sample_coefficients,
    solve_affine,
)
from .diagnostics import (
    DistributionStats,
    TrajectorySample,
    density_trajectory,
    dimension,
    entropy,
    expected_log,
    lln_experiment,
    sample_point,
)
from .errors import MeasureError
from .measure import (
    BernoulliMeasure,
    BernoulliSpec,
    PAdicCube,
    PAdicPath,
    cell_probability,
    cube_measure,
    point_path,
    validate_spec,
)
from .regions import Metric

__version__ = "0.1.0"
