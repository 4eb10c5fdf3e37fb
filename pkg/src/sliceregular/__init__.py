"""Slice regular functions of a quaternionic variable as truncated power
series: the regular *-algebra, per-slice holomorphic data, fractional linear
transformations, and a numerical harness for boundedness theorems on the
unit ball."""

from .quaternion import (
    Quaternion,
    UnitImaginary,
    I,
    J,
    K,
    ONE,
    ZERO,
    orthogonal_unit,
    random_unit_imaginary,
    root_of_unity,
    slice_decompose,
)
from .power_series import QSeries, coefficients_by_contour, sup_modulus_on_sphere
from .star_algebra import (
    pointwise_star,
    quotient_eval,
    regular_conjugate,
    regular_reciprocal,
    star_product,
    symmetrization,
    twist_map,
)
from .slice_ops import SplitPair, extend, split, split_star
from .mobius import MobiusMap, cayley_map, dieudonne_det, disk_map
from .theorems import (
    SHARP_BOHR_RADIUS,
    WEAK_BOHR_RADIUS,
    AdmissibleFunction,
    SharpnessWitness,
    VerificationReport,
    bohr_radius_estimate,
    generate_admissible,
    normalize_leading,
    root_of_unity_average,
    run_verification,
    sharpness_witness,
    verify_borel_caratheodory,
    verify_sharp_bohr,
    verify_sharp_coefficient_bound,
    verify_weak_bohr,
)

__version__ = "0.1.0"
