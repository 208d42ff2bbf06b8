"""Exact point counts and leading-constant factors for integral points on the
split quintic del Pezzo surface over Q with boundary divisor A12."""

__version__ = "0.1.0"

from .heights import (  # noqa: F401
    BUILTIN_HEIGHT_SETS,
    P1,
    P2,
    P3,
    HeightSet,
    ProjectivePoint,
    QuadraticForm,
    comparison_constant,
    eval_form,
    gcd_identity_check,
    height_cox,
    height_projective,
    lift_ptilde,
    load_height_set,
)
from .torsor import (  # noqa: F401
    COPRIMALITY_SCHEMA,
    CoxTuple,
    blow_down,
    canonicalize_orbit,
    chart_lift,
    coprimality_check,
    dependent_coordinates,
    is_integral,
    pluecker_residuals,
)
