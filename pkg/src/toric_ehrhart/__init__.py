"""Exact Ehrhart polynomials of lattice simplices from cone character sums."""

from .ehrhart import (
    CALIBRATED,
    PRINTED,
    ConventionProfile,
    EhrhartPolynomial,
    a_coefficients,
    b_coefficients,
    calibrate,
    character_sum,
    ehrhart_polynomial,
    omega,
)
from .oracle import count_points, dedekind_sum, interpolate, oracle_polynomial
from .simplex import Face, Simplex

__version__ = "0.1.0"

__all__ = [
    "CALIBRATED",
    "PRINTED",
    "ConventionProfile",
    "EhrhartPolynomial",
    "Face",
    "Simplex",
    "a_coefficients",
    "b_coefficients",
    "calibrate",
    "character_sum",
    "count_points",
    "dedekind_sum",
    "ehrhart_polynomial",
    "interpolate",
    "omega",
    "oracle_polynomial",
]
