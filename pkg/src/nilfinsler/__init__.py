"""Exact geometry of left-invariant metrics on nilpotent Lie groups.

Curvature of the Levi-Civita connection, Douglas and Berwald conditions for
(alpha, beta)-metrics, geodesic vectors and the S-curvature of Randers
metrics, all computed over the rationals with symbolic structure parameters.
"""

from .catalog import CatalogEntry, build, presets, regression_bundle
from .exactalg import ParamContext, Polynomial
from .finsler import berwald_space, classify, douglas_space
from .geodesic import ComponentClaim, geodesic_system, numeric_component_scan, verify_component
from .liealg import AlgebraVector, MetricLieAlgebra, bracket, inner, jacobi_check, nilpotency_class
from .riemgeom import curvature_summary, curvature_tensor, koszul_connection
from .scurv import s_curvature, s_curvature_eval

__all__ = [
    "AlgebraVector",
    "CatalogEntry",
    "ComponentClaim",
    "MetricLieAlgebra",
    "ParamContext",
    "Polynomial",
    "berwald_space",
    "bracket",
    "build",
    "classify",
    "curvature_summary",
    "curvature_tensor",
    "douglas_space",
    "geodesic_system",
    "inner",
    "jacobi_check",
    "koszul_connection",
    "nilpotency_class",
    "numeric_component_scan",
    "presets",
    "regression_bundle",
    "s_curvature",
    "s_curvature_eval",
    "verify_component",
]
