"""Lopsided coamoebas of Laurent polynomials and their complement components."""
from .angles import Angle
from .circuits import BasePoints, BinomialSystem, base_points, binomial_system, circuit_count, is_maximally_sparse
from .errors import ModeError, MultiplicityWarning, NonGenericError, NotInComplementError, UnsupportedError
from .gale import DualMatrix, circuit_dual, dual_matrix, gale_dual, is_circuit, normalized_volume
from .lpoly import (
    Coefficient,
    LaurentPolynomial,
    ParseError,
    apply_transform,
    format_polynomial,
    multiply_monomial,
    newton_vertices,
    parse_polynomial,
    support_matrix,
)
from .ordermap import (
    OrderPoint,
    Zonotope,
    cord,
    count_components,
    enumerate_orders,
    enumerate_orders_open,
    is_generic,
    p_vector,
    translation,
    v,
    witness_theta,
    zonotope,
    zonotope_classify,
)
from .torus import (
    classify,
    in_closed_complement,
    in_closed_lopsided,
    in_coamoeba,
    in_lopsided_coamoeba,
    phase_list,
    shell,
    transform_theta,
    trinomial_union_check,
)

__all__ = [
    "Angle",
    "BasePoints",
    "BinomialSystem",
    "base_points",
    "binomial_system",
    "circuit_count",
    "is_maximally_sparse",
    "ModeError",
    "MultiplicityWarning",
    "NonGenericError",
    "NotInComplementError",
    "UnsupportedError",
    "DualMatrix",
    "circuit_dual",
    "dual_matrix",
    "gale_dual",
    "is_circuit",
    "normalized_volume",
    "Coefficient",
    "LaurentPolynomial",
    "ParseError",
    "apply_transform",
    "format_polynomial",
    "multiply_monomial",
    "newton_vertices",
    "parse_polynomial",
    "support_matrix",
    "OrderPoint",
    "Zonotope",
    "cord",
    "count_components",
    "enumerate_orders",
    "enumerate_orders_open",
    "is_generic",
    "p_vector",
    "translation",
    "v",
    "witness_theta",
    "zonotope",
    "zonotope_classify",
    "classify",
    "in_closed_complement",
    "in_closed_lopsided",
    "in_coamoeba",
    "in_lopsided_coamoeba",
    "phase_list",
    "shell",
    "transform_theta",
    "trinomial_union_check",
]
