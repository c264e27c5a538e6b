"""Exact computations with linear tree codes and triangular totally nonsingular matrices."""

from .errors import TreeCodeError
from .families import binomial_lower, cauchy, cauchy_like, hilbert, pascal, singleton_matrix, vandermonde
from .fileformat import dumps_matrix, loads_matrix, read_matrix, write_matrix
from .matrix import Matrix, PolyMatrix, determinant, invert, lu_factor, rank, submatrix
from .poly import Poly
from .scalar import QQ, ExtensionField, PrimeField, Scalar, field_make, field_of_order, parse_field
from .treecode import (
    NormalFormPcheck,
    TreeCode,
    extract_triangular,
    generator_from_pcheck,
    interleave_pcheck,
    is_mds,
    mds_generator,
    min_rel_distance,
    normalize_pcheck,
    pcheck_from_generator,
)
from .ttn import counterexample_search, lu_property_check, nonsingularity_scan, scan_primes

__all__ = [
    "TreeCodeError", "binomial_lower", "cauchy", "cauchy_like", "hilbert", "pascal", "singleton_matrix",
    "vandermonde", "dumps_matrix", "loads_matrix", "read_matrix", "write_matrix", "Matrix", "PolyMatrix",
    "determinant", "invert", "lu_factor", "rank", "submatrix", "Poly", "QQ", "ExtensionField", "PrimeField",
    "Scalar", "field_make", "field_of_order", "parse_field", "NormalFormPcheck", "TreeCode",
    "extract_triangular", "generator_from_pcheck", "interleave_pcheck", "is_mds", "mds_generator",
    "min_rel_distance", "normalize_pcheck", "pcheck_from_generator", "counterexample_search",
    "lu_property_check", "nonsingularity_scan", "scan_primes",
]
