"""Quantization of geometric classical r-matrices in exact arithmetic."""

from .cbcst import CBCST, ConstructionError, find_isomorphism, from_rmatrix, to_rmatrix, validate
from .cybe import GeomRMatrix, check_cybe, check_unitarity, minimize
from .geomx import FormalDiffeo, HVectorField, VectorField, compose, flow, invert
from .liealg import GroupLog, LieAction, LieAlgebra, LieCocycle, bch, cocycle_exponentiate, cocycle_invert
from .polycore import EPS, HSeries, MPoly, coeff, expand_expr, parse_poly
from .quantize import (QuantumTuple, RMatrixQ, check_braid, check_classical_limit,
                       check_quantum_unitarity, quantize)
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "CBCST", "ConstructionError", "EPS", "FormalDiffeo", "GeomRMatrix", "GroupLog", "HSeries",
    "HVectorField", "LieAction", "LieAlgebra", "LieCocycle", "MPoly", "QuantumTuple", "RMatrixQ",
    "Report", "VectorField", "bch", "check_braid", "check_classical_limit", "check_cybe",
    "check_quantum_unitarity", "check_unitarity", "coeff", "cocycle_exponentiate", "cocycle_invert",
    "compose", "expand_expr", "find_isomorphism", "flow", "from_rmatrix", "invert", "minimize",
    "parse_poly", "quantize", "to_rmatrix", "validate",
]
