"""Differentially 4-uniform permutations on GF(2^n) from preferred Boolean functions."""

from .boolfun import BooleanFunction, HexParseError
from .gf2linalg import BitMatrix
from .gf2n import FieldElement, FieldSpec
from .nondecomp import NdKind, NonDecompPbf, pbf4_space
from .pbf import (
    ConstraintSystem,
    PbfSpace,
    build_constraints,
    counting_formulas,
    enumerate_U,
    is_pbf_direct,
    is_pbf_matrix,
    lift_pbf_to_pf,
    pbf_space,
    sample_pbf,
)
from .sbox import VectorialFunction, construct_g
from .tripleset import TripleSet, TsGraph, build_graph

__version__ = "0.1.0"

__all__ = [
    "BitMatrix", "BooleanFunction", "ConstraintSystem", "FieldElement", "FieldSpec",
    "HexParseError", "NdKind", "NonDecompPbf", "PbfSpace", "TripleSet", "TsGraph",
    "VectorialFunction", "build_constraints", "build_graph", "construct_g",
    "counting_formulas", "enumerate_U", "is_pbf_direct", "is_pbf_matrix",
    "lift_pbf_to_pf", "pbf4_space", "pbf_space", "sample_pbf",
]
