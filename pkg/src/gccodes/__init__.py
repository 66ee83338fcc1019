"""Generalized concatenated erasure codes over m x n arrays of GF(2^b) symbols."""

from ._backend import BACKEND
from .code import (CodeConfig, ErasurePattern, GcCode, LevelProfile, build_code,
                   correctable_by_theorem, min_distance_formula, profile_from_u_vector)
from .codec import (ArrayWord, PseudoTriangularH, RowPermutation, decode, decode_traced,
                    default_parity_placement, encode, pseudo_triangular, sort_rows, syndromes)
from .errors import *  # noqa: F401,F403
from .galois import FieldElement, FieldSpec, field_new
from .linalg import Matrix, kronecker, rank, vandermonde_h, vandermonde_hhat
from .oracle import (AboveCap, OracleReport, brute_solve, exhaustive_capability,
                     min_distance_search, witness_codeword)

__version__ = "0.1.0"
