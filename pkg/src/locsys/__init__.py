"""Exact structure theory for finite-dimensional associative algebras and finite local systems."""

from .algebra import Algebra, AlgSubspace, direct_sum, matrix_algebra, strictly_upper, upper_triangular
from .linear import GF, QQ, Field, Mat, Subspace
from .structure import (algebra_rank, maximal_ideals, one_perfect_radical, perfect_core, radical,
                        simple_components, wedderburn_malcev)
from .tower import LocalSystem, VerificationReport, build_diagonal_tower, check_local_system

__version__ = "0.1.0"
