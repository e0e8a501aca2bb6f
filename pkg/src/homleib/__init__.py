"""Exact-arithmetic toolkit for finite-dimensional Hom-Leibniz (super)algebras."""

from .exactla import GF, QQ, Matrix, Subspace, commutant, nullspace, rref
from .homalg import (
    CheckReport,
    HomAlgebra,
    PreconditionError,
    check_hom_lie,
    check_left_hom_leibniz,
    check_right_hom_leibniz,
    check_symmetric,
    hom_associator,
    is_multiplicative,
    tensor_square_leibniz,
    yau_twist,
)

__version__ = "0.1.0"
