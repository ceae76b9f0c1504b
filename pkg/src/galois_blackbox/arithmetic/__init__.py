from .gaussian import GaussianInt
from .f2_linalg import BitMatrix, BitVector
from .base_field import BaseField, Discriminant, Prime, SelmerBasis, canonical_primes, selmer_group, splitting_symbol
from .cubics import CubicFamily, CubicPoly, GaloisType, lambda_bit

__all__ = [
    "GaussianInt",
    "BitMatrix", "BitVector",
    "BaseField", "Discriminant", "Prime", "SelmerBasis",
    "canonical_primes", "selmer_group", "splitting_symbol",
    "CubicFamily", "CubicPoly", "GaloisType", "lambda_bit",
]
