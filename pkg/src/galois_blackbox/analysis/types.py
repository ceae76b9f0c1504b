from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..arithmetic.base_field import Discriminant, SelmerBasis
from ..arithmetic.cubics import CubicPoly, GaloisType
from ..arithmetic.f2_linalg import BitMatrix, BitVector, rank


class WidthClass(str, Enum):
    """Width of the stable tree: 0 (irreducible), exactly 1 (small), at least 2 (large)."""

    ZERO = "Zero"
    ONE = "One"
    AT_LEAST_TWO = "AtLeastTwo"


@dataclass(frozen=True)
class ResidualVerdict:
    reducible: bool
    trace_parities: BitVector
    cubic: Optional[CubicPoly] = None
    group: Optional[GaloisType] = None
    cubic_label: Optional[str] = None


@dataclass(frozen=True)
class SmallOrLarge:
    """Result of the t_1 test: either large, or small with the pair {delta_b, delta_c}."""

    large: bool
    v: BitVector
    w: BitMatrix
    pair: Optional[tuple[Discriminant, Discriminant]] = None


@dataclass(frozen=True)
class CharacterVector:
    """
    rho = I + 2^k mu at the first nontrivial level, as exponent vectors over `basis`.

    x, y, z are delta_b, delta_c, delta_abcd; u, v are delta_a, delta_d.
    After normalize(), {x, y, z} and {u, v} are sorted by bit pattern.
    """

    level: int
    basis: SelmerBasis
    x: BitVector
    y: BitVector
    z: BitVector
    u: BitVector
    v: BitVector
    branches: tuple[str, ...] = ()
    f_bits_used: int = 0

    @property
    def det(self) -> BitVector:
        return self.u + self.v

    def normalize(self) -> CharacterVector:
        leaves = sorted((self.x, self.y, self.z), key=BitVector.sort_key)
        diagonal = sorted((self.u, self.v), key=BitVector.sort_key)
        return CharacterVector(
            self.level, self.basis, *leaves, *diagonal,
            branches=self.branches, f_bits_used=self.f_bits_used,
        )

    def leaves(self) -> list[Discriminant]:
        return [self.basis.element(w) for w in (self.x, self.y, self.z)]

    def diagonal(self) -> list[Discriminant]:
        return [self.basis.element(w) for w in (self.u, self.v)]

    def det_discriminant(self) -> Discriminant:
        return self.basis.element(self.det)

    @property
    def image_rank(self) -> int:
        """F2-rank of span{x, y, z, u, v}; the kernel-mod-2^k image has order 2^rank."""
        n = self.basis.rank
        return rank(BitMatrix.from_rows([self.x, self.y, self.z, self.u, self.v], n))

    @property
    def image_order(self) -> int:
        return 1 << self.image_rank


@dataclass(frozen=True)
class TrivialLevel:
    """Largest k <= k_max with rho trivial mod 2^k up to isogeny."""

    level: int
    structure: Optional[CharacterVector] = None
    exceeds_k_max: bool = False
    k_max: Optional[int] = None
    certified_levels: tuple[int, ...] = field(default_factory=tuple)
