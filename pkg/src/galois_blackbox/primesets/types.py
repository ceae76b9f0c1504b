from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from ..arithmetic.base_field import Prime, SelmerBasis
from ..arithmetic.f2_linalg import BitMatrix, BitVector


def quadratic_positions(r: int) -> list[frozenset[int]]:
    """Coordinates of Sym^2: singletons {i}, then pairs {i, j} with i < j (1-based)."""
    singles = [frozenset({i}) for i in range(1, r + 1)]
    pairs = [frozenset(c) for c in combinations(range(1, r + 1), 2)]
    return singles + pairs


def quadratic_row(indices: frozenset[int], r: int) -> BitVector:
    """v(p): 1 at {i} for i in I(p) and at {i, j} when both lie in I(p)."""
    return BitVector.from_iterable(1 if pos <= indices else 0 for pos in quadratic_positions(r))


@dataclass(frozen=True)
class T1Set:
    """Primes whose splitting symbols form a basis of the dual of K(S,2)_u."""

    primes: tuple[Prime, ...]
    basis: SelmerBasis
    dual_basis: SelmerBasis
    symbol_matrix: BitMatrix  # row i = ([delta_j|p_i])_j over `basis`

    @property
    def rank(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class T0Set:
    """A distinguishing set for a cubic family; signatures follow family order."""

    primes: tuple[Prime, ...]
    signatures: tuple[BitVector, ...] = ()


@dataclass(frozen=True)
class T2Set:
    """
    A quadratically independent set. Special sets carry I(p) per prime:
    exactly one prime for each singleton and each pair of basis indices.
    """

    primes: tuple[Prime, ...]
    basis: SelmerBasis
    indexing: Optional[tuple[frozenset[int], ...]] = None

    @property
    def rank(self) -> int:
        return self.basis.rank

    @property
    def is_special(self) -> bool:
        return self.indexing is not None

    def _lookup(self) -> dict[frozenset[int], Prime]:
        if self.indexing is None:
            raise ValueError("this T2 set has no I(p) indexing")
        return dict(zip(self.indexing, self.primes))

    def singleton(self, i: int) -> Prime:
        """p_i (1-based)."""
        return self._lookup()[frozenset({i})]

    def pair(self, i: int, j: int) -> Prime:
        """p_ij (1-based, i != j)."""
        return self._lookup()[frozenset({i, j})]

    def as_t1(self) -> T1Set:
        """The singletons p_1..p_r: a T1 set whose dual basis is this set's basis."""
        singles = tuple(self.singleton(i) for i in range(1, self.rank + 1))
        identity = BitMatrix.identity(self.rank) if self.rank else BitMatrix((), 0)
        return T1Set(singles, self.basis, self.basis, identity)
