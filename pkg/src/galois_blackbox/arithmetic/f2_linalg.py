"""Small GF(2) linear algebra on int bitsets.

Coordinate i of a vector is bit i of an int; rows of a matrix are such ints.
Every test-set algorithm and the character recovery run through this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from ..exceptions import DimensionMismatch, Singular


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2); XOR is the group law."""

    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("length must be >= 0")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#b} do not fit in length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(0, length)

    @classmethod
    def unit(cls, index: int, length: int) -> BitVector:
        """Standard basis vector e_index (0-based)."""
        return cls(1 << index, length)

    @classmethod
    def from_iterable(cls, values: Iterable[int]) -> BitVector:
        bits = 0
        length = 0
        for i, value in enumerate(values):
            if value & 1:
                bits |= 1 << i
            length = i + 1
        return cls(bits, length)

    @classmethod
    def from_indices(cls, indices: Iterable[int], length: int) -> BitVector:
        bits = 0
        for i in indices:
            bits ^= 1 << i
        return cls(bits, length)

    @classmethod
    def parse(cls, text: str) -> BitVector:
        """Inverse of str(): '0101' lists coordinates left to right."""
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls.from_iterable(int(ch) for ch in text)

    def _check(self, other: BitVector) -> None:
        if other.length != self.length:
            raise DimensionMismatch(f"length {self.length} vs {other.length}")

    def __xor__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.bits ^ other.bits, self.length)

    __add__ = __xor__

    def __and__(self, other: BitVector) -> BitVector:
        """Coordinatewise product."""
        self._check(other)
        return BitVector(self.bits & other.bits, self.length)

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(index)
        return (self.bits >> index) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return "".join(str(b) for b in self)

    def dot(self, other: BitVector) -> int:
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def to_list(self) -> list[int]:
        return list(self)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(self)

    def restrict(self, indices: Sequence[int]) -> BitVector:
        """Subvector on the given coordinates, in that order."""
        return BitVector.from_iterable(self[i] for i in indices)


@dataclass(frozen=True)
class BitMatrix:
    """Rectangular matrix over GF(2), stored as rows."""

    rows: tuple[BitVector, ...]
    n_cols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if row.length != self.n_cols:
                raise DimensionMismatch(f"row of length {row.length} in a {self.n_cols}-column matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], n_cols: Optional[int] = None) -> BitMatrix:
        if n_cols is None:
            if not rows:
                raise ValueError("n_cols is required for an empty matrix")
            n_cols = rows[0].length
        return cls(tuple(rows), n_cols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], n_cols: Optional[int] = None) -> BitMatrix:
        return cls.from_rows([BitVector.from_iterable(r) for r in rows], n_cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(BitVector.unit(i, n) for i in range(n)), n)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [row.to_list() for row in self.rows]

    def column(self, j: int) -> BitVector:
        return BitVector.from_iterable(row[j] for row in self.rows)

    def transpose(self) -> BitMatrix:
        return BitMatrix(tuple(self.column(j) for j in range(self.n_cols)), self.n_rows)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.n_cols != other.n_rows:
            raise DimensionMismatch(f"{self.n_rows}x{self.n_cols} @ {other.n_rows}x{other.n_cols}")
        out = []
        for row in self.rows:
            acc = 0
            for j in row.support():
                acc ^= other.rows[j].bits
            out.append(BitVector(acc, other.n_cols))
        return BitMatrix(tuple(out), other.n_cols)

    def combine(self, coefficients: BitVector) -> BitVector:
        """The row combination sum_i c_i * row_i (i.e. c @ M)."""
        if coefficients.length != self.n_rows:
            raise DimensionMismatch(f"{coefficients.length} coefficients for {self.n_rows} rows")
        acc = 0
        for i in coefficients.support():
            acc ^= self.rows[i].bits
        return BitVector(acc, self.n_cols)


def _eliminate(rows: Sequence[int], n_cols: int) -> list[tuple[int, int, int]]:
    """Reduced echelon basis of the row space.

    Returns (pivot column, reduced row, combination mask) triples, where the
    mask records which input rows were XORed into the reduced row.
    """
    basis: list[tuple[int, int, int]] = []
    for idx, row in enumerate(rows):
        combo = 1 << idx
        for pivot, brow, bcombo in basis:
            if (row >> pivot) & 1:
                row ^= brow
                combo ^= bcombo
        if row == 0:
            continue
        pivot = (row & -row).bit_length() - 1
        # keep the basis fully reduced at the new pivot
        reduced = []
        for p, brow, bcombo in basis:
            if (brow >> pivot) & 1:
                brow ^= row
                bcombo ^= combo
            reduced.append((p, brow, bcombo))
        basis = reduced
        basis.append((pivot, row, combo))
    return basis


def rank(matrix: BitMatrix) -> int:
    """GF(2) row rank."""
    return len(_eliminate([r.bits for r in matrix.rows], matrix.n_cols))


def in_rowspace(matrix: BitMatrix, vector: BitVector) -> bool:
    """True iff vector is a GF(2) combination of the rows."""
    return solve_rowspace(matrix, vector) is not None


def solve_rowspace(matrix: BitMatrix, vector: BitVector) -> Optional[BitVector]:
    """Coefficients c with c @ M = vector, or None when vector is outside the row space."""
    if vector.length != matrix.n_cols:
        raise DimensionMismatch(f"vector of length {vector.length} against {matrix.n_cols} columns")
    target = vector.bits
    combo = 0
    for pivot, brow, bcombo in _eliminate([r.bits for r in matrix.rows], matrix.n_cols):
        if (target >> pivot) & 1:
            target ^= brow
            combo ^= bcombo
    if target:
        return None
    return BitVector(combo, matrix.n_rows)


def invert(matrix: BitMatrix) -> BitMatrix:
    """Inverse of a square full-rank matrix."""
    n = matrix.n_rows
    if matrix.n_cols != n:
        raise DimensionMismatch(f"cannot invert a {n}x{matrix.n_cols} matrix")
    basis = _eliminate([r.bits for r in matrix.rows], n)
    if len(basis) < n:
        raise Singular(f"matrix has rank {len(basis)} < {n}")
    # a fully reduced full-rank basis holds the unit vectors; their masks are the rows of M^-1
    inverse_rows = [0] * n
    for pivot, brow, bcombo in basis:
        assert brow == 1 << pivot
        inverse_rows[pivot] = bcombo
    return BitMatrix(tuple(BitVector(bits, n) for bits in inverse_rows), n)


def span_basis(vectors: Sequence[BitVector]) -> list[BitVector]:
    """Greedy subsequence of vectors forming a basis of their span."""
    chosen: list[BitVector] = []
    for v in vectors:
        candidate = [c.bits for c in chosen] + [v.bits]
        if len(_eliminate(candidate, v.length)) > len(chosen):
            chosen.append(v)
    return chosen


__all__ = [
    "BitVector",
    "BitMatrix",
    "rank",
    "in_rowspace",
    "solve_rowspace",
    "invert",
    "span_basis",
]
