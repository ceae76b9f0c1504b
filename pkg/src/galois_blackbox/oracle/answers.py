"""
Oracle answers and their 2-adic precision.

A TwoAdicInt is either an exact integer or an integer known modulo 2^bits.
Arithmetic between two of them keeps the smaller precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..arithmetic.base_field import Prime
from ..exceptions import ParseError, RamifiedAnswer

# stands in for ord_2(0); larger than any level the analysis examines
INFINITE_VALUATION = 1 << 30


@dataclass(frozen=True)
class TwoAdicInt:
    """An integer known exactly (bits is None) or modulo 2^bits."""

    value: int
    bits: Optional[int] = None

    def __post_init__(self) -> None:
        if self.bits is not None:
            if self.bits < 0:
                raise ValueError("precision must be >= 0 bits")
            object.__setattr__(self, "value", self.value % (1 << self.bits))

    @classmethod
    def exact(cls, value: int) -> TwoAdicInt:
        return cls(value, None)

    @classmethod
    def modulo(cls, value: int, bits: int) -> TwoAdicInt:
        return cls(value, bits)

    @property
    def is_exact(self) -> bool:
        return self.bits is None

    def known_to(self, bits: int) -> bool:
        return self.bits is None or self.bits >= bits

    def residue(self, bits: int) -> int:
        """value mod 2^bits; caller checks known_to first."""
        return self.value % (1 << bits)

    def _combine_bits(self, other: TwoAdicInt) -> Optional[int]:
        if self.bits is None:
            return other.bits
        if other.bits is None:
            return self.bits
        return min(self.bits, other.bits)

    def __add__(self, other: TwoAdicInt | int) -> TwoAdicInt:
        o = other if isinstance(other, TwoAdicInt) else TwoAdicInt.exact(other)
        return TwoAdicInt(self.value + o.value, self._combine_bits(o))

    __radd__ = __add__

    def __neg__(self) -> TwoAdicInt:
        return TwoAdicInt(-self.value, self.bits)

    def __sub__(self, other: TwoAdicInt | int) -> TwoAdicInt:
        o = other if isinstance(other, TwoAdicInt) else TwoAdicInt.exact(other)
        return self + (-o)

    def __rsub__(self, other: int) -> TwoAdicInt:
        return TwoAdicInt.exact(other) - self

    def truncated(self, bits: int) -> TwoAdicInt:
        if self.bits is not None and self.bits <= bits:
            return self
        return TwoAdicInt(self.value, bits)

    def valuation(self) -> int:
        """ord_2 of the value; for finite precision only meaningful below `bits`."""
        if self.value == 0:
            return INFINITE_VALUATION if self.bits is None else self.bits
        return (self.value & -self.value).bit_length() - 1

    def precision_label(self) -> str:
        return "exact" if self.bits is None else f"mod 2^{self.bits}"

    def __str__(self) -> str:
        return str(self.value) if self.bits is None else f"{self.value} (mod 2^{self.bits})"


@dataclass(frozen=True)
class FrobeniusAnswer:
    """'ramified', or the coefficients of F_p(t) = t^2 - trace*t + det."""

    prime: Prime
    ramified: bool = False
    trace: Optional[TwoAdicInt] = None
    det: Optional[TwoAdicInt] = None

    @classmethod
    def ramified_at(cls, prime: Prime) -> FrobeniusAnswer:
        return cls(prime, ramified=True)

    @classmethod
    def frobenius(cls, prime: Prime, trace: TwoAdicInt, det: TwoAdicInt) -> FrobeniusAnswer:
        if det.known_to(1) and det.residue(1) == 0:
            raise ParseError(f"determinant {det} at {prime} is not a 2-adic unit")
        return cls(prime, ramified=False, trace=trace, det=det)

    def coefficients(self) -> tuple[TwoAdicInt, TwoAdicInt]:
        if self.ramified or self.trace is None or self.det is None:
            raise RamifiedAnswer(f"{self.prime} is ramified; no Frobenius polynomial")
        return self.trace, self.det

    @property
    def is_exact(self) -> bool:
        trace, det = self.coefficients()
        return trace.is_exact and det.is_exact


def f_at_one(answer: FrobeniusAnswer) -> TwoAdicInt:
    """F_p(1) = 1 - trace + det, at the lesser of the two precisions."""
    trace, det = answer.coefficients()
    return 1 - trace + det


@dataclass(frozen=True)
class QueryRecord:
    """One non-memoized oracle query, as embedded in reports."""

    prime: str
    ramified: bool
    trace_bits: Optional[int]
    det_bits: Optional[int]


__all__ = ["INFINITE_VALUATION", "TwoAdicInt", "FrobeniusAnswer", "QueryRecord", "f_at_one"]
