"""
Elliptic curves over Q as black boxes: a_p = p + 1 - #E(F_p) by point counting.

Counting is O(p) per prime; the completed square
(2y + a1*x + a3)^2 = 4x^3 + b2*x^2 + 2*b4*x + b6 turns each x into one
Euler-criterion evaluation.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from sympy import factorint

from ..arithmetic.base_field import BaseField, Prime, rational_prime
from ..exceptions import BadModel, InputError, ParseError, SIncomplete
from ..utils.logging import AuditTrail
from .answers import FrobeniusAnswer, TwoAdicInt
from .base import BlackBoxOracle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @classmethod
    def parse(cls, text: str) -> "WeierstrassModel":
        tokens = text.replace(",", " ").split()
        if len(tokens) != 5:
            raise ParseError(f"expected 'a1 a2 a3 a4 a6', got {text!r}")
        try:
            return cls(*(int(t) for t in tokens))
        except ValueError as e:
            raise ParseError(f"non-integer Weierstrass coefficient in {text!r}") from e

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def bad_primes(self) -> list[int]:
        return sorted(factorint(abs(self.discriminant)))

    def __str__(self) -> str:
        return f"[{self.a1},{self.a2},{self.a3},{self.a4},{self.a6}]"


def count_points_brute_force(model: WeierstrassModel, p: int) -> int:
    """#E(F_p) by checking every (x, y), plus the point at infinity."""
    count = 1
    for x in range(p):
        rhs = (x * x * x + model.a2 * x * x + model.a4 * x + model.a6) % p
        for y in range(p):
            if (y * y + model.a1 * x * y + model.a3 * y - rhs) % p == 0:
                count += 1
    return count


def count_points(model: WeierstrassModel, p: int) -> int:
    """#E(F_p) for a prime of good reduction."""
    if p == 2:
        return count_points_brute_force(model, p)
    b2, b4, b6, _ = model.b_invariants
    half = (p - 1) // 2
    count = 1
    for x in range(p):
        v = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
        if v == 0:
            count += 1
        elif pow(v, half, p) == 1:
            count += 2
    return count


def trace_of_frobenius(model: WeierstrassModel, p: int) -> int:
    return p + 1 - count_points(model, p)


class EllipticCurveOracle(BlackBoxOracle):
    """The 2-adic Tate module of E/Q: trace a_p, det p, both exact."""

    backend = "elliptic-curve"

    def __init__(
        self,
        model: WeierstrassModel | Sequence[int],
        bad_set: Iterable[Prime],
        *,
        memoize: Optional[bool] = None,
        audit: Optional[AuditTrail] = None,
    ):
        super().__init__(BaseField.RATIONALS, bad_set, memoize=memoize, audit=audit)
        self.model = model if isinstance(model, WeierstrassModel) else WeierstrassModel(*model)
        if any(p.field is not BaseField.RATIONALS for p in self.bad_set):
            raise InputError("elliptic-curve oracles are only available over Q")
        if self.model.discriminant == 0:
            raise BadModel(f"{self.model} is singular (discriminant 0)")
        missing = [q for q in self.model.bad_primes() if rational_prime(q) not in self._bad]
        if missing:
            raise SIncomplete(
                f"{self.model} has bad reduction at {missing}, outside S", primes=missing
            )
        logger.info(f"Elliptic curve oracle for {self.model}, discriminant {self.model.discriminant}")

    def describe(self) -> str:
        return f"curve:{self.model}"

    def _frobenius(self, p: Prime) -> FrobeniusAnswer:
        q = p.characteristic
        a_p = trace_of_frobenius(self.model, q)
        return FrobeniusAnswer.frobenius(p, TwoAdicInt.exact(a_p), TwoAdicInt.exact(q))
