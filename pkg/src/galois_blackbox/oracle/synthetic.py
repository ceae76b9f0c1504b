import logging
from typing import Optional, Sequence

from ..arithmetic.base_field import Discriminant, Prime, splitting_symbol
from ..exceptions import InputError
from ..utils.logging import AuditTrail
from .answers import FrobeniusAnswer, TwoAdicInt
from .base import BlackBoxOracle

logger = logging.getLogger(__name__)

Matrix2 = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix2 = ((1, 0), (0, 1))


def _det(m: Matrix2) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _mul(a: Matrix2, b: Matrix2) -> Matrix2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _inverse(m: Matrix2) -> Matrix2:
    d = _det(m)  # +-1, so the adjugate divided by d stays integral
    return ((m[1][1] * d, -m[0][1] * d), (-m[1][0] * d, m[0][0] * d))


class SyntheticDiagonalOracle(BlackBoxOracle):
    """
    The reducible representation chi_1 (+) chi_2 of two quadratic characters,
    conjugated by an integral unimodular matrix M.

    Frobenius at p acts as M diag(eps_1, eps_2) M^-1 with eps_j = (-1)^[delta_j|p].
    """

    backend = "synthetic"

    def __init__(
        self,
        delta1: Discriminant,
        delta2: Discriminant,
        conjugator: Sequence[Sequence[int]] = IDENTITY,
        *,
        memoize: Optional[bool] = None,
        audit: Optional[AuditTrail] = None,
    ):
        if delta1.field is not delta2.field:
            raise InputError("both characters must live over the same field")
        bad_set = delta1.bad_set | delta2.bad_set
        super().__init__(delta1.field, bad_set, memoize=memoize, audit=audit)
        self.delta1 = delta1
        self.delta2 = delta2
        m = ((int(conjugator[0][0]), int(conjugator[0][1])), (int(conjugator[1][0]), int(conjugator[1][1])))
        if abs(_det(m)) != 1:
            raise InputError(f"conjugator {m} is not unimodular")
        self.conjugator = m
        self._conjugator_inv = _inverse(m)

    def describe(self) -> str:
        return f"synthetic:{self.delta1};{self.delta2}"

    def frobenius_matrix(self, p: Prime) -> Matrix2:
        e1 = -1 if splitting_symbol(self.delta1, p) else 1
        e2 = -1 if splitting_symbol(self.delta2, p) else 1
        return _mul(_mul(self.conjugator, ((e1, 0), (0, e2))), self._conjugator_inv)

    def _frobenius(self, p: Prime) -> FrobeniusAnswer:
        m = self.frobenius_matrix(p)
        return FrobeniusAnswer.frobenius(
            p, TwoAdicInt.exact(m[0][0] + m[1][1]), TwoAdicInt.exact(_det(m))
        )
