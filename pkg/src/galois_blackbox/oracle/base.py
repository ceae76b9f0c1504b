import logging
from abc import ABC, abstractmethod
from typing import Iterable, Optional

from ..arithmetic.base_field import BaseField, Prime
from ..config import settings
from ..exceptions import InputError
from ..utils.logging import AuditTrail
from .answers import FrobeniusAnswer, QueryRecord

logger = logging.getLogger(__name__)


class BlackBoxOracle(ABC):
    """
    A 2-dimensional 2-adic representation seen only through Frobenius polynomials.

    query(p) answers 'ramified' exactly on the declared bad set, otherwise
    (trace, det) with backend-dependent precision. Answers are stable, so the
    per-prime cache is transparent.
    """

    backend: str = "abstract"

    def __init__(
        self,
        field: BaseField,
        bad_set: Iterable[Prime],
        *,
        memoize: Optional[bool] = None,
        audit: Optional[AuditTrail] = None,
    ):
        self.field = field
        self.bad_set = tuple(sorted(set(bad_set), key=Prime.sort_key))
        self._bad = frozenset(self.bad_set)
        self.memoize = settings.oracle_memoize if memoize is None else memoize
        self._cache: dict[Prime, FrobeniusAnswer] = {}
        self._audit = audit
        self.query_count = 0
        self.query_log: list[QueryRecord] = []

    @abstractmethod
    def _frobenius(self, p: Prime) -> FrobeniusAnswer:
        """Frobenius data at a prime outside the bad set."""

    def describe(self) -> str:
        return self.backend

    def query(self, p: Prime) -> FrobeniusAnswer:
        if p.field is not self.field:
            raise InputError(f"{p} is a prime of {p.field.value}, oracle is over {self.field.value}")
        if p in self._bad:
            return FrobeniusAnswer.ramified_at(p)
        if self.memoize and p in self._cache:
            return self._cache[p]

        answer = self._frobenius(p)
        self.query_count += 1
        trace, det = answer.coefficients()
        self.query_log.append(QueryRecord(str(p), False, trace.bits, det.bits))
        logger.debug(f"{self.backend} oracle at {p}: trace={trace} det={det}")
        if self._audit:
            self._audit.oracle_query(self.backend, str(p), trace.precision_label(), det.precision_label())
        if self.memoize:
            self._cache[p] = answer
        return answer

    def query_many(self, primes: Iterable[Prime]) -> dict[Prime, FrobeniusAnswer]:
        return {p: self.query(p) for p in primes}

    def reset_accounting(self) -> None:
        self.query_count = 0
        self.query_log.clear()
