from typing import Optional

from ..utils.logging import AuditTrail
from .answers import FrobeniusAnswer
from .base import BlackBoxOracle
from ..arithmetic.base_field import Prime


class TruncatedOracle(BlackBoxOracle):
    """Wraps another oracle and forgets everything above 2^bits."""

    backend = "truncated"

    def __init__(
        self,
        inner: BlackBoxOracle,
        bits: int,
        *,
        memoize: Optional[bool] = None,
        audit: Optional[AuditTrail] = None,
    ):
        if bits < 1:
            raise ValueError("truncation keeps at least one bit")
        super().__init__(inner.field, inner.bad_set, memoize=memoize, audit=audit)
        self.inner = inner
        self.bits = bits

    def describe(self) -> str:
        return f"{self.inner.describe()} mod 2^{self.bits}"

    def _frobenius(self, p: Prime) -> FrobeniusAnswer:
        trace, det = self.inner.query(p).coefficients()
        return FrobeniusAnswer.frobenius(p, trace.truncated(self.bits), det.truncated(self.bits))
