import logging
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from ..arithmetic.base_field import BaseField, Prime, parse_prime
from ..exceptions import DuplicatePrime, ParseError, UnknownPrime
from ..persistence.files import read_oracle_table
from ..utils.logging import AuditTrail
from .answers import FrobeniusAnswer, TwoAdicInt
from .base import BlackBoxOracle

logger = logging.getLogger(__name__)


def _parse_int(text: str, what: str, row: int) -> int:
    try:
        return int(text)
    except ValueError as e:
        raise ParseError(f"row {row}: {what} {text!r} is not an integer") from e


class TableOracle(BlackBoxOracle):
    """Answers from a precomputed table (e.g. Hecke eigenvalues of a Bianchi form)."""

    backend = "table"

    def __init__(
        self,
        field: BaseField,
        bad_set: Iterable[Prime],
        entries: Mapping[Prime, FrobeniusAnswer],
        *,
        source: Optional[str] = None,
        memoize: Optional[bool] = None,
        audit: Optional[AuditTrail] = None,
    ):
        super().__init__(field, bad_set, memoize=memoize, audit=audit)
        clash = [str(p) for p in entries if p in self._bad]
        if clash:
            raise ParseError(f"table lists primes of S: {', '.join(clash)}")
        self.entries = dict(entries)
        self.source = source

    @classmethod
    def from_file(
        cls,
        field: BaseField,
        bad_set: Iterable[Prime],
        path: Union[str, Path],
        **kwargs,
    ) -> "TableOracle":
        """
        Parse 'prime <tab> trace [<tab> det] [<tab> mod2pow]' rows.
        det defaults to N(p); a missing mod2pow means the row is exact.
        """
        df = read_oracle_table(path)
        entries: dict[Prime, FrobeniusAnswer] = {}
        for i, row in enumerate(df.itertuples(index=False), start=1):
            p = parse_prime(field, row.prime)
            if p in entries:
                raise DuplicatePrime(f"row {i}: {p} listed twice")
            bits = _parse_int(row.mod2pow, "mod2pow", i) if row.mod2pow else None
            if bits is not None and bits < 1:
                raise ParseError(f"row {i}: mod2pow must be positive")
            if not row.trace:
                raise ParseError(f"row {i}: missing trace")
            trace = TwoAdicInt(_parse_int(row.trace, "trace", i), bits)
            det = TwoAdicInt(_parse_int(row.det, "det", i) if row.det else p.norm, bits)
            try:
                entries[p] = FrobeniusAnswer.frobenius(p, trace, det)
            except ParseError as e:
                raise ParseError(f"row {i}: {e}") from e
        logger.info(f"Loaded table oracle with {len(entries)} primes from {Path(path).name}")
        return cls(field, bad_set, entries, source=str(path), **kwargs)

    @property
    def primes(self) -> list[Prime]:
        return sorted(self.entries, key=Prime.sort_key)

    def describe(self) -> str:
        return f"table:{Path(self.source).name}" if self.source else "table"

    def _frobenius(self, p: Prime) -> FrobeniusAnswer:
        try:
            return self.entries[p]
        except KeyError:
            raise UnknownPrime(f"{p} is not in the oracle table", primes=[str(p)]) from None
