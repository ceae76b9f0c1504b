import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from ..arithmetic.base_field import Prime, SelmerBasis
from ..arithmetic.cubics import CubicFamily, lambda_bit
from ..arithmetic.f2_linalg import BitMatrix, BitVector, rank
from .types import quadratic_positions, quadratic_row

logger = logging.getLogger(__name__)


class SetKind(str, Enum):
    T0 = "T0"
    T1 = "T1"
    T2 = "T2"
    T2_SPECIAL = "T2special"


@dataclass
class SetVerification:
    """Verdict plus the violated conditions, one message each."""

    kind: SetKind
    ok: bool
    diagnostics: list[str] = field(default_factory=list)
    signatures: list[BitVector] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_set(
    kind: SetKind | str,
    primes: Sequence[Prime],
    basis: SelmerBasis,
    *,
    family: Optional[CubicFamily] = None,
    indexing: Optional[Sequence[Iterable[int]]] = None,
) -> SetVerification:
    """Re-check the defining property of a candidate set."""
    kind = SetKind(kind)
    problems: list[str] = []
    signatures: list[BitVector] = []

    excluded = set(basis.bad_set)
    if kind is SetKind.T0 and family is not None:
        excluded |= set(family.bad_set)
    clash = [str(p) for p in primes if p in excluded]
    if clash:
        problems.append(f"primes in the bad set: {', '.join(clash)}")
    if len(set(primes)) != len(primes):
        problems.append("a prime is listed twice")

    if not problems:
        if kind is SetKind.T0:
            signatures = _check_t0(primes, family, problems)
        elif kind is SetKind.T1:
            _check_t1(primes, basis, problems)
        else:
            _check_t2(primes, basis, problems)
            if kind is SetKind.T2_SPECIAL:
                _check_special(primes, basis, indexing, problems)

    result = SetVerification(kind, not problems, problems, signatures)
    level = logging.INFO if result.ok else logging.WARNING
    logger.log(level, f"verify {kind.value} {[str(p) for p in primes]}: {'ok' if result.ok else problems}")
    return result


def _check_t0(primes: Sequence[Prime], family: Optional[CubicFamily], problems: list[str]) -> list[BitVector]:
    if family is None:
        problems.append("a cubic family is required to verify T0")
        return []
    signatures = [
        BitVector.from_iterable(lambda_bit(f, p) for p in primes) if primes else BitVector.zeros(0)
        for f in family.cubics
    ]
    for i, sig in enumerate(signatures):
        if sig.is_zero():
            problems.append(f"{family.label(i)} has the zero signature (looks reducible)")
        for j in range(i):
            if signatures[j] == sig:
                problems.append(f"{family.label(j)} and {family.label(i)} share signature {sig}")
    return signatures


def _check_t1(primes: Sequence[Prime], basis: SelmerBasis, problems: list[str]) -> None:
    if len(primes) != basis.rank:
        problems.append(f"T1 needs {basis.rank} primes, got {len(primes)}")
        return
    if not primes:
        return
    a = BitMatrix.from_rows([basis.symbol_row(p) for p in primes], basis.rank)
    if rank(a) < basis.rank:
        problems.append(f"symbol matrix has rank {rank(a)} < {basis.rank}")


def _check_t2(primes: Sequence[Prime], basis: SelmerBasis, problems: list[str]) -> None:
    r = basis.rank
    dim = r * (r + 1) // 2
    if len(primes) != dim:
        problems.append(f"T2 needs {dim} primes, got {len(primes)}")
        return
    if not primes:
        return
    v = BitMatrix.from_rows([quadratic_row(basis.i_set(p), r) for p in primes], dim)
    if rank(v) < dim:
        problems.append(f"Sym^2 rows have rank {rank(v)} < {dim}")


def _check_special(
    primes: Sequence[Prime],
    basis: SelmerBasis,
    indexing: Optional[Sequence[Iterable[int]]],
    problems: list[str],
) -> None:
    actual = [basis.i_set(p) for p in primes]
    if sorted(map(sorted, actual)) != sorted(map(sorted, quadratic_positions(basis.rank))):
        problems.append(f"I-sets {[sorted(s) for s in actual]} are not one per singleton and pair")
    if indexing is not None:
        for p, claimed, got in zip(primes, indexing, actual):
            if frozenset(claimed) != got:
                problems.append(f"I({p}) is {sorted(got)}, document says {sorted(claimed)}")
