"""
Conversion between computed prime sets and the PrimeSetDocument stored on disk.
"""
import logging
from dataclasses import dataclass
from typing import Mapping, Optional

from ..arithmetic.base_field import BaseField, Prime, SelmerBasis, parse_prime
from ..arithmetic.f2_linalg import BitMatrix, BitVector, invert
from ..arithmetic.gaussian import GaussianInt
from ..exceptions import ParseError
from ..models.prime_sets import IndexedPrime, PrimeSetDocument
from .types import T0Set, T1Set, T2Set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeSets:
    """Everything computed (or published) for one (K, S)."""

    field: BaseField
    bad_set: tuple[Prime, ...]
    basis: SelmerBasis
    t0: Optional[T0Set] = None
    t1: Optional[T1Set] = None
    t2: Optional[T2Set] = None
    t2_special: Optional[T2Set] = None


def t1_from_primes(primes: tuple[Prime, ...], basis: SelmerBasis) -> T1Set:
    """Rebuild the dual basis of a T1 set from its primes."""
    if not basis.rank:
        return T1Set((), basis, basis, BitMatrix((), 0))
    a = BitMatrix.from_rows([basis.symbol_row(p) for p in primes], basis.rank)
    return T1Set(primes, basis, basis.rebased(invert(a).transpose().rows), a)


def to_document(
    sets: PrimeSets,
    *,
    cubics: Optional[str] = None,
    inputs: Optional[Mapping[str, str]] = None,
) -> PrimeSetDocument:
    special = sets.t2_special
    return PrimeSetDocument(
        field=sets.field.value,
        bad_set=[str(p) for p in sets.bad_set],
        basis=[str(g) for g in sets.basis.generators],
        basis_labels=sets.basis.describe(),
        t0=[str(p) for p in sets.t0.primes] if sets.t0 else None,
        t0_signatures=[str(s) for s in sets.t0.signatures] if sets.t0 else [],
        cubics=cubics,
        t1=[str(p) for p in sets.t1.primes] if sets.t1 else [],
        t1_dual=[str(g) for g in sets.t1.dual_basis.generators] if sets.t1 else [],
        t2=[str(p) for p in sets.t2.primes] if sets.t2 else [],
        t2_special=[
            IndexedPrime(prime=str(p), indices=sorted(indices))
            for p, indices in zip(special.primes, special.indexing or ())
        ] if special else [],
        inputs=dict(inputs or {}),
    )


def from_document(doc: PrimeSetDocument) -> PrimeSets:
    """
    Rebuild domain sets from a document. Only the primes and the basis are
    trusted; dual bases and signatures are recomputed or re-read as given.
    """
    field = BaseField.parse(doc.field)
    bad_set = tuple(sorted({parse_prime(field, t) for t in doc.bad_set}, key=Prime.sort_key))
    try:
        generators = tuple(GaussianInt.parse(g) for g in doc.basis)
        signatures = tuple(BitVector.parse(s) for s in doc.t0_signatures)
    except ValueError as e:
        raise ParseError(str(e)) from e
    basis = SelmerBasis(field, bad_set, generators)

    def primes(texts: list[str]) -> tuple[Prime, ...]:
        return tuple(parse_prime(field, t) for t in texts)

    t0 = T0Set(primes(doc.t0), signatures) if doc.t0 is not None else None
    t1 = t1_from_primes(primes(doc.t1), basis) if doc.t1 or not basis.rank else None
    t2 = T2Set(primes(doc.t2), basis) if doc.t2 else None
    t2_special = None
    if doc.t2_special or not basis.rank:
        t2_special = T2Set(
            tuple(parse_prime(field, e.prime) for e in doc.t2_special),
            basis,
            tuple(frozenset(e.indices) for e in doc.t2_special),
        )
    logger.debug(f"Loaded prime sets for {field.value}, S = {doc.bad_set}, rank {basis.rank}")
    return PrimeSets(field, bad_set, basis, t0, t1, t2, t2_special)
