"""
Prime searches over the canonical prime stream: T1 (linear independence),
T0 (distinguishing cubics), T2 (quadratic independence, generic and special).

Every search stops with SearchExhausted once it would pass the norm cap.
"""
import logging
from typing import Iterable, Iterator, Optional

from ..arithmetic.base_field import (
    BaseField,
    Prime,
    SelmerBasis,
    canonical_primes,
    selmer_group,
    unramified_subgroup,
)
from ..arithmetic.cubics import CubicFamily, lambda_bit
from ..arithmetic.f2_linalg import BitMatrix, BitVector, invert, span_basis
from ..config import settings
from ..exceptions import SearchExhausted
from .types import T0Set, T1Set, T2Set, quadratic_positions, quadratic_row

logger = logging.getLogger(__name__)


def unramified_basis(field: BaseField, bad_set: Iterable[Prime]) -> SelmerBasis:
    """The default basis of K(S,2)_u for a search."""
    s = list(bad_set)
    return unramified_subgroup(field, s, selmer_group(field, s))


def _candidates(
    field: BaseField,
    excluded: Iterable[Prime],
    norm_cap: Optional[int],
    degree_one_only: Optional[bool],
    what: str,
) -> Iterator[Prime]:
    cap = settings.search_norm_cap if norm_cap is None else norm_cap
    deg1 = settings.search_degree_one_only if degree_one_only is None else degree_one_only
    for p in canonical_primes(field, excluded, degree_one_only=deg1):
        if p.norm > cap:
            raise SearchExhausted(f"{what}: no suitable prime of norm <= {cap}", norm_cap=cap)
        yield p


def _rank_increases(rows: list[BitVector], row: BitVector) -> bool:
    return len(span_basis(rows + [row])) > len(rows)


def find_T1(
    field: BaseField,
    bad_set: Iterable[Prime],
    *,
    basis: Optional[SelmerBasis] = None,
    norm_cap: Optional[int] = None,
    degree_one_only: Optional[bool] = None,
) -> T1Set:
    """First r primes whose symbol rows are independent, with the dual basis."""
    s = list(bad_set)
    basis = basis or unramified_basis(field, s)
    r = basis.rank
    if not r:
        return T1Set((), basis, basis, BitMatrix((), 0))
    primes: list[Prime] = []
    rows: list[BitVector] = []
    for p in _candidates(field, s, norm_cap, degree_one_only, "T1 search"):
        row = basis.symbol_row(p)
        if _rank_increases(rows, row):
            primes.append(p)
            rows.append(row)
            logger.debug(f"T1: accepted {p} with symbol row {row}")
            if len(primes) == r:
                break
    a = BitMatrix.from_rows(rows, r)
    # dual element j has exponents given by column j of A^-1
    b = invert(a)
    dual = basis.rebased(b.transpose().rows)
    logger.info(f"T1 = {[str(p) for p in primes]}")
    return T1Set(tuple(primes), basis, dual, a)


def _first_collision(signatures: list[BitVector]) -> Optional[tuple[int, int]]:
    for i in range(len(signatures)):
        for j in range(i + 1, len(signatures)):
            if signatures[i] == signatures[j]:
                return i, j
    return None


def find_T0(
    field: BaseField,
    bad_set: Iterable[Prime],
    family: CubicFamily,
    *,
    norm_cap: Optional[int] = None,
    degree_one_only: Optional[bool] = None,
) -> T0Set:
    """
    Separate the family pairwise, with x^3 standing for the reducible case.

    While two signatures agree, take the first such pair and add the first
    prime outside S(F) and T0 at which their lambda values differ.
    """
    if not len(family):
        return T0Set(())
    excluded = set(bad_set) | set(family.bad_set)
    n = len(family) + 1
    names = ["x^3"] + [family.label(m) for m in range(len(family))]

    def lam(index: int, p: Prime) -> int:
        # index 0 is x^3, which always has the root 0
        return 0 if index == 0 else lambda_bit(family.cubics[index - 1], p)

    primes: list[Prime] = []
    sig_bits = [0] * n
    while True:
        pair = _first_collision([BitVector(bits, len(primes)) for bits in sig_bits])
        if pair is None:
            break
        i, j = pair
        what = f"T0 search separating {names[i]} and {names[j]} (same splitting field?)"
        candidates = _candidates(field, excluded | set(primes), norm_cap, degree_one_only, what)
        p = next(q for q in candidates if lam(i, q) != lam(j, q))
        primes.append(p)
        for m in range(1, n):
            sig_bits[m] |= lam(m, p) << (len(primes) - 1)
        logger.debug(f"T0: {p} separates {names[i]} from {names[j]}")
    signatures = tuple(BitVector(bits, len(primes)) for bits in sig_bits[1:])
    logger.info(f"T0 = {[str(p) for p in primes]}")
    return T0Set(tuple(primes), signatures)


def find_T2(
    field: BaseField,
    bad_set: Iterable[Prime],
    *,
    basis: Optional[SelmerBasis] = None,
    norm_cap: Optional[int] = None,
    degree_one_only: Optional[bool] = None,
) -> T2Set:
    """First r(r+1)/2 primes whose Sym^2 rows v(p) are independent."""
    s = list(bad_set)
    basis = basis or unramified_basis(field, s)
    r = basis.rank
    target = r * (r + 1) // 2
    primes: list[Prime] = []
    rows: list[BitVector] = []
    if target:
        for p in _candidates(field, s, norm_cap, degree_one_only, "T2 search"):
            row = quadratic_row(basis.i_set(p), r)
            if _rank_increases(rows, row):
                primes.append(p)
                rows.append(row)
                if len(primes) == target:
                    break
    logger.info(f"T2 = {[str(p) for p in primes]}")
    return T2Set(tuple(primes), basis)


def find_T2_special(
    field: BaseField,
    bad_set: Iterable[Prime],
    *,
    basis: Optional[SelmerBasis] = None,
    norm_cap: Optional[int] = None,
    degree_one_only: Optional[bool] = None,
) -> T2Set:
    """The first prime with I(p) = I for every singleton and every pair I."""
    s = list(bad_set)
    basis = basis or unramified_basis(field, s)
    positions = quadratic_positions(basis.rank)
    found: dict[frozenset[int], Prime] = {}
    if positions:
        for p in _candidates(field, s, norm_cap, degree_one_only, "special T2 search"):
            indices = basis.i_set(p)
            if len(indices) in (1, 2) and indices not in found:
                found[indices] = p
                logger.debug(f"special T2: p_{sorted(indices)} = {p}")
                if len(found) == len(positions):
                    break
    primes = tuple(found[pos] for pos in positions)
    logger.info(f"special T2 = {[str(p) for p in primes]}")
    return T2Set(primes, basis, tuple(positions))


def reindex_special(t2: T2Set, basis: SelmerBasis) -> Optional[T2Set]:
    """
    The same primes as a special set for another basis, when their I-sets
    under that basis are again exactly the singletons and pairs; else None.
    """
    indices = [basis.i_set(p) for p in t2.primes]
    positions = quadratic_positions(basis.rank)
    if sorted(map(sorted, indices)) != sorted(map(sorted, positions)):
        return None
    lookup = dict(zip(indices, t2.primes))
    return T2Set(tuple(lookup[pos] for pos in positions), basis, tuple(positions))


def special_set_for(
    t2: T2Set,
    basis: SelmerBasis,
    *,
    norm_cap: Optional[int] = None,
    degree_one_only: Optional[bool] = None,
) -> T2Set:
    """Re-index t2 for a rotated basis, or search a fresh special set."""
    reindexed = reindex_special(t2, basis)
    if reindexed is not None:
        logger.info("Rotated basis: special T2 re-indexed without new primes")
        return reindexed
    logger.info("Rotated basis: I-sets do not permute, searching a new special T2")
    return find_T2_special(
        basis.field, basis.bad_set, basis=basis, norm_cap=norm_cap, degree_one_only=degree_one_only
    )
