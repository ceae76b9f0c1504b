"""
Single-prime queries of a black box and their precision bookkeeping.

Every query checks that the oracle supplied enough 2-adic bits before it
looks at a value, and says which bits it wanted when it did not.
"""
import logging
from typing import Iterable, Mapping, Optional, Sequence

from ..arithmetic.base_field import Discriminant, Prime
from ..arithmetic.f2_linalg import BitVector
from ..exceptions import PrecisionInsufficient, UnknownPrime, ValuationTooLow
from ..oracle.answers import FrobeniusAnswer, TwoAdicInt, f_at_one
from ..oracle.base import BlackBoxOracle
from ..primesets.types import T1Set, T2Set

logger = logging.getLogger(__name__)


def require_answers(oracle: BlackBoxOracle, primes: Iterable[Prime]) -> dict[Prime, FrobeniusAnswer]:
    """Query every prime; a table missing several primes reports all of them at once."""
    answers: dict[Prime, FrobeniusAnswer] = {}
    missing: list[str] = []
    for p in primes:
        try:
            answers[p] = oracle.query(p)
        except UnknownPrime:
            missing.append(str(p))
    if missing:
        raise UnknownPrime(f"oracle has no data at {', '.join(missing)}", primes=missing)
    return answers


def need_bits(
    value: TwoAdicInt,
    bits: int,
    *,
    prime: Prime,
    quantity: str,
    operation: str,
    level: Optional[int] = None,
) -> TwoAdicInt:
    if not value.known_to(bits):
        raise PrecisionInsufficient(
            f"{operation}: {quantity} at {prime} known mod 2^{value.bits}, need 2^{bits}",
            prime=str(prime),
            quantity=quantity,
            needed_bits=bits,
            available_bits=value.bits,
            operation=operation,
            level=level,
        )
    return value


def trace_of(oracle: BlackBoxOracle, p: Prime, bits: int, operation: str, level: Optional[int] = None) -> TwoAdicInt:
    trace, _ = oracle.query(p).coefficients()
    return need_bits(trace, bits, prime=p, quantity="trace", operation=operation, level=level)


def det_of(oracle: BlackBoxOracle, p: Prime, bits: int, operation: str, level: Optional[int] = None) -> TwoAdicInt:
    _, det = oracle.query(p).coefficients()
    return need_bits(det, bits, prime=p, quantity="det", operation=operation, level=level)


def f_one_of(oracle: BlackBoxOracle, p: Prime, bits: int, operation: str, level: Optional[int] = None) -> TwoAdicInt:
    return need_bits(f_at_one(oracle.query(p)), bits, prime=p, quantity="F_p(1)", operation=operation, level=level)


def frobenius_test(oracle: BlackBoxOracle, p: Prime, k: int, *, operation: str = "frobenius_test") -> int:
    """
    t_k(p) = F_p(1)/2^k mod 2, for ord_2 F_p(1) >= k.

    0 iff ord_2 F_p(1) >= k + 1. An exact F_p(1) = 0 counts as infinite valuation.
    """
    f = f_at_one(oracle.query(p))
    if f.is_exact and f.value == 0:
        return 0
    need_bits(f, k + 1, prime=p, quantity="F_p(1)", operation=operation, level=k)
    if f.residue(k) != 0:
        raise ValuationTooLow(f"ord_2 F_p(1) < {k} at {p} (F_p(1) = {f})")
    return (f.residue(k + 1) >> k) & 1


def det_bit(oracle: BlackBoxOracle, p: Prime, k: int, operation: str) -> int:
    """Bit k of det - 1, given det = 1 mod 2^k."""
    det = det_of(oracle, p, k + 1, operation, k)
    return (((det.value - 1) % (1 << (k + 1))) >> k) & 1


def identify_quadratic(symbols: Sequence[int] | Mapping[Prime, int], t1: T1Set) -> Discriminant:
    """The unique delta in K(S,2)_u with [delta|p_i] equal to the given bits."""
    if isinstance(symbols, Mapping):
        bits = [symbols[p] for p in t1.primes]
    else:
        bits = list(symbols)
    if len(bits) != t1.rank:
        raise ValueError(f"{len(bits)} symbols for a T1 set of {t1.rank} primes")
    exponents = BitVector.from_iterable(bits) if bits else BitVector.zeros(0)
    return t1.dual_basis.element(exponents)


def det_character_equal(
    oracle: BlackBoxOracle,
    candidate: Mapping[Prime, int],
    t1: T1Set,
    bits: Optional[int] = None,
) -> bool:
    """
    Compare det rho(Frob_p) with candidate(p) on T1, exactly (bits=None) or mod 2^bits.

    Exact agreement proves the characters equal; agreement mod 2^bits proves
    them equal mod 2^bits.
    """
    require_answers(oracle, t1.primes)
    for p in t1.primes:
        _, det = oracle.query(p).coefficients()
        if bits is None:
            if not det.is_exact:
                raise PrecisionInsufficient(
                    f"det_character_equal: det at {p} is {det.precision_label()}, need exact",
                    prime=str(p), quantity="det", needed_bits=None,
                    available_bits=det.bits, operation="det_character_equal",
                )
            if det.value != candidate[p]:
                return False
        else:
            need_bits(det, bits, prime=p, quantity="det", operation="det_character_equal")
            if det.residue(bits) != candidate[p] % (1 << bits):
                return False
    return True


def certify_trivial_mod(oracle: BlackBoxOracle, k: int, t1: T1Set, t2: T2Set) -> bool:
    """
    Whether rho has an equivalent form trivial mod 2^k:
    det = 1 mod 2^k on T1 and F_p(1) = 0 mod 2^{2k} on T2.

    The det condition is settled first, so a failing det needs no F_p(1) bits.
    """
    operation = "certify_trivial_mod"
    require_answers(oracle, list(t1.primes) + list(t2.primes))
    for p in t1.primes:
        det = det_of(oracle, p, k, operation, k)
        if det.residue(k) != 1 % (1 << k):
            logger.debug(f"level {k}: det at {p} is {det}, not 1 mod 2^{k}")
            return False
    for p in t2.primes:
        f = f_at_one(oracle.query(p))
        if f.is_exact and f.value == 0:
            continue
        need_bits(f, 2 * k, prime=p, quantity="F_p(1)", operation=operation, level=k)
        if f.residue(2 * k) != 0:
            logger.debug(f"level {k}: F_p(1) at {p} is {f}, not 0 mod 2^{2 * k}")
            return False
    return True
