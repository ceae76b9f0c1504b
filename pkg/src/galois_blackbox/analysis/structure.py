"""
Structure of a residually reducible black box from test functions on a
special T2 set: small or large isogeny class, the mod 2^{k+1} characters at
the first nontrivial level, and the trivial-semisimplification certificate.

Throughout, values are keyed by I(p): {i} for the singleton prime p_i and
{i, j} for the pair prime p_ij (1-based basis indices).
"""
import logging
from typing import Callable, Optional, Sequence

from ..arithmetic.f2_linalg import BitMatrix, BitVector, rank
from ..arithmetic.base_field import Prime
from ..config import settings
from ..exceptions import ExactnessRequired, InconsistentData, InputError, NotTrivialModLevel
from ..oracle.base import BlackBoxOracle
from ..primesets.search import special_set_for
from ..primesets.types import T1Set, T2Set
from .queries import (
    certify_trivial_mod,
    det_bit,
    det_of,
    f_one_of,
    frobenius_test,
    require_answers,
    trace_of,
)
from .types import CharacterVector, SmallOrLarge, TrivialLevel

logger = logging.getLogger(__name__)

Values = dict[frozenset[int], int]


def _require_special(t2: T2Set) -> None:
    if not t2.is_special:
        raise InputError("the analysis needs a special T2 set (one prime per singleton and pair)")


def _values(t2: T2Set, measure: Callable[[Prime], int]) -> Values:
    assert t2.indexing is not None
    return {indices: measure(p) for indices, p in zip(t2.indexing, t2.primes)}


def _w_rows(values: Values, indices: Sequence[int]) -> list[BitVector]:
    """W_ij = t(p_ij) + t(p_i) + t(p_j) over the given indices, zero diagonal."""
    n = len(indices)
    rows = []
    for i in indices:
        bits = 0
        for b, j in enumerate(indices):
            if i != j and values[frozenset({i, j})] ^ values[frozenset({i})] ^ values[frozenset({j})]:
                bits |= 1 << b
        rows.append(BitVector(bits, n))
    return rows


def _w_rank(rows: list[BitVector], n: int) -> int:
    rk = rank(BitMatrix.from_rows(rows, n))
    if rk not in (0, 2):
        raise InconsistentData(f"W has rank {rk}; a compliant oracle gives rank 0 or 2")
    return rk


def _distinct_nonzero(rows: list[BitVector]) -> list[BitVector]:
    out: list[BitVector] = []
    for row in rows:
        if not row.is_zero() and row not in out:
            out.append(row)
    return out


def _recover_pair(
    values: Values, indices: Sequence[int]
) -> tuple[Optional[tuple[BitVector, BitVector]], BitVector, list[BitVector]]:
    """
    Recover {x, y} from t(p) = (x . alpha_p)(y . alpha_p).

    Returns None for the pair when v = 0 and W = 0 (one of the characters is
    trivial), plus v and the rows of W.
    """
    n = len(indices)
    v = BitVector.from_iterable(values[frozenset({i})] for i in indices)
    rows = _w_rows(values, indices)
    if _w_rank(rows, n) == 0:
        if v.is_zero():
            return None, v, rows
        return (v, v), v, rows
    nonzero = _distinct_nonzero(rows)
    if v.is_zero():
        x, y = nonzero[0], nonzero[1]
    else:
        z = rows[v.support()[0]]
        others = [w for w in nonzero if w != z]
        if not others:
            raise InconsistentData("W rows do not contain either character")
        x = others[0]
        y = x + z
    if (x & y) != v:
        raise InconsistentData(f"recovered pair {x}, {y} does not reproduce v = {v}")
    return (x, y), v, rows


def small_or_large(oracle: BlackBoxOracle, t2: T2Set) -> SmallOrLarge:
    """
    Width exactly 1 or at least 2, from t_1 on a special T2 set.

    t_1(p) = chi_b(Frob_p) chi_c(Frob_p); the class is large iff one of the
    two characters is trivial, i.e. t_1 vanishes on T2.
    """
    _require_special(t2)
    require_answers(oracle, t2.primes)
    values = _values(t2, lambda p: frobenius_test(oracle, p, 1, operation="small_or_large"))
    pair, v, rows = _recover_pair(values, range(1, t2.rank + 1))
    w = BitMatrix.from_rows(rows, t2.rank)
    if pair is None:
        logger.info("Isogeny class is large (t_1 vanishes on T2)")
        return SmallOrLarge(large=True, v=v, w=w)
    x, y = sorted(pair, key=BitVector.sort_key)
    discs = (t2.basis.element(x), t2.basis.element(y))
    logger.info(f"Isogeny class is small: discriminants {discs[0]}, {discs[1]}")
    return SmallOrLarge(large=False, v=v, w=w, pair=discs)


class _LevelTests:
    """Test values at level k on one special T2 set, with the precision they need."""

    operation = "mod_next_level"

    def __init__(self, oracle: BlackBoxOracle, k: int, t2: T2Set):
        self.oracle = oracle
        self.k = k
        self.t2 = t2
        for p in t2.primes:
            trace_of(oracle, p, 2 * k + 2, self.operation, k)
            det_of(oracle, p, k + 1, self.operation, k)
            f_one_of(oracle, p, 2 * k + 1, self.operation, k)
        self.t = _values(t2, lambda p: frobenius_test(oracle, p, 2 * k, operation=self.operation))
        self.f_bits = 2 * k + 1

    def items(self) -> list[tuple[frozenset[int], Prime]]:
        assert self.t2.indexing is not None
        return list(zip(self.t2.indexing, self.t2.primes))

    def modified_test(self, p: Prime, parity: int) -> int:
        """
        b(p) c_1(p) once the lattice is chosen with c = 0 mod 2.

        parity is a(p) = d(p); when it is 1, (tr - 2)/2^k = a + d mod 4 picks
        the shift by 2^{2k} that makes F_p(1) divisible by 2^{2k+1}.
        """
        k = self.k
        bits = 2 * k + 2
        modulus = 1 << bits
        f = f_one_of(self.oracle, p, bits, self.operation, k).residue(bits)
        self.f_bits = bits
        if parity == 0:
            return (f >> (2 * k + 1)) & 1
        trace = trace_of(self.oracle, p, bits, self.operation, k).residue(bits)
        a_plus_d = (((trace - 2) % modulus) >> k) % 4
        if a_plus_d == 0:
            return (((f + (1 << 2 * k)) % modulus) >> (2 * k + 1)) & 1
        if a_plus_d == 2:
            return (((f - (1 << 2 * k)) % modulus) >> (2 * k + 1)) & 1
        raise InconsistentData(f"a + d is odd at {p} where the determinant is trivial")


def _solve_block(
    level_tests: _LevelTests, indices: list[int], branches: list[str]
) -> tuple[BitVector, BitVector, BitVector]:
    """
    x, y, u on indices where a = d, i.e. where t_{2k} = a + bc.

    W of rank 2 pins span{x, y}; W = 0 means the lattice can be chosen with
    c = 0, after which u = t and the modified tests give b.
    """
    n = len(indices)
    t = level_tests.t
    rows = _w_rows(t, indices)
    single = BitVector.from_iterable(t[frozenset({i})] for i in indices)
    if _w_rank(rows, n) == 2:
        x, y = _distinct_nonzero(rows)[:2]
        branches.append("W-rank-2")
        return x, y, single + (x & y)

    u = single
    position = {i: b for b, i in enumerate(indices)}
    modified: Values = {}
    for key, p in level_tests.items():
        if key <= frozenset(position):
            parity = sum(u[position[i]] for i in key) % 2
            modified[key] = level_tests.modified_test(p, parity)
    pair, _, _ = _recover_pair(modified, indices)
    x = BitVector.zeros(n) if pair is None else min(pair, key=BitVector.sort_key)
    branches.append("W-rank-0")
    return x, BitVector.zeros(n), u


def _prepend(bit: int, tail: BitVector) -> BitVector:
    return BitVector.from_iterable([bit] + tail.to_list())


def _solve_rotated(level_tests: _LevelTests, r: int, branches: list[str]) -> tuple[BitVector, ...]:
    """delta_1 = delta_det: solve indices 2..r, then the first coordinate."""
    x_, y_, u_ = _solve_block(level_tests, list(range(2, r + 1)), branches)
    t = level_tests.t
    if t[frozenset({1})] == 1:
        x1 = y1 = 1
        branches.append("t(p_1)=1")
    else:
        q = BitVector.from_iterable(
            t[frozenset({i})] ^ t[frozenset({1, i})] ^ u_[i - 2] for i in range(2, r + 1)
        )
        if rank(BitMatrix.from_rows([x_, y_], r - 1)) == 2:
            branches.append("case-2a")
            if q.is_zero():
                x1, y1 = 0, 0
            elif q == x_:
                x1, y1 = 0, 1
            elif q == y_:
                x1, y1 = 1, 0
            else:
                raise InconsistentData(f"q = {q} is none of 0, {x_}, {y_}")
        elif x_.is_zero():
            branches.append("case-2b")
            if not q.is_zero():
                raise InconsistentData(f"q = {q} should vanish when x' = y' = 0")
            x1, y1 = 0, 0
        else:
            branches.append("case-2c")
            if q == x_:
                x1, y1 = 0, 1
            elif q.is_zero():
                x1, y1 = 0, 0
            else:
                raise InconsistentData(f"q = {q} is neither 0 nor {x_}")
    return (
        _prepend(x1, x_),
        _prepend(y1, y_),
        _prepend(1, u_),
        _prepend(0, u_),
    )


def mod_next_level(
    oracle: BlackBoxOracle,
    k: int,
    t2: T2Set,
    *,
    norm_cap: Optional[int] = None,
    degree_one_only: Optional[bool] = None,
) -> CharacterVector:
    """
    Given rho trivial mod 2^k up to isogeny, recover rho mod 2^{k+1}.

    Writing rho = I + 2^k (a b; c d) mod 2^{k+1}, returns the exponent vectors
    of delta_a, delta_d, delta_b, delta_c and delta_abcd over t2's basis,
    normalized up to the symmetries of the problem.
    """
    if k < 1:
        raise ValueError("mod_next_level needs k >= 1")
    _require_special(t2)
    basis = t2.basis
    r = basis.rank
    t1 = t2.as_t1()
    require_answers(oracle, list(t2.primes))
    if not certify_trivial_mod(oracle, k, t1, t2):
        raise NotTrivialModLevel(f"rho is not trivial mod 2^{k} on T1/T2")

    e = BitVector.from_iterable(det_bit(oracle, p, k, "mod_next_level") for p in t1.primes)
    branches: list[str] = []
    rotation: Optional[BitMatrix] = None
    work = t2
    if e.is_zero():
        branches.append("det-trivial")
    else:
        branches.append("det-nontrivial")
        rotated, rotation = basis.with_leading(e)
        work = special_set_for(t2, rotated, norm_cap=norm_cap, degree_one_only=degree_one_only)
        require_answers(oracle, work.primes)
        if not certify_trivial_mod(oracle, k, work.as_t1(), work):
            raise NotTrivialModLevel(f"rho is not trivial mod 2^{k} on the rotated T2")
        logger.info(f"Level {k}: delta_det = {basis.element(e)}, rotated basis {rotated.describe()}")

    level_tests = _LevelTests(oracle, k, work)
    if rotation is None:
        x, y, u = _solve_block(level_tests, list(range(1, r + 1)), branches)
        v = u
    else:
        x, y, u, v = _solve_rotated(level_tests, r, branches)
    z = x + y + u + v
    if rotation is not None:
        x, y, z, u, v = (rotation.combine(w) for w in (x, y, z, u, v))

    result = CharacterVector(
        k, basis, x, y, z, u, v, branches=tuple(branches), f_bits_used=level_tests.f_bits
    ).normalize()
    logger.info(
        f"Level {k}: leaves {[str(d) for d in result.leaves()]}, "
        f"diagonal {[str(d) for d in result.diagonal()]}, branches {branches}"
    )
    return result


def max_trivial_level(
    oracle: BlackBoxOracle,
    t2: T2Set,
    k_max: Optional[int] = None,
    *,
    norm_cap: Optional[int] = None,
    degree_one_only: Optional[bool] = None,
) -> TrivialLevel:
    """
    Largest k <= k_max with rho trivial mod 2^k up to isogeny, and the
    mod 2^{k+1} structure at the first level that fails.
    """
    k_max = settings.analysis_k_max if k_max is None else k_max
    if not small_or_large(oracle, t2).large:
        return TrivialLevel(level=0, k_max=k_max)
    t1 = t2.as_t1()
    k = 1
    certified = [1]
    while k < k_max:
        if certify_trivial_mod(oracle, k + 1, t1, t2):
            k += 1
            certified.append(k)
            continue
        structure = mod_next_level(oracle, k, t2, norm_cap=norm_cap, degree_one_only=degree_one_only)
        return TrivialLevel(k, structure, False, k_max, tuple(certified))
    logger.info(f"rho is trivial mod 2^{k_max} up to isogeny; k_max exhausted")
    return TrivialLevel(k_max, None, True, k_max, tuple(certified))


def trivial_semisimplification(oracle: BlackBoxOracle, t2: T2Set, t1: Optional[T1Set] = None) -> bool:
    """
    det = 1 exactly on T1 and trace = 2 exactly on T2, i.e. every Frobenius
    polynomial is (t - 1)^2 and rho is upper unitriangular up to equivalence.
    """
    t1 = t1 or t2.as_t1()
    answers = require_answers(oracle, list(t1.primes) + list(t2.primes))
    inexact = [str(p) for p, a in answers.items() if not a.is_exact]
    if inexact:
        raise ExactnessRequired(f"exact Frobenius polynomials needed at {', '.join(inexact)}")
    dets_trivial = all(answers[p].coefficients()[1].value == 1 for p in t1.primes)
    traces_trivial = all(answers[p].coefficients()[0].value == 2 for p in t2.primes)
    return dets_trivial and traces_trivial
