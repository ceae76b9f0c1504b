"""
Exact arithmetic for the two supported base fields, Q and Q(i).

Covers canonical primes and their ordering, residue fields, the quadratic
splitting symbol [delta|p], and the discriminant group K(S,2)_u with its
exponent-vector coordinates.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field as dc_field
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from sympy import factorint, isprime, nextprime

from ..exceptions import NotInSelmerGroup, ParseError, RamifiedPrime
from .f2_linalg import BitMatrix, BitVector, solve_rowspace, span_basis
from .gaussian import I, ONE, ONE_PLUS_I, GaussianInt, factor, primes_above

logger = logging.getLogger(__name__)


class BaseField(str, Enum):
    """The base field K: the rationals or the Gaussian rationals Q(i)."""

    RATIONALS = "Q"
    GAUSSIAN_RATIONALS = "Qi"

    @classmethod
    def parse(cls, tag: str) -> BaseField:
        for member in cls:
            if member.value.lower() == tag.strip().lower():
                return member
        raise ParseError(f"unknown field tag {tag!r} (expected Q or Qi)")


# =========================================================================
# Primes
# =========================================================================

@dataclass(frozen=True)
class Prime:
    """A prime of K given by its canonical generator, with residue-field order."""

    field: BaseField
    generator: GaussianInt
    norm: int

    @property
    def characteristic(self) -> int:
        if self.field is BaseField.RATIONALS:
            return self.generator.re
        if self.generator.im != 0:
            return self.norm
        # inert: generator is the rational prime q, norm q^2
        return self.generator.re

    @property
    def degree(self) -> int:
        return 1 if self.norm == self.characteristic else 2

    def sort_key(self) -> tuple[int, int]:
        """Canonical order: norm, then imaginary part of the generator."""
        return (self.norm, self.generator.im)

    def residue_field(self) -> ResidueField:
        return _residue_field(self)

    def __str__(self) -> str:
        if self.field is BaseField.RATIONALS:
            return str(self.generator.re)
        return str(self.generator)


def rational_prime(p: int) -> Prime:
    return Prime(BaseField.RATIONALS, GaussianInt(p), p)


def prime_from_generator(k: BaseField, value: GaussianInt | int) -> Prime:
    """Canonicalize a generator of a prime ideal of K."""
    z = GaussianInt.coerce(value)
    if k is BaseField.RATIONALS:
        if z.im != 0 or not isprime(abs(z.re)):
            raise ParseError(f"{z} is not a rational prime")
        return rational_prime(abs(z.re))
    g = z.canonical()
    n = g.norm()
    if isprime(n):
        return Prime(k, g, n)
    if g.im == 0 and isprime(g.re) and g.re % 4 == 3:
        return Prime(k, g, g.re * g.re)
    raise ParseError(f"{z} is not a Gaussian prime")


def parse_prime(k: BaseField, text: str) -> Prime:
    """Parse the serialized form: '37' over Q, '11+6*i' (or '11+6i') over Q(i)."""
    try:
        z = GaussianInt.parse(text)
    except ValueError as e:
        raise ParseError(str(e)) from e
    return prime_from_generator(k, z)


def primes_over(k: BaseField, p: int) -> tuple[Prime, ...]:
    """Primes of K above the rational prime p, in canonical order."""
    if k is BaseField.RATIONALS:
        return (rational_prime(p),)
    return tuple(prime_from_generator(k, pi) for pi in primes_above(p))


def primes_above_two(k: BaseField) -> tuple[Prime, ...]:
    return primes_over(k, 2)


def canonical_primes(
    k: BaseField,
    excluded: Iterable[Prime] = (),
    *,
    degree_one_only: bool = False,
    max_norm: Optional[int] = None,
) -> Iterator[Prime]:
    """Primes of K in canonical order (norm, then imaginary part), skipping excluded.

    The stream is infinite unless max_norm is given.
    """
    skip = set(excluded)
    for prime in _all_primes(k, degree_one_only):
        if max_norm is not None and prime.norm > max_norm:
            return
        if prime not in skip:
            yield prime


def _all_primes(k: BaseField, degree_one_only: bool) -> Iterator[Prime]:
    p = 1
    if k is BaseField.RATIONALS:
        while True:
            p = nextprime(p)
            yield rational_prime(p)
    # inert primes wait here until the stream reaches their norm q^2
    inert: deque[int] = deque()
    while True:
        p = nextprime(p)
        while inert and inert[0] * inert[0] < p:
            q = inert.popleft()
            yield Prime(k, GaussianInt(q), q * q)
        if p % 4 == 3:
            if not degree_one_only:
                inert.append(p)
            continue
        for pi in primes_above(p):
            yield Prime(k, pi, p)


# =========================================================================
# Residue fields
# =========================================================================

Element = tuple[int, int]


@dataclass(frozen=True)
class ResidueField:
    """O_K/p. Elements are pairs (x, y) meaning x + y*iota.

    Degree-1 residue fields are F_q with y always 0; an inert Gaussian prime
    q = 3 (mod 4) gives F_q[iota]/(iota^2 + 1).
    """

    characteristic: int
    degree: int
    iota: int = 0  # image of i in F_q for degree-1 Gaussian primes

    @property
    def order(self) -> int:
        return self.characteristic**self.degree

    def reduce(self, z: GaussianInt | int) -> Element:
        w = GaussianInt.coerce(z)
        q = self.characteristic
        if self.degree == 2:
            return (w.re % q, w.im % q)
        return ((w.re + w.im * self.iota) % q, 0)

    def zero(self) -> Element:
        return (0, 0)

    def one(self) -> Element:
        return (1, 0)

    def is_zero(self, a: Element) -> bool:
        return a == (0, 0)

    def add(self, a: Element, b: Element) -> Element:
        q = self.characteristic
        return ((a[0] + b[0]) % q, (a[1] + b[1]) % q)

    def sub(self, a: Element, b: Element) -> Element:
        q = self.characteristic
        return ((a[0] - b[0]) % q, (a[1] - b[1]) % q)

    def mul(self, a: Element, b: Element) -> Element:
        q = self.characteristic
        if self.degree == 1:
            return ((a[0] * b[0]) % q, 0)
        return ((a[0] * b[0] - a[1] * b[1]) % q, (a[0] * b[1] + a[1] * b[0]) % q)

    def norm_down(self, a: Element) -> int:
        """Norm to the prime field."""
        q = self.characteristic
        if self.degree == 1:
            return a[0] % q
        return (a[0] * a[0] + a[1] * a[1]) % q

    def inv(self, a: Element) -> Element:
        q = self.characteristic
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in a residue field")
        n_inv = pow(self.norm_down(a), q - 2, q) if q > 2 else 1
        if self.degree == 1:
            return (n_inv, 0)
        return ((a[0] * n_inv) % q, (-a[1] * n_inv) % q)

    def is_square(self, a: Element) -> bool:
        """Euler criterion for nonzero a (through the norm for F_{q^2})."""
        q = self.characteristic
        if q == 2:
            return True
        return pow(self.norm_down(a), (q - 1) // 2, q) == 1

    def elements(self) -> Iterator[Element]:
        q = self.characteristic
        if self.degree == 1:
            for x in range(q):
                yield (x, 0)
        else:
            for x, y in product(range(q), repeat=2):
                yield (x, y)


@lru_cache(maxsize=4096)
def _residue_field(p: Prime) -> ResidueField:
    q = p.characteristic
    if p.field is BaseField.RATIONALS:
        return ResidueField(q, 1)
    if p.degree == 2:
        return ResidueField(q, 2)
    a, b = p.generator.re, p.generator.im
    # a + b*i = 0 in F_q, so i = -a/b
    return ResidueField(q, 1, (-a * pow(b, -1, q)) % q)


def euler_criterion(a: int, q: int) -> int:
    """0 if a is a nonzero square mod the odd prime q, 1 if a nonsquare."""
    return 0 if pow(a % q, (q - 1) // 2, q) == 1 else 1


# =========================================================================
# Local behaviour above 2
# =========================================================================

def _mod4_key(z: GaussianInt) -> tuple[int, int]:
    return (z.re % 4, z.im % 4)


def _mod_pi5_key(z: GaussianInt) -> tuple[int, int]:
    """Class of z modulo (1+i)^5 = (4+4i), an ideal of index 32 containing 8."""
    b = z.im % 4
    k = (z.im - b) // 4
    return ((z.re - 4 * k) % 8, b)


@lru_cache(maxsize=1)
def _unit_square_classes() -> tuple[frozenset[tuple[int, int]], frozenset[tuple[int, int]]]:
    """Squares of units of Z[i] modulo 4 and modulo (1+i)^5."""
    mod4 = set()
    mod_pi5 = set()
    for x, y in product(range(8), repeat=2):
        if (x + y) % 2 == 0:
            continue
        w = GaussianInt(x, y) * GaussianInt(x, y)
        mod4.add(_mod4_key(w))
        mod_pi5.add(_mod_pi5_key(w))
    return frozenset(mod4), frozenset(mod_pi5)


def is_unramified_at_two(k: BaseField, z: GaussianInt) -> bool:
    """K(sqrt(z))/K unramified above 2, for z prime to 2 and squarefree outside units."""
    if k is BaseField.RATIONALS:
        return z.re % 2 == 1 and z.re % 4 == 1
    if z.norm() % 2 == 0:
        return False
    return _mod4_key(z) in _unit_square_classes()[0]


def quadratic_symbol(k: BaseField, z: GaussianInt, p: Prime) -> int:
    """0 if z is a square in the completion at p (p splits in K(sqrt z)), 1 if p is inert."""
    if p.characteristic == 2:
        if not is_unramified_at_two(k, z):
            raise RamifiedPrime(f"{p} ramifies in K(sqrt({z}))")
        if k is BaseField.RATIONALS:
            return 0 if z.re % 8 == 1 else 1
        return 0 if _mod_pi5_key(z) in _unit_square_classes()[1] else 1
    residue = p.residue_field()
    r = residue.reduce(z)
    if residue.is_zero(r):
        raise RamifiedPrime(f"{p} divides {z}")
    return 0 if residue.is_square(r) else 1


# =========================================================================
# Discriminants and the group K(S,2)_u
# =========================================================================

@dataclass(frozen=True)
class Discriminant:
    """A square class in K(S,2)_u with its exponent vector over a fixed basis."""

    field: BaseField
    representative: GaussianInt
    exponents: BitVector
    label: str
    bad_set: frozenset[Prime] = dc_field(default=frozenset(), compare=False, hash=False)

    def is_trivial(self) -> bool:
        return self.exponents.is_zero()

    def __str__(self) -> str:
        return self.label


def _format_factor(z: GaussianInt) -> str:
    if z.im == 0 or z.re == 0:
        return str(z)
    return f"({z})"


@dataclass(frozen=True)
class SelmerBasis:
    """An ordered basis (delta_1..delta_r) of a subgroup of K(S,2).

    Coordinates are computed against the standard generators of K(S,2):
    (-1, primes of S) over Q and (primes of S, i) over Q(i).
    """

    field: BaseField
    bad_set: tuple[Prime, ...]
    generators: tuple[GaussianInt, ...]

    def __post_init__(self) -> None:
        rows = [self.standard_coordinates(g) for g in self.generators]
        if len(span_basis(rows)) != len(rows):
            raise NotInSelmerGroup(
                f"basis elements {[str(g) for g in self.generators]} are dependent modulo squares"
            )

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def standard_generators(self) -> tuple[GaussianInt, ...]:
        s = tuple(p.generator for p in self.bad_set)
        if self.field is BaseField.RATIONALS:
            return (GaussianInt(-1),) + s
        return s + (I,)

    def standard_coordinates(self, z: GaussianInt | int) -> BitVector:
        return _standard_coordinates(self.field, self.bad_set, GaussianInt.coerce(z))

    def _matrix(self) -> BitMatrix:
        return _generator_matrix(self)

    def coordinates(self, z: GaussianInt | int) -> BitVector:
        """Exponent vector of z over this basis."""
        std = self.standard_coordinates(z)
        coeffs = solve_rowspace(self._matrix(), std)
        if coeffs is None:
            raise NotInSelmerGroup(f"{z} is not in the span of this basis")
        return coeffs

    def element(self, exponents: BitVector) -> Discriminant:
        """The discriminant prod(delta_i^{x_i}), normalized."""
        std = self._matrix().combine(exponents)
        rep = ONE
        factors = []
        for bit, gen in zip(std, self.standard_generators):
            if bit:
                rep = rep * gen
                factors.append(gen)
        if self.field is BaseField.RATIONALS or not factors:
            label = str(rep)
        else:
            label = "*".join(_format_factor(f) for f in factors)
        return Discriminant(self.field, rep, exponents, label, frozenset(self.bad_set))

    def discriminant(self, z: GaussianInt | int) -> Discriminant:
        return self.element(self.coordinates(z))

    def trivial(self) -> Discriminant:
        return self.element(BitVector.zeros(self.rank))

    def basis_element(self, index: int) -> Discriminant:
        """delta_{index+1} (0-based index)."""
        return self.element(BitVector.unit(index, self.rank))

    def symbol_row(self, p: Prime) -> BitVector:
        """([delta_1|p], ..., [delta_r|p])."""
        return BitVector.from_iterable(
            splitting_symbol(self.basis_element(i), p) for i in range(self.rank)
        )

    def i_set(self, p: Prime) -> frozenset[int]:
        return i_set(p, self)

    def rebased(self, rows: Sequence[BitVector]) -> SelmerBasis:
        """Basis whose j-th element has exponent vector rows[j] over this one."""
        gens = tuple(self.element(row).representative for row in rows)
        return SelmerBasis(self.field, self.bad_set, gens)

    def with_leading(self, target: BitVector) -> tuple[SelmerBasis, BitMatrix]:
        """Rotate so the first basis element is the class with exponents `target`.

        The index j of the first nonzero coordinate of target is dropped; the
        others keep their order. Returns the new basis and the matrix whose
        rows are the new elements' exponent vectors over this basis.
        """
        if target.is_zero():
            raise ValueError("cannot lead with the trivial discriminant")
        j = target.support()[0]
        rows = [target] + [BitVector.unit(m, self.rank) for m in range(self.rank) if m != j]
        return self.rebased(rows), BitMatrix.from_rows(rows, self.rank)

    def describe(self) -> list[str]:
        return [self.basis_element(i).label for i in range(self.rank)]


@lru_cache(maxsize=65536)
def _standard_coordinates(k: BaseField, bad_set: tuple[Prime, ...], z: GaussianInt) -> BitVector:
    if z.is_zero():
        raise NotInSelmerGroup("0 is not in K*")
    index = {p.generator: i for i, p in enumerate(bad_set)}
    if k is BaseField.RATIONALS:
        if z.im != 0:
            raise NotInSelmerGroup(f"{z} is not rational")
        bits = [1 if z.re < 0 else 0] + [0] * len(bad_set)
        for p, e in factorint(abs(z.re)).items():
            g = GaussianInt(p)
            if g in index:
                bits[1 + index[g]] ^= e & 1
            elif e % 2:
                raise NotInSelmerGroup(f"{z} has odd valuation at {p}, outside S")
        return BitVector.from_iterable(bits)
    unit_power, factors = factor(z)
    bits = [0] * len(bad_set) + [unit_power & 1]
    for pi, e in factors.items():
        if pi in index:
            bits[index[pi]] ^= e & 1
        elif e % 2:
            raise NotInSelmerGroup(f"{z} has odd valuation at {pi}, outside S")
    return BitVector.from_iterable(bits) if bits else BitVector.zeros(0)


@lru_cache(maxsize=1024)
def _generator_matrix(basis: SelmerBasis) -> BitMatrix:
    n = len(basis.standard_generators)
    return BitMatrix.from_rows([basis.standard_coordinates(g) for g in basis.generators], n)


def _sorted_primes(primes: Iterable[Prime]) -> tuple[Prime, ...]:
    return tuple(sorted(set(primes), key=Prime.sort_key))


def selmer_group(k: BaseField, bad_set: Iterable[Prime]) -> SelmerBasis:
    """Basis of K(S,2): the unit class then S over Q, S then the unit i over Q(i)."""
    s = _sorted_primes(bad_set)
    gens = tuple(p.generator for p in s)
    if k is BaseField.RATIONALS:
        return SelmerBasis(k, s, (GaussianInt(-1),) + gens)
    return SelmerBasis(k, s, gens + (I,))


def unramified_subgroup(k: BaseField, bad_set: Iterable[Prime], full: SelmerBasis) -> SelmerBasis:
    """Basis of K(S,2)_u, the classes whose square roots are unramified outside S.

    Classes are already unramified at odd primes outside S, so only the
    primes above 2 can cut the group down.
    """
    s = set(bad_set)
    if all(p in s for p in primes_above_two(k)):
        return full
    kept = []
    for mask in range(1, 1 << full.rank):
        v = BitVector(mask, full.rank)
        if is_unramified_at_two(k, full.element(v).representative):
            kept.append(v)
    basis = span_basis(kept)
    logger.debug(f"K(S,2)_u has rank {len(basis)} inside K(S,2) of rank {full.rank}")
    return full.rebased(basis)


def splitting_symbol(delta: Discriminant, p: Prime) -> int:
    """[delta|p]: 0 if p splits in K(sqrt delta) or delta = 1, 1 if p is inert."""
    if delta.is_trivial():
        return 0
    if p in delta.bad_set:
        raise RamifiedPrime(f"{p} lies in S")
    return quadratic_symbol(delta.field, delta.representative, p)


def i_set(p: Prime, basis: SelmerBasis) -> frozenset[int]:
    """I(p) = {i : [delta_i|p] = 1}, 1-based."""
    row = basis.symbol_row(p)
    return frozenset(i + 1 for i in row.support())


def parse_bad_set(k: BaseField, text: str) -> tuple[Prime, ...]:
    """Comma-separated prime list; the empty string is the empty set."""
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    return _sorted_primes(parse_prime(k, t) for t in items)


def parse_discriminant(basis: SelmerBasis, text: str) -> Discriminant:
    """A field element literal such as '37', '-1' or '1+2*i', read as a square class."""
    try:
        z = GaussianInt.parse(text)
    except ValueError as e:
        raise ParseError(str(e)) from e
    return basis.discriminant(z)


__all__ = [
    "BaseField",
    "Prime",
    "ResidueField",
    "Discriminant",
    "SelmerBasis",
    "rational_prime",
    "prime_from_generator",
    "parse_prime",
    "parse_bad_set",
    "parse_discriminant",
    "primes_over",
    "primes_above_two",
    "canonical_primes",
    "euler_criterion",
    "is_unramified_at_two",
    "quadratic_symbol",
    "selmer_group",
    "unramified_subgroup",
    "splitting_symbol",
    "i_set",
]
