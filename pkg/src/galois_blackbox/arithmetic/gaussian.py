"""
Gaussian integers Z[i]: exact arithmetic, canonical associates and factorization.

Z[i] is a Euclidean domain with units {1, i, -1, -i}. Every nonzero element
has exactly one associate with real part > 0 and imaginary part >= 0; that
associate is the canonical generator of its ideal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Union

from sympy import factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

GaussLike = Union["GaussianInt", int]

_PURE_IMAGINARY = re.compile(r"^(?P<sign>[+-]?)(?P<im>\d*)i$")
_FULL = re.compile(r"^(?P<re>[+-]?\d+)(?:(?P<sign>[+-])(?P<im>\d*)i)?$")


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0 (ties rounded up)."""
    return (2 * a + b) // (2 * b)


@dataclass(frozen=True)
class GaussianInt:
    """An element re + im*i of Z[i]. Rational integers have im == 0."""

    re: int
    im: int = 0

    @classmethod
    def coerce(cls, value: GaussLike) -> GaussianInt:
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 0)
        raise TypeError(f"cannot treat {value!r} as a Gaussian integer")

    @classmethod
    def parse(cls, text: str) -> GaussianInt:
        """Parse '37', '-1', 'i', '-i', '2*i', '1+i', '11+6*i', '-3-2*i'."""
        s = text.replace(" ", "").replace("*", "")
        m = _PURE_IMAGINARY.match(s)
        if m:
            im = int(m.group("im") or "1")
            return cls(0, -im if m.group("sign") == "-" else im)
        m = _FULL.match(s)
        if m:
            real = int(m.group("re"))
            if m.group("sign") is None:
                return cls(real, 0)
            im = int(m.group("im") or "1")
            return cls(real, -im if m.group("sign") == "-" else im)
        raise ValueError(f"not a Gaussian integer: {text!r}")

    # --- ring operations ---

    def __add__(self, other: GaussLike) -> GaussianInt:
        o = GaussianInt.coerce(other)
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: GaussLike) -> GaussianInt:
        o = GaussianInt.coerce(other)
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: GaussLike) -> GaussianInt:
        return GaussianInt.coerce(other) - self

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussLike) -> GaussianInt:
        o = GaussianInt.coerce(other)
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> GaussianInt:
        if exponent < 0:
            raise ValueError("negative powers are not integral")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_rational(self) -> bool:
        return self.im == 0

    def divides(self, other: GaussLike) -> bool:
        o = GaussianInt.coerce(other)
        n = self.norm()
        if n == 0:
            return o.is_zero()
        t = o * self.conjugate()
        return t.re % n == 0 and t.im % n == 0

    def exact_div(self, divisor: GaussLike) -> GaussianInt:
        d = GaussianInt.coerce(divisor)
        n = d.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[i]")
        t = self * d.conjugate()
        if t.re % n or t.im % n:
            raise ValueError(f"{d} does not divide {self}")
        return GaussianInt(t.re // n, t.im // n)

    def __floordiv__(self, divisor: GaussLike) -> GaussianInt:
        """Euclidean quotient (nearest lattice point)."""
        d = GaussianInt.coerce(divisor)
        n = d.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[i]")
        t = self * d.conjugate()
        return GaussianInt(_round_div(t.re, n), _round_div(t.im, n))

    def __mod__(self, divisor: GaussLike) -> GaussianInt:
        return self - (self // divisor) * GaussianInt.coerce(divisor)

    def associates(self) -> list[GaussianInt]:
        return [self * u for u in UNITS]

    def canonical(self) -> GaussianInt:
        """The associate with re > 0 and im >= 0."""
        if self.is_zero():
            return self
        for a in self.associates():
            if a.re > 0 and a.im >= 0:
                return a
        raise AssertionError("unreachable: some associate lies in the first quadrant")

    def unit_power(self) -> int:
        """k with self == i^k, for a unit."""
        for k, u in enumerate(UNITS):
            if self == u:
                return k
        raise ValueError(f"{self} is not a unit")

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}*i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"GaussianInt({self})"


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
UNITS = (ONE, I, GaussianInt(-1, 0), GaussianInt(0, -1))
ONE_PLUS_I = GaussianInt(1, 1)


def gcd(a: GaussLike, b: GaussLike) -> GaussianInt:
    x, y = GaussianInt.coerce(a), GaussianInt.coerce(b)
    while not y.is_zero():
        x, y = y, x % y
    return x.canonical()


@lru_cache(maxsize=None)
def primes_above(p: int) -> tuple[GaussianInt, ...]:
    """Canonical Gaussian primes over a rational prime, by ascending imaginary part."""
    if p == 2:
        return (ONE_PLUS_I,)
    if p % 4 == 3:
        return (GaussianInt(p, 0),)
    root = sqrt_mod(p - 1, p)
    if root is None:
        raise ValueError(f"{p} is not a rational prime")
    pi = gcd(GaussianInt(p, 0), GaussianInt(int(root), 1))
    if pi.norm() != p:
        raise ValueError(f"{p} is not a rational prime")
    return tuple(sorted({pi, pi.conjugate().canonical()}, key=lambda g: g.im))


def factor(z: GaussLike) -> tuple[int, dict[GaussianInt, int]]:
    """z = i^k * prod(pi^e) over canonical primes; returns (k, {pi: e})."""
    rest = GaussianInt.coerce(z)
    if rest.is_zero():
        raise ValueError("cannot factor zero")
    factors: dict[GaussianInt, int] = {}
    for p in sorted(factorint(rest.norm())):
        for pi in primes_above(p):
            count = 0
            while pi.divides(rest):
                rest = rest.exact_div(pi)
                count += 1
            if count:
                factors[pi] = count
    return rest.unit_power(), factors


def is_square(z: GaussLike) -> bool:
    """Squares of Q(i)*: even exponents everywhere and a unit in {1, -1}."""
    w = GaussianInt.coerce(z)
    if w.is_zero():
        return False
    k, factors = factor(w)
    return k % 2 == 0 and all(e % 2 == 0 for e in factors.values())


def divisors(z: GaussLike) -> Iterator[GaussianInt]:
    """All divisors of a nonzero z, units included."""
    _, factors = factor(z)
    items = list(factors.items())
    for exps in product(*(range(e + 1) for _, e in items)):
        d = ONE
        for (pi, _), e in zip(items, exps):
            d = d * pi**e
        for u in UNITS:
            yield d * u


__all__ = [
    "GaussianInt",
    "ZERO",
    "ONE",
    "I",
    "UNITS",
    "ONE_PLUS_I",
    "gcd",
    "primes_above",
    "factor",
    "is_square",
    "divisors",
]
