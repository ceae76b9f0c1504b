"""
Monic cubics x^3 + c2*x^2 + c1*x + c0 over the integers of the base field,
and the family of candidate residual splitting fields built from them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from sympy import divisors as rational_divisors
from sympy import factorint
from sympy.ntheory.primetest import is_square as is_rational_square

from ..exceptions import BadPrime, DuplicateCubic, ParseError, ReducibleCubic
from .base_field import BaseField, Element, Prime, ResidueField, prime_from_generator, rational_prime
from .gaussian import GaussianInt, divisors as gaussian_divisors, factor, is_square as is_gaussian_square

logger = logging.getLogger(__name__)


class GaloisType(str, Enum):
    C3 = "C3"
    S3 = "S3"


@dataclass(frozen=True)
class CubicPoly:
    """x^3 + c2*x^2 + c1*x + c0."""

    field: BaseField
    c2: GaussianInt
    c1: GaussianInt
    c0: GaussianInt

    @classmethod
    def from_coefficients(cls, k: BaseField, c2: int | GaussianInt, c1: int | GaussianInt, c0: int | GaussianInt) -> CubicPoly:
        coeffs = [GaussianInt.coerce(c) for c in (c2, c1, c0)]
        if k is BaseField.RATIONALS and any(c.im for c in coeffs):
            raise ParseError("Gaussian coefficient in a cubic over Q")
        return cls(k, *coeffs)

    @classmethod
    def parse(cls, k: BaseField, text: str) -> CubicPoly:
        """'c2 c1 c0' with each coefficient in the field's integer syntax."""
        tokens = text.split()
        if len(tokens) != 3:
            raise ParseError(f"expected three coefficients 'c2 c1 c0', got {text!r}")
        try:
            coeffs = [GaussianInt.parse(t) for t in tokens]
        except ValueError as e:
            raise ParseError(str(e)) from e
        return cls.from_coefficients(k, *coeffs)

    def coefficients(self) -> tuple[GaussianInt, GaussianInt, GaussianInt]:
        return (self.c2, self.c1, self.c0)

    def __call__(self, x: GaussianInt | int) -> GaussianInt:
        z = GaussianInt.coerce(x)
        return ((z + self.c2) * z + self.c1) * z + self.c0

    def __str__(self) -> str:
        out = "x^3"
        for coeff, mono in ((self.c2, "x^2"), (self.c1, "x"), (self.c0, "")):
            if coeff.is_zero():
                continue
            if coeff.im == 0:
                sign = "-" if coeff.re < 0 else "+"
                mag = abs(coeff.re)
                body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
                out += f" {sign} {body}"
            else:
                out += f" + ({coeff})*{mono}" if mono else f" + ({coeff})"
        return out


def discriminant(f: CubicPoly) -> GaussianInt:
    """18*c2*c1*c0 - 4*c2^3*c0 + c2^2*c1^2 - 4*c1^3 - 27*c0^2."""
    c2, c1, c0 = f.coefficients()
    return 18 * c2 * c1 * c0 - 4 * c2**3 * c0 + c2**2 * c1**2 - 4 * c1**3 - 27 * c0**2


def is_irreducible(f: CubicPoly) -> bool:
    """A monic integral cubic is reducible over K iff it has a root dividing c0."""
    if f.c0.is_zero():
        return False
    if f.field is BaseField.RATIONALS:
        candidates = (s * d for d in rational_divisors(abs(f.c0.re)) for s in (1, -1))
        return all(not f(d).is_zero() for d in candidates)
    return all(not f(d).is_zero() for d in gaussian_divisors(f.c0))


def is_field_square(k: BaseField, z: GaussianInt) -> bool:
    if z.is_zero():
        return False
    if k is BaseField.RATIONALS:
        return z.re > 0 and bool(is_rational_square(z.re))
    return is_gaussian_square(z)


def galois_type(f: CubicPoly) -> GaloisType:
    """C3 iff disc(f) is a square in K*."""
    if not is_irreducible(f):
        raise ReducibleCubic(f"{f} is reducible over {f.field.value}")
    return GaloisType.C3 if is_field_square(f.field, discriminant(f)) else GaloisType.S3


# --- polynomials over a residue field, lowest degree first ---

Poly = list[Element]


def _trim(p: Poly, F: ResidueField) -> Poly:
    while p and F.is_zero(p[-1]):
        p = p[:-1]
    return p


def _mulmod(a: Poly, b: Poly, low: Sequence[Element], F: ResidueField) -> Poly:
    """a*b modulo the monic cubic x^3 + low[2]x^2 + low[1]x + low[0]."""
    prod = [F.zero() for _ in range(5)]
    for i, ai in enumerate(a):
        if F.is_zero(ai):
            continue
        for j, bj in enumerate(b):
            prod[i + j] = F.add(prod[i + j], F.mul(ai, bj))
    for d in (4, 3):
        c = prod[d]
        if F.is_zero(c):
            continue
        for shift, r in enumerate(low):
            prod[d - 3 + shift] = F.sub(prod[d - 3 + shift], F.mul(c, r))
        prod[d] = F.zero()
    return prod[:3]


def _polymod(a: Poly, b: Poly, F: ResidueField) -> Poly:
    a = _trim(list(a), F)
    lead_inv = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], lead_inv)
        offset = len(a) - len(b)
        for i, bi in enumerate(b):
            a[offset + i] = F.sub(a[offset + i], F.mul(c, bi))
        a = _trim(a, F)
    return a


def has_root_mod(f: CubicPoly, F: ResidueField) -> bool:
    """Whether f has a root in F, via gcd(f, x^Q - x)."""
    low = [F.reduce(c) for c in (f.c0, f.c1, f.c2)]
    result: Poly = [F.one(), F.zero(), F.zero()]
    base: Poly = [F.zero(), F.one(), F.zero()]
    e = F.order
    while e:
        if e & 1:
            result = _mulmod(result, base, low, F)
        base = _mulmod(base, base, low, F)
        e >>= 1
    g = _trim([result[0], F.sub(result[1], F.one()), result[2]], F)
    if not g:
        return True
    a: Poly = low + [F.one()]
    b = g
    while b:
        a, b = b, _polymod(a, b, F)
    return len(a) > 1


def lambda_bit(f: CubicPoly, p: Prime) -> int:
    """1 if f is irreducible modulo p (equivalently rootless), 0 otherwise."""
    F = p.residue_field()
    if F.is_zero(F.reduce(discriminant(f))):
        raise BadPrime(f"{p} divides disc({f})")
    return 0 if has_root_mod(f, F) else 1


# =========================================================================
# Families
# =========================================================================

@dataclass(frozen=True)
class CubicFamily:
    """Validated candidate cubics with the enlarged bad set S(F)."""

    field: BaseField
    cubics: tuple[CubicPoly, ...]
    bad_set: tuple[Prime, ...]
    galois_types: tuple[GaloisType, ...]
    labels: tuple[Optional[str], ...] = ()

    def __len__(self) -> int:
        return len(self.cubics)

    def label(self, index: int) -> str:
        if index < len(self.labels) and self.labels[index]:
            return str(self.labels[index])
        return str(self.cubics[index])


def discriminant_primes(k: BaseField, d: GaussianInt) -> list[Prime]:
    if d.is_zero():
        return []
    if k is BaseField.RATIONALS:
        return [rational_prime(p) for p in sorted(factorint(abs(d.re)))]
    _, factors = factor(d)
    return [prime_from_generator(k, pi) for pi in factors]


def build_family(
    k: BaseField,
    bad_set: Iterable[Prime],
    cubics: Sequence[CubicPoly],
    labels: Optional[Sequence[Optional[str]]] = None,
) -> CubicFamily:
    """Validate cubics and compute galois types and S(F)."""
    seen: set[CubicPoly] = set()
    s = set(bad_set)
    enlarged = set(s)
    types = []
    for index, f in enumerate(cubics):
        if f in seen:
            raise DuplicateCubic(f"cubic #{index} ({f}) is listed twice")
        seen.add(f)
        if not is_irreducible(f):
            raise ReducibleCubic(f"cubic #{index} ({f}) has a root in {k.value}", index=index)
        types.append(galois_type(f))
        for p in discriminant_primes(k, discriminant(f)):
            if p not in enlarged:
                logger.warning(f"disc({f}) is divisible by {p}, outside S; adding it to S(F)")
                enlarged.add(p)
    return CubicFamily(
        field=k,
        cubics=tuple(cubics),
        bad_set=tuple(sorted(enlarged, key=Prime.sort_key)),
        galois_types=tuple(types),
        labels=tuple(labels) if labels is not None else tuple(None for _ in cubics),
    )


def parse_family_lines(k: BaseField, lines: Iterable[str]) -> tuple[list[CubicPoly], list[Optional[str]]]:
    """Cubic lines 'c2 c1 c0'; a trailing '# label' is kept for traceability."""
    cubics: list[CubicPoly] = []
    labels: list[Optional[str]] = []
    for lineno, raw in enumerate(lines, start=1):
        body, _, comment = raw.partition("#")
        if not body.strip():
            continue
        try:
            cubics.append(CubicPoly.parse(k, body))
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from e
        labels.append(comment.strip() or None)
    return cubics, labels


def load_family(k: BaseField, bad_set: Iterable[Prime], source: Union[str, Path]) -> CubicFamily:
    """Read and validate a cubic family file."""
    path = Path(source)
    cubics, labels = parse_family_lines(k, path.read_text(encoding="utf-8").splitlines())
    family = build_family(k, bad_set, cubics, labels)
    logger.info(f"Loaded {len(family)} cubics from {path.name}; S(F) has {len(family.bad_set)} primes")
    return family


__all__ = [
    "GaloisType",
    "CubicPoly",
    "CubicFamily",
    "discriminant",
    "is_irreducible",
    "is_field_square",
    "galois_type",
    "has_root_mod",
    "lambda_bit",
    "discriminant_primes",
    "build_family",
    "parse_family_lines",
    "load_family",
]
