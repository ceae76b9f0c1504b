"""
Error taxonomy for the toolkit.

Library code raises these; only the CLI catches them and maps each family
onto its exit code (1 input, 2 search, 3 insufficient data, 4 inconsistent).
"""
from typing import Iterable, Optional


class BlackBoxError(Exception):
    """Base class for every toolkit error."""

    exit_code: int = 1


# === Input errors (exit 1) ===

class InputError(BlackBoxError, ValueError):
    """Malformed or contract-violating input."""


class ParseError(InputError):
    """A data file or literal could not be parsed."""


class DuplicatePrime(ParseError):
    """An oracle table lists the same prime twice."""


class DuplicateCubic(ParseError):
    """A cubic family lists the same polynomial twice."""


class ReducibleCubic(InputError):
    """A cubic admitted into a family has a root in the base field."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class BadPrime(InputError):
    """The prime divides the discriminant of the cubic."""


class BadModel(InputError):
    """A Weierstrass model with zero discriminant."""


class SIncomplete(InputError):
    """A prime of bad reduction lies outside the declared bad set."""

    def __init__(self, message: str, primes: Iterable[object] = ()):
        super().__init__(message)
        self.primes = list(primes)


class DimensionMismatch(InputError):
    """Vector and matrix lengths disagree."""


class Singular(InputError):
    """A matrix that had to be inverted is rank deficient."""


class NotInSelmerGroup(InputError):
    """A field element has odd valuation at a prime outside S."""


class RamifiedPrime(InputError):
    """The prime ramifies in K(sqrt(delta)), so the splitting symbol is undefined."""


class RamifiedAnswer(InputError):
    """A Frobenius quantity was requested from a 'ramified' oracle answer."""


# === Search errors (exit 2) ===

class SearchExhausted(BlackBoxError):
    """A prime search passed the configured norm cap."""

    exit_code = 2

    def __init__(self, message: str, norm_cap: Optional[int] = None):
        super().__init__(message)
        self.norm_cap = norm_cap


# === Insufficient data (exit 3) ===

class InsufficientData(BlackBoxError):
    """The oracle cannot supply what an operation needs."""

    exit_code = 3


class PrecisionInsufficient(InsufficientData):
    """An oracle answer carries fewer 2-adic bits than the operation requires."""

    def __init__(
        self,
        message: str,
        *,
        prime: Optional[str] = None,
        quantity: Optional[str] = None,
        needed_bits: Optional[int] = None,
        available_bits: Optional[int] = None,
        operation: Optional[str] = None,
        level: Optional[int] = None,
    ):
        super().__init__(message)
        self.prime = prime
        self.quantity = quantity
        self.needed_bits = needed_bits
        self.available_bits = available_bits
        self.operation = operation
        self.level = level


class ExactnessRequired(InsufficientData):
    """The triviality certificate needs exact Frobenius polynomials."""


class UnknownPrime(InsufficientData):
    """A table oracle was asked about primes it does not list."""

    def __init__(self, message: str, primes: Iterable[str] = ()):
        super().__init__(message)
        self.primes = list(primes)


# === Inconsistent data (exit 4) ===

class InconsistentData(BlackBoxError):
    """Oracle answers contradict the hypotheses of the decision procedure being applied."""

    exit_code = 4


class NoSignatureMatch(InconsistentData):
    """A nonzero trace-parity vector matches no cubic of the family."""


class NotTrivialModLevel(InconsistentData):
    """The representation is not trivial mod 2^k, so level k cannot be analyzed."""


class ValuationTooLow(InconsistentData):
    """ord_2 F_p(1) is below the level a test function was asked for."""
