import logging
from typing import Optional

from ..arithmetic.cubics import CubicFamily, lambda_bit
from ..arithmetic.f2_linalg import BitVector
from ..exceptions import NoSignatureMatch
from ..oracle.base import BlackBoxOracle
from ..primesets.types import T0Set
from .queries import require_answers, trace_of
from .types import ResidualVerdict

logger = logging.getLogger(__name__)


def residual_image(oracle: BlackBoxOracle, family: Optional[CubicFamily], t0: T0Set) -> ResidualVerdict:
    """
    Decide the residual representation from trace parities on T0.

    All parities even means reducible; otherwise the parity vector equals the
    lambda signature of exactly one cubic, whose splitting field is the
    2-division field. Without a family, any odd parity is a mismatch.
    """
    require_answers(oracle, t0.primes)
    parities = [trace_of(oracle, p, 1, "residual_image").residue(1) for p in t0.primes]
    vector = BitVector.from_iterable(parities) if parities else BitVector.zeros(0)
    if vector.is_zero():
        logger.info(f"Residual image: reducible (traces even on {len(t0.primes)} primes)")
        return ResidualVerdict(reducible=True, trace_parities=vector)

    if family is None or not len(family):
        raise NoSignatureMatch(f"trace parities {vector} are nonzero but no cubic family was given")
    signatures = t0.signatures or tuple(
        BitVector.from_iterable(lambda_bit(f, p) for p in t0.primes) for f in family.cubics
    )
    for index, signature in enumerate(signatures):
        if signature == vector:
            cubic = family.cubics[index]
            logger.info(f"Residual image: irreducible, splitting field of {cubic} ({family.galois_types[index].value})")
            return ResidualVerdict(
                reducible=False,
                trace_parities=vector,
                cubic=cubic,
                group=family.galois_types[index],
                cubic_label=family.label(index),
            )
    raise NoSignatureMatch(f"trace parities {vector} match no cubic of the family")
