from pydantic import BaseModel, Field
from typing import Dict, List, Literal, Optional

from .. import __version__


class IndexedPrime(BaseModel):
    """A prime of a special T2 set with its I(p), 1-based."""

    prime: str
    indices: List[int] = Field(..., min_length=1, max_length=2)


class PrimeSetDocument(BaseModel):
    """
    T0/T1/T2 for one (K, S). Computed once and reused; sets published
    elsewhere can be written into this document by hand.
    """

    version: str = __version__
    field: Literal["Q", "Qi"]
    bad_set: List[str]
    basis: List[str] = Field(..., description="Representatives delta_1..delta_r of K(S,2)_u")
    basis_labels: List[str] = Field(default_factory=list)

    t0: Optional[List[str]] = Field(default=None, description="Distinguishing set, if a family was given")
    t0_signatures: List[str] = Field(default_factory=list, description="lambda-vector per cubic, family order")
    cubics: Optional[str] = Field(default=None, description="Cubic family file the T0 was built for")

    t1: List[str] = Field(default_factory=list)
    t1_dual: List[str] = Field(default_factory=list)
    t2: List[str] = Field(default_factory=list)
    t2_special: List[IndexedPrime] = Field(default_factory=list)

    inputs: Dict[str, str] = Field(default_factory=dict)
