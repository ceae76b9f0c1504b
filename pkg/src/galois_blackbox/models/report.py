from pydantic import BaseModel, Field, model_validator
from typing import Dict, List, Literal, Optional

from .. import __version__


class DiscriminantModel(BaseModel):
    """A square class: representative, exponents over the report basis, readable label."""

    representative: str
    exponents: str = Field(..., pattern=r"^[01]*$")
    label: str


class ResidualModel(BaseModel):
    reducible: bool
    trace_parities: str = Field(..., pattern=r"^[01]*$")
    cubic: Optional[str] = None
    cubic_label: Optional[str] = None
    group: Optional[Literal["C3", "S3"]] = None


class StructureModel(BaseModel):
    """rho mod 2^{k+1} at the first nontrivial level k."""

    level: int = Field(..., ge=1)
    det: DiscriminantModel
    leaves: List[DiscriminantModel] = Field(..., min_length=3, max_length=3, description="{delta_b, delta_c, delta_abcd}")
    diagonal: List[DiscriminantModel] = Field(..., min_length=2, max_length=2, description="{delta_a, delta_d}")
    image_rank: int
    image_order: int
    branches: List[str] = Field(default_factory=list)
    f_bits_used: int = Field(..., description="Bits of F_p(1) the level consumed")


class TreeVertex(BaseModel):
    id: str
    residual: str = Field(..., description="'trivial' or the discriminant of the residual image")


class TreeEdge(BaseModel):
    source: str
    target: str
    label: str


class TreeModel(BaseModel):
    """The stable tree as far as the test functions determine it."""

    enumerated: bool
    leaves: List[str] = Field(default_factory=list)
    vertices: List[TreeVertex] = Field(default_factory=list)
    edges: List[TreeEdge] = Field(default_factory=list)


class QueryModel(BaseModel):
    prime: str
    trace_precision: str
    det_precision: str


class IsogenyReport(BaseModel):
    """Everything the black box revealed about one representation."""

    version: str = __version__
    field: Literal["Q", "Qi"]
    bad_set: List[str]
    basis: List[str]
    oracle: str
    inputs: Dict[str, str] = Field(default_factory=dict, description="Input file name -> SHA256")

    residual: ResidualModel
    width_class: Literal["Zero", "One", "AtLeastTwo"]
    small_pair: Optional[List[DiscriminantModel]] = None
    trivial_level: Optional[int] = None
    exceeds_k_max: bool = False
    k_max: Optional[int] = None
    structure: Optional[StructureModel] = None
    trivial_semisimplification: Optional[bool] = None
    tree: Optional[TreeModel] = None

    query_count: int = 0
    query_log: List[QueryModel] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_width(self) -> "IsogenyReport":
        if (self.width_class == "Zero") == self.residual.reducible:
            raise ValueError("width Zero exactly when the residual image is irreducible")
        if (self.small_pair is not None) != (self.width_class == "One"):
            raise ValueError("small_pair is present exactly for width One")
        return self


class FailureReport(BaseModel):
    """Written in place of a report when the black box knows too little."""

    version: str = __version__
    field: Literal["Q", "Qi"]
    bad_set: List[str]
    oracle: str
    inputs: Dict[str, str] = Field(default_factory=dict, description="Input file name -> SHA256")

    stage: Optional[str] = Field(None, description="Analysis stage that stopped")
    error: str
    message: str
    exit_code: int

    prime: Optional[str] = None
    quantity: Optional[str] = Field(None, description="trace, det or F_p(1)")
    needed_bits: Optional[int] = None
    available_bits: Optional[int] = None
    operation: Optional[str] = None
    level: Optional[int] = None
    missing_primes: List[str] = Field(default_factory=list)

    query_count: int = 0
    query_log: List[QueryModel] = Field(default_factory=list)
