from .prime_sets import IndexedPrime, PrimeSetDocument
from .report import (
    DiscriminantModel,
    FailureReport,
    IsogenyReport,
    QueryModel,
    ResidualModel,
    StructureModel,
    TreeEdge,
    TreeModel,
    TreeVertex,
)

__all__ = [
    "IndexedPrime", "PrimeSetDocument",
    "DiscriminantModel", "FailureReport", "IsogenyReport", "QueryModel", "ResidualModel",
    "StructureModel", "TreeEdge", "TreeModel", "TreeVertex",
]
