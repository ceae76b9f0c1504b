from .types import T0Set, T1Set, T2Set, quadratic_positions, quadratic_row
from .search import find_T0, find_T1, find_T2, find_T2_special, reindex_special, special_set_for, unramified_basis
from .verify import SetKind, SetVerification, verify_set
from .document import PrimeSets, from_document, t1_from_primes, to_document

__all__ = [
    "T0Set", "T1Set", "T2Set", "quadratic_positions", "quadratic_row",
    "find_T0", "find_T1", "find_T2", "find_T2_special", "reindex_special", "special_set_for", "unramified_basis",
    "SetKind", "SetVerification", "verify_set",
    "PrimeSets", "from_document", "t1_from_primes", "to_document",
]
