from .answers import INFINITE_VALUATION, FrobeniusAnswer, QueryRecord, TwoAdicInt, f_at_one
from .base import BlackBoxOracle
from .table import TableOracle
from .elliptic_curve import EllipticCurveOracle, WeierstrassModel
from .synthetic import SyntheticDiagonalOracle
from .truncated import TruncatedOracle

__all__ = [
    "INFINITE_VALUATION", "FrobeniusAnswer", "QueryRecord", "TwoAdicInt", "f_at_one",
    "BlackBoxOracle",
    "TableOracle",
    "EllipticCurveOracle", "WeierstrassModel",
    "SyntheticDiagonalOracle",
    "TruncatedOracle",
]
