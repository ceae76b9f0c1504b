"""
Tests for the elliptic-curve oracle: point counting and the bad-set contract.
"""
import json

import pytest
from sympy import primerange

from galois_blackbox.arithmetic.base_field import BaseField, parse_bad_set, parse_prime, rational_prime
from galois_blackbox.exceptions import BadModel, InputError, ParseError, RamifiedAnswer, SIncomplete
from galois_blackbox.oracle import EllipticCurveOracle
from galois_blackbox.oracle.elliptic_curve import (
    WeierstrassModel,
    count_points,
    count_points_brute_force,
    trace_of_frobenius,
)
from galois_blackbox.utils.logging import AuditTrail
from tests.fixtures.blackbox import CURVE_43808, Q_SPECIAL_PRIMES, TRACES_43808, curve_43808_oracle

CURVES = [
    (0, -1, 1, -10, -20),   # 11a1
    (0, 0, 1, -1, 0),       # 37a1
    (1, 0, 1, 4, -6),       # 14a1
    (1, -1, 1, -1, -14),
    CURVE_43808,
]


class TestPointCounting:
    """The completed-square count agrees with brute force."""

    @pytest.mark.parametrize("coefficients", CURVES)
    def test_matches_brute_force(self, coefficients):
        model = WeierstrassModel(*coefficients)
        bad = set(model.bad_primes())
        for p in primerange(3, 200):
            if p in bad:
                continue
            assert count_points(model, p) == count_points_brute_force(model, p), f"{model} at {p}"
        print(f"✅ {model}: point counts agree below 200")

    def test_known_traces_11a(self):
        model = WeierstrassModel(0, -1, 1, -10, -20)
        assert [trace_of_frobenius(model, p) for p in (2, 3, 7, 13)] == [-2, -1, -2, 4]

    def test_known_traces_43808(self):
        model = WeierstrassModel(*CURVE_43808)
        assert tuple(trace_of_frobenius(model, p) for p in Q_SPECIAL_PRIMES) == TRACES_43808

    def test_model_parsing(self):
        assert WeierstrassModel.parse("0 0 0 -1369 0") == WeierstrassModel(*CURVE_43808)
        assert WeierstrassModel.parse("0,0,0,-1369,0") == WeierstrassModel(*CURVE_43808)
        with pytest.raises(ParseError):
            WeierstrassModel.parse("0 0 -1369 0")

    def test_bad_primes(self):
        assert WeierstrassModel(*CURVE_43808).bad_primes() == [2, 37]


class TestEllipticCurveOracle:

    def setup_method(self):
        self.oracle = curve_43808_oracle()

    def test_answers_are_exact(self):
        answer = self.oracle.query(rational_prime(53))
        trace, det = answer.coefficients()
        assert trace.value == 14
        assert det.value == 53
        assert answer.is_exact

    def test_bad_prime_is_ramified(self):
        answer = self.oracle.query(rational_prime(37))
        assert answer.ramified
        with pytest.raises(RamifiedAnswer):
            answer.coefficients()
        assert self.oracle.query_count == 0

    def test_memoized_queries_count_once(self):
        for _ in range(3):
            self.oracle.query(rational_prime(17))
        assert self.oracle.query_count == 1
        assert [q.prime for q in self.oracle.query_log] == ["17"]

    def test_memoize_off(self):
        oracle = curve_43808_oracle(memoize=False)
        oracle.query(rational_prime(17))
        oracle.query(rational_prime(17))
        assert oracle.query_count == 2

    def test_reset_accounting(self):
        self.oracle.query(rational_prime(3))
        self.oracle.reset_accounting()
        assert self.oracle.query_count == 0
        assert self.oracle.query_log == []

    def test_wrong_field_prime(self):
        with pytest.raises(InputError):
            self.oracle.query(parse_prime(BaseField.GAUSSIAN_RATIONALS, "2+i"))

    def test_singular_model(self):
        with pytest.raises(BadModel):
            EllipticCurveOracle((0, 0, 0, 0, 0), [rational_prime(2)])

    def test_bad_set_must_cover_bad_reduction(self):
        with pytest.raises(SIncomplete) as exc:
            EllipticCurveOracle((0, -1, 1, -10, -20), [rational_prime(2)])
        assert exc.value.primes == [11]
        print(f"✅ Missing bad primes reported: {exc.value.primes}")

    def test_gaussian_bad_set_rejected(self):
        with pytest.raises(InputError):
            EllipticCurveOracle(CURVE_43808, parse_bad_set(BaseField.GAUSSIAN_RATIONALS, "1+i"))

    def test_audit_trail(self, tmp_path):
        audit = AuditTrail(tmp_path, run_id="oracle-test")
        oracle = curve_43808_oracle(audit=audit)
        oracle.query(rational_prime(5))
        audit.close()
        events = [json.loads(line) for line in (tmp_path / "audit.jsonl").read_text().splitlines()]
        assert events[-1]["event_type"] == "ORACLE_QUERY"
        assert events[-1]["prime"] == "5"
        assert events[-1]["trace_precision"] == "exact"
        assert events[-1]["run_id"] == "oracle-test"
