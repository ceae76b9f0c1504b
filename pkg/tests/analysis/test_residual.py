"""
Tests for the residual image decision on T0.
"""
import pytest

from galois_blackbox.analysis import residual_image
from galois_blackbox.arithmetic.base_field import BaseField
from galois_blackbox.arithmetic.cubics import GaloisType, build_family
from galois_blackbox.exceptions import NoSignatureMatch, UnknownPrime
from galois_blackbox.oracle import TableOracle
from galois_blackbox.primesets import T0Set, find_T0
from tests.fixtures.blackbox import (
    curve_43808_oracle,
    ex48_family,
    fixture_path,
    q_bad_set,
    rational_table,
)


class TestResidualImage:

    def setup_method(self):
        self.family = ex48_family()
        self.t0 = find_T0(BaseField.RATIONALS, q_bad_set(), self.family)

    def test_reducible_curve(self):
        verdict = residual_image(curve_43808_oracle(), self.family, self.t0)
        assert verdict.reducible
        assert str(verdict.trace_parities) == "00"
        assert verdict.cubic is None

    def test_reducible_table(self):
        oracle = TableOracle.from_file(BaseField.RATIONALS, q_bad_set(), fixture_path("350464h.tsv"))
        assert residual_image(oracle, self.family, self.t0).reducible

    @pytest.mark.parametrize(
        "traces, cubic, group",
        [
            ({3: 1, 5: 1}, "x^3 - x^2 - 12*x - 11", GaloisType.C3),
            ({3: 1, 5: 0}, "x^3 - x^2 - 3*x + 1", GaloisType.S3),
            ({3: 2, 5: 1}, "x^3 - x^2 - 12*x + 26", GaloisType.S3),
        ],
    )
    def test_irreducible_matches_signature(self, traces, cubic, group):
        verdict = residual_image(rational_table(traces), self.family, self.t0)
        assert not verdict.reducible
        assert str(verdict.cubic) == cubic
        assert verdict.group is group
        print(f"✅ parities {verdict.trace_parities} -> {verdict.cubic_label}")

    def test_signatures_recomputed_when_absent(self):
        bare = T0Set(self.t0.primes)
        verdict = residual_image(rational_table({3: 1, 5: 0}), self.family, bare)
        assert verdict.group is GaloisType.S3

    def test_odd_parity_without_family(self):
        with pytest.raises(NoSignatureMatch):
            residual_image(rational_table({3: 1, 5: 1}), None, self.t0)

    def test_no_matching_cubic(self):
        only_f = build_family(BaseField.RATIONALS, q_bad_set(), [self.family.cubics[0]])
        with pytest.raises(NoSignatureMatch) as exc:
            residual_image(rational_table({3: 1, 5: 0}), only_f, T0Set(self.t0.primes))
        assert exc.value.exit_code == 4

    def test_missing_t0_prime(self):
        with pytest.raises(UnknownPrime) as exc:
            residual_image(rational_table({3: 1}), self.family, self.t0)
        assert exc.value.primes == ["5"]

    def test_queries_only_t0(self):
        oracle = curve_43808_oracle()
        residual_image(oracle, self.family, self.t0)
        assert [q.prime for q in oracle.query_log] == ["3", "5"]
