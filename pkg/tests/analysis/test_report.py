"""
Tests for the end-to-end isogeny report and the stable-tree rendering.
"""
import pytest
from pydantic import ValidationError

from galois_blackbox.analysis import failure_report, isogeny_report
from galois_blackbox.arithmetic.base_field import BaseField
from galois_blackbox.exceptions import PrecisionInsufficient, UnknownPrime
from galois_blackbox.models.report import IsogenyReport
from galois_blackbox.oracle import TableOracle
from galois_blackbox.oracle.truncated import TruncatedOracle
from galois_blackbox.primesets import T0Set, find_T0
from tests.fixtures.blackbox import (
    curve_43808_oracle,
    ex48_family,
    fixture_path,
    load_sets,
    q_bad_set,
    q_special_t2,
    rational_table,
    table_oracle,
)


class TestIsogenyReport:
    """Full pipeline on the rational examples for S = {2, 37}."""

    def setup_method(self):
        self.family = ex48_family()
        self.t0 = find_T0(BaseField.RATIONALS, q_bad_set(), self.family)
        self.t2 = q_special_t2()

    def test_large_curve(self):
        report = isogeny_report(curve_43808_oracle(), self.family, self.t0, self.t2, k_max=10)
        assert report.residual.reducible
        assert report.width_class == "AtLeastTwo"
        assert report.small_pair is None
        assert report.trivial_level == 1
        assert not report.exceeds_k_max
        assert report.structure.det.label == "-1"
        assert [d.exponents for d in report.structure.leaves] == ["010", "010", "100"]
        assert [d.label for d in report.structure.diagonal] == ["37", "-37"]
        assert report.trivial_semisimplification is False
        assert report.oracle == "curve:[0,0,0,-1369,0]"
        print(f"✅ 43808 report: width {report.width_class}, level {report.trivial_level}")

    def test_large_curve_tree(self):
        report = isogeny_report(curve_43808_oracle(), self.family, self.t0, self.t2)
        tree = report.tree
        assert tree.enumerated
        assert len(tree.vertices) == 4
        assert tree.vertices[0].residual == "trivial"
        assert [e.label for e in tree.edges] == ["2", "2", "-1"]

    def test_small_class(self):
        oracle = TableOracle.from_file(BaseField.RATIONALS, q_bad_set(), fixture_path("350464h.tsv"))
        report = isogeny_report(oracle, self.family, self.t0, self.t2)
        assert report.width_class == "One"
        assert [d.label for d in report.small_pair] == ["2", "2"]
        assert report.trivial_level is None
        assert report.structure is None
        assert report.tree.edges[0].label == "2-isogeny"
        assert report.trivial_semisimplification is False

    def test_irreducible(self):
        report = isogeny_report(rational_table({3: 1, 5: 1}), self.family, self.t0, self.t2)
        assert report.width_class == "Zero"
        assert report.residual.group == "C3"
        assert report.residual.cubic == "x^3 - x^2 - 12*x - 11"
        assert report.trivial_semisimplification is None
        assert report.tree.vertices[0].residual.startswith("f: C3")
        # T2 is never consulted for an irreducible residual image
        assert report.query_count == 2

    def test_query_log(self):
        oracle = curve_43808_oracle()
        report = isogeny_report(oracle, self.family, self.t0, self.t2)
        assert report.query_count == oracle.query_count
        assert report.query_log[0].prime == "3"
        assert {q.trace_precision for q in report.query_log} == {"exact"}

    def test_truncated_answers_skip_certificate(self):
        oracle = TruncatedOracle(curve_43808_oracle(), 4)
        report = isogeny_report(oracle, self.family, self.t0, self.t2)
        assert report.trivial_level == 1
        assert report.trivial_semisimplification is None
        assert report.query_log[0].trace_precision == "mod 2^4"

    def test_error_names_stage(self):
        oracle = TruncatedOracle(curve_43808_oracle(), 3)
        with pytest.raises(PrecisionInsufficient) as exc:
            isogeny_report(oracle, self.family, self.t0, self.t2)
        assert exc.value.stage == "max_trivial_level"
        assert str(exc.value).startswith("max_trivial_level: ")
        print(f"✅ {exc.value}")

    def test_failure_report_from_error(self):
        oracle = TruncatedOracle(curve_43808_oracle(), 3)
        with pytest.raises(PrecisionInsufficient) as exc:
            isogeny_report(oracle, self.family, self.t0, self.t2)
        failure = failure_report(oracle, exc.value, inputs={"curve": "abc"})
        assert failure.stage == "max_trivial_level"
        assert failure.error == "PrecisionInsufficient"
        assert failure.available_bits == 3
        assert failure.needed_bits > 3
        assert failure.prime == exc.value.prime
        assert failure.query_count == oracle.query_count
        assert failure.oracle == "curve:[0,0,0,-1369,0] mod 2^3"
        assert failure.field == "Q"

    def test_missing_t2_primes_listed(self):
        with pytest.raises(UnknownPrime) as exc:
            isogeny_report(rational_table({3: 2, 5: 0}), self.family, self.t0, self.t2)
        assert exc.value.primes == ["7", "53", "17", "23"]
        assert exc.value.stage == "small_or_large"

    def test_json_round_trip(self):
        report = isogeny_report(curve_43808_oracle(), self.family, self.t0, self.t2, inputs={"curve": "abc"})
        again = IsogenyReport.model_validate_json(report.model_dump_json())
        assert again == report
        assert again.inputs == {"curve": "abc"}

    def test_width_must_match_residual(self):
        report = isogeny_report(curve_43808_oracle(), self.family, self.t0, self.t2)
        with pytest.raises(ValidationError):
            IsogenyReport.model_validate({**report.model_dump(), "width_class": "Zero"})
        with pytest.raises(ValidationError):
            IsogenyReport.model_validate({**report.model_dump(), "width_class": "One"})


class TestBianchiReports:
    """Reports over Q(i) from the published tables."""

    def test_3140c(self):
        sets = load_sets("3140c_sets.json")
        oracle = table_oracle("3140c.tsv", sets)
        report = isogeny_report(oracle, None, sets.t0, sets.t2_special)
        assert report.field == "Qi"
        assert report.width_class == "AtLeastTwo"
        assert report.trivial_level == 1
        assert report.structure.det.label == "1"
        assert report.tree.enumerated
        assert report.tree.leaves == ["(11+6*i)*i", "(1+2*i)*i", "(1+2*i)*(11+6*i)"]
        # 3+2i is only known mod 2 but lies outside T1 and T2
        assert report.trivial_semisimplification is False

    def test_200_2a(self):
        sets = load_sets("200_2a_sets.json")
        oracle = table_oracle("200_2a.tsv", sets)
        report = isogeny_report(oracle, None, sets.t0, sets.t2_special)
        assert report.trivial_level == 2
        assert report.structure.level == 2
        assert report.structure.det.label == "i"
        assert not report.tree.enumerated
        assert len(report.tree.leaves) == 3

    def test_no_t0_primes_means_reducible(self):
        sets = load_sets("200_2a_sets.json")
        oracle = table_oracle("200_2a.tsv", sets)
        report = isogeny_report(oracle, None, T0Set(()), sets.t2_special)
        assert report.residual.reducible
