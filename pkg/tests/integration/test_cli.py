"""
End-to-end runs of the command line: documents, reports, dumps and exit codes.
"""
import json

from galois_blackbox.config import settings
from galois_blackbox.models.prime_sets import PrimeSetDocument
from galois_blackbox.models.report import FailureReport, IsogenyReport
from galois_blackbox.persistence.files import read_document
from galois_blackbox.scripts.cli import main
from tests.fixtures.blackbox import CURVE_43808_TEXT, Q_BAD_SET, fixture_path

REPORT_VOLATILE = {"oracle", "inputs"}


def write_sets(tmp_path, *extra):
    out = tmp_path / "sets.json"
    code = main([
        "sets", "--field", "Q", "--bad-set", Q_BAD_SET,
        "--cubics", str(fixture_path("ex48.cubics")), "--out", str(out), *extra,
    ])
    assert code == 0
    return out


class TestSetsCommand:

    def test_writes_document(self, tmp_path):
        doc = read_document(write_sets(tmp_path), PrimeSetDocument)
        assert doc.t0 == ["3", "5"]
        assert doc.t1 == ["3", "5", "7"]
        assert doc.cubics.endswith("ex48.cubics")
        assert "ex48.cubics" in doc.inputs
        print(f"✅ sets: T0 {doc.t0}, T1 {doc.t1}")

    def test_verify_round_trip(self, tmp_path):
        out = write_sets(tmp_path)
        assert main(["sets", "--sets", str(out), "--verify"]) == 0

    def test_verify_rejects_dependent_t1(self, tmp_path):
        out = write_sets(tmp_path)
        raw = json.loads(out.read_text())
        raw["t1"] = ["3", "11", "7"]
        out.write_text(json.dumps(raw))
        assert main(["sets", "--sets", str(out), "--verify"]) == 1

    def test_empty_bad_set(self, tmp_path):
        out = tmp_path / "empty.json"
        assert main(["sets", "--field", "Q", "--out", str(out)]) == 0
        doc = read_document(out, PrimeSetDocument)
        assert doc.basis == []
        assert doc.t1 == []

    def test_search_exhausted(self, tmp_path):
        out = tmp_path / "capped.json"
        code = main(["sets", "--field", "Q", "--bad-set", Q_BAD_SET, "--norm-cap", "5", "--out", str(out)])
        assert code == 2
        assert not out.exists()

    def test_missing_field(self, tmp_path):
        assert main(["sets", "--out", str(tmp_path / "x.json")]) == 1


class TestAnalyzeCommand:

    def setup_method(self):
        self.curve = f"--curve={CURVE_43808_TEXT}"

    def test_curve_report(self, tmp_path):
        sets = write_sets(tmp_path)
        out = tmp_path / "report.json"
        assert main(["analyze", "--sets", str(sets), self.curve, "--out", str(out)]) == 0
        report = read_document(out, IsogenyReport)
        assert report.width_class == "AtLeastTwo"
        assert report.trivial_level == 1
        assert [d.label for d in report.structure.leaves] == ["2", "2", "-1"]
        assert report.oracle == "curve:[0,0,0,-1369,0]"
        assert set(report.inputs) == {"sets.json", "ex48.cubics", "curve"}
        print(f"✅ analyze: {report.width_class}, trivial mod 2^{report.trivial_level}")

    def test_bianchi_table_report(self, tmp_path):
        out = tmp_path / "3140c.json"
        code = main([
            "analyze", "--sets", str(fixture_path("3140c_sets.json")),
            "--oracle-table", str(fixture_path("3140c.tsv")), "--out", str(out),
        ])
        assert code == 0
        report = read_document(out, IsogenyReport)
        assert report.field == "Qi"
        assert report.tree.enumerated
        assert report.oracle == "table:3140c.tsv"

    def test_dump_then_analyze(self, tmp_path):
        """A dumped table reproduces the live report."""
        sets = write_sets(tmp_path)
        dump = tmp_path / "dump.tsv"
        code = main([
            "oracle-dump", "--field", "Q", "--bad-set", Q_BAD_SET, self.curve,
            "--max-norm", "200", "--out", str(dump),
        ])
        assert code == 0
        assert dump.read_text().startswith("# curve:[0,0,0,-1369,0]")

        live, replay = tmp_path / "live.json", tmp_path / "replay.json"
        assert main(["analyze", "--sets", str(sets), self.curve, "--out", str(live)]) == 0
        assert main(["analyze", "--sets", str(sets), "--oracle-table", str(dump), "--out", str(replay)]) == 0
        a = read_document(live, IsogenyReport).model_dump(exclude=REPORT_VOLATILE)
        b = read_document(replay, IsogenyReport).model_dump(exclude=REPORT_VOLATILE)
        assert a == b

    def test_table_without_t2_primes(self, tmp_path):
        sets = write_sets(tmp_path)
        table = tmp_path / "t0_only.tsv"
        table.write_text("3\t0\n5\t2\n")
        code = main(["analyze", "--sets", str(sets), "--oracle-table", str(table), "--out", str(tmp_path / "r.json")])
        assert code == 3

    def test_inconsistent_parity(self, tmp_path):
        """An odd trace at a T0 prime with no cubic family to explain it."""
        table = tmp_path / "3140c_odd.tsv"
        table.write_text(fixture_path("3140c.tsv").read_text().replace("3+2*i\t0\t13\t1", "3+2*i\t1\t13\t1"))
        code = main([
            "analyze", "--sets", str(fixture_path("3140c_sets.json")),
            "--oracle-table", str(table), "--out", str(tmp_path / "r.json"),
        ])
        assert code == 4

    def test_precision_failure_writes_report(self, tmp_path):
        """A T2 row known only mod 2 stops small_or_large; the report says where and why."""
        table = tmp_path / "3140c_mod2.tsv"
        table.write_text(fixture_path("3140c.tsv").read_text().replace("4+i\t2\t17\n", "4+i\t2\t17\t1\n"))
        out = tmp_path / "r.json"
        code = main([
            "analyze", "--sets", str(fixture_path("3140c_sets.json")),
            "--oracle-table", str(table), "--out", str(out),
        ])
        assert code == 3
        failure = read_document(out, FailureReport)
        assert failure.error == "PrecisionInsufficient"
        assert failure.stage == "small_or_large"
        assert failure.prime == "4+i"
        assert failure.quantity == "F_p(1)"
        assert (failure.available_bits, failure.needed_bits) == (1, 2)
        assert failure.exit_code == 3
        assert failure.message.startswith("small_or_large: ")
        # the T0 prime 3+2*i is only known mod 2, which residual_image accepts
        precision = {q.prime: q.trace_precision for q in failure.query_log}
        assert precision["3+2*i"] == "mod 2^1"
        assert precision["4+i"] == "mod 2^1"
        assert set(failure.inputs) == {"3140c_sets.json", "3140c_mod2.tsv"}
        print(f"✅ failure report: {failure.message}")

    def test_truncated_oracle_failure_report(self, tmp_path):
        out = tmp_path / "r.json"
        code = main([
            "analyze", "--sets", str(fixture_path("3140c_sets.json")),
            "--oracle-table", str(fixture_path("3140c.tsv")), "--truncate-bits", "1", "--out", str(out),
        ])
        assert code == 3
        failure = read_document(out, FailureReport)
        assert failure.stage == "small_or_large"
        assert failure.prime == "1+4*i"
        assert failure.needed_bits == 2
        assert failure.oracle == "table:3140c.tsv mod 2^1"

    def test_missing_rows_listed_in_failure_report(self, tmp_path):
        sets = write_sets(tmp_path)
        table = tmp_path / "t0_only.tsv"
        table.write_text("3\t0\n5\t2\n")
        out = tmp_path / "r.json"
        assert main(["analyze", "--sets", str(sets), "--oracle-table", str(table), "--out", str(out)]) == 3
        failure = read_document(out, FailureReport)
        assert failure.error == "UnknownPrime"
        assert failure.missing_primes == ["7", "53", "17", "23"]
        assert failure.needed_bits is None

    def test_missing_oracle(self, tmp_path):
        sets = write_sets(tmp_path)
        assert main(["analyze", "--sets", str(sets), "--out", str(tmp_path / "r.json")]) == 1

    def test_audit_trail(self, tmp_path, monkeypatch):
        log_dir = tmp_path / "logs"
        monkeypatch.setattr(settings, "audit_enabled", True)
        monkeypatch.setattr(settings, "audit_log_dir", str(log_dir))
        sets = write_sets(tmp_path)
        assert main(["analyze", "--sets", str(sets), self.curve, "--out", str(tmp_path / "r.json")]) == 0

        events = [json.loads(line)["event_type"] for line in (log_dir / "audit.jsonl").read_text().splitlines()]
        assert events[0] == "RUN_START"
        assert events[-1] == "RUN_COMPLETE"
        assert "ORACLE_QUERY" in events
