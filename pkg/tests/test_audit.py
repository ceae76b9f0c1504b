"""Test the JSONL audit trail."""
import json

from galois_blackbox.utils.logging import AuditTrail, hash_file, hash_text


def read_events(path):
    return [json.loads(line) for line in (path / "audit.jsonl").read_text().splitlines()]


class TestAuditTrail:

    def test_run_lifecycle(self, tmp_path):
        audit = AuditTrail(tmp_path / "logs", run_id="r1")
        audit.run_started("analyze", "0.1.0", '{"command": "analyze"}')
        audit.oracle_query("curve", "3", "exact", "mod 2^4")
        audit.run_completed("analyze", 0)
        audit.close()

        events = read_events(tmp_path / "logs")
        assert [e["event_type"] for e in events] == ["RUN_START", "ORACLE_QUERY", "RUN_COMPLETE"]
        assert {e["run_id"] for e in events} == {"r1"}
        assert events[0]["arguments_hash"] == hash_text('{"command": "analyze"}')
        assert events[1]["det_precision"] == "mod 2^4"
        assert events[2]["exit_code"] == 0
        assert all("timestamp" in e for e in events)
        print(f"✅ audit events: {[e['event_type'] for e in events]}")

    def test_failure_is_error_level(self, tmp_path):
        audit = AuditTrail(tmp_path)
        audit.run_failed("analyze", 3, "small_or_large: F_p(1) at 7 known mod 2^1, need 2^2", "PrecisionInsufficient")
        audit.close()

        (event,) = read_events(tmp_path)
        assert event["event_type"] == "RUN_FAILED"
        assert event["level"] == "error"
        assert event["error"] == "PrecisionInsufficient"
        assert event["exit_code"] == 3
        assert len(event["run_id"]) == 12

    def test_runs_append_to_one_file(self, tmp_path):
        for run_id in ("a", "b"):
            audit = AuditTrail(tmp_path, run_id=run_id)
            audit.run_completed("sets", 0)
            audit.close()
        assert [e["run_id"] for e in read_events(tmp_path)] == ["a", "b"]


class TestHashes:

    def test_file_hash_matches_text_hash(self, tmp_path):
        path = tmp_path / "t.tsv"
        path.write_text("3\t0\n")
        assert hash_file(path) == hash_text("3\t0\n")
