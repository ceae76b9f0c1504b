"""
Input hashing for reports, and the optional JSONL audit trail of a run.
"""
import hashlib
import logging
import uuid
from pathlib import Path
from typing import Optional, Union

import structlog


def hash_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def hash_file(path: Union[str, Path]) -> str:
    """SHA256 of a file's bytes, for the input hashes embedded in reports."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


class AuditTrail:
    """
    One run of the command line as JSON lines in <log_dir>/audit.jsonl.

    Every line carries the run id, so several runs can share a file:
    RUN_START, one ORACLE_QUERY per fresh oracle answer, then RUN_COMPLETE
    or RUN_FAILED.
    """

    def __init__(self, log_dir: Union[str, Path] = "logs", *, run_id: Optional[str] = None):
        self.path = Path(log_dir) / "audit.jsonl"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.run_id = run_id or uuid.uuid4().hex[:12]

        # keyed by file so a second trail on the same file reuses the handler
        self._sink = logging.getLogger(f"galois_blackbox.audit.{hash_text(str(self.path.resolve()))[:8]}")
        self._sink.setLevel(logging.INFO)
        self._sink.propagate = False
        if not self._sink.handlers:
            handler = logging.FileHandler(self.path, encoding="utf-8")
            handler.setFormatter(logging.Formatter("%(message)s"))
            self._sink.addHandler(handler)

        self._log = structlog.wrap_logger(
            self._sink,
            processors=[
                structlog.processors.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.EventRenamer("event_type"),
                structlog.processors.JSONRenderer(),
            ],
        ).bind(run_id=self.run_id)

    def run_started(self, command: str, version: str, arguments: str) -> None:
        self._log.info("RUN_START", command=command, version=version, arguments_hash=hash_text(arguments))

    def oracle_query(self, backend: str, prime: str, trace_precision: str, det_precision: str) -> None:
        self._log.info(
            "ORACLE_QUERY",
            backend=backend,
            prime=prime,
            trace_precision=trace_precision,
            det_precision=det_precision,
        )

    def run_completed(self, command: str, exit_code: int) -> None:
        self._log.info("RUN_COMPLETE", command=command, exit_code=exit_code)

    def run_failed(self, command: str, exit_code: int, message: str, error: Optional[str] = None) -> None:
        self._log.error("RUN_FAILED", command=command, exit_code=exit_code, error=error, message=message)

    def close(self) -> None:
        for handler in list(self._sink.handlers):
            handler.close()
            self._sink.removeHandler(handler)
