#!/usr/bin/env python3
"""
Command-line surface for the black-box toolkit.

Usage:
    galois-blackbox sets --field Q --bad-set 2,37 --cubics ex48.cubics --out sets.json
    galois-blackbox sets --sets sets.json --cubics ex48.cubics --verify
    galois-blackbox analyze --sets sets.json --curve "0 0 0 -1369 0" --out report.json
    galois-blackbox analyze --sets sets.json --oracle-table 3140c.tsv --out report.json
    galois-blackbox oracle-dump --field Q --bad-set 2,37 --curve "0 0 0 -1369 0" --max-norm 60 --out dump.tsv

Exit codes: 0 success, 1 input error or failed --verify, 2 search exhausted,
3 insufficient oracle data, 4 inconsistent oracle data.
"""
import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Literal, Optional, Sequence

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .. import __version__
from ..analysis.report import failure_report, isogeny_report
from ..arithmetic.base_field import BaseField, Prime, SelmerBasis, canonical_primes, parse_bad_set, parse_discriminant
from ..arithmetic.cubics import CubicFamily, load_family
from ..config import settings
from ..exceptions import BlackBoxError, InputError, InsufficientData
from ..models.prime_sets import PrimeSetDocument
from ..models.report import FailureReport, IsogenyReport
from ..oracle import (
    BlackBoxOracle,
    EllipticCurveOracle,
    SyntheticDiagonalOracle,
    TableOracle,
    TruncatedOracle,
    WeierstrassModel,
)
from ..persistence.files import read_document, write_document, write_oracle_table
from ..primesets import (
    PrimeSets,
    SetKind,
    find_T0,
    find_T1,
    find_T2,
    find_T2_special,
    from_document,
    to_document,
    unramified_basis,
    verify_set,
)
from ..primesets.types import T0Set
from ..utils.logging import AuditTrail, hash_file, hash_text

logger = logging.getLogger(__name__)

Command = Literal["sets", "analyze", "oracle-dump"]


class RunConfig(BaseModel):
    """One CLI invocation, validated before anything is computed."""

    command: Command
    field: Optional[Literal["Q", "Qi"]] = None
    bad_set: Optional[str] = None
    cubics: Optional[Path] = None
    sets: Optional[Path] = None
    oracle_table: Optional[Path] = None
    curve: Optional[str] = None
    synthetic: Optional[str] = None
    k_max: Optional[int] = Field(default=None, ge=1)
    norm_cap: Optional[int] = Field(default=None, ge=2)
    max_norm: Optional[int] = Field(default=None, ge=1)
    truncate_bits: Optional[int] = Field(default=None, ge=1)
    degree_one: Optional[bool] = None
    verify: bool = False
    out: Optional[Path] = None

    @field_validator("cubics", "sets", "oracle_table")
    @classmethod
    def must_exist(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not v.exists():
            raise ValueError(f"{v} does not exist")
        return v

    @property
    def oracle_sources(self) -> list[str]:
        return [s for s in ("oracle_table", "curve", "synthetic") if getattr(self, s) is not None]

    @model_validator(mode="after")
    def check_command(self) -> "RunConfig":
        if self.command in ("analyze", "oracle-dump") and len(self.oracle_sources) != 1:
            raise ValueError("exactly one of --oracle-table, --curve, --synthetic is required")
        if self.command == "analyze" and self.sets is None:
            raise ValueError("analyze needs --sets")
        if self.command == "oracle-dump" and self.max_norm is None:
            raise ValueError("oracle-dump needs --max-norm")
        if self.command == "sets" and self.verify and self.sets is None:
            raise ValueError("--verify checks an existing document given with --sets")
        if self.command == "sets" and not self.verify and self.field is None:
            raise ValueError("sets needs --field")
        if not (self.command == "sets" and self.verify) and self.out is None:
            raise ValueError(f"{self.command} needs --out")
        return self


# =========================================================================
# Shared plumbing
# =========================================================================

def _load_sets(config: RunConfig) -> tuple[PrimeSetDocument, PrimeSets]:
    assert config.sets is not None
    doc = read_document(config.sets, PrimeSetDocument)
    sets = from_document(doc)
    if config.field is not None and BaseField.parse(config.field) is not sets.field:
        raise InputError(f"--field {config.field} disagrees with the document's field {doc.field}")
    if config.bad_set is not None and parse_bad_set(sets.field, config.bad_set) != sets.bad_set:
        raise InputError(f"--bad-set {config.bad_set} disagrees with the document's S {doc.bad_set}")
    return doc, sets


def _family_path(config: RunConfig, doc: Optional[PrimeSetDocument]) -> Optional[Path]:
    if config.cubics is not None:
        return config.cubics
    if doc is not None and doc.cubics and config.sets is not None:
        path = config.sets.parent / doc.cubics
        if not path.exists():
            raise InputError(f"cubic family {path} named by the document does not exist")
        return path
    return None


def _family(config: RunConfig, doc: Optional[PrimeSetDocument], field: BaseField, bad_set: Sequence[Prime]) -> Optional[CubicFamily]:
    path = _family_path(config, doc)
    return load_family(field, bad_set, path) if path else None


def _field_and_bad_set(config: RunConfig) -> tuple[BaseField, tuple[Prime, ...]]:
    if config.sets is not None:
        _, sets = _load_sets(config)
        return sets.field, sets.bad_set
    if config.field is None:
        raise InputError("--field (or --sets) is required")
    field = BaseField.parse(config.field)
    if config.bad_set is None and config.curve is not None:
        model = WeierstrassModel.parse(config.curve)
        return field, parse_bad_set(field, ",".join(str(q) for q in model.bad_primes()))
    return field, parse_bad_set(field, config.bad_set or "")


def build_oracle(
    config: RunConfig,
    field: BaseField,
    bad_set: Sequence[Prime],
    basis: SelmerBasis,
    audit: Optional[AuditTrail] = None,
) -> BlackBoxOracle:
    """The oracle named on the command line, truncated if asked."""
    oracle: BlackBoxOracle
    if config.oracle_table is not None:
        oracle = TableOracle.from_file(field, bad_set, config.oracle_table, audit=audit)
    elif config.curve is not None:
        if field is not BaseField.RATIONALS:
            raise InputError("--curve needs --field Q")
        oracle = EllipticCurveOracle(WeierstrassModel.parse(config.curve), bad_set, audit=audit)
    else:
        assert config.synthetic is not None
        parts = [t.strip() for t in config.synthetic.split(";")]
        if len(parts) != 2:
            raise InputError(f"--synthetic expects 'delta1;delta2', got {config.synthetic!r}")
        d1, d2 = (parse_discriminant(basis, t) for t in parts)
        oracle = SyntheticDiagonalOracle(d1, d2, audit=audit)
    if config.truncate_bits:
        oracle = TruncatedOracle(oracle, config.truncate_bits, audit=audit)
    return oracle


def _input_hashes(config: RunConfig, family_path: Optional[Path] = None) -> dict[str, str]:
    hashes = {}
    for path in (config.sets, family_path, config.oracle_table):
        if path is not None:
            hashes[path.name] = hash_file(path)
    if config.curve:
        hashes["curve"] = hash_text(config.curve)
    if config.synthetic:
        hashes["synthetic"] = hash_text(config.synthetic)
    return hashes


def _print_header(title: str) -> None:
    print("\n" + "=" * 60)
    print(title)
    print("=" * 60)


def _norms(primes: Sequence[Prime]) -> str:
    return ", ".join(f"{p} (N={p.norm})" for p in primes)


# =========================================================================
# Commands
# =========================================================================

def cmd_sets(config: RunConfig) -> int:
    """Compute T0/T1/T2 for (K, S) and write the document, or verify one."""
    if config.verify:
        return _verify_sets(config)

    assert config.field is not None and config.out is not None
    field = BaseField.parse(config.field)
    bad_set = parse_bad_set(field, config.bad_set or "")
    search = dict(norm_cap=config.norm_cap, degree_one_only=config.degree_one)
    basis = unramified_basis(field, bad_set)
    logger.info(f"K(S,2)_u has rank {basis.rank}, basis {basis.describe()}")

    family = _family(config, None, field, bad_set)
    t0 = find_T0(field, bad_set, family, **search) if family is not None else None
    sets = PrimeSets(
        field=field,
        bad_set=bad_set,
        basis=basis,
        t0=t0,
        t1=find_T1(field, bad_set, basis=basis, **search),
        t2=find_T2(field, bad_set, basis=basis, **search),
        t2_special=find_T2_special(field, bad_set, basis=basis, **search),
    )
    cubics = None
    if config.cubics is not None:
        cubics = Path(os.path.relpath(config.cubics.resolve(), config.out.parent.resolve())).as_posix()
    write_document(config.out, to_document(sets, cubics=cubics, inputs=_input_hashes(config, config.cubics)))

    _print_header("PRIME SETS")
    print(f"  Field:      {field.value}")
    print(f"  S:          {', '.join(str(p) for p in bad_set) or '(empty)'}")
    print(f"  Rank r:     {basis.rank}  basis {', '.join(basis.describe())}")
    if t0 is not None:
        print(f"  T0 ({len(t0.primes)}):     {_norms(t0.primes)}")
    assert sets.t1 is not None and sets.t2 is not None and sets.t2_special is not None
    print(f"  T1 ({len(sets.t1.primes)}):     {_norms(sets.t1.primes)}")
    print(f"  T2 ({len(sets.t2.primes)}):     {_norms(sets.t2.primes)}")
    print(f"  T2 special: {_norms(sets.t2_special.primes)}")
    print(f"  Written to: {config.out}")
    print("=" * 60 + "\n")
    return 0


def _verify_sets(config: RunConfig) -> int:
    doc, sets = _load_sets(config)
    family = _family(config, doc, sets.field, sets.bad_set)
    results = []
    if sets.t0 is not None:
        if family is not None:
            results.append(verify_set(SetKind.T0, sets.t0.primes, sets.basis, family=family))
        else:
            logger.warning("T0 not verified: no cubic family given")
    if sets.t1 is not None:
        results.append(verify_set(SetKind.T1, sets.t1.primes, sets.basis))
    if sets.t2 is not None:
        results.append(verify_set(SetKind.T2, sets.t2.primes, sets.basis))
    if sets.t2_special is not None:
        results.append(
            verify_set(
                SetKind.T2_SPECIAL,
                sets.t2_special.primes,
                sets.basis,
                indexing=sets.t2_special.indexing,
            )
        )

    _print_header("SET VERIFICATION")
    for result in results:
        print(f"  {result.kind.value:<10} {'ok' if result.ok else 'FAILED'}")
        for problem in result.diagnostics:
            print(f"      - {problem}")
        for i, signature in enumerate(result.signatures):
            assert family is not None
            print(f"      {family.label(i)}: {signature}")
    print("=" * 60 + "\n")
    return 0 if all(results) else 1


def cmd_analyze(config: RunConfig, audit: Optional[AuditTrail] = None) -> int:
    """Run the full analysis against one oracle and write the report."""
    assert config.out is not None
    doc, sets = _load_sets(config)
    family_path = _family_path(config, doc)
    family = load_family(sets.field, sets.bad_set, family_path) if family_path else None
    if sets.t0 is None:
        raise InputError("the set document has no T0; rerun `sets` with --cubics")
    t0 = sets.t0
    if family is not None and len(t0.signatures) != len(family):
        t0 = T0Set(t0.primes)
    t2 = sets.t2_special
    if t2 is None:
        logger.info("Document has no special T2 set; searching one")
        t2 = find_T2_special(
            sets.field, sets.bad_set, basis=sets.basis,
            norm_cap=config.norm_cap, degree_one_only=config.degree_one,
        )

    oracle = build_oracle(config, sets.field, sets.bad_set, sets.basis, audit)
    inputs = _input_hashes(config, family_path)
    try:
        report = isogeny_report(
            oracle,
            family,
            t0,
            t2,
            t1=sets.t1,
            k_max=config.k_max,
            inputs=inputs,
            norm_cap=config.norm_cap,
            degree_one_only=config.degree_one,
        )
    except InsufficientData as e:
        failure = failure_report(oracle, e, inputs=inputs)
        write_document(config.out, failure)
        _print_failure(failure, config.out)
        raise
    write_document(config.out, report)
    _print_report(report, config.out)
    return 0


def _print_failure(failure: FailureReport, out: Path) -> None:
    _print_header("ANALYSIS STOPPED")
    print(f"  Stage:       {failure.stage}")
    print(f"  Error:       {failure.error}")
    if failure.prime:
        print(f"  Prime:       {failure.prime} ({failure.quantity})")
    if failure.needed_bits is not None:
        print(f"  Precision:   have 2^{failure.available_bits}, need 2^{failure.needed_bits}")
    if failure.missing_primes:
        print(f"  Missing:     {', '.join(failure.missing_primes)}")
    print(f"  Written to:  {out}")
    print("=" * 60 + "\n")


def _print_report(report: IsogenyReport, out: Path) -> None:
    _print_header("ISOGENY REPORT")
    residual = report.residual
    if residual.reducible:
        print("  Residual:    reducible")
    else:
        print(f"  Residual:    irreducible, {residual.group} ({residual.cubic_label or residual.cubic})")
    print(f"  Width:       {report.width_class}")
    if report.small_pair:
        print(f"  Small pair:  {{{', '.join(d.label for d in report.small_pair)}}}")
    if report.trivial_level is not None:
        depth = " (k_max exhausted)" if report.exceeds_k_max else ""
        print(f"  Trivial mod: 2^{report.trivial_level}{depth}")
    if report.structure:
        s = report.structure
        print(f"  Det:         {s.det.label}")
        print(f"  Leaves:      {{{', '.join(d.label for d in s.leaves)}}}")
        print(f"  Diagonal:    {{{', '.join(d.label for d in s.diagonal)}}}")
        print(f"  Image order: {s.image_order}")
    if report.trivial_semisimplification is not None:
        print(f"  Trivial ss:  {report.trivial_semisimplification}")
    print(f"  Queries:     {report.query_count}")
    print(f"  Written to:  {out}")
    print("=" * 60 + "\n")


def cmd_oracle_dump(config: RunConfig, audit: Optional[AuditTrail] = None) -> int:
    """Write every (prime, trace, det) with N(p) <= max_norm outside S."""
    assert config.out is not None and config.max_norm is not None
    field, bad_set = _field_and_bad_set(config)
    basis = unramified_basis(field, bad_set)
    oracle = build_oracle(config, field, bad_set, basis, audit)
    rows = []
    for p in canonical_primes(field, bad_set, max_norm=config.max_norm):
        trace, det = oracle.query(p).coefficients()
        row: list[object] = [str(p), trace.value, det.value]
        if not (trace.is_exact and det.is_exact):
            row.append(min(b for b in (trace.bits, det.bits) if b is not None))
        rows.append(row)
    header = (
        f"{oracle.describe()}\n"
        f"field {field.value}; S = {', '.join(str(p) for p in bad_set) or '(empty)'}; N(p) <= {config.max_norm}"
    )
    count = write_oracle_table(config.out, rows, header=header)

    _print_header("ORACLE DUMP")
    print(f"  Oracle:     {oracle.describe()}")
    print(f"  Rows:       {count}")
    print(f"  Written to: {config.out}")
    print("=" * 60 + "\n")
    return 0


# =========================================================================
# Entry point
# =========================================================================

class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); exit 2 is reserved for searches."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", choices=["Q", "Qi"], help="Base field: Q or Q(i)")
    common.add_argument("--bad-set", help="Comma-separated primes of S, e.g. '2,37' or '1+i,1+2*i'")
    common.add_argument("--cubics", type=Path, help="Cubic family file ('c2 c1 c0' per line)")
    common.add_argument("--sets", type=Path, help="Prime-set JSON document")
    common.add_argument("--norm-cap", type=int, help=f"Prime search cap (default: {settings.search_norm_cap})")
    common.add_argument("--degree-one", action="store_true", default=None, help="Search only degree-1 primes over Q(i)")
    common.add_argument("--out", type=Path, help="Output path")

    oracle = _Parser(add_help=False)
    source = oracle.add_mutually_exclusive_group()
    source.add_argument("--oracle-table", type=Path, help="TSV table: prime, trace[, det][, mod2pow]")
    source.add_argument("--curve", help="Weierstrass coefficients 'a1 a2 a3 a4 a6' (over Q)")
    source.add_argument("--synthetic", help="Diagonal oracle 'delta1;delta2'")
    oracle.add_argument("--truncate-bits", type=int, help="Forget oracle bits above 2^N")

    parser = _Parser(
        prog="galois-blackbox",
        description="Analyze 2-adic Galois representations through a Frobenius oracle",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sets = sub.add_parser("sets", parents=[common], help="Compute or verify T0/T1/T2")
    sets.add_argument("--verify", action="store_true", help="Verify the document given with --sets")

    analyze = sub.add_parser("analyze", parents=[common, oracle], help="Run the isogeny analysis")
    analyze.add_argument("--kmax", type=int, dest="k_max", help=f"Deepest level examined (default: {settings.analysis_k_max})")

    dump = sub.add_parser("oracle-dump", parents=[common, oracle], help="Write an oracle table")
    dump.add_argument("--max-norm", type=int, help="Largest prime norm to dump")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    logging.basicConfig(
        level=settings.log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    args = _parser().parse_args(argv)
    audit = AuditTrail(settings.audit_log_dir) if settings.audit_enabled else None

    try:
        config = RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
    except ValidationError as e:
        logger.error(f"Invalid arguments: {e}")
        return 1

    if audit:
        audit.run_started(config.command, __version__, config.model_dump_json(exclude_none=True))
    try:
        if config.command == "sets":
            code = cmd_sets(config)
        elif config.command == "analyze":
            code = cmd_analyze(config, audit)
        else:
            code = cmd_oracle_dump(config, audit)
    except BlackBoxError as e:
        logger.error(f"{type(e).__name__}: {e}")
        if audit:
            audit.run_failed(config.command, e.exit_code, str(e), type(e).__name__)
            audit.close()
        return e.exit_code
    except OSError as e:
        logger.error(f"I/O error: {e}")
        if audit:
            audit.run_failed(config.command, 1, str(e), type(e).__name__)
            audit.close()
        return 1

    if audit:
        audit.run_completed(config.command, code)
        audit.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
