"""
End-to-end analysis of one black box: residual image, width of the
isogeny class, first nontrivial level and the triviality certificate,
rendered as a serializable IsogenyReport.
"""
import logging
from contextlib import contextmanager
from typing import Iterator, Mapping, Optional

from ..arithmetic.base_field import Discriminant
from ..arithmetic.cubics import CubicFamily
from ..exceptions import BlackBoxError, InsufficientData
from ..models.report import (
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
from ..oracle.base import BlackBoxOracle
from ..primesets.types import T0Set, T1Set, T2Set
from .residual import residual_image
from .structure import max_trivial_level, small_or_large, trivial_semisimplification
from .types import CharacterVector, ResidualVerdict, SmallOrLarge, TrivialLevel, WidthClass

logger = logging.getLogger(__name__)


@contextmanager
def _stage(name: str) -> Iterator[None]:
    """Tag errors escaping an analysis stage with the stage name."""
    try:
        yield
    except BlackBoxError as e:
        if getattr(e, "stage", None) is None:
            e.stage = name  # type: ignore[attr-defined]
            if e.args:
                e.args = (f"{name}: {e.args[0]}",) + e.args[1:]
        raise


def _discriminant(d: Discriminant) -> DiscriminantModel:
    return DiscriminantModel(representative=str(d.representative), exponents=str(d.exponents), label=d.label)


def _residual(verdict: ResidualVerdict) -> ResidualModel:
    return ResidualModel(
        reducible=verdict.reducible,
        trace_parities=str(verdict.trace_parities),
        cubic=str(verdict.cubic) if verdict.cubic else None,
        cubic_label=verdict.cubic_label,
        group=verdict.group.value if verdict.group else None,
    )


def _structure(cv: CharacterVector) -> StructureModel:
    return StructureModel(
        level=cv.level,
        det=_discriminant(cv.det_discriminant()),
        leaves=[_discriminant(d) for d in cv.leaves()],
        diagonal=[_discriminant(d) for d in cv.diagonal()],
        image_rank=cv.image_rank,
        image_order=cv.image_order,
        branches=list(cv.branches),
        f_bits_used=cv.f_bits_used,
    )


def render_tree(
    width: WidthClass,
    verdict: ResidualVerdict,
    split: Optional[SmallOrLarge] = None,
    level: Optional[TrivialLevel] = None,
) -> TreeModel:
    """
    The part of the stable tree the tests pin down.

    Width 2 with a first obstruction at level 1 and three nontrivial leaves
    is the four-vertex star around a lattice with trivial residual image.
    Anything wider is only described by its leaf discriminants.
    """
    if width is WidthClass.ZERO:
        label = verdict.cubic_label or str(verdict.cubic)
        return TreeModel(enumerated=True, vertices=[TreeVertex(id="L0", residual=label)])

    if width is WidthClass.ONE:
        assert split is not None and split.pair is not None
        a, b = (str(d) for d in split.pair)
        return TreeModel(
            enumerated=True,
            leaves=[a, b],
            vertices=[TreeVertex(id="L1", residual=a), TreeVertex(id="L2", residual=b)],
            edges=[TreeEdge(source="L1", target="L2", label="2-isogeny")],
        )

    cv = level.structure if level else None
    if cv is None:
        return TreeModel(enumerated=False)
    leaves = cv.leaves()
    labels = [str(d) for d in leaves]
    if cv.level > 1 or any(d.is_trivial() for d in leaves):
        return TreeModel(enumerated=False, leaves=labels)
    vertices = [TreeVertex(id="L0", residual="trivial")]
    edges = []
    for n, label in enumerate(labels, start=1):
        vertices.append(TreeVertex(id=f"L{n}", residual=label))
        edges.append(TreeEdge(source="L0", target=f"L{n}", label=label))
    return TreeModel(enumerated=True, leaves=labels, vertices=vertices, edges=edges)


def _query_log(oracle: BlackBoxOracle) -> list[QueryModel]:
    return [
        QueryModel(
            prime=q.prime,
            trace_precision="exact" if q.trace_bits is None else f"mod 2^{q.trace_bits}",
            det_precision="exact" if q.det_bits is None else f"mod 2^{q.det_bits}",
        )
        for q in oracle.query_log
    ]


def _all_exact(oracle: BlackBoxOracle, t1: T1Set, t2: T2Set) -> bool:
    return all(oracle.query(p).is_exact for p in list(t1.primes) + list(t2.primes))


def isogeny_report(
    oracle: BlackBoxOracle,
    family: Optional[CubicFamily],
    t0: T0Set,
    t2: T2Set,
    *,
    t1: Optional[T1Set] = None,
    k_max: Optional[int] = None,
    inputs: Optional[Mapping[str, str]] = None,
    norm_cap: Optional[int] = None,
    degree_one_only: Optional[bool] = None,
) -> IsogenyReport:
    """
    Run every decision procedure that applies and collect the verdicts.

    Errors propagate with the failing stage prepended to the message and
    stored as ``error.stage``.
    """
    with _stage("residual_image"):
        verdict = residual_image(oracle, family, t0)

    split: Optional[SmallOrLarge] = None
    level: Optional[TrivialLevel] = None
    certificate: Optional[bool] = None
    if not verdict.reducible:
        width = WidthClass.ZERO
    else:
        with _stage("small_or_large"):
            split = small_or_large(oracle, t2)
        if not split.large:
            width = WidthClass.ONE
        else:
            width = WidthClass.AT_LEAST_TWO
            with _stage("max_trivial_level"):
                level = max_trivial_level(
                    oracle, t2, k_max, norm_cap=norm_cap, degree_one_only=degree_one_only
                )
        t1 = t1 or t2.as_t1()
        with _stage("trivial_semisimplification"):
            if _all_exact(oracle, t1, t2):
                certificate = trivial_semisimplification(oracle, t2, t1)
            else:
                logger.info("Answers are not exact; skipping the trivial-semisimplification certificate")

    logger.info(f"Isogeny report: width {width.value}, {oracle.query_count} oracle queries")
    return IsogenyReport(
        field=t2.basis.field.value,
        bad_set=[str(p) for p in oracle.bad_set],
        basis=t2.basis.describe(),
        oracle=oracle.describe(),
        inputs=dict(inputs or {}),
        residual=_residual(verdict),
        width_class=width.value,
        small_pair=[_discriminant(d) for d in split.pair] if split and split.pair else None,
        trivial_level=level.level if level else None,
        exceeds_k_max=level.exceeds_k_max if level else False,
        k_max=level.k_max if level else k_max,
        structure=_structure(level.structure) if level and level.structure else None,
        trivial_semisimplification=certificate,
        tree=render_tree(width, verdict, split, level),
        query_count=oracle.query_count,
        query_log=_query_log(oracle),
    )


def failure_report(
    oracle: BlackBoxOracle,
    error: InsufficientData,
    *,
    inputs: Optional[Mapping[str, str]] = None,
) -> FailureReport:
    """What was asked, and what was missing, when an analysis ran out of data."""
    return FailureReport(
        field=oracle.field.value,
        bad_set=[str(p) for p in oracle.bad_set],
        oracle=oracle.describe(),
        inputs=dict(inputs or {}),
        stage=getattr(error, "stage", None),
        error=type(error).__name__,
        message=str(error),
        exit_code=error.exit_code,
        prime=getattr(error, "prime", None),
        quantity=getattr(error, "quantity", None),
        needed_bits=getattr(error, "needed_bits", None),
        available_bits=getattr(error, "available_bits", None),
        operation=getattr(error, "operation", None),
        level=getattr(error, "level", None),
        missing_primes=[str(p) for p in getattr(error, "primes", [])],
        query_count=oracle.query_count,
        query_log=_query_log(oracle),
    )
