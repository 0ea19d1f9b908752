# grouplab/services/harness_service.py

import json
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from grouplab.config import get_settings
from grouplab.models.group import CorpusEntry, FiniteGroup, SubgroupSet
from grouplab.models.schemas import (
    ModularPipelineReport, RecordStatus, RunKind, RunSummary, TripleRecord, VerificationRun,
)
from grouplab.services.algebra_service import algebra_service
from grouplab.services.group_service import group_service, is_prime
from grouplab.services.identity_service import identity_service
from grouplab.services.involution_service import involution_service
from grouplab.services.structure_service import structure_service
from grouplab.utils.errors import (
    AbelianGroupError, BoundExceededError, GroupLabError, InvalidPrimeError,
    PNotSubgroupError, TrivialOrientationError,
)
from grouplab.utils.logger import setup_logger

logger = setup_logger(__name__)

CORPUS_SPECS = (
    [f"C{n}" for n in range(1, 17)]
    + [
        "C2xC2", "C2xC4", "C2xC2xC2", "C3xC3", "C2xC6", "C4xC4", "C2xC8",
        "C2xC2xC4", "C2xC2xC2xC2",
        "D6", "D8", "D10", "D12", "D14", "D16",
        "Q8", "Q16", "Q8xC2", "D8xC2", "Q8xC3",
    ]
)


def _provenance(spec: str) -> str:
    if "x" in spec:
        return "direct product"
    return {"C": "cyclic", "D": "dihedral", "Q": "quaternion"}[spec[0]]


# Per-group sweeps. Module-level so a process pool can pickle them.

def _group_record(G: FiniteGroup, status: RecordStatus, reason: str, error: bool = False) -> TripleRecord:
    return TripleRecord(group=G.name, order=G.order, status=status, reason=reason, error=error)


def _enumerate_for_sweep(G: FiniteGroup) -> Tuple[Optional[list], Optional[TripleRecord]]:
    settings = get_settings()
    try:
        involutions = involution_service.enumerate_involutions(G)
    except BoundExceededError as e:
        logger.warning(f"{G.name}: {e}")
        return None, _group_record(G, RecordStatus.skipped, str(e))
    if len(involutions) > settings.max_involutions:
        reason = f"{len(involutions)} involutions exceed max_involutions {settings.max_involutions}"
        logger.warning(f"{G.name}: {reason}")
        return None, _group_record(G, RecordStatus.skipped, reason)
    return involutions, None


def _guarded(G: FiniteGroup, i: int, j: Optional[int], body: Callable[[], TripleRecord]) -> TripleRecord:
    """Runs one triple; domain errors become skipped records, anything else an error record."""
    try:
        return body()
    except GroupLabError as e:
        logger.warning(f"{G.name} [{i}, {j}]: {e}")
        reason, error = str(e), False
    except Exception as e:
        logger.exception(f"{G.name} [{i}, {j}]: unexpected failure")
        reason, error = f"{type(e).__name__}: {e}", True
    return TripleRecord(
        group=G.name, order=G.order, involution_index=i, orientation_index=j,
        status=RecordStatus.skipped, reason=reason, error=error,
    )


def _agreement(predicate: bool, oracle: Dict[int, bool]) -> bool:
    return all(v == predicate for v in oracle.values())


def lemma8_records(spec: str, primes: Sequence[int]) -> List[TripleRecord]:
    G = group_service.build_group(spec)
    involutions, skipped = _enumerate_for_sweep(G)
    if skipped is not None:
        return [skipped]
    orientations = involution_service.enumerate_orientations(G)
    if not orientations:
        return [_group_record(G, RecordStatus.out_of_statement, "no non-trivial orientation")]

    records = []
    for i, star in enumerate(involutions):
        for j, sigma in enumerate(orientations):
            def body(star=star, sigma=sigma, i=i, j=j) -> TripleRecord:
                pair = involution_service.make_pair(star, sigma)
                base = dict(group=G.name, order=G.order, involution_index=i, orientation_index=j)
                if not pair.compatible:
                    return TripleRecord(**base, status=RecordStatus.out_of_statement, reason="incompatible pair")
                if G.is_abelian:
                    return TripleRecord(**base, status=RecordStatus.out_of_statement, reason="abelian group")
                predicate = structure_service.check_theorem1(G, pair).lemma8_verdict
                oracle = {
                    p: algebra_service.symmetric_is_commutative(algebra_service.make_context(G, p, pair))
                    for p in primes
                }
                return TripleRecord(
                    **base, status=RecordStatus.processed, predicate=predicate,
                    oracle=oracle, agreement=_agreement(predicate, oracle),
                )
            records.append(_guarded(G, i, j, body))
    logger.info(f"lemma8: {G.name} -> {len(records)} records")
    return records


def lemma5_records(spec: str, primes: Sequence[int]) -> List[TripleRecord]:
    G = group_service.build_group(spec)
    involutions, skipped = _enumerate_for_sweep(G)
    if skipped is not None:
        return [skipped]
    sigma = involution_service.trivial_orientation(G)

    records = []
    for i, star in enumerate(involutions):
        def body(star=star, i=i) -> TripleRecord:
            pair = involution_service.make_pair(star, sigma)
            predicate = G.is_abelian or structure_service.is_slc_canonical(G, star)
            oracle = {
                p: algebra_service.symmetric_is_commutative(algebra_service.make_context(G, p, pair))
                for p in primes
            }
            return TripleRecord(
                group=G.name, order=G.order, involution_index=i, status=RecordStatus.processed,
                predicate=predicate, oracle=oracle, agreement=_agreement(predicate, oracle),
            )
        records.append(_guarded(G, i, None, body))
    logger.info(f"lemma5: {G.name} -> {len(records)} records")
    return records


def axiom_records(spec: str, primes: Sequence[int], samples: int) -> List[TripleRecord]:
    """
    Every compatible pair of involution and orientation (trivial included) gets
    the full basis check plus `samples` random pairs.
    """
    G = group_service.build_group(spec)
    involutions, skipped = _enumerate_for_sweep(G)
    if skipped is not None:
        return [skipped]
    orientations = involution_service.enumerate_orientations(G, include_trivial=True)

    records = []
    for i, star in enumerate(involutions):
        for j, sigma in enumerate(orientations):
            def body(star=star, sigma=sigma, i=i, j=j) -> TripleRecord:
                pair = involution_service.make_pair(star, sigma)
                base = dict(group=G.name, order=G.order, involution_index=i, orientation_index=j)
                if not pair.compatible:
                    return TripleRecord(**base, status=RecordStatus.out_of_statement, reason="incompatible pair")
                oracle = {
                    p: algebra_service.check_star_axioms(
                        algebra_service.make_context(G, p, pair), samples=samples
                    ) == 0
                    for p in primes
                }
                return TripleRecord(
                    **base, status=RecordStatus.processed, predicate=True,
                    oracle=oracle, agreement=_agreement(True, oracle),
                )
            records.append(_guarded(G, i, j, body))
    logger.info(f"axioms: {G.name} -> {len(records)} records")
    return records


class HarnessService:
    # Corpus

    def build_corpus(self, max_order: Optional[int] = None) -> List[CorpusEntry]:
        """Every corpus group of order <= max_order, ordered by order then spec."""
        max_order = max_order or get_settings().max_order
        entries = []
        for spec in CORPUS_SPECS:
            G = group_service.build_group(spec)
            if G.order <= max_order:
                entries.append(CorpusEntry(spec=spec, group=G, provenance=_provenance(spec)))
        entries.sort(key=lambda e: (e.group.order, e.spec))
        return entries

    # Sweeps

    def _sweep(
        self,
        kind: RunKind,
        worker: Callable[..., List[TripleRecord]],
        primes: Optional[Sequence[int]],
        max_order: Optional[int],
        extra: Tuple = (),
    ) -> VerificationRun:
        settings = get_settings()
        primes = list(primes or settings.default_primes)
        max_order = max_order or settings.max_order
        for p in primes:
            if p < 3 or not is_prime(p):
                raise InvalidPrimeError(f"{p} is not an odd prime")

        specs = [e.spec for e in self.build_corpus(max_order)]
        logger.info(f"{kind.value}: {len(specs)} groups, primes {primes}, workers {settings.workers}")
        args = [(spec, primes, *extra) for spec in specs]
        if settings.workers > 1:
            with ProcessPoolExecutor(max_workers=settings.workers) as pool:
                batches = list(pool.map(worker, *zip(*args)))
        else:
            batches = [worker(*a) for a in args]

        records = sorted((r for batch in batches for r in batch), key=TripleRecord.sort_key)
        run = VerificationRun(
            schema_version=settings.report_schema_version,
            kind=kind,
            timestamp=datetime.now(timezone.utc),
            primes=primes,
            max_order=max_order,
            bounds=self._bounds(),
            records=records,
            summary=self.summarize(records),
        )
        logger.info(
            f"{kind.value}: {run.summary.records} records, "
            f"{run.summary.disagreements} disagreements, {run.summary.errors} errors"
        )
        return run

    @staticmethod
    def _bounds() -> Dict[str, int]:
        settings = get_settings()
        return {
            "involution_order_bound": settings.involution_order_bound,
            "max_involutions": settings.max_involutions,
            "unit_bound": settings.unit_bound,
            "tuple_bound": settings.tuple_bound,
            "idempotent_bound": settings.idempotent_bound,
            "nilpotency_bound": settings.nilpotency_bound,
        }

    def summarize(self, records: Sequence[TripleRecord]) -> RunSummary:
        summary = RunSummary(records=len(records))
        for r in records:
            if r.status == RecordStatus.processed:
                summary.processed += 1
                if r.agreement is True:
                    summary.agreements += 1
                elif r.agreement is False:
                    summary.disagreements += 1
            elif r.status == RecordStatus.out_of_statement:
                summary.out_of_statement += 1
            else:
                summary.skipped += 1
            if r.error:
                summary.errors += 1
        return summary

    def run_lemma8_verification(
        self, primes: Optional[Sequence[int]] = None, max_order: Optional[int] = None
    ) -> VerificationRun:
        return self._sweep(RunKind.lemma8, lemma8_records, primes, max_order)

    def run_lemma5_verification(
        self, primes: Optional[Sequence[int]] = None, max_order: Optional[int] = None
    ) -> VerificationRun:
        return self._sweep(RunKind.lemma5, lemma5_records, primes, max_order)

    def run_axiom_check(
        self,
        primes: Optional[Sequence[int]] = None,
        max_order: Optional[int] = None,
        samples: Optional[int] = None,
    ) -> VerificationRun:
        samples = get_settings().axiom_samples if samples is None else samples
        return self._sweep(RunKind.axioms, axiom_records, primes, max_order, extra=(samples,))

    # Modular pipeline

    def run_modular_pipeline(
        self, spec: str, p: int, involution: str = "classical", orientation: str = "0"
    ) -> ModularPipelineReport:
        """P = p-elements, Delta(G, P), the induced pair on G/P and its classification."""
        if p < 3 or not is_prime(p):
            raise InvalidPrimeError(f"{p} is not an odd prime: the characteristic must differ from 2")
        G = group_service.build_group(spec)
        star, i = involution_service.select_involution(G, involution)
        sigma, j = involution_service.select_orientation(G, orientation)
        pair = involution_service.make_pair(star, sigma)

        members, closed = group_service.p_elements(G, p)
        report = ModularPipelineReport(
            group=G.name,
            order=G.order,
            p=p,
            p_elements=list(members),
            p_is_subgroup=closed,
            regular=G.order % p != 0,
        )
        record = TripleRecord(
            group=G.name, order=G.order, involution_index=i, orientation_index=j,
            status=RecordStatus.processed,
        )
        report.record = record

        if any(sigma(g) != 1 for g in members):
            report.findings.append(f"some {p}-elements lie outside the orientation kernel")
        if not closed:
            report.findings.append(f"the {p}-elements of {G.name} do not form a subgroup")
            record.status, record.reason = RecordStatus.out_of_statement, "p-elements not a subgroup"
            logger.warning(f"{G.name}, p={p}: p-elements not closed")
            return report

        P = SubgroupSet(parent=G, members=members)
        report.p_is_normal = group_service.is_normal(G, P)
        if not report.p_is_normal:
            report.findings.append(f"the {p}-elements of {G.name} do not form a normal subgroup")
            record.status, record.reason = RecordStatus.out_of_statement, "p-elements not normal"
            return report

        ctx = algebra_service.make_context(G, p, pair)
        report.radical = algebra_service.radical_description(ctx)
        delta = algebra_service.delta_ideal(ctx, P)
        report.delta_dim = delta.dim
        report.delta_nilpotency_index = algebra_service.nilpotency_index(delta)

        try:
            quotient = structure_service.check_theorem2(G, pair, p)
        except (TrivialOrientationError, AbelianGroupError, PNotSubgroupError) as e:
            report.findings.append(str(e))
            record.status, record.reason = RecordStatus.out_of_statement, str(e)
            return report
        report.quotient_report = quotient
        report.quotient_group = quotient.group
        report.quotient_order = quotient.order
        report.quotient_conditions = quotient.quotient_case is not None
        report.modular_conditions = report.quotient_conditions
        record.predicate = report.quotient_conditions

        try:
            exponent = identity_service.commutator_p_power(ctx)
        except BoundExceededError as e:
            report.commutator_power_status = f"skipped: {e}"
            record.status, record.reason = RecordStatus.skipped, str(e)
            logger.warning(f"{G.name}, p={p}: {e}")
            return report
        report.commutator_power_exponent = exponent
        record.oracle = {p: exponent is not None}
        if exponent is None:
            report.commutator_power_status = "no exponent within n_max"
            report.findings.append(f"(u, v)^({p}^n) = 1 fails for every n <= n_max on the symmetric units")
        else:
            report.commutator_power_status = "computed"
        # the quotient conditions only claim that some exponent exists
        record.agreement = exponent is not None if report.quotient_conditions else None
        return report

    # Reports

    def emit_report(self, run: VerificationRun, fmt: str = "json") -> str:
        if fmt == "json":
            return self.emit_document(run, "json")
        if fmt != "markdown":
            raise ValueError(f"unknown report format {fmt!r}")

        s = run.summary
        lines = [
            f"# grouplab {run.kind.value} run",
            "",
            f"- schema: {run.schema_version}",
            f"- timestamp: {run.timestamp.isoformat()}",
            f"- primes: {', '.join(str(p) for p in run.primes)}",
            f"- max order: {run.max_order}",
            "",
            "## Summary",
            "",
            "| records | processed | agreements | disagreements | out-of-statement | skipped | errors |",
            "|---|---|---|---|---|---|---|",
            f"| {s.records} | {s.processed} | {s.agreements} | {s.disagreements} "
            f"| {s.out_of_statement} | {s.skipped} | {s.errors} |",
            "",
            "## Agreement by group and prime",
            "",
            "| group | order | prime | processed | agree | disagree | out-of-statement | skipped |",
            "|---|---|---|---|---|---|---|---|",
        ]
        for (group, order, p), row in self._table(run).items():
            lines.append(
                f"| {group} | {order} | {p} | {row['processed']} | {row['agree']} | {row['disagree']} "
                f"| {row['out']} | {row['skipped']} |"
            )
        return "\n".join(lines) + "\n"

    @staticmethod
    def _table(run: VerificationRun) -> Dict[Tuple[str, int, int], Dict[str, int]]:
        table: Dict[Tuple[str, int, int], Dict[str, int]] = {}
        for r in run.records:
            for p in run.primes:
                row = table.setdefault(
                    (r.group, r.order, p), {"processed": 0, "agree": 0, "disagree": 0, "out": 0, "skipped": 0}
                )
                if r.status == RecordStatus.out_of_statement:
                    row["out"] += 1
                elif r.status == RecordStatus.skipped or p not in r.oracle:
                    row["skipped"] += 1
                else:
                    row["processed"] += 1
                    if r.oracle[p] == r.predicate:
                        row["agree"] += 1
                    else:
                        row["disagree"] += 1
        return table

    def emit_document(self, doc: BaseModel, fmt: str = "json") -> str:
        """Deterministic JSON (sorted keys) or a flat markdown key/value listing."""
        payload = doc.model_dump(mode="json", by_alias=True)
        payload.setdefault("schema", get_settings().report_schema_version)
        if fmt == "json":
            return json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if fmt != "markdown":
            raise ValueError(f"unknown report format {fmt!r}")
        lines = [f"# {type(doc).__name__}", ""]
        for key in sorted(payload):
            lines.append(f"- **{key}**: {json.dumps(payload[key], sort_keys=True)}")
        return "\n".join(lines) + "\n"


harness_service = HarnessService()
