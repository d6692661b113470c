"""Exhaustive, witness and sampled verification of claimed Ramsey values."""

import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from jahangir_ramsey.core.config import settings
from jahangir_ramsey.core.errors import (
    CheckpointMismatchError,
    OutOfProvenRangeError,
    PreconditionError,
    TheoremFalsifiedError,
    WitnessUnavailableError,
    check_ceiling,
)
from jahangir_ramsey.domain.detect import contains_disjoint_paths, contains_path
from jahangir_ramsey.domain.enumeration import (
    ENUMERATION_CEILING,
    CheckpointVisitor,
    checkpoint_save,
    run_resumable,
)
from jahangir_ramsey.domain.extract import (
    THEOREM1_PARAMETERS,
    extract_j4_theorem2_base,
    extract_jahangir_theorem1,
)
from jahangir_ramsey.domain.graph import MAX_ORDER, Graph
from jahangir_ramsey.domain.ramsey import (
    build_lower_witness,
    classify,
    classify_sampled,
    claimed_value,
    find_witness_exhaustive,
    verify_witness,
)
from jahangir_ramsey.scheduler.shard_pool import ShardJob, ShardPool
from jahangir_ramsey.schemas.checkpoint import (
    CHECKPOINT_VERSION,
    Checkpoint,
    ShardSpec,
    VerificationCheckpoint,
)
from jahangir_ramsey.schemas.instance import RamseyInstance
from jahangir_ramsey.schemas.report import ExtractorCoverage, VerificationReport
from jahangir_ramsey.schemas.trace import CaseTrace, FalsificationRecord
from jahangir_ramsey.services.falsification_sink import FalsificationSink
from jahangir_ramsey.utils.graph6 import describe, emit_graph6
from jahangir_ramsey.utils.logger import get_logger

logger = get_logger("verification_service")

THEOREM2_BASE = RamseyInstance(k=2, n=4, m=2)


def _elapsed_ms(started: float) -> float:
    return round((time.perf_counter() - started) * 1000, 3)


def _upper_visitor(instance: RamseyInstance) -> CheckpointVisitor:
    def visit(graph: Graph, state: Checkpoint) -> None:
        if classify(graph, instance) == "fail":
            state.findings.append(emit_graph6(graph))

    return visit


def _record_trace(state: Checkpoint, trace: CaseTrace) -> None:
    state.bump("hosts")
    state.bump(trace.subcase)
    if trace.attempted is not None:
        state.bump(f"fallback:{trace.attempted}")


def _theorem1_visitor(instance: RamseyInstance) -> CheckpointVisitor:
    def visit(graph: Graph, state: Checkpoint) -> None:
        if contains_path(graph, instance.n) is not None:
            return
        try:
            _, trace = extract_jahangir_theorem1(graph, instance.n, instance.m)
        except TheoremFalsifiedError as exc:
            state.bump("hosts")
            state.findings.append(exc.record.model_dump_json())
            return
        _record_trace(state, trace)

    return visit


def _theorem2_visitor(instance: RamseyInstance) -> CheckpointVisitor:
    def visit(graph: Graph, state: Checkpoint) -> None:
        if contains_disjoint_paths(graph, instance.k, instance.n) is not None:
            return
        try:
            _, trace = extract_j4_theorem2_base(graph)
        except TheoremFalsifiedError as exc:
            state.bump("hosts")
            state.findings.append(exc.record.model_dump_json())
            return
        _record_trace(state, trace)

    return visit


def run_slice(job: ShardJob, checkpoint: Checkpoint, max_branches: Optional[int]) -> Checkpoint:
    """Advance one shard by at most ``max_branches`` branches; runs inside pool workers."""
    visitors = {
        "upper": _upper_visitor,
        "theorem1-extract": _theorem1_visitor,
        "theorem2-extract": _theorem2_visitor,
    }
    return run_resumable(job.order, visitors[job.kind](job.instance), checkpoint, max_branches)


def _starting_checkpoints(job: ShardJob, shards: int, path: Optional[Path]) -> list[Checkpoint]:
    if path is not None and path.exists():
        saved = VerificationCheckpoint.model_validate_json(path.read_text(encoding="utf-8"))
        if saved.version != CHECKPOINT_VERSION:
            raise CheckpointMismatchError(f"{path}: checkpoint version {saved.version} unsupported")
        if saved.instance != job.instance or saved.order != job.order:
            raise CheckpointMismatchError(
                f"{path} belongs to {saved.instance.label()} at order {saved.order}, "
                f"not {job.instance.label()} at order {job.order}"
            )
        if len(saved.shards) != shards:
            raise CheckpointMismatchError(
                f"{path} was written with {len(saved.shards)} shards, resume requested {shards}"
            )
        logger.info(f"Resuming {job.instance.label()} order {job.order} from {path}")
        return saved.shards
    return [
        Checkpoint.fresh(job.order, ShardSpec(shard_index=i, shard_total=shards, order=job.order))
        for i in range(shards)
    ]


def _run_job(job: ShardJob, shards: Optional[int], checkpoint_path: Optional[Path | str]) -> list[Checkpoint]:
    check_ceiling("verify_upper", ENUMERATION_CEILING, job.order)
    total = shards or settings.default_shards
    path = Path(checkpoint_path) if checkpoint_path else None
    starting = _starting_checkpoints(job, total, path)

    def persist(states: list[Checkpoint]) -> None:
        if path is not None:
            checkpoint_save(
                path, VerificationCheckpoint(instance=job.instance, order=job.order, shards=states)
            )

    pool = ShardPool(total, slice_branches=settings.checkpoint_every, on_progress=persist)
    return pool.run(job, run_slice, starting)


def verify_upper(
    instance: RamseyInstance,
    order: int,
    shards: Optional[int] = None,
    checkpoint_path: Optional[Path | str] = None,
) -> VerificationReport:
    """Check every isomorphism class of ``order``: each must contain kP_n or have J_2m in its complement."""
    started = time.perf_counter()
    states = _run_job(ShardJob("upper", instance, order), shards, checkpoint_path)
    counterexamples = [g6 for state in states for g6 in state.findings]
    report = VerificationReport(
        kind="upper",
        instance=instance,
        order=order,
        classes_total=sum(state.processed for state in states),
        classes_failed=len(counterexamples),
        counterexamples=counterexamples,
        complete=all(state.complete for state in states),
        elapsed_ms=_elapsed_ms(started),
        checkpoint=str(checkpoint_path) if checkpoint_path else None,
    )
    logger.info(
        f"{instance.label()} order {order}: {report.classes_total} classes, "
        f"{report.classes_failed} failing"
    )
    return report


def verify_lower(instance: RamseyInstance) -> VerificationReport:
    """A graph of order R - 1 avoiding both patterns: the generic witness, else a search."""
    started = time.perf_counter()
    value = claimed_value(instance)
    if value is None:
        raise OutOfProvenRangeError(f"{instance.label()} is outside every proven range")
    candidate: Optional[Graph]
    try:
        candidate = build_lower_witness(instance)
    except WitnessUnavailableError as exc:
        logger.info(f"{exc}; searching order {value - 1} exhaustively")
        check_ceiling("verify_lower", ENUMERATION_CEILING, value - 1)
        candidate = find_witness_exhaustive(instance, value - 1)

    witness = candidate if candidate is not None and verify_witness(candidate, instance) else None
    return VerificationReport(
        kind="lower",
        instance=instance,
        order=value - 1,
        classes_total=1 if candidate is not None else 0,
        witness=describe(witness) if witness is not None else None,
        elapsed_ms=_elapsed_ms(started),
    )


def verify_ramsey(
    instance: RamseyInstance,
    shards: Optional[int] = None,
    checkpoint_path: Optional[Path | str] = None,
) -> tuple[VerificationReport, VerificationReport]:
    """Upper half at order R (resumable through ``checkpoint_path``), lower half at order R - 1."""
    value = claimed_value(instance)
    if value is None:
        raise OutOfProvenRangeError(f"{instance.label()} is outside every proven range")
    check_ceiling("verify_ramsey", ENUMERATION_CEILING, value)
    upper = verify_upper(instance, value, shards, checkpoint_path)
    lower = verify_lower(instance)
    return upper, lower


def random_graph(order: int, rng: random.Random) -> Graph:
    """G(order, 1/2): each pair independently, upper triangle row by row."""
    check_ceiling("random_graph", MAX_ORDER, order)
    rows = [0] * order
    for j in range(1, order):
        bits = rng.getrandbits(j)
        for i in range(j):
            if bits >> i & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph.trusted(order, tuple(rows))


@dataclass(frozen=True, slots=True)
class SampleBatch:
    instance: RamseyInstance
    order: int
    trials: int
    seed: int
    path_budget: int


@dataclass(slots=True)
class SampleOutcome:
    passed: int = 0
    inconclusive: int = 0
    counterexamples: list[str] = field(default_factory=list)


def run_sample_batch(batch: SampleBatch) -> SampleOutcome:
    rng = random.Random(batch.seed)
    outcome = SampleOutcome()
    for _ in range(batch.trials):
        graph = random_graph(batch.order, rng)
        verdict = classify_sampled(graph, batch.instance, batch.path_budget)
        if verdict == "pass":
            outcome.passed += 1
        elif verdict == "inconclusive":
            outcome.inconclusive += 1
        else:
            outcome.counterexamples.append(describe(graph))
    return outcome


def sample_check(
    instance: RamseyInstance,
    order: int,
    trials: int,
    seed: int,
    shards: Optional[int] = None,
) -> VerificationReport:
    """Seeded random probe at ``order``; worker w draws from seed + w."""
    if trials < 0:
        raise PreconditionError(f"trials must be >= 0, got {trials}")
    if order < 1:
        raise PreconditionError(f"order must be >= 1, got {order}")
    check_ceiling("sample_check", MAX_ORDER, order)
    started = time.perf_counter()
    workers = max(1, min(shards or settings.default_shards, trials))
    batches = [
        SampleBatch(
            instance=instance,
            order=order,
            trials=trials // workers + (1 if w < trials % workers else 0),
            seed=seed + w,
            path_budget=settings.sample_path_budget,
        )
        for w in range(workers)
    ]
    outcomes = ShardPool(workers).map(run_sample_batch, batches) if trials else []
    counterexamples = [g for outcome in outcomes for g in outcome.counterexamples]
    inconclusive = sum(outcome.inconclusive for outcome in outcomes)
    if counterexamples:
        logger.warning(f"{instance.label()} order {order}: {len(counterexamples)} sampled counterexamples")
    return VerificationReport(
        kind="sample",
        instance=instance,
        order=order,
        classes_total=trials,
        classes_failed=len(counterexamples),
        inconclusive=inconclusive,
        counterexamples=counterexamples,
        elapsed_ms=_elapsed_ms(started),
        seed=seed,
    )


def _coverage(
    job: ShardJob,
    operation: str,
    parameters: dict[str, int],
    shards: Optional[int],
    sink: Optional[FalsificationSink],
) -> ExtractorCoverage:
    started = time.perf_counter()
    states = _run_job(job, shards, None)
    tallies: dict[str, int] = {}
    for state in states:
        for key, amount in state.tallies.items():
            tallies[key] = tallies.get(key, 0) + amount
    records = [FalsificationRecord.model_validate_json(f) for state in states for f in state.findings]
    if sink is not None:
        for record in records:
            sink.append(record)
    hosts = tallies.pop("hosts", 0)
    coverage = ExtractorCoverage(
        operation=operation,
        order=job.order,
        parameters=parameters,
        classes_total=sum(state.processed for state in states),
        hosts=hosts,
        subcase_tallies=dict(sorted(tallies.items())),
        falsifications=records,
        complete=all(state.complete for state in states),
        elapsed_ms=_elapsed_ms(started),
    )
    logger.info(
        f"{operation} order {job.order}: {hosts} hosts, {coverage.fallbacks} fallbacks, "
        f"{len(records)} falsifications"
    )
    return coverage


def verify_extractors(
    order: int,
    n: int,
    m: int,
    shards: Optional[int] = None,
    sink: Optional[FalsificationSink] = None,
) -> ExtractorCoverage:
    """Run the longest-path extractor on every P_n-free class of order n + m - 1."""
    if m not in THEOREM1_PARAMETERS or n < 2 * m + 1:
        raise PreconditionError(f"no extractor for n={n}, m={m}")
    if order != n + m - 1:
        raise PreconditionError(f"extractor hosts have order n + m - 1 = {n + m - 1}, got {order}")
    job = ShardJob("theorem1-extract", RamseyInstance(k=1, n=n, m=m), order)
    return _coverage(job, "extract_jahangir_theorem1", {"n": n, "m": m}, shards, sink)


def verify_theorem2_base(
    shards: Optional[int] = None, sink: Optional[FalsificationSink] = None
) -> ExtractorCoverage:
    """Run the order-9 extractor on every class without 2P_4."""
    job = ShardJob("theorem2-extract", THEOREM2_BASE, 9)
    return _coverage(job, "extract_j4_theorem2_base", {"k": 2, "n": 4}, shards, sink)
