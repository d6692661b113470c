import argparse
import sys
import time
from typing import Any, Optional, Sequence, TextIO

from pydantic import ValidationError
from result import Err, Ok, Result

from jahangir_ramsey.cli.graph6 import describe, parse_graph6
from jahangir_ramsey.core.config import settings
from jahangir_ramsey.core.errors import (
    CeilingExceededError,
    CheckpointMismatchError,
    Graph6Error,
    GraphValueError,
    OutOfProvenRangeError,
    PreconditionError,
    TheoremFalsifiedError,
)
from jahangir_ramsey.domain.detect import (
    contains_disjoint_paths,
    contains_jahangir,
    contains_path,
)
from jahangir_ramsey.domain.enumeration import enumerate_graphs
from jahangir_ramsey.domain.extract import (
    extract_j4_theorem2_base,
    extract_jahangir_theorem1,
    extract_k_paths,
)
from jahangir_ramsey.domain.graph import Graph, GraphFamily, make_standard, path_forest
from jahangir_ramsey.domain.ramsey import chvatal_harary_bound, claim
from jahangir_ramsey.schemas.instance import RamseyInstance
from jahangir_ramsey.schemas.report import ExtractorCoverage, Report
from jahangir_ramsey.services.falsification_sink import FalsificationSink
from jahangir_ramsey.services.verification_service import (
    sample_check,
    verify_extractors,
    verify_lower,
    verify_ramsey,
    verify_theorem2_base,
    verify_upper,
)
from jahangir_ramsey.utils.logger import get_logger, setup_custom_logging

logger = get_logger("cli")

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_CEILING = 3

Outcome = tuple[Report, int]


def _emit(report: Report, stream: TextIO) -> None:
    stream.write(report.model_dump_json(indent=2) + "\n")


def _read_graphs(stream: TextIO) -> Result[list[Graph], str]:
    graphs: list[Graph] = []
    for number, line in enumerate(stream, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            graphs.append(parse_graph6(text))
        except Graph6Error as exc:
            return Err(f"line {number}: {exc}")
    if not graphs:
        return Err("no graph6 input on standard input")
    return Ok(graphs)


def _graphs_or_raise(stream: TextIO) -> list[Graph]:
    read = _read_graphs(stream)
    if isinstance(read, Err):
        raise Graph6Error(read.err_value)
    return read.ok_value


def _instance(args: argparse.Namespace) -> RamseyInstance:
    return RamseyInstance(k=args.k, n=args.n, m=args.m)


def _claim_details(instance: RamseyInstance) -> dict[str, Any]:
    found = claim(instance)
    return {
        "claimed_value": found.value,
        "source": found.source.value,
        "desk_verifiable": found.desk_verifiable,
        "note": found.note,
    }


def cmd_gen(args: argparse.Namespace, stdin: TextIO) -> Outcome:
    if args.family == "kpaths":
        if len(args.params) != 2:
            raise GraphValueError("kpaths takes <k> <n>")
        graph = path_forest(args.params[0], args.params[1])
    else:
        graph = make_standard(args.family, args.params)
    details = {"graph6": describe(graph), "edges": graph.edge_count}
    return Report(command="gen", order=graph.order, details=details), EXIT_OK


def _lookup(pattern: str, params: list[int], graph: Graph) -> Optional[list[list[int]]]:
    if pattern == "path":
        path = contains_path(graph, params[0])
        return [list(path.mapping)] if path is not None else None
    if pattern == "kpaths":
        paths = contains_disjoint_paths(graph, params[0], params[1])
        return [list(p.mapping) for p in paths] if paths is not None else None
    found = contains_jahangir(graph, params[0])
    return [list(found.to_embedding().mapping)] if found is not None else None


def cmd_contains(args: argparse.Namespace, stdin: TextIO) -> Outcome:
    graphs = _graphs_or_raise(stdin)
    params = args.params
    arity = {"path": 1, "kpaths": 2, "jahangir": 1}
    if len(params) != arity[args.pattern]:
        raise PreconditionError(f"{args.pattern} takes {arity[args.pattern]} parameter(s)")

    results = []
    for graph in graphs:
        embeddings = _lookup(args.pattern, params, graph.complement() if args.complement else graph)
        results.append({"graph6": describe(graph), "embeddings": embeddings})
    found_count = sum(1 for r in results if r["embeddings"] is not None)
    report = Report(
        command="contains",
        totals={"graphs": len(graphs), "found": found_count, "absent": len(graphs) - found_count},
        details={"pattern": args.pattern, "params": params, "complement": args.complement, "results": results},
    )
    return report, EXIT_OK


def cmd_witness(args: argparse.Namespace, stdin: TextIO) -> Outcome:
    instance = _instance(args)
    lower = verify_lower(instance)
    report = Report(
        command="witness",
        instance=instance,
        order=lower.order,
        elapsed_ms=lower.elapsed_ms,
        details={"witness": lower.witness, **_claim_details(instance)},
    )
    return report, EXIT_OK if lower.confirmed else EXIT_FOUND


def cmd_verify(args: argparse.Namespace, stdin: TextIO) -> Outcome:
    instance = _instance(args)
    if args.order is not None:
        upper = verify_upper(instance, args.order, args.shards, args.checkpoint)
        report = Report(
            command="verify",
            instance=instance,
            order=args.order,
            totals={"classes": upper.classes_total},
            failures=upper.classes_failed,
            counterexamples=upper.counterexamples,
            elapsed_ms=upper.elapsed_ms,
            checkpoint=upper.checkpoint,
            details={"complete": upper.complete, **_claim_details(instance)},
        )
        return report, EXIT_OK if upper.confirmed else EXIT_FOUND

    upper, lower = verify_ramsey(instance, args.shards, args.checkpoint)
    confirmed = upper.confirmed and lower.confirmed
    report = Report(
        command="verify",
        instance=instance,
        order=upper.order,
        totals={"classes": upper.classes_total},
        failures=upper.classes_failed,
        counterexamples=upper.counterexamples,
        elapsed_ms=round(upper.elapsed_ms + lower.elapsed_ms, 3),
        checkpoint=upper.checkpoint,
        details={
            "confirmed": confirmed,
            "witness": lower.witness,
            "witness_order": lower.order,
            **_claim_details(instance),
        },
    )
    return report, EXIT_OK if confirmed else EXIT_FOUND


def _coverage_report(coverage: ExtractorCoverage) -> Outcome:
    report = Report(
        command="extract",
        order=coverage.order,
        totals={"classes": coverage.classes_total, "hosts": coverage.hosts},
        failures=len(coverage.falsifications),
        counterexamples=[record.graph6 for record in coverage.falsifications],
        subcase_tallies=coverage.subcase_tallies,
        elapsed_ms=coverage.elapsed_ms,
        details={
            "operation": coverage.operation,
            "parameters": coverage.parameters,
            "fallback_fraction": coverage.fallback_fraction,
        },
    )
    return report, EXIT_FOUND if coverage.falsifications else EXIT_OK


def cmd_extract(args: argparse.Namespace, stdin: TextIO) -> Outcome:
    sink = FalsificationSink()
    params = args.params
    arity = {"thm1": 2, "thm2": 0, "kpaths": 3}
    if len(params) != arity[args.theorem]:
        raise PreconditionError(f"{args.theorem} takes {arity[args.theorem]} parameter(s)")

    if args.all:
        if args.theorem == "thm1":
            n, m = params
            return _coverage_report(verify_extractors(n + m - 1, n, m, args.shards, sink))
        if args.theorem == "thm2":
            return _coverage_report(verify_theorem2_base(args.shards, sink))
        raise PreconditionError("--all covers thm1 and thm2 only")

    started = time.perf_counter()
    tallies: dict[str, int] = {}
    results: list[dict[str, Any]] = []
    falsified: list[str] = []
    instance: Optional[RamseyInstance] = None
    if args.theorem == "kpaths":
        instance = RamseyInstance(k=params[0], n=params[1], m=params[2])
    for graph in _graphs_or_raise(stdin):
        try:
            if instance is not None:
                paths = extract_k_paths(graph, instance, sink)
                results.append({"graph6": describe(graph), "paths": [list(p.mapping) for p in paths]})
                continue
            if args.theorem == "thm1":
                found, trace = extract_jahangir_theorem1(graph, params[0], params[1], sink)
            else:
                found, trace = extract_j4_theorem2_base(graph, sink)
        except TheoremFalsifiedError as exc:
            falsified.append(exc.record.graph6)
            continue
        tallies[trace.subcase] = tallies.get(trace.subcase, 0) + 1
        results.append(
            {
                "graph6": describe(graph),
                "hub": found.hub,
                "cycle": list(found.cycle),
                "trace": trace.model_dump(),
            }
        )

    report = Report(
        command="extract",
        instance=instance,
        totals={"graphs": len(results) + len(falsified), "certified": len(results)},
        failures=len(falsified),
        counterexamples=falsified,
        subcase_tallies=dict(sorted(tallies.items())),
        elapsed_ms=round((time.perf_counter() - started) * 1000, 3),
        details={"theorem": args.theorem, "params": params, "results": results},
    )
    return report, EXIT_FOUND if falsified else EXIT_OK


def cmd_enumerate(args: argparse.Namespace, stdin: TextIO) -> Outcome:
    started = time.perf_counter()
    graphs: list[str] = []

    def keep(graph: Graph) -> None:
        if not args.count_only:
            graphs.append(describe(graph))

    count = enumerate_graphs(args.order, keep)
    details: dict[str, Any] = {} if args.count_only else {"graphs": graphs}
    report = Report(
        command="enumerate",
        order=args.order,
        totals={"classes": count},
        elapsed_ms=round((time.perf_counter() - started) * 1000, 3),
        details=details,
    )
    return report, EXIT_OK


def cmd_bound(args: argparse.Namespace, stdin: TextIO) -> Outcome:
    g = parse_graph6(args.g)
    h = parse_graph6(args.h)
    details = {
        "bound": chvatal_harary_bound(g, h),
        "chromatic_number": g.chromatic_number(),
        "largest_component": h.largest_component_order(),
    }
    return Report(command="bound", details=details), EXIT_OK


def cmd_sample(args: argparse.Namespace, stdin: TextIO) -> Outcome:
    instance = _instance(args)
    sampled = sample_check(instance, args.order, args.trials, args.seed, args.shards)
    report = Report(
        command="sample",
        instance=instance,
        order=args.order,
        totals={
            "trials": sampled.classes_total,
            "inconclusive": sampled.inconclusive,
            "passed": sampled.classes_total - sampled.inconclusive - sampled.classes_failed,
        },
        failures=sampled.classes_failed,
        counterexamples=sampled.counterexamples,
        elapsed_ms=sampled.elapsed_ms,
        seed=args.seed,
        details=_claim_details(instance),
    )
    return report, EXIT_FOUND if sampled.counterexamples else EXIT_OK


def _add_instance(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("k", type=int, help="Number of disjoint paths")
    parser.add_argument("n", type=int, help="Vertices per path")
    parser.add_argument("m", type=int, help="Jahangir parameter (J_2m)")


def _add_shards(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--shards",
        type=int,
        default=settings.default_shards,
        help=f"Worker processes (default: logical cores, {settings.default_shards})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jahangir-ramsey",
        description="Verify Ramsey numbers R(kP_n, J_2m) of paths versus Jahangir graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Emit a standard graph as graph6")
    gen.add_argument("family", choices=[f.value for f in GraphFamily] + ["kpaths"])
    gen.add_argument("params", type=int, nargs="*")
    gen.set_defaults(handler=cmd_gen)

    contains = sub.add_parser("contains", help="Search graph6 graphs on standard input for a pattern")
    contains.add_argument("pattern", choices=["path", "kpaths", "jahangir"])
    contains.add_argument("params", type=int, nargs="+")
    contains.add_argument("--complement", action="store_true", help="Search the complement")
    contains.set_defaults(handler=cmd_contains)

    witness = sub.add_parser("witness", help="Lower-bound witness of order R - 1")
    _add_instance(witness)
    witness.set_defaults(handler=cmd_witness)

    verify = sub.add_parser("verify", help="Exhaustive verification of a claimed value")
    _add_instance(verify)
    verify.add_argument("--order", type=int, default=None, help="Check only this order")
    _add_shards(verify)
    verify.add_argument("--checkpoint", default=None, help="Checkpoint file to resume from")
    verify.set_defaults(handler=cmd_verify)

    extract = sub.add_parser("extract", help="Certified embeddings from the constructive proofs")
    extract.add_argument("theorem", choices=["thm1", "thm2", "kpaths"])
    extract.add_argument("params", type=int, nargs="*")
    extract.add_argument("--all", action="store_true", help="Run over every enumerated host")
    _add_shards(extract)
    extract.set_defaults(handler=cmd_extract)

    enumerate_ = sub.add_parser("enumerate", help="Isomorph-free generation")
    enumerate_.add_argument("order", type=int)
    enumerate_.add_argument("--count-only", action="store_true")
    enumerate_.set_defaults(handler=cmd_enumerate)

    bound = sub.add_parser("bound", help="Chvatal-Harary lower bound for two graph6 graphs")
    bound.add_argument("g")
    bound.add_argument("h")
    bound.set_defaults(handler=cmd_bound)

    sample = sub.add_parser("sample", help="Seeded random probe at one order")
    _add_instance(sample)
    sample.add_argument("--order", type=int, required=True)
    sample.add_argument("--trials", type=int, required=True)
    sample.add_argument("--seed", type=int, required=True)
    _add_shards(sample)
    sample.set_defaults(handler=cmd_sample)

    return parser


def run(
    argv: Optional[Sequence[str]] = None,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
) -> int:
    """Parse, dispatch, print one report; returns the exit code."""
    args = build_parser().parse_args(argv)
    try:
        report, code = args.handler(args, stdin or sys.stdin)
    except CeilingExceededError as exc:
        logger.error(str(exc))
        report, code = Report(command=args.command, details={"error": str(exc)}), EXIT_CEILING
    except (
        GraphValueError,
        Graph6Error,
        PreconditionError,
        OutOfProvenRangeError,
        CheckpointMismatchError,
        ValidationError,
    ) as exc:
        logger.error(str(exc))
        report, code = Report(command=args.command, details={"error": str(exc)}), EXIT_USAGE
    _emit(report, stdout or sys.stdout)
    return code


def main() -> int:
    setup_custom_logging()
    try:
        return run()
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return 130
