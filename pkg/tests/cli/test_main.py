import io
import json
from pathlib import Path
from typing import Any

import pytest

from jahangir_ramsey.cli.main import EXIT_CEILING, EXIT_FOUND, EXIT_OK, EXIT_USAGE, run
from jahangir_ramsey.domain.graph import disjoint_union, make_standard
from jahangir_ramsey.schemas.checkpoint import VerificationCheckpoint
from jahangir_ramsey.utils.graph6 import describe, emit_graph6, parse_graph6


def _run(*argv: str, stdin: str = "") -> tuple[int, dict[str, Any]]:
    out = io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out)
    return code, json.loads(out.getvalue())


def test_enumerate_count_only() -> None:
    code, report = _run("enumerate", "6", "--count-only")
    assert code == EXIT_OK
    assert report["schema_version"] == 1
    assert report["totals"] == {"classes": 156}
    assert report["details"] == {}


def test_enumerate_lists_graph6() -> None:
    code, report = _run("enumerate", "3")
    assert code == EXIT_OK
    assert sorted(g.edge_count for g in map(parse_graph6, report["details"]["graphs"])) == [0, 1, 2, 3]


def test_witness_for_two_p4() -> None:
    code, report = _run("witness", "2", "4", "2")
    assert code == EXIT_OK
    assert report["order"] == 8
    assert report["details"]["witness"] == emit_graph6(make_standard("union_of_completes", [1, 7]))
    assert report["details"]["claimed_value"] == 9


def test_verify_confirms_p4_j4() -> None:
    code, report = _run("verify", "1", "4", "2", "--shards", "1")
    assert code == EXIT_OK
    assert report["order"] == 6
    assert report["failures"] == 0
    assert report["details"]["confirmed"] is True
    assert report["details"]["witness_order"] == 5


def test_verify_below_the_value_reports_counterexamples() -> None:
    code, report = _run("verify", "1", "4", "2", "--order", "5", "--shards", "1")
    assert code == EXIT_FOUND
    assert report["failures"] == len(report["counterexamples"]) >= 1


def test_verify_beyond_the_ceiling() -> None:
    code, report = _run("verify", "1", "11", "5", "--shards", "1")
    assert code == EXIT_CEILING
    assert "ceiling" in report["details"]["error"]


@pytest.mark.parametrize(
    "argv",
    [
        ("witness", "1", "3", "2"),
        ("witness", "0", "4", "2"),
        ("gen", "cycle", "2"),
        ("gen", "kpaths", "2"),
        ("extract", "thm1", "7"),
    ],
)
def test_usage_errors(argv: tuple[str, ...]) -> None:
    code, report = _run(*argv)
    assert code == EXIT_USAGE
    assert report["details"]["error"]


def test_argparse_rejects_unknown_commands() -> None:
    with pytest.raises(SystemExit) as raised:
        run(["frobnicate"], stdin=io.StringIO(), stdout=io.StringIO())
    assert raised.value.code == EXIT_USAGE


def test_gen() -> None:
    code, report = _run("gen", "complete", "3")
    assert code == EXIT_OK
    assert report["details"]["graph6"] == "Bw"
    _, forest = _run("gen", "kpaths", "2", "4")
    assert forest["order"] == 8
    assert forest["details"]["edges"] == 6


def test_contains_path_over_several_graphs() -> None:
    code, report = _run("contains", "path", "3", stdin="Bg\nBw\n\n@\n")
    assert code == EXIT_OK
    assert report["totals"] == {"graphs": 3, "found": 2, "absent": 1}


def test_contains_jahangir_in_the_complement() -> None:
    empty = emit_graph6(make_standard("empty", [5]))
    code, report = _run("contains", "jahangir", "2", "--complement", stdin=empty)
    assert code == EXIT_OK
    assert report["totals"]["found"] == 1


@pytest.mark.parametrize("stdin", ["B\n", ""])
def test_contains_rejects_bad_input(stdin: str) -> None:
    code, _ = _run("contains", "path", "3", stdin=stdin)
    assert code == EXIT_USAGE


def test_contains_checks_arity() -> None:
    code, _ = _run("contains", "kpaths", "2", stdin="Bw")
    assert code == EXIT_USAGE


def test_bound() -> None:
    code, report = _run("bound", "Bw", emit_graph6(make_standard("path", [4])))
    assert code == EXIT_OK
    assert report["details"]["bound"] == 7


def test_sample_finds_order_5_witnesses() -> None:
    code, report = _run(
        "sample", "1", "4", "2", "--order", "5", "--trials", "1000", "--seed", "1", "--shards", "1"
    )
    assert code == EXIT_FOUND
    assert report["seed"] == 1
    assert report["totals"]["trials"] == 1000
    assert report["failures"] >= 1


def test_extract_theorem1_on_empty_host() -> None:
    code, report = _run("extract", "thm1", "7", "3", stdin=emit_graph6(make_standard("empty", [9])))
    assert code == EXIT_OK
    assert report["subcase_tallies"] == {"2.1": 1}
    [result] = report["details"]["results"]
    assert len(result["cycle"]) == 6


def test_extract_theorem2_base() -> None:
    host = disjoint_union(make_standard("union_of_completes", [1, 7]), make_standard("complete", [1]))
    code, report = _run("extract", "thm2", stdin=emit_graph6(host))
    assert code == EXIT_OK
    assert report["subcase_tallies"] == {"T2-C2": 1}


def test_extract_k_paths() -> None:
    code, report = _run("extract", "kpaths", "2", "7", "3", stdin=emit_graph6(make_standard("complete", [16])))
    assert code == EXIT_OK
    [result] = report["details"]["results"]
    assert len(result["paths"]) == 2


def test_extract_rejects_a_host_with_the_path() -> None:
    code, _ = _run("extract", "thm1", "7", "3", stdin=emit_graph6(make_standard("cycle", [9])))
    assert code == EXIT_USAGE


def test_witness_beyond_the_path_ceiling() -> None:
    code, report = _run("witness", "2", "13", "3")
    assert code == EXIT_OK
    assert report["order"] == 27
    assert report["details"]["witness"] == emit_graph6(make_standard("union_of_completes", [2, 25]))


def test_witness_beyond_graph6_is_an_edge_list() -> None:
    code, report = _run("witness", "1", "70", "3")
    assert code == EXIT_OK
    assert report["order"] == 71
    assert report["details"]["witness"] == describe(make_standard("union_of_completes", [2, 69]))
    assert report["details"]["witness"].startswith("71:0-1,")


def test_verify_writes_the_checkpoint_without_order(tmp_path: Path) -> None:
    path = tmp_path / "p4j4.json"
    code, report = _run("verify", "1", "4", "2", "--shards", "1", "--checkpoint", str(path))
    assert code == EXIT_OK
    assert report["checkpoint"] == str(path)
    assert VerificationCheckpoint.model_validate_json(path.read_text(encoding="utf-8")).complete


def test_sample_above_the_graph_limit() -> None:
    code, report = _run("sample", "1", "4", "2", "--order", "200", "--trials", "1", "--shards", "1")
    assert code == EXIT_CEILING
    assert "ceiling" in report["details"]["error"]
