import networkx as nx
import pytest
from hypothesis import given, settings

from jahangir_ramsey.core.errors import CeilingExceededError, Graph6Error
from jahangir_ramsey.domain.graph import Graph, from_edges, make_standard
from jahangir_ramsey.utils.graph6 import describe, emit_graph6, parse_graph6
from tests.strategies import graphs, to_networkx


@pytest.mark.parametrize(
    "text, graph",
    [
        ("@", make_standard("complete", [1])),
        ("Bw", make_standard("complete", [3])),
        ("Bg", from_edges(3, [(0, 1), (1, 2)])),
        ("A_", make_standard("complete", [2])),
        ("A?", make_standard("empty", [2])),
    ],
)
def test_known_encodings(text: str, graph: Graph) -> None:
    assert parse_graph6(text) == graph
    assert emit_graph6(graph) == text


def test_parse_ignores_surrounding_whitespace() -> None:
    assert parse_graph6("  Bw\n") == make_standard("complete", [3])


@settings(max_examples=300)
@given(graphs(max_order=10))
def test_matches_networkx_encoder(graph: Graph) -> None:
    expected = nx.to_graph6_bytes(to_networkx(graph), header=False).decode().strip()
    assert emit_graph6(graph) == expected
    assert parse_graph6(expected) == graph


def test_order_62_is_the_largest_single_byte_size() -> None:
    big = make_standard("path", [62])
    assert parse_graph6(emit_graph6(big)) == big
    with pytest.raises(CeilingExceededError):
        emit_graph6(make_standard("path", [63]))


@pytest.mark.parametrize(
    "text",
    [
        "",
        "B",  # missing edge byte
        "Bww",  # one byte too many
        "B\x7f",  # byte above 126
        "B ",  # byte below 63
        "Bx",  # nonzero padding
        "~?@A",  # multi-byte size form
        "?",  # order zero
    ],
)
def test_malformed_strings(text: str) -> None:
    with pytest.raises(Graph6Error):
        parse_graph6(text)


def test_describe_switches_to_edge_list_above_the_ceiling() -> None:
    assert describe(make_standard("complete", [3])) == "Bw"
    listed = describe(make_standard("path", [64]))
    assert listed.startswith("64:0-1,1-2,")
    assert listed.endswith("62-63")
