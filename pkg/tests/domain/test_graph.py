import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jahangir_ramsey.core.errors import CeilingExceededError, GraphValueError
from jahangir_ramsey.domain.graph import (
    Graph,
    GraphFamily,
    chromatic_number,
    complement,
    disjoint_union,
    from_edges,
    largest_component_order,
    make_standard,
    neighbors_in,
    path_forest,
)
from jahangir_ramsey.utils.bits import mask_of
from tests.strategies import graphs, to_networkx


def test_from_edges_builds_path_and_collapses_duplicates() -> None:
    graph = from_edges(3, [(0, 1), (1, 2), (1, 0)])
    assert list(graph.edges()) == [(0, 1), (1, 2)]
    assert graph.edge_count == 2


def test_from_edges_single_vertex() -> None:
    graph = from_edges(1, [])
    assert graph.order == 1
    assert graph.edge_count == 0


@pytest.mark.parametrize(
    "order, edges",
    [(3, [(0, 0)]), (3, [(0, 3)]), (0, []), (129, [])],
)
def test_from_edges_rejects_invalid_input(order: int, edges: list[tuple[int, int]]) -> None:
    with pytest.raises(GraphValueError):
        from_edges(order, edges)


def test_constructor_validates_rows() -> None:
    with pytest.raises(GraphValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(GraphValueError):
        Graph(2, (0b01, 0b00))  # loop
    with pytest.raises(GraphValueError):
        Graph(2, (0b100, 0))  # bit beyond order


def test_jahangir_shape() -> None:
    j6 = make_standard(GraphFamily.JAHANGIR, [3])
    assert j6.order == 7
    assert j6.edge_count == 9
    hub = 6
    assert [v for v in range(6) if j6.has_edge(hub, v)] == [0, 2, 4]


def test_jahangir_4_is_k_2_3() -> None:
    j4 = make_standard("jahangir", [2])
    k23 = make_standard("complete_bipartite", [2, 3])
    assert nx.is_isomorphic(to_networkx(j4), to_networkx(k23))


def test_wheel_hub_sees_every_cycle_vertex() -> None:
    wheel = make_standard("wheel", [5])
    assert wheel.order == 6
    assert wheel.degree(5) == 5
    assert all(wheel.degree(v) == 3 for v in range(5))


def test_union_of_completes_blocks() -> None:
    graph = make_standard("union_of_completes", [2, 6])
    assert graph.order == 8
    assert graph.edge_count == 1 + 15
    assert not any(graph.has_edge(u, v) for u in (0, 1) for v in range(2, 8))


@pytest.mark.parametrize(
    "kind, params",
    [("cycle", [2]), ("wheel", [2]), ("jahangir", [1]), ("star", [1]), ("path", [0]), ("complete_bipartite", [2])],
)
def test_make_standard_rejects_small_parameters(kind: str, params: list[int]) -> None:
    with pytest.raises(GraphValueError):
        make_standard(kind, params)


def test_complement_of_complete_is_empty() -> None:
    assert complement(make_standard("complete", [5])) == make_standard("empty", [5])


def test_complement_of_k1_k7_is_star() -> None:
    assert complement(make_standard("union_of_completes", [1, 7])) == make_standard("star", [8])


@given(graphs())
def test_complement_is_an_involution(graph: Graph) -> None:
    assert complement(complement(graph)) == graph
    assert graph.edge_count + complement(graph).edge_count == graph.order * (graph.order - 1) // 2


def test_disjoint_union_places_first_operand_first() -> None:
    union = disjoint_union(make_standard("complete", [1]), make_standard("complete", [7]))
    assert union == make_standard("union_of_completes", [1, 7])


def test_path_forest_is_k_copies() -> None:
    forest = path_forest(2, 4)
    assert forest == disjoint_union(make_standard("path", [4]), make_standard("path", [4]))
    assert len(forest.component_masks()) == 2


def test_disjoint_union_rejects_empty_operand() -> None:
    with pytest.raises(GraphValueError):
        disjoint_union(make_standard("complete", [3]), make_standard("empty", [0]))


def test_neighbors_in() -> None:
    p4 = make_standard("path", [4])
    assert neighbors_in(p4, 1, mask_of([0, 2, 3])) == mask_of([0, 2])
    assert neighbors_in(make_standard("complete", [5]), 0, mask_of([1, 2])) == mask_of([1, 2])
    assert neighbors_in(make_standard("empty", [5]), 0, 0b11111) == 0
    with pytest.raises(GraphValueError):
        neighbors_in(p4, 4, 0b1111)


@pytest.mark.parametrize(
    "graph, expected",
    [
        (make_standard("union_of_completes", [2, 6]), 6),
        (make_standard("jahangir", [3]), 7),
        (make_standard("empty", [5]), 1),
    ],
)
def test_largest_component_order(graph: Graph, expected: int) -> None:
    assert largest_component_order(graph) == expected


@pytest.mark.parametrize(
    "graph, expected",
    [
        (make_standard("path", [7]), 2),
        (make_standard("complete", [4]), 4),
        (make_standard("jahangir", [3]), 2),
        (make_standard("cycle", [5]), 3),
        (make_standard("empty", [3]), 1),
        (make_standard("wheel", [5]), 4),
    ],
)
def test_chromatic_number(graph: Graph, expected: int) -> None:
    assert chromatic_number(graph) == expected


def test_chromatic_number_ceiling() -> None:
    with pytest.raises(CeilingExceededError):
        chromatic_number(make_standard("path", [17]))


@given(graphs(max_order=5))
def test_chromatic_number_matches_brute_force(graph: Graph) -> None:
    def proper(colors: int) -> bool:
        for coloring in itertools.product(range(colors), repeat=graph.order):
            if all(coloring[u] != coloring[v] for u, v in graph.edges()):
                return True
        return False

    expected = next(c for c in range(1, graph.order + 1) if proper(c))
    assert chromatic_number(graph) == expected


@given(graphs())
def test_relabel_preserves_structure(graph: Graph) -> None:
    perm = list(reversed(range(graph.order)))
    relabelled = graph.relabel(perm)
    assert relabelled.edge_count == graph.edge_count
    assert all(relabelled.has_edge(perm[u], perm[v]) for u, v in graph.edges())


def test_induced_returns_old_labels() -> None:
    cycle = make_standard("cycle", [5])
    induced, labels = cycle.induced(mask_of([0, 1, 2]))
    assert labels == (0, 1, 2)
    assert induced == make_standard("path", [3])


def test_add_and_remove_vertex() -> None:
    p3 = make_standard("path", [3])
    grown = p3.add_vertex(mask_of([2]))
    assert grown == make_standard("path", [4])
    assert grown.remove_vertex(3) == p3


@pytest.mark.parametrize("m", range(2, 11))
def test_jahangir_order_and_size(m: int) -> None:
    jahangir = make_standard("jahangir", [m])
    assert jahangir.order == 2 * m + 1
    assert jahangir.edge_count == 3 * m


@pytest.mark.parametrize("a, b", [(1, 1), (1, 5), (2, 3), (3, 4), (6, 6)])
def test_complete_bipartite_is_two_colourable(a: int, b: int) -> None:
    assert chromatic_number(make_standard("complete_bipartite", [a, b])) == 2


@given(graphs(), st.data())
def test_neighbors_in_is_symmetric_and_inside_the_set(graph: Graph, data: st.DataObject) -> None:
    vertex_set = data.draw(st.integers(min_value=0, max_value=graph.vertex_mask))
    for x in range(graph.order):
        assert neighbors_in(graph, x, vertex_set) & ~vertex_set == 0
        for y in range(graph.order):
            assert bool(neighbors_in(graph, x, 1 << y)) == bool(neighbors_in(graph, y, 1 << x))
