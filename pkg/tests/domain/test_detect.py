import itertools
from typing import Optional

import pytest
from hypothesis import given, settings
from networkx.algorithms.isomorphism import GraphMatcher

from jahangir_ramsey.core.errors import (
    CeilingExceededError,
    PreconditionError,
    SearchBudgetExhausted,
)
from jahangir_ramsey.domain.detect import (
    Embedding,
    contains_disjoint_paths,
    contains_jahangir,
    contains_path,
    find_monomorphism,
    greedy_path_packing,
    longest_path,
)
from jahangir_ramsey.domain.enumeration import enumerate_graphs
from jahangir_ramsey.domain.extract import validate_embedding, validate_jahangir_embedding
from jahangir_ramsey.domain.graph import Graph, make_standard, path_forest
from tests.strategies import graphs, to_networkx


def _is_path(graph: Graph, sequence: tuple[int, ...]) -> bool:
    return len(set(sequence)) == len(sequence) and all(
        graph.has_edge(a, b) for a, b in zip(sequence, sequence[1:])
    )


def _all_paths(graph: Graph, length: int) -> list[tuple[int, ...]]:
    return [p for p in itertools.permutations(range(graph.order), length) if _is_path(graph, p)]


def _brute_longest(graph: Graph) -> int:
    return max(length for length in range(1, graph.order + 1) if _all_paths(graph, length))


def _brute_disjoint(graph: Graph, k: int, n: int) -> bool:
    vertex_sets = {frozenset(p) for p in _all_paths(graph, n)}
    return any(
        len(frozenset().union(*combo)) == k * n
        for combo in itertools.combinations(vertex_sets, k)
    )


@given(graphs(max_order=6))
def test_longest_path_is_maximum_and_lexicographically_first(graph: Graph) -> None:
    found = longest_path(graph)
    assert _is_path(graph, found)
    assert len(found) == _brute_longest(graph)
    assert found == min(_all_paths(graph, len(found)))


def test_longest_path_of_edgeless_graph_is_a_vertex() -> None:
    assert longest_path(make_standard("empty", [4])) == (0,)


def test_longest_path_ceiling() -> None:
    with pytest.raises(CeilingExceededError):
        longest_path(make_standard("path", [25]))


@given(graphs(max_order=6))
def test_contains_path_matches_brute_force(graph: Graph) -> None:
    for n in range(1, graph.order + 1):
        found = contains_path(graph, n)
        assert (found is not None) == bool(_all_paths(graph, n))
        if found is not None:
            assert validate_embedding(make_standard("path", [n]), graph, found)
    assert contains_path(graph, graph.order + 1) is None


def test_cycle_has_hamiltonian_path() -> None:
    assert contains_path(make_standard("cycle", [9]), 9) is not None
    assert contains_path(make_standard("union_of_completes", [2, 6]), 7) is None


@settings(max_examples=60)
@given(graphs(max_order=7))
def test_contains_disjoint_paths_matches_brute_force(graph: Graph) -> None:
    for k, n in [(2, 2), (2, 3), (3, 2)]:
        found = contains_disjoint_paths(graph, k, n)
        assert (found is not None) == _brute_disjoint(graph, k, n)
        if found is not None:
            assert len(found) == k
            pattern = make_standard("path", [n])
            assert all(validate_embedding(pattern, graph, e) for e in found)
            images = [set(e.mapping) for e in found]
            assert len(set().union(*images)) == k * n


def test_disjoint_paths_in_path_forest() -> None:
    forest = path_forest(2, 4)
    assert contains_disjoint_paths(forest, 2, 4) is not None
    assert contains_disjoint_paths(forest, 1, 5) is None
    assert contains_disjoint_paths(make_standard("union_of_completes", [1, 7]), 2, 4) is None


@settings(max_examples=80)
@given(graphs(min_order=3, max_order=7))
def test_find_monomorphism_matches_networkx(host: Graph) -> None:
    for pattern in (
        make_standard("jahangir", [2]),
        make_standard("cycle", [4]),
        make_standard("path", [4]),
        make_standard("complete", [3]),
        make_standard("star", [4]),
    ):
        found: Optional[Embedding] = find_monomorphism(pattern, host)
        expected = GraphMatcher(to_networkx(host), to_networkx(pattern)).subgraph_is_monomorphic()
        assert (found is not None) == expected
        if found is not None:
            assert validate_embedding(pattern, host, found)


def test_restricted_search_stays_inside_the_mask() -> None:
    host = make_standard("complete", [8])
    allowed = 0b11111000
    found = find_monomorphism(make_standard("jahangir", [2]), host, restrict=allowed)
    assert found is not None
    assert found.image_mask & ~allowed == 0
    assert find_monomorphism(make_standard("jahangir", [2]), host, restrict=0b1111) is None


def test_jahangir_in_k_3_4() -> None:
    host = make_standard("complete_bipartite", [3, 4])
    found = contains_jahangir(host, 3)
    assert found is not None
    assert found.m == 3
    assert validate_jahangir_embedding(host, 3, found)
    assert validate_embedding(make_standard("jahangir", [3]), host, found.to_embedding())


def test_no_jahangir_when_a_side_is_too_small() -> None:
    # J_6 is bipartite with sides of 3 and 4
    assert contains_jahangir(make_standard("complete_bipartite", [2, 6]), 3) is None
    assert contains_jahangir(make_standard("star", [8]), 2) is None


def test_contains_jahangir_preconditions() -> None:
    with pytest.raises(PreconditionError):
        contains_jahangir(make_standard("complete", [9]), 1)
    with pytest.raises(PreconditionError):
        contains_jahangir(make_standard("complete", [6]), 3)


def test_node_budget_raises() -> None:
    with pytest.raises(SearchBudgetExhausted):
        find_monomorphism(
            make_standard("jahangir", [3]), make_standard("complete_bipartite", [3, 4]), node_budget=3
        )


def test_greedy_packing_beyond_the_exact_ceiling() -> None:
    packed = greedy_path_packing(make_standard("complete", [30]), 3, 5, budget=10_000)
    assert packed is not None and len(packed) == 3
    assert len({v for e in packed for v in e.mapping}) == 15
    assert greedy_path_packing(make_standard("empty", [30]), 1, 2, budget=10_000) is None


def _classes(order: int) -> list[Graph]:
    found: list[Graph] = []
    enumerate_graphs(order, found.append)
    return found


def _brute_jahangir(host: Graph, m: int) -> bool:
    pattern = make_standard("jahangir", [m])
    edges = list(pattern.edges())
    return any(
        all(host.has_edge(image[u], image[v]) for u, v in edges)
        for image in itertools.permutations(range(host.order), pattern.order)
    )


@pytest.mark.parametrize("order", range(1, 7))
def test_oracles_agree_with_brute_force_on_every_class(order: int) -> None:
    for graph in _classes(order):
        longest = longest_path(graph)
        assert _is_path(graph, longest)
        assert len(longest) == _brute_longest(graph)
        for n in range(1, order + 1):
            assert (contains_path(graph, n) is not None) == bool(_all_paths(graph, n))
        for k, n in [(2, 1), (2, 2), (2, 3), (3, 2)]:
            assert (contains_disjoint_paths(graph, k, n) is not None) == _brute_disjoint(graph, k, n)
        if order >= 5:
            for host in (graph, graph.complement()):
                assert (contains_jahangir(host, 2) is not None) == _brute_jahangir(host, 2)


@given(graphs(max_order=7))
def test_contains_path_is_monotone_in_length(graph: Graph) -> None:
    present = [contains_path(graph, n) is not None for n in range(1, graph.order + 2)]
    assert present == sorted(present, reverse=True)


@pytest.mark.parametrize("m", range(2, 6))
def test_jahangir_in_complete_bipartite_m_by_m_plus_one(m: int) -> None:
    host = make_standard("complete_bipartite", [m, m + 1])
    found = contains_jahangir(host, m)
    assert found is not None
    assert validate_jahangir_embedding(host, m, found)
