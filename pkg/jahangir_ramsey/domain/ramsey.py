"""Claimed Ramsey values R(kP_n, J_2m), the Chvatal-Harary bound and lower-bound witnesses."""

from dataclasses import dataclass
from enum import Enum
from typing import Literal, Optional

from jahangir_ramsey.core.errors import (
    OutOfProvenRangeError,
    PreconditionError,
    SearchBudgetExhausted,
    WitnessUnavailableError,
)
from jahangir_ramsey.domain.detect import (
    PATH_SEARCH_CEILING,
    contains_disjoint_paths,
    contains_jahangir,
    greedy_path_packing,
)
from jahangir_ramsey.domain.enumeration import iter_graphs
from jahangir_ramsey.domain.graph import MAX_ORDER, Graph, GraphFamily, make_standard, path_forest
from jahangir_ramsey.schemas.instance import RamseyInstance
from jahangir_ramsey.utils.bits import iter_bits


class ClaimSource(str, Enum):
    THEOREM_A = "theorem_a"
    THEOREM_1 = "theorem_1"
    THEOREM_2 = "theorem_2"
    THEOREM_3 = "theorem_3"
    OUT_OF_RANGE = "out_of_proven_range"


@dataclass(frozen=True, slots=True)
class Claim:
    value: Optional[int]
    source: ClaimSource
    desk_verifiable: bool = True
    note: str = ""

    @property
    def in_range(self) -> bool:
        return self.value is not None


_OUT_OF_RANGE = Claim(None, ClaimSource.OUT_OF_RANGE, desk_verifiable=False)


def large_m_threshold(m: int) -> int:
    """Smallest n covered for m >= 6: (4m-1)(m-1)+1."""
    return (4 * m - 1) * (m - 1) + 1


def claim(instance: RamseyInstance) -> Claim:
    k, n, m = instance.k, instance.n, instance.m
    if k == 1:
        if m == 2:
            if n == 4:
                return Claim(6, ClaimSource.THEOREM_A)
            if n >= 5:
                # The kP_n formula kn + 1 at k = 1 agrees
                return Claim(n + 1, ClaimSource.THEOREM_A)
            return _OUT_OF_RANGE
        if m in (3, 4, 5) and n >= 2 * m + 1:
            return Claim(n + m - 1, ClaimSource.THEOREM_1)
        if m >= 3 and n >= large_m_threshold(m):
            return Claim(n + m - 1, ClaimSource.THEOREM_A)
        return _OUT_OF_RANGE

    if m == 2:
        if n < 4:
            return _OUT_OF_RANGE
        if n == 4 and k >= 3:
            return Claim(
                k * n + 1,
                ClaimSource.THEOREM_2,
                desk_verifiable=False,
                note="n=4, k>=3: the induction base R(P_4, J_4) = 6 exceeds n + 1",
            )
        return Claim(k * n + 1, ClaimSource.THEOREM_2)
    if m in (3, 4, 5) and n >= 2 * m + 1:
        return Claim(k * n + m - 1, ClaimSource.THEOREM_3)
    if m >= 6 and n >= large_m_threshold(m):
        return Claim(k * n + m - 1, ClaimSource.THEOREM_3)
    return _OUT_OF_RANGE


def claimed_value(instance: RamseyInstance) -> Optional[int]:
    """The theorem table's R(kP_n, J_2m); None when no theorem applies."""
    return claim(instance).value


def path_pattern(instance: RamseyInstance) -> Graph:
    return path_forest(instance.k, instance.n)


def jahangir_pattern(instance: RamseyInstance) -> Graph:
    return make_standard(GraphFamily.JAHANGIR, [instance.m])


def chvatal_harary_bound(g: Graph, h: Graph) -> int:
    """(chi(G) - 1)(c(H) - 1) + 1."""
    return (g.chromatic_number() - 1) * (h.largest_component_order() - 1) + 1


def generic_witness(instance: RamseyInstance) -> Graph:
    """K_{m-1} U K_{kn-1} (K_1 U K_{kn-1} when m = 2)."""
    small = instance.m - 1
    large = instance.k * instance.n - 1
    if small + large > MAX_ORDER:
        raise PreconditionError(f"witness of order {small + large} exceeds {MAX_ORDER}")
    return make_standard(GraphFamily.UNION_OF_COMPLETES, [small, large])


def build_lower_witness(instance: RamseyInstance) -> Graph:
    """A graph of order R - 1 with no kP_n whose complement has no J_2m."""
    value = claimed_value(instance)
    if value is None:
        raise OutOfProvenRangeError(f"{instance.label()} is outside every proven range")
    witness = generic_witness(instance)
    if witness.order != value - 1:
        raise WitnessUnavailableError(
            f"{instance.label()}: generic construction has order {witness.order}, "
            f"need {value - 1}"
        )
    return witness


def clique_component_orders(graph: Graph) -> Optional[list[int]]:
    """Component orders when every component is complete, else None."""
    orders = []
    for component in graph.component_masks():
        if any(graph.rows[v] != component & ~(1 << v) for v in iter_bits(component)):
            return None
        orders.append(component.bit_count())
    return orders


def contains_path_pattern(graph: Graph, instance: RamseyInstance) -> bool:
    cliques = clique_component_orders(graph)
    if cliques is not None:
        # A clique of order s holds s // n disjoint copies of P_n
        return sum(size // instance.n for size in cliques) >= instance.k
    return contains_disjoint_paths(graph, instance.k, instance.n) is not None


def complement_contains_jahangir(graph: Graph, instance: RamseyInstance) -> bool:
    m = instance.m
    if graph.order < 2 * m + 1:
        return False
    cliques = clique_component_orders(graph)
    if cliques is not None and len(cliques) <= 2:
        # Complement is complete bipartite; J_2m has sides of m and m + 1
        small, large = sorted([*cliques, 0])[-2:]
        return small >= m and large >= m + 1
    return contains_jahangir(graph.complement(), m) is not None


def verify_witness(graph: Graph, instance: RamseyInstance) -> bool:
    """True iff F has no kP_n and its complement has no J_2m."""
    return not contains_path_pattern(graph, instance) and not complement_contains_jahangir(
        graph, instance
    )


def classify(graph: Graph, instance: RamseyInstance) -> Literal["pass", "fail"]:
    """``fail``: the graph avoids kP_n and its complement avoids J_2m."""
    if contains_path_pattern(graph, instance) or complement_contains_jahangir(graph, instance):
        return "pass"
    return "fail"


def classify_sampled(
    graph: Graph, instance: RamseyInstance, path_budget: int
) -> Literal["pass", "fail", "inconclusive"]:
    """As ``classify``, with a bounded path search above the exact ceiling."""
    if graph.order <= PATH_SEARCH_CEILING or clique_component_orders(graph) is not None:
        return classify(graph, instance)
    if complement_contains_jahangir(graph, instance):
        return "pass"
    try:
        packing = greedy_path_packing(graph, instance.k, instance.n, path_budget)
    except SearchBudgetExhausted:
        return "inconclusive"
    if packing is not None:
        return "pass"
    # The absence proof covers one copy, so it covers k copies too
    return "fail"


def find_witness_exhaustive(instance: RamseyInstance, order: int) -> Optional[Graph]:
    """First enumerated class of ``order`` avoiding kP_n with a J_2m-free complement."""
    for _, graph in iter_graphs(order):
        if classify(graph, instance) == "fail":
            return graph
    return None
