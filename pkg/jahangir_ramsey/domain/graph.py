"""Immutable small graphs stored as per-vertex neighbour bit rows."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from jahangir_ramsey.core.errors import GraphValueError, check_ceiling
from jahangir_ramsey.utils.bits import full_mask, iter_bits, mask_of

MAX_ORDER = 128
CHROMATIC_CEILING = 16


class GraphFamily(str, Enum):
    EMPTY = "empty"
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    STAR = "star"
    WHEEL = "wheel"
    JAHANGIR = "jahangir"
    UNION_OF_COMPLETES = "union_of_completes"


@dataclass(frozen=True, slots=True)
class Graph:
    """Simple undirected graph on vertices 0..order-1.

    ``rows[v]`` has bit ``u`` set iff ``uv`` is an edge. Rows are symmetric,
    loop-free and carry no bits at positions >= order.
    """

    order: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.order <= MAX_ORDER:
            raise GraphValueError(f"order must be in 1..{MAX_ORDER}, got {self.order}")
        if len(self.rows) != self.order:
            raise GraphValueError(f"expected {self.order} rows, got {len(self.rows)}")
        limit = full_mask(self.order)
        for v, row in enumerate(self.rows):
            if row & ~limit:
                raise GraphValueError(f"row {v} has bits beyond order {self.order}")
            if row >> v & 1:
                raise GraphValueError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def trusted(cls, order: int, rows: tuple[int, ...]) -> "Graph":
        """Build without validation; callers guarantee the row invariants."""
        graph = object.__new__(cls)
        object.__setattr__(graph, "order", order)
        object.__setattr__(graph, "rows", rows)
        return graph

    @property
    def vertex_mask(self) -> int:
        return full_mask(self.order)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def neighbors_in(self, x: int, vertex_set: int) -> int:
        """N_A(x) as a bit mask: the neighbours of ``x`` inside ``vertex_set``."""
        if not 0 <= x < self.order:
            raise GraphValueError(f"vertex {x} out of range for order {self.order}")
        return self.rows[x] & vertex_set

    def complement(self) -> "Graph":
        limit = self.vertex_mask
        return Graph.trusted(
            self.order,
            tuple(~row & limit & ~(1 << v) for v, row in enumerate(self.rows)),
        )

    def disjoint_union(self, other: "Graph") -> "Graph":
        total = self.order + other.order
        if total > MAX_ORDER:
            raise GraphValueError(f"disjoint union of order {total} exceeds {MAX_ORDER}")
        shift = self.order
        return Graph.trusted(total, self.rows + tuple(row << shift for row in other.rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``perm[v]`` plays the role of ``v``."""
        if sorted(perm) != list(range(self.order)):
            raise GraphValueError("relabeling must be a permutation of the vertices")
        rows = [0] * self.order
        for v, row in enumerate(self.rows):
            rows[perm[v]] = mask_of(perm[u] for u in iter_bits(row))
        return Graph.trusted(self.order, tuple(rows))

    def induced(self, vertices: int) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on a vertex mask, relabelled 0..; returns the old labels too."""
        labels = tuple(iter_bits(vertices & self.vertex_mask))
        if not labels:
            raise GraphValueError("induced subgraph needs at least one vertex")
        position = {v: i for i, v in enumerate(labels)}
        rows = tuple(
            mask_of(position[u] for u in iter_bits(self.rows[v] & vertices)) for v in labels
        )
        return Graph.trusted(len(labels), rows), labels

    def remove_vertex(self, v: int) -> "Graph":
        graph, _ = self.induced(self.vertex_mask & ~(1 << v))
        return graph

    def add_vertex(self, neighbors: int) -> "Graph":
        """Append vertex ``order`` adjacent to the vertices in ``neighbors``."""
        if self.order + 1 > MAX_ORDER:
            raise GraphValueError(f"order {self.order + 1} exceeds {MAX_ORDER}")
        neighbors &= self.vertex_mask
        bit = 1 << self.order
        rows = tuple(row | bit if neighbors >> v & 1 else row for v, row in enumerate(self.rows))
        return Graph.trusted(self.order + 1, rows + (neighbors,))

    def component_masks(self) -> list[int]:
        remaining = self.vertex_mask
        components = []
        while remaining:
            seen = remaining & -remaining
            frontier = seen
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self.rows[v]
                frontier = reach & ~seen
                seen |= frontier
            components.append(seen)
            remaining &= ~seen
        return components

    def largest_component_order(self) -> int:
        """c(H): number of vertices in the largest component."""
        return max(mask.bit_count() for mask in self.component_masks())

    def chromatic_number(self) -> int:
        check_ceiling("chromatic_number", CHROMATIC_CEILING, self.order)
        if self.edge_count == 0:
            return 1
        order = sorted(range(self.order), key=lambda v: (-self.degree(v), v))
        for colors in range(2, self.order + 1):
            if self._colorable(order, colors):
                return colors
        return self.order

    def _colorable(self, order: list[int], colors: int) -> bool:
        classes = [0] * colors

        def place(index: int, used: int) -> bool:
            if index == len(order):
                return True
            v = order[index]
            # Colour ``used`` is the first fresh one; trying beyond it is symmetric
            for c in range(min(used + 1, colors)):
                if not self.rows[v] & classes[c]:
                    classes[c] |= 1 << v
                    if place(index + 1, max(used, c + 1)):
                        return True
                    classes[c] &= ~(1 << v)
            return False

        return place(0, 0)

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={list(self.edges())})"


def from_edges(order: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 1 <= order <= MAX_ORDER:
        raise GraphValueError(f"order must be in 1..{MAX_ORDER}, got {order}")
    rows = [0] * order
    for u, v in edges:
        if u == v:
            raise GraphValueError(f"loop edge ({u}, {v})")
        if not (0 <= u < order and 0 <= v < order):
            raise GraphValueError(f"edge ({u}, {v}) has an endpoint outside 0..{order - 1}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph.trusted(order, tuple(rows))


def complement(graph: Graph) -> Graph:
    return graph.complement()


def disjoint_union(first: Graph, second: Graph) -> Graph:
    return first.disjoint_union(second)


def neighbors_in(graph: Graph, x: int, vertex_set: int) -> int:
    return graph.neighbors_in(x, vertex_set)


def largest_component_order(graph: Graph) -> int:
    return graph.largest_component_order()


def chromatic_number(graph: Graph) -> int:
    return graph.chromatic_number()


def _require(kind: GraphFamily, value: int, minimum: int) -> None:
    if value < minimum:
        raise GraphValueError(f"{kind.value} needs parameter >= {minimum}, got {value}")


def _cycle_edges(length: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + i, offset + (i + 1) % length) for i in range(length)]


def make_standard(kind: GraphFamily | str, params: Sequence[int]) -> Graph:
    """Standard families with fixed labelings.

    jahangir(m): cycle 0..2m-1 in order, hub 2m adjacent to the even cycle
    vertices. wheel(m): cycle 0..m-1, hub m. star(order): centre 0.
    complete_bipartite(a, b): parts 0..a-1 and a..a+b-1.
    """
    family = GraphFamily(kind)
    if family is GraphFamily.UNION_OF_COMPLETES:
        if not params:
            raise GraphValueError("union_of_completes needs at least one clique size")
        for size in params:
            _require(family, size, 1)
        graphs = [make_standard(GraphFamily.COMPLETE, [size]) for size in params]
        union = graphs[0]
        for graph in graphs[1:]:
            union = union.disjoint_union(graph)
        return union

    expected = 2 if family is GraphFamily.COMPLETE_BIPARTITE else 1
    if len(params) != expected:
        raise GraphValueError(f"{family.value} takes {expected} parameter(s), got {len(params)}")

    if family is GraphFamily.EMPTY:
        _require(family, params[0], 1)
        return from_edges(params[0], [])
    if family is GraphFamily.PATH:
        _require(family, params[0], 1)
        return from_edges(params[0], [(i, i + 1) for i in range(params[0] - 1)])
    if family is GraphFamily.CYCLE:
        _require(family, params[0], 3)
        return from_edges(params[0], _cycle_edges(params[0]))
    if family is GraphFamily.COMPLETE:
        _require(family, params[0], 1)
        n = params[0]
        return Graph.trusted(n, tuple(full_mask(n) & ~(1 << v) for v in range(n)))
    if family is GraphFamily.COMPLETE_BIPARTITE:
        a, b = params
        _require(family, a, 1)
        _require(family, b, 1)
        return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if family is GraphFamily.STAR:
        _require(family, params[0], 2)
        return from_edges(params[0], [(0, v) for v in range(1, params[0])])
    if family is GraphFamily.WHEEL:
        m = params[0]
        _require(family, m, 3)
        return from_edges(m + 1, _cycle_edges(m) + [(m, i) for i in range(m)])
    # JAHANGIR
    m = params[0]
    _require(family, m, 2)
    hub = 2 * m
    return from_edges(2 * m + 1, _cycle_edges(2 * m) + [(hub, i) for i in range(0, 2 * m, 2)])


def path_forest(copies: int, length: int) -> Graph:
    """kP_n: ``copies`` disjoint paths on ``length`` vertices, path i on block i."""
    if copies < 1:
        raise GraphValueError(f"need at least one path, got {copies}")
    single = make_standard(GraphFamily.PATH, [length])
    forest = single
    for _ in range(copies - 1):
        forest = forest.disjoint_union(single)
    return forest
