"""Exact containment oracles: longest paths, disjoint paths, subgraph monomorphism."""

from dataclasses import dataclass
from typing import Iterator, Optional

from jahangir_ramsey.core.errors import PreconditionError, SearchBudgetExhausted, check_ceiling
from jahangir_ramsey.domain.graph import Graph, GraphFamily, make_standard
from jahangir_ramsey.utils.bits import iter_bits, mask_of

PATH_SEARCH_CEILING = 24


@dataclass(frozen=True, slots=True)
class Embedding:
    """Injective map: pattern vertex i goes to host vertex ``mapping[i]``."""

    mapping: tuple[int, ...]

    @property
    def image_mask(self) -> int:
        return mask_of(self.mapping)


@dataclass(frozen=True, slots=True)
class JahangirEmbedding:
    """J_2m in a host: ``cycle`` in cyclic order, ``hub`` adjacent to its even positions."""

    hub: int
    cycle: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.cycle) // 2

    @property
    def image_mask(self) -> int:
        return mask_of(self.cycle) | 1 << self.hub

    def to_embedding(self) -> Embedding:
        """Embedding of ``make_standard("jahangir", [m])``: cycle labels first, hub last."""
        return Embedding(self.cycle + (self.hub,))


def _reach(rows: tuple[int, ...], start: int, free: int) -> int:
    """Vertices of ``free`` reachable from ``start`` through ``free``."""
    seen = 0
    frontier = rows[start] & free
    while frontier:
        seen |= frontier
        grown = 0
        for v in iter_bits(frontier):
            grown |= rows[v]
        frontier = grown & free & ~seen
    return seen


def longest_path(graph: Graph) -> tuple[int, ...]:
    """A maximum path; among those, the lexicographically smallest vertex sequence."""
    check_ceiling("longest_path", PATH_SEARCH_CEILING, graph.order)
    rows = graph.rows
    best: list[int] = [0]
    path: list[int] = []

    def extend(end: int, free: int) -> bool:
        # Paths are explored in lexicographic order, so only strict gains replace ``best``
        if len(path) > len(best):
            best[:] = path
            if len(best) == graph.order:
                return True
        if len(path) + _reach(rows, end, free).bit_count() <= len(best):
            return False
        for nxt in iter_bits(rows[end] & free):
            path.append(nxt)
            if extend(nxt, free & ~(1 << nxt)):
                return True
            path.pop()
        return False

    for start in range(graph.order):
        path[:] = [start]
        if extend(start, graph.vertex_mask & ~(1 << start)):
            break
    return tuple(best)


def _find_path(rows: tuple[int, ...], n: int, allowed: int) -> Optional[tuple[int, ...]]:
    path: list[int] = []

    def extend(end: int, free: int) -> bool:
        if len(path) == n:
            return True
        if len(path) + _reach(rows, end, free).bit_count() < n:
            return False
        for nxt in iter_bits(rows[end] & free):
            path.append(nxt)
            if extend(nxt, free & ~(1 << nxt)):
                return True
            path.pop()
        return False

    for start in iter_bits(allowed):
        path[:] = [start]
        if extend(start, allowed & ~(1 << start)):
            return tuple(path)
    return None


def contains_path(graph: Graph, n: int) -> Optional[Embedding]:
    """An embedding of P_n (pattern labels 0..n-1 along the path), or None."""
    if n < 1:
        raise PreconditionError(f"path order must be >= 1, got {n}")
    check_ceiling("contains_path", PATH_SEARCH_CEILING, graph.order)
    if n > graph.order:
        return None
    found = _find_path(graph.rows, n, graph.vertex_mask)
    return Embedding(found) if found is not None else None


def _path_vertex_sets(rows: tuple[int, ...], n: int, allowed: int) -> Iterator[int]:
    """Distinct vertex sets of P_n copies inside ``allowed``, lazily, in discovery order."""
    seen: set[int] = set()

    def extend(end: int, free: int, used: int, length: int) -> Iterator[int]:
        if length == n:
            if used not in seen:
                seen.add(used)
                yield used
            return
        if length + _reach(rows, end, free).bit_count() < n:
            return
        for nxt in iter_bits(rows[end] & free):
            yield from extend(nxt, free & ~(1 << nxt), used | 1 << nxt, length + 1)

    for start in iter_bits(allowed):
        yield from extend(start, allowed & ~(1 << start), 1 << start, 1)


def _copies_bound(rows: tuple[int, ...], n: int, allowed: int) -> int:
    """Upper bound on disjoint P_n copies: each copy lies inside one component."""
    bound = 0
    remaining = allowed
    while remaining:
        start = remaining & -remaining
        component = start | _reach(rows, start.bit_length() - 1, allowed)
        bound += component.bit_count() // n
        remaining &= ~component
    return bound


def contains_disjoint_paths(graph: Graph, k: int, n: int) -> Optional[list[Embedding]]:
    """k vertex-disjoint P_n embeddings, or None.

    Finds one copy, recurses on the remaining vertices and backtracks over
    the first copy's vertex set.
    """
    if k < 1 or n < 1:
        raise PreconditionError(f"need k >= 1 and n >= 1, got k={k}, n={n}")
    check_ceiling("contains_disjoint_paths", PATH_SEARCH_CEILING, graph.order)
    if k * n > graph.order:
        return None
    rows = graph.rows
    dead: set[tuple[int, int]] = set()

    def pack(allowed: int, copies: int) -> Optional[list[tuple[int, ...]]]:
        if copies == 0:
            return []
        if (allowed, copies) in dead:
            return None
        if _copies_bound(rows, n, allowed) < copies:
            dead.add((allowed, copies))
            return None
        if copies == 1:
            single = _find_path(rows, n, allowed)
            if single is not None:
                return [single]
            dead.add((allowed, copies))
            return None
        for used in _path_vertex_sets(rows, n, allowed):
            rest = pack(allowed & ~used, copies - 1)
            if rest is not None:
                first = _find_path(rows, n, used)
                assert first is not None
                return [first] + rest
        dead.add((allowed, copies))
        return None

    packed = pack(graph.vertex_mask, k)
    return [Embedding(p) for p in packed] if packed is not None else None


def _match_order(pattern: Graph) -> list[int]:
    """Most constrained first: start at the top-degree vertex, then most mapped neighbours.

    Ties go to neighbours of the vertex placed last, so cycles are walked in order.
    """
    remaining = set(range(pattern.order))
    ordered: list[int] = []
    placed = 0
    last = 0
    while remaining:
        nxt = min(
            remaining,
            key=lambda v: (
                -(pattern.rows[v] & placed).bit_count(),
                -(pattern.rows[v] >> last & 1 if ordered else 0),
                -pattern.degree(v),
                v,
            ),
        )
        ordered.append(nxt)
        remaining.remove(nxt)
        placed |= 1 << nxt
        last = nxt
    return ordered


def find_monomorphism(
    pattern: Graph,
    host: Graph,
    restrict: Optional[int] = None,
    node_budget: Optional[int] = None,
) -> Optional[Embedding]:
    """Subgraph (not induced) embedding of ``pattern`` into ``host``, or None.

    With ``restrict`` the image stays inside that vertex mask. Exceeding
    ``node_budget`` search nodes raises SearchBudgetExhausted.
    """
    allowed = host.vertex_mask if restrict is None else restrict & host.vertex_mask
    if pattern.order > allowed.bit_count():
        return None

    host_rows = host.rows
    degree_in_allowed = {v: (host_rows[v] & allowed).bit_count() for v in iter_bits(allowed)}
    sequence = _match_order(pattern)
    earlier_neighbors: list[list[int]] = []
    candidates_by_degree: list[int] = []
    seen = 0
    for p in sequence:
        earlier_neighbors.append([q for q in iter_bits(pattern.rows[p] & seen)])
        need = pattern.degree(p)
        candidates_by_degree.append(
            mask_of(v for v, d in degree_in_allowed.items() if d >= need)
        )
        seen |= 1 << p

    image = [-1] * pattern.order
    nodes = 0

    def place(depth: int, used: int) -> bool:
        nonlocal nodes
        if depth == len(sequence):
            return True
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExhausted(f"monomorphism search exceeded {node_budget} nodes")
        p = sequence[depth]
        candidates = candidates_by_degree[depth] & ~used
        for q in earlier_neighbors[depth]:
            candidates &= host_rows[image[q]]
        for v in iter_bits(candidates):
            image[p] = v
            if place(depth + 1, used | 1 << v):
                return True
        image[p] = -1
        return False

    if place(0, 0):
        return Embedding(tuple(image))
    return None


def contains_jahangir(graph: Graph, m: int, restrict: Optional[int] = None) -> Optional[JahangirEmbedding]:
    """J_2m as a subgraph of ``graph`` (optionally inside ``restrict``), or None."""
    if m < 2:
        raise PreconditionError(f"Jahangir parameter must be >= 2, got {m}")
    if graph.order < 2 * m + 1:
        raise PreconditionError(f"host of order {graph.order} is smaller than J_{2 * m}")
    pattern = make_standard(GraphFamily.JAHANGIR, [m])
    found = find_monomorphism(pattern, graph, restrict)
    if found is None:
        return None
    return JahangirEmbedding(hub=found.mapping[2 * m], cycle=found.mapping[: 2 * m])


def greedy_path_packing(graph: Graph, k: int, n: int, budget: int) -> Optional[list[Embedding]]:
    """kP_n search for hosts beyond the exact ceiling.

    Peels one path at a time with a bounded monomorphism search. Returns the
    packing, or None when even one copy is provably absent; anything else
    the budget cannot settle raises SearchBudgetExhausted.
    """
    pattern = make_standard(GraphFamily.PATH, [n])
    remaining = graph.vertex_mask
    found: list[Embedding] = []
    for copy in range(k):
        if remaining.bit_count() < n:
            if copy == 0:
                return None
            raise SearchBudgetExhausted("greedy peeling ran out of vertices")
        embedding = find_monomorphism(pattern, graph, restrict=remaining, node_budget=budget)
        if embedding is None:
            if copy == 0:
                return None
            raise SearchBudgetExhausted("greedy peeling got stuck after a first copy")
        found.append(embedding)
        remaining &= ~embedding.image_mask
    return found
