"""Canonical forms by equitable refinement plus individualisation search.

The search keeps the largest adjacency code over all leaves of the
individualisation tree and prunes sibling branches that an automorphism
already found maps onto each other.
"""

from dataclasses import dataclass
from typing import NewType

from jahangir_ramsey.core.errors import check_ceiling
from jahangir_ramsey.domain.graph import Graph
from jahangir_ramsey.utils.bits import iter_bits

CANONICAL_CEILING = 12

CanonicalForm = NewType("CanonicalForm", bytes)

Partition = list[list[int]]


@dataclass(frozen=True, slots=True)
class CanonicalLabeling:
    form: CanonicalForm
    # ordering[i] is the vertex placed at canonical position i
    ordering: tuple[int, ...]
    # Automorphisms found during the search, as vertex -> image tuples
    generators: tuple[tuple[int, ...], ...]


def refine(rows: tuple[int, ...], cells: Partition) -> Partition:
    """Coarsest equitable refinement of an ordered partition.

    Cells split in place, sub-cells ordered by their neighbour-count
    signature, so the result depends only on the graph and the input order.
    """
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        refined: Partition = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            signatures = {v: tuple((rows[v] & m).bit_count() for m in masks) for v in cell}
            distinct = sorted(set(signatures.values()))
            if len(distinct) == 1:
                refined.append(cell)
                continue
            changed = True
            for signature in distinct:
                refined.append([v for v in cell if signatures[v] == signature])
        cells = refined
        if not changed:
            return cells


def equitable_partition(graph: Graph) -> Partition:
    return refine(graph.rows, [list(range(graph.order))])


def _code(rows: tuple[int, ...], ordering: list[int]) -> int:
    position = {v: i for i, v in enumerate(ordering)}
    n = len(ordering)
    code = 0
    for v in ordering:
        row = 0
        for u in iter_bits(rows[v]):
            row |= 1 << position[u]
        code = (code << n) | row
    return code


def _orbit_roots(order: int, generators: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(order))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for gen in generators:
        for v, image in enumerate(gen):
            a, b = find(v), find(image)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(order)]


def canonical_labeling(graph: Graph) -> CanonicalLabeling:
    check_ceiling("canonical_form", CANONICAL_CEILING, graph.order)
    rows = graph.rows
    n = graph.order
    best_code = -1
    best_ordering: list[int] = []
    first_ordering: list[int] = []
    first_code = -1
    generators: list[tuple[int, ...]] = []

    def record_automorphism(reference: list[int], ordering: list[int]) -> None:
        image = [0] * n
        for a, b in zip(reference, ordering):
            image[a] = b
        generator = tuple(image)
        if generator != tuple(range(n)):
            generators.append(generator)

    def search(cells: Partition, fixed: list[int]) -> None:
        nonlocal best_code, best_ordering, first_code, first_ordering
        target_index = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target_index is None:
            ordering = [cell[0] for cell in cells]
            code = _code(rows, ordering)
            if not first_ordering:
                first_ordering, first_code = ordering, code
            elif code == first_code:
                record_automorphism(first_ordering, ordering)
            if code > best_code:
                best_code, best_ordering = code, ordering
            elif code == best_code and ordering != best_ordering:
                record_automorphism(best_ordering, ordering)
            return

        target = cells[target_index]
        tried: list[int] = []
        for v in target:
            if tried:
                stabilising = [g for g in generators if all(g[x] == x for x in fixed)]
                if stabilising:
                    roots = _orbit_roots(n, stabilising)
                    if any(roots[v] == roots[u] for u in tried):
                        continue
            tried.append(v)
            split = cells[:target_index] + [[v], [u for u in target if u != v]]
            split += cells[target_index + 1 :]
            search(refine(rows, split), fixed + [v])

    search(equitable_partition(graph), [])
    form = CanonicalForm(bytes([n]) + best_code.to_bytes((n * n + 7) // 8, "big"))
    return CanonicalLabeling(form, tuple(best_ordering), tuple(generators))


def canonical_form(graph: Graph) -> CanonicalForm:
    """Relabeling-invariant bytes; equal iff the graphs are isomorphic (order <= 12)."""
    return canonical_labeling(graph).form


def canonical_graph(graph: Graph) -> Graph:
    """The representative whose vertex i is canonical position i."""
    ordering = canonical_labeling(graph).ordering
    perm = [0] * graph.order
    for position, v in enumerate(ordering):
        perm[v] = position
    return graph.relabel(perm)
