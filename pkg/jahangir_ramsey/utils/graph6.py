"""graph6 codec, single-byte size form only (orders 1..62)."""

from jahangir_ramsey.core.errors import Graph6Error, check_ceiling
from jahangir_ramsey.domain.graph import Graph

GRAPH6_CEILING = 62
_OFFSET = 63


def _upper_triangle(order: int) -> list[tuple[int, int]]:
    # Column-wise: (0,1), (0,2), (1,2), (0,3), ...
    return [(i, j) for j in range(1, order) for i in range(j)]


def emit_graph6(graph: Graph) -> str:
    check_ceiling("emit_graph6", GRAPH6_CEILING, graph.order)
    bits = [1 if graph.has_edge(i, j) else 0 for i, j in _upper_triangle(graph.order)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(graph.order + _OFFSET)]
    for start in range(0, len(bits), 6):
        value = 0
        for bit in bits[start : start + 6]:
            value = value << 1 | bit
        chars.append(chr(value + _OFFSET))
    return "".join(chars)


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if not data:
        raise Graph6Error("empty graph6 string")
    values = [ord(c) - _OFFSET for c in data]
    for c, value in zip(data, values):
        if not 0 <= value <= 63:
            raise Graph6Error(f"byte {ord(c)} ({c!r}) outside 63..126")
    order = values[0]
    if order == 63:
        raise Graph6Error("multi-byte size form is not supported")
    if order < 1:
        raise Graph6Error("graph6 order must be at least 1")
    pairs = _upper_triangle(order)
    expected = (len(pairs) + 5) // 6
    body = values[1:]
    if len(body) != expected:
        raise Graph6Error(f"order {order} needs {expected} edge bytes, got {len(body)}")

    bits = [value >> shift & 1 for value in body for shift in range(5, -1, -1)]
    if any(bits[len(pairs) :]):
        raise Graph6Error("nonzero padding bits")
    rows = [0] * order
    for (i, j), bit in zip(pairs, bits):
        if bit:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph.trusted(order, tuple(rows))


def describe(graph: Graph) -> str:
    """graph6 when it fits, otherwise an explicit edge list ``order:u-v,...``."""
    if graph.order <= GRAPH6_CEILING:
        return emit_graph6(graph)
    return f"{graph.order}:" + ",".join(f"{u}-{v}" for u, v in graph.edges())
