"""Proof-guided extraction of certificates.

Each extractor follows a longest-path case analysis to pick two vertex sets
D1, D2 whose union should host the pattern in the complement, then hands the
final step to the monomorphism search restricted to D1 U D2. Where the case
analysis leaves a choice open, candidate configurations are tried in a fixed
order. If every localized attempt fails the search is repeated over the whole
host and the trace is labelled ``fallback``; if that fails too, a
falsification record is emitted.
"""

from dataclasses import dataclass, field
from typing import Optional, cast

from result import Err, Ok, Result

from jahangir_ramsey.core.errors import (
    PreconditionError,
    TheoremFalsifiedError,
    check_ceiling,
)
from jahangir_ramsey.domain.detect import (
    PATH_SEARCH_CEILING,
    Embedding,
    JahangirEmbedding,
    contains_disjoint_paths,
    contains_jahangir,
    contains_path,
    find_monomorphism,
    longest_path,
)
from jahangir_ramsey.domain.graph import Graph, GraphFamily, make_standard
from jahangir_ramsey.domain.ramsey import claimed_value
from jahangir_ramsey.schemas.instance import RamseyInstance
from jahangir_ramsey.schemas.trace import CaseTrace, FalsificationRecord, Subcase
from jahangir_ramsey.services.falsification_sink import FalsificationSink
from jahangir_ramsey.utils.bits import iter_bits, lowest_bits, mask_of, members
from jahangir_ramsey.utils.graph6 import describe
from jahangir_ramsey.utils.logger import get_logger

logger = get_logger("extract")

THEOREM1_PARAMETERS = (3, 4, 5)


def validate_embedding(pattern: Graph, host: Graph, embedding: Embedding) -> bool:
    """Injective, in range, and every pattern edge lands on a host edge."""
    mapping = embedding.mapping
    if len(mapping) != pattern.order:
        return False
    if any(not 0 <= v < host.order for v in mapping):
        return False
    if len(set(mapping)) != len(mapping):
        return False
    return all(host.has_edge(mapping[u], mapping[v]) for u, v in pattern.edges())


def validate_jahangir_embedding(host: Graph, m: int, embedding: JahangirEmbedding) -> bool:
    cycle = embedding.cycle
    if len(cycle) != 2 * m:
        return False
    vertices = list(cycle) + [embedding.hub]
    if any(not 0 <= v < host.order for v in vertices) or len(set(vertices)) != len(vertices):
        return False
    if not all(host.has_edge(cycle[i], cycle[(i + 1) % (2 * m)]) for i in range(2 * m)):
        return False
    return all(host.has_edge(embedding.hub, cycle[i]) for i in range(0, 2 * m, 2))


@dataclass(slots=True)
class _Localization:
    subcase: Subcase
    d1: Optional[int]
    d2: Optional[int]
    b: Optional[int] = None
    v1: Optional[int] = None

    @property
    def restrict(self) -> Optional[int]:
        if self.d1 is None or self.d2 is None:
            return None
        return self.d1 | self.d2


@dataclass(slots=True)
class _PathView:
    """The longest path L = (x_1..x_t), indexed from 1, and Y = V minus L."""

    graph: Graph
    path: tuple[int, ...]
    off_path: int
    a_set: int = 0
    b_set: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.path)

    def x(self, i: int) -> int:
        return self.path[i - 1]

    def bit(self, *indices: int) -> int:
        return mask_of(self.x(i) for i in indices)

    def adjacent(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def n_y(self, v: int) -> int:
        return self.graph.rows[v] & self.off_path

    def at_distance_two_in_y(self, v: int) -> list[int]:
        rows = self.graph.rows
        return [
            y
            for y in iter_bits(self.off_path & ~rows[v] & ~(1 << v))
            if rows[y] & rows[v]
        ]


def _localization(subcase: Subcase, d1: int, d2: int, **extra: Optional[int]) -> _Localization:
    return _Localization(subcase, d1, d2 & ~d1, **extra)


def dispatch_subcase(t: int, n: int, m: int) -> str:
    """Which part of the longest-path case analysis handles a path of t vertices.

    Returns ``"1"`` for Case 1 (split into 1.1 / 1.2 by the neighbourhoods of B).
    """
    if m not in THEOREM1_PARAMETERS:
        raise PreconditionError(f"case analysis covers m in {THEOREM1_PARAMETERS}, got {m}")
    if not 1 <= t <= n - 1:
        raise PreconditionError(f"longest path length {t} outside 1..{n - 1}")
    if t >= 2 * m:
        return "1"
    if t <= 3:
        return "2.1"
    if t <= m + 1:
        return "2.2"
    if t == m + 2:
        return "2.3"
    if t == m + 3:
        return "2.4"
    return "2.5"


def _case1(view: _PathView, m: int) -> list[_Localization]:
    rows = view.graph.rows
    t = view.t
    a_set = mask_of(view.path[1 : 2 * m - 1])
    b_set = lowest_bits(view.off_path, m)
    view.a_set, view.b_set = a_set, b_set
    ends = view.bit(1, t)

    saturated = [b for b in iter_bits(b_set) if (rows[b] & a_set).bit_count() == m - 1]
    if saturated:
        options = []
        for b in saturated:
            a1 = a_set & ~rows[b]
            v1 = min(iter_bits(a1), key=lambda v: (-(rows[v] & b_set).bit_count(), v))
            d1 = ends | 1 << b | (a1 & ~(1 << v1))
            d2 = 1 << v1 | (b_set & ~(1 << b))
            options.append(_localization("1.1", d1, d2, b=b, v1=v1))
        return options

    # Pigeonhole: prefer the vertices of A with fewest neighbours in B
    position = {v: i for i, v in enumerate(view.path)}
    by_degree = sorted(
        iter_bits(a_set), key=lambda a: ((rows[a] & b_set).bit_count(), position[a])
    )
    in_order = sorted(iter_bits(a_set), key=lambda a: position[a])
    options = []
    for chosen in (by_degree[: m - 1], in_order[: m - 1]):
        options.append(_localization("1.2", ends | mask_of(chosen), b_set))
    return options


def _low_neighbourhood(view: _PathView, m: int, subcase: Subcase) -> list[_Localization]:
    """Shared tail of Subcases 2.2 and 2.3: |N_Y(x_2)| in {m-3, m-4, m-5}."""
    t = view.t
    y_set = view.off_path
    n2 = view.n_y(view.x(2))
    s = n2.bit_count()
    if s == m - 3:
        return [_localization(subcase, view.bit(1, t, 2) | n2, y_set & ~n2)]
    if s == m - 4:
        n_prev = view.n_y(view.x(t - 1))
        return [_localization(subcase, view.bit(1, t, 2, t - 1) | n2, y_set & ~n2 & ~n_prev)]
    # m = 5 and x_2 has no neighbour off the path
    rows = view.graph.rows
    candidates = view.at_distance_two_in_y(view.x(3))
    if y_set:
        candidates.append(min(iter_bits(y_set), key=lambda y: (rows[y].bit_count(), y)))
    base = view.bit(1, 2, t - 1, t)
    return [
        _localization(subcase, base | 1 << b, y_set & ~(1 << b), b=b)
        for b in dict.fromkeys(candidates)
    ]


def _subcase_2_2(view: _PathView, m: int) -> list[_Localization]:
    n2 = view.n_y(view.x(2))
    if n2.bit_count() >= m - 2:
        chosen = lowest_bits(n2, m - 2)
        return [_localization("2.2", view.bit(1, view.t) | chosen, view.off_path & ~chosen)]
    return _low_neighbourhood(view, m, "2.2")


def _subcase_2_3(view: _PathView, m: int) -> list[_Localization]:
    t = view.t
    n2 = view.n_y(view.x(2))
    if n2.bit_count() >= m - 2:
        chosen = lowest_bits(n2, m - 2)
        rest = view.off_path & ~chosen
        if not view.adjacent(view.x(3), view.x(t)):
            return [_localization("2.3", view.bit(1, t) | chosen, view.bit(3) | rest)]
        return [_localization("2.3", view.bit(1, t, 4) | chosen, lowest_bits(rest, m))]
    return _low_neighbourhood(view, m, "2.3")


def _subcase_2_4(view: _PathView, m: int) -> list[_Localization]:
    t = view.t
    y_set = view.off_path
    n2 = view.n_y(view.x(2))
    s = n2.bit_count()
    if s >= m - 1:
        chosen = lowest_bits(n2, m - 1)
        if view.graph.rows[view.x(t - 1)] & n2:
            b = view.x(t - 2)
        elif not view.adjacent(view.x(t - 1), view.x(1)):
            b = view.x(t - 1)
        else:
            b = view.x(t - 2)
        others = lowest_bits(y_set & ~chosen, m - 2)
        d2 = view.bit(3, t) | 1 << b | others
        return [_localization("2.4", view.bit(1) | chosen, d2, b=b)]
    if s == m - 2:
        d2 = view.bit(3, t) | lowest_bits(y_set & ~n2, m - 1)
        return [_localization("2.4", view.bit(1, 2) | n2, d2)]
    if s == m - 3:
        d2 = view.bit(3) | lowest_bits(y_set & ~n2, m)
        return [_localization("2.4", view.bit(1, 2, t) | n2, d2)]
    if s == m - 4:
        n_prev = view.n_y(view.x(t - 1))
        d1 = view.bit(1, 2, t - 1, t) | n2 | n_prev
        return [_localization("2.4", d1, y_set & ~(n2 | n_prev))]
    x3 = view.x(3)
    candidates = [x3] + members(view.n_y(x3)) + view.at_distance_two_in_y(x3)
    base = view.bit(1, 2, t - 1, t)
    return [
        _localization("2.4", base | 1 << b, y_set & ~(1 << b), b=b)
        for b in dict.fromkeys(candidates)
    ]


def _free_of(view: _PathView, pair: tuple[int, int], avoid: int) -> int:
    """First vertex of the pair with no neighbour in ``avoid`` (else the first)."""
    rows = view.graph.rows
    for v in pair:
        if not rows[v] & avoid:
            return v
    return pair[0]


def _subcase_2_5(view: _PathView, m: int) -> list[_Localization]:
    t = view.t
    y_set = view.off_path
    rows = view.graph.rows
    n2 = view.n_y(view.x(2))
    s = n2.bit_count()
    if s >= m - 2:
        chosen = lowest_bits(n2, m - 2)
        b = _free_of(view, (view.x(4), view.x(5)), n2)
        c = _free_of(view, (view.x(6), view.x(7)), n2)
        d2 = view.bit(3) | 1 << b | 1 << c | lowest_bits(y_set & ~chosen, m - 2)
        return [_localization("2.5", view.bit(1, t) | chosen, d2, b=b)]
    if s == m - 3:
        b = _free_of(view, (view.x(4), view.x(5)), n2)
        d2 = view.bit(3) | 1 << b | lowest_bits(y_set & ~n2, m - 1)
        return [_localization("2.5", view.bit(1, 2, t) | n2, d2, b=b)]
    if s == m - 4:
        n_prev = view.n_y(view.x(t - 1))
        d1 = view.bit(1, 2, t - 1, t) | n2 | n_prev
        return [_localization("2.5", d1, view.bit(3) | (y_set & ~(n2 | n_prev)))]
    pair = sorted((view.x(3), view.x(4)), key=lambda v: ((rows[v] & y_set).bit_count(), v != view.x(3)))
    base = view.bit(1, 2, t - 1, t)
    return [_localization("2.5", base | 1 << b, y_set, b=b) for b in pair]


def _theorem1_localizations(view: _PathView, n: int, m: int) -> tuple[Subcase, list[_Localization]]:
    part = dispatch_subcase(view.t, n, m)
    if part == "1":
        options = _case1(view, m)
        return options[0].subcase, options
    if part == "2.1":
        # Components are stars, triangles, edges or isolated vertices
        return "2.1", [_Localization("2.1", None, None)]
    handlers = {"2.2": _subcase_2_2, "2.3": _subcase_2_3, "2.4": _subcase_2_4, "2.5": _subcase_2_5}
    options = handlers[part](view, m)
    label = options[0].subcase if options else cast(Subcase, part)
    return label, options


def _attempt(complement: Graph, m: int, option: _Localization) -> Result[JahangirEmbedding, str]:
    restrict = option.restrict
    if restrict is not None and restrict.bit_count() < 2 * m + 1:
        return Err(f"D1 U D2 has {restrict.bit_count()} vertices, J_{2 * m} needs {2 * m + 1}")
    found = contains_jahangir(complement, m, restrict)
    if found is None:
        return Err(f"no J_{2 * m} inside D1 U D2 for subcase {option.subcase}")
    return Ok(found)


def _trace(
    view: _PathView,
    subcase: Subcase,
    option: Optional[_Localization],
    tried: int,
    attempted: Optional[Subcase] = None,
) -> CaseTrace:
    return CaseTrace(
        subcase=subcase,
        attempted=attempted,
        path=list(view.path),
        off_path=members(view.off_path),
        a_set=members(view.a_set),
        b_set=members(view.b_set),
        d1=members(option.d1) if option and option.d1 is not None else None,
        d2=members(option.d2) if option and option.d2 is not None else None,
        b=option.b if option else None,
        v1=option.v1 if option else None,
        alternatives_tried=tried,
    )


def _certify(
    graph: Graph,
    m: int,
    view: _PathView,
    label: Subcase,
    options: list[_Localization],
    operation: str,
    parameters: dict[str, int],
    sink: Optional[FalsificationSink],
) -> tuple[JahangirEmbedding, CaseTrace]:
    complement = graph.complement()
    pattern = make_standard(GraphFamily.JAHANGIR, [m])
    for tried, option in enumerate(options, start=1):
        attempt = _attempt(complement, m, option)
        if isinstance(attempt, Ok):
            found = attempt.ok_value
            if validate_embedding(pattern, complement, found.to_embedding()):
                return found, _trace(view, option.subcase, option, tried)
            logger.error(f"{operation}: localized embedding failed validation in {option.subcase}")
        else:
            logger.debug(f"{operation}: {attempt.err_value}")

    found_anywhere = contains_jahangir(complement, m)
    trace = _trace(view, "fallback", None, len(options), attempted=label)
    if found_anywhere is not None and validate_embedding(
        pattern, complement, found_anywhere.to_embedding()
    ):
        logger.warning(
            f"{operation}: subcase {label} found nothing inside D1 U D2 on "
            f"{describe(graph)}; unrestricted search succeeded"
        )
        return found_anywhere, trace

    record = FalsificationRecord(
        operation=operation,
        graph6=describe(graph),
        reason=f"no J_{2 * m} in the complement",
        parameters=parameters,
        trace=trace,
    )
    if sink is not None:
        sink.append(record)
    raise TheoremFalsifiedError(record)


def _path_view(graph: Graph) -> _PathView:
    path = longest_path(graph)
    return _PathView(graph, path, graph.vertex_mask & ~mask_of(path))


def extract_jahangir_theorem1(
    graph: Graph, n: int, m: int, sink: Optional[FalsificationSink] = None
) -> tuple[JahangirEmbedding, CaseTrace]:
    """J_2m in the complement of a P_n-free graph of order n + m - 1, m in {3, 4, 5}."""
    if m not in THEOREM1_PARAMETERS:
        raise PreconditionError(f"m must be one of {THEOREM1_PARAMETERS}, got {m}")
    if n < 2 * m + 1:
        raise PreconditionError(f"need n >= 2m + 1 = {2 * m + 1}, got n = {n}")
    if graph.order != n + m - 1:
        raise PreconditionError(f"host must have order n + m - 1 = {n + m - 1}, got {graph.order}")
    check_ceiling("extract_jahangir_theorem1", PATH_SEARCH_CEILING, graph.order)
    if contains_path(graph, n) is not None:
        raise PreconditionError(f"host contains P_{n}")

    view = _path_view(graph)
    label, options = _theorem1_localizations(view, n, m)
    return _certify(
        graph, m, view, label, options, "extract_jahangir_theorem1", {"n": n, "m": m}, sink
    )


def _theorem2_localizations(view: _PathView) -> tuple[Subcase, list[_Localization]]:
    k = view.t
    rows = view.graph.rows
    a_set = view.off_path
    view.a_set = a_set
    if k <= 6:
        # |A| >= 3: A with the path ends is a K_{2,3} in the complement
        ends = view.bit(1, k)
        if k == 1:
            # Edgeless host; borrow a second end from A
            ends |= lowest_bits(a_set, 1)
        return "T2-A", [_localization("T2-A", ends, lowest_bits(a_set & ~ends, 3))]
    if k != 7:
        return "T2-A", []

    y, z = members(a_set)
    pair = 1 << y | 1 << z
    ends = view.bit(1, 7)
    inner = range(2, 7)
    common = [i for i in inner if rows[view.x(i)] >> y & 1 and rows[view.x(i)] >> z & 1]
    if common:
        options = []
        for i in common:
            for w in (view.x(i - 1), view.x(i + 1)):
                if not ends >> w & 1:
                    options.append(_localization("T2-C1", pair, ends | 1 << w, b=w))
        return "T2-C1", options

    free = [view.x(i) for i in inner if not rows[view.x(i)] & pair]
    if not free:
        view.notes.append("every inner vertex sees y or z: the rearranged path is Hamiltonian")
    return "T2-C2", [_localization("T2-C2", pair, ends | 1 << w, b=w) for w in free]


def extract_j4_theorem2_base(
    graph: Graph, sink: Optional[FalsificationSink] = None
) -> tuple[JahangirEmbedding, CaseTrace]:
    """J_4 in the complement of an order-9 graph without 2P_4."""
    if graph.order != 9:
        raise PreconditionError(f"host must have order 9, got {graph.order}")
    if contains_disjoint_paths(graph, 2, 4) is not None:
        raise PreconditionError("host contains 2P_4")

    view = _path_view(graph)
    label, options = _theorem2_localizations(view)
    for note in view.notes:
        logger.warning(f"extract_j4_theorem2_base: {note}")
    return _certify(graph, 2, view, label, options, "extract_j4_theorem2_base", {"k": 2, "n": 4}, sink)


def extract_k_paths(
    graph: Graph, instance: RamseyInstance, sink: Optional[FalsificationSink] = None
) -> list[Embedding]:
    """k disjoint P_n in a graph of order kn + m - 1 whose complement has no J_2m.

    Peels one P_n at a time, as in the induction on k; if peeling gets stuck
    the whole host is packed exhaustively before a falsification is declared.
    """
    k, n, m = instance.k, instance.n, instance.m
    expected = k * n + m - 1
    if claimed_value(instance) != expected:
        raise PreconditionError(f"{instance.label()} is not covered by R = kn + m - 1")
    if graph.order != expected:
        raise PreconditionError(f"host must have order kn + m - 1 = {expected}, got {graph.order}")
    check_ceiling("extract_k_paths", PATH_SEARCH_CEILING, n)
    if contains_jahangir(graph.complement(), m) is not None:
        raise PreconditionError(f"complement of the host contains J_{2 * m}")

    pattern = make_standard(GraphFamily.PATH, [n])
    remaining = graph.vertex_mask
    peeled: list[Embedding] = []
    for _ in range(k):
        found = find_monomorphism(pattern, graph, restrict=remaining)
        if found is None:
            break
        peeled.append(found)
        remaining &= ~found.image_mask

    if len(peeled) < k and graph.order <= PATH_SEARCH_CEILING:
        logger.warning(
            f"extract_k_paths: peeling stuck after {len(peeled)} of {k} copies on "
            f"{describe(graph)}; packing exhaustively"
        )
        peeled = contains_disjoint_paths(graph, k, n) or []

    if len(peeled) == k and all(validate_embedding(pattern, graph, e) for e in peeled):
        return peeled

    record = FalsificationRecord(
        operation="extract_k_paths",
        graph6=describe(graph),
        reason=f"no {k} disjoint P_{n}",
        parameters={"k": k, "n": n, "m": m},
    )
    if sink is not None:
        sink.append(record)
    raise TheoremFalsifiedError(record)
