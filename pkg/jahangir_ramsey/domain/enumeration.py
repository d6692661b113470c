"""Isomorph-free generation of all graphs of a given order.

Canonical augmentation: every class of order t+1 is produced from the class
of order t obtained by deleting the vertex that its canonical labeling puts
last. A child built from parent P by appending vertex t survives when that
vertex sits in the last cell of the child's equitable partition and the
canonical deletion gives back P; isomorphic children of the same parent are
then collapsed by canonical form.
"""

from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator, Optional

from pydantic import BaseModel

from jahangir_ramsey.core.errors import CheckpointMismatchError, check_ceiling
from jahangir_ramsey.domain.canonical import (
    CanonicalForm,
    canonical_form,
    canonical_labeling,
    equitable_partition,
)
from jahangir_ramsey.domain.graph import Graph
from jahangir_ramsey.schemas.checkpoint import CHECKPOINT_VERSION, Checkpoint, ShardSpec
from jahangir_ramsey.utils.logger import get_logger

logger = get_logger("enumeration")

ENUMERATION_CEILING = 10

Visitor = Callable[[Graph], None]
CheckpointVisitor = Callable[[Graph, Checkpoint], None]

_SINGLE_VERTEX = Graph.trusted(1, (0,))


def _survives(child: Graph, parent_form: CanonicalForm) -> tuple[bool, CanonicalForm]:
    new_vertex = child.order - 1
    rows = child.rows
    top_degree = max(row.bit_count() for row in rows)
    if rows[new_vertex].bit_count() != top_degree:
        return False, CanonicalForm(b"")
    if new_vertex not in equitable_partition(child)[-1]:
        return False, CanonicalForm(b"")

    labeling = canonical_labeling(child)
    deleted = labeling.ordering[-1]
    if deleted == new_vertex:
        return True, labeling.form
    if any(gen[new_vertex] == deleted for gen in labeling.generators):
        return True, labeling.form
    return canonical_form(child.remove_vertex(deleted)) == parent_form, labeling.form


def children(parent: Graph, parent_form: CanonicalForm) -> list[tuple[Graph, CanonicalForm]]:
    """Canonical one-vertex extensions of a parent, one per class, with their forms."""
    accepted: list[tuple[Graph, CanonicalForm]] = []
    seen: set[CanonicalForm] = set()
    for neighbors in range(1 << parent.order):
        child = parent.add_vertex(neighbors)
        ok, form = _survives(child, parent_form)
        if ok and form not in seen:
            seen.add(form)
            accepted.append((child, form))
    return accepted


@lru_cache(maxsize=None)
def level(order: int) -> tuple[tuple[Graph, CanonicalForm], ...]:
    """All classes of ``order`` with their canonical forms, in generation order."""
    check_ceiling("enumerate_graphs", ENUMERATION_CEILING, order)
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if order == 1:
        return ((_SINGLE_VERTEX, canonical_form(_SINGLE_VERTEX)),)
    out: list[tuple[Graph, CanonicalForm]] = []
    for parent, parent_form in level(order - 1):
        out.extend(children(parent, parent_form))
    logger.debug(f"Generated {len(out)} classes of order {order}")
    return tuple(out)


def _parents(order: int) -> tuple[tuple[Graph, CanonicalForm], ...]:
    # Order 1 has a single pseudo-branch holding the one-vertex graph
    if order == 1:
        return ()
    return level(order - 1)


def branch_count(order: int) -> int:
    return max(len(_parents(order)), 1)


def shard_parent_count(order: int, shard: Optional[ShardSpec] = None) -> int:
    spec = shard or ShardSpec(shard_index=0, shard_total=1, order=order)
    return sum(1 for i in range(branch_count(order)) if spec.owns(i))


def _branch(order: int, index: int) -> list[Graph]:
    if order == 1:
        return [_SINGLE_VERTEX]
    parent, parent_form = _parents(order)[index]
    return [child for child, _ in children(parent, parent_form)]


def iter_graphs(
    order: int, shard: Optional[ShardSpec] = None, start: int = 0
) -> Iterator[tuple[int, Graph]]:
    """Yield ``(branch cursor, graph)`` for every class the shard owns, from ``start``."""
    check_ceiling("enumerate_graphs", ENUMERATION_CEILING, order)
    spec = shard or ShardSpec(shard_index=0, shard_total=1, order=order)
    if spec.order != order:
        raise CheckpointMismatchError(f"shard is for order {spec.order}, not {order}")
    for index in range(start, branch_count(order)):
        if not spec.owns(index):
            continue
        for graph in _branch(order, index):
            yield index, graph


def enumerate_graphs(order: int, visitor: Visitor, shard: Optional[ShardSpec] = None) -> int:
    """Visit one representative per isomorphism class; returns the number visited.

    The visitor must copy a graph it wants to keep beyond the call.
    """
    visited = 0
    for _, graph in iter_graphs(order, shard):
        visitor(graph)
        visited += 1
    return visited


def count_graphs(order: int) -> int:
    return enumerate_graphs(order, lambda _: None)


def run_resumable(
    order: int,
    visitor: CheckpointVisitor,
    checkpoint: Optional[Checkpoint] = None,
    max_branches: Optional[int] = None,
) -> Checkpoint:
    """Visit from the checkpoint's cursor, at most ``max_branches`` branches.

    The visitor may record tallies and findings on the checkpoint it receives.
    Returns the advanced checkpoint; ``complete`` is set once the shard is done.
    """
    check_ceiling("enumerate_graphs", ENUMERATION_CEILING, order)
    state = checkpoint.model_copy(deep=True) if checkpoint else Checkpoint.fresh(order)
    _check_compatible(order, state)
    if state.complete:
        return state

    expanded = 0
    total = branch_count(order)
    for index in range(state.cursor, total):
        if not state.shard.owns(index):
            continue
        if max_branches is not None and expanded >= max_branches:
            state.cursor = index
            return state
        for graph in _branch(order, index):
            visitor(graph, state)
            state.processed += 1
        expanded += 1
        state.cursor = index + 1
    state.cursor = total
    state.complete = True
    return state


def _check_compatible(order: int, checkpoint: Checkpoint) -> None:
    if checkpoint.version != CHECKPOINT_VERSION:
        raise CheckpointMismatchError(
            f"checkpoint version {checkpoint.version} != supported {CHECKPOINT_VERSION}"
        )
    if checkpoint.order != order or checkpoint.shard.order != order:
        raise CheckpointMismatchError(
            f"checkpoint is for order {checkpoint.order}, resume requested order {order}"
        )


def checkpoint_save(path: Path | str, checkpoint: BaseModel) -> None:
    """Atomic write of a shard checkpoint or a whole verification checkpoint file."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    scratch = target.with_suffix(target.suffix + ".tmp")
    scratch.write_text(checkpoint.model_dump_json(indent=2), encoding="utf-8")
    scratch.replace(target)
    logger.debug(f"Checkpoint saved to {target}")


def checkpoint_load(path: Path | str) -> Checkpoint:
    return Checkpoint.model_validate_json(Path(path).read_text(encoding="utf-8"))


def checkpoint_resume(order: int, checkpoint: Checkpoint, visitor: CheckpointVisitor) -> Checkpoint:
    """Finish a partially processed shard; rejects checkpoints of another order or version."""
    _check_compatible(order, checkpoint)
    logger.info(
        f"Resuming order {order} shard {checkpoint.shard.shard_index}/"
        f"{checkpoint.shard.shard_total} at cursor {checkpoint.cursor}"
    )
    return run_resumable(order, visitor, checkpoint)
