from concurrent.futures import FIRST_COMPLETED, Future, ProcessPoolExecutor, wait
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Optional, TypeVar

from tqdm import tqdm

from jahangir_ramsey.core.config import settings
from jahangir_ramsey.schemas.checkpoint import Checkpoint
from jahangir_ramsey.schemas.instance import RamseyInstance
from jahangir_ramsey.utils.logger import get_logger

logger = get_logger("shard_pool")

T = TypeVar("T")
R = TypeVar("R")

JobKind = Literal["upper", "theorem1-extract", "theorem2-extract"]


@dataclass(frozen=True, slots=True)
class ShardJob:
    """What every enumerated class of one order is checked against."""

    kind: JobKind
    instance: RamseyInstance
    order: int


SliceRunner = Callable[[ShardJob, Checkpoint, Optional[int]], Checkpoint]
ProgressHook = Callable[[list[Checkpoint]], None]


class ShardPool:
    """Drive enumeration shards to completion in worker processes.

    Each shard advances in slices of ``slice_branches`` top-level branches;
    after every slice the parent process sees the new checkpoints (and may
    persist them through ``on_progress``) before the shard is resubmitted.
    Runners must be module-level functions so they pickle under any start
    method.
    """

    def __init__(
        self,
        workers: int,
        slice_branches: Optional[int] = None,
        on_progress: Optional[ProgressHook] = None,
    ) -> None:
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self._workers = workers
        self._slice_branches = slice_branches
        self._on_progress = on_progress

    def run(self, job: ShardJob, runner: SliceRunner, checkpoints: Iterable[Checkpoint]) -> list[Checkpoint]:
        states = {c.shard.shard_index: c for c in checkpoints}
        pending = [index for index, c in sorted(states.items()) if not c.complete]
        bar = tqdm(
            desc=f"{job.kind} order {job.order}",
            unit="class",
            initial=sum(c.processed for c in states.values()),
            disable=not settings.show_progress,
        )
        try:
            if self._workers == 1 or len(pending) <= 1:
                self._run_inline(job, runner, states, pending, bar)
            else:
                self._run_pool(job, runner, states, pending, bar)
        finally:
            bar.close()
        return [states[index] for index in sorted(states)]

    def _advance(self, states: dict[int, Checkpoint], state: Checkpoint, bar: tqdm) -> None:
        before = states[state.shard.shard_index].processed
        states[state.shard.shard_index] = state
        bar.update(state.processed - before)
        if self._on_progress is not None:
            self._on_progress([states[index] for index in sorted(states)])

    def _run_inline(
        self,
        job: ShardJob,
        runner: SliceRunner,
        states: dict[int, Checkpoint],
        pending: list[int],
        bar: tqdm,
    ) -> None:
        for index in pending:
            state = states[index]
            while not state.complete:
                state = runner(job, state, self._slice_branches)
                self._advance(states, state, bar)

    def _run_pool(
        self,
        job: ShardJob,
        runner: SliceRunner,
        states: dict[int, Checkpoint],
        pending: list[int],
        bar: tqdm,
    ) -> None:
        workers = min(self._workers, len(pending))
        logger.info(f"Running {len(pending)} shards of order {job.order} on {workers} workers")
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            running: dict[Future[Checkpoint], int] = {
                pool.submit(runner, job, states[index], self._slice_branches): index
                for index in pending
            }
            while running:
                done, _ = wait(running, return_when=FIRST_COMPLETED)
                for future in done:
                    index = running.pop(future)
                    state = future.result()
                    self._advance(states, state, bar)
                    if not state.complete:
                        running[pool.submit(runner, job, state, self._slice_branches)] = index
        except BaseException as exc:
            logger.error(f"Shard run for order {job.order} aborted: {exc}")
            pool.shutdown(wait=False, cancel_futures=True)
            raise
        pool.shutdown(wait=True)

    def map(self, fn: Callable[[T], R], items: list[T]) -> list[R]:
        """Apply ``fn`` to every item, in order, across the workers."""
        if self._workers == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ProcessPoolExecutor(max_workers=min(self._workers, len(items))) as pool:
            return list(pool.map(fn, items))
