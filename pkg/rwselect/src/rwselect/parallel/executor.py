"""
Threaded logarithmic random bidding. Workers bid for index chunks and race
on one SharedMaxCell; per-index streams make the result equal to the
sequential kernel for the same seed and trial.
"""
import concurrent.futures
import logging
from typing import Optional, Tuple

import numpy as np

from ..errors import AllZeroFitness, InvalidTrialCount
from ..models.execution import ContentionReport, ExecConfig
from ..models.fitness import SelectionResult
from ..rng import SeedLike, trial_uniforms
from ..selection.kernels import NEGATIVE_INFINITY, FitnessLike, fitness_array, log_bids, positive_total
from .cell import SharedMaxCell

logger = logging.getLogger(__name__)


def _offer_chunk(arr: np.ndarray, seed: SeedLike, trial: int, lo: int, hi: int, cell: SharedMaxCell) -> int:
    """Bid for indices [lo, hi) and offer them to the cell; returns successful writes."""
    positive = lo + np.flatnonzero(arr[lo:hi] > 0)
    if not positive.size:
        return 0
    bids = log_bids(arr[positive], trial_uniforms(seed, arr.size, trial, 1, indices=positive)[0])

    # a worker scans its chunk in index order, so only strict running maxima
    # can find the cell below their bid
    previous = np.concatenate(([NEGATIVE_INFINITY], np.maximum.accumulate(bids)[:-1]))
    landed = 0
    for j in np.flatnonzero(bids > previous):
        if cell.offer(float(bids[j]), int(positive[j])):
            landed += 1
    return landed


class ParallelSelector:
    """Keeps one worker pool alive across many selections."""

    def __init__(self, cfg: Optional[ExecConfig] = None):
        self.cfg = cfg or ExecConfig()
        self._pool: Optional[concurrent.futures.ThreadPoolExecutor] = None

    def __enter__(self):
        self._pool = concurrent.futures.ThreadPoolExecutor(
            max_workers=self.cfg.worker_count, thread_name_prefix="rws-worker"
        )
        return self

    def __exit__(self, exc_type, exc, tb):
        self._pool.shutdown(wait=True)
        self._pool = None

    def race(self, f: FitnessLike, seed: SeedLike, trial: int = 0) -> Tuple[SelectionResult, SharedMaxCell]:
        if self._pool is None:
            raise RuntimeError("ParallelSelector must be used as a context manager")
        arr = fitness_array(f)
        positive_total(arr)

        cell = SharedMaxCell()
        step = self.cfg.chunk_size
        futures = [
            self._pool.submit(_offer_chunk, arr, seed, trial, lo, min(lo + step, arr.size), cell)
            for lo in range(0, arr.size, step)
        ]
        for fut in concurrent.futures.as_completed(futures):
            fut.result()

        bid, index = cell.read()
        if index is None:
            raise AllZeroFitness("No finite bid; every fitness value is zero.", {"n": int(arr.size)})
        return SelectionResult(index=index, winning_bid=bid), cell

    def select(self, f: FitnessLike, seed: SeedLike, trial: int = 0) -> SelectionResult:
        return self.race(f, seed, trial)[0]


def select_log_bid_parallel(f: FitnessLike, seed: SeedLike, cfg: Optional[ExecConfig] = None,
                            trial: int = 0) -> SelectionResult:
    with ParallelSelector(cfg) as selector:
        return selector.select(f, seed, trial)


def contention_report(f: FitnessLike, trials: int, seed: SeedLike,
                      cfg: Optional[ExecConfig] = None) -> ContentionReport:
    """Mean number of successful shared-cell replacements per selection."""
    if trials < 1:
        raise InvalidTrialCount(f"trials must be >= 1, got {trials}", {"trials": trials})
    cfg = cfg or ExecConfig()
    total = peak = 0
    with ParallelSelector(cfg) as selector:
        for trial in range(trials):
            _, cell = selector.race(f, seed, trial)
            total += cell.updates
            peak = max(peak, cell.updates)
    logger.debug(f"contention_report: {trials} trials, {cfg.worker_count} workers, {total} updates")
    return ContentionReport(
        trials=trials,
        worker_count=cfg.worker_count,
        mean_shared_updates_per_trial=total / trials,
        max_shared_updates=peak,
    )
