"""
Synchronous simulation of the write-race maximum protocol on a CRCW-PRAM.

Each round, every processor with r_i > s attempts s <- r_i and one attempter,
chosen uniformly through the conflict stream, succeeds. The shared cell starts
at -inf: every bid is negative, so a cell starting at 0 would leave no
processor active.
"""
import logging
import math
from collections import Counter
from typing import Iterable, Iterator, List, Optional

import numpy as np

from ..errors import AllZeroFitness, InvalidTrialCount, ValidationError
from ..models.fitness import SelectionResult
from ..models.pram import RoundStatistics, RoundTrace, SharedCellState, SimulationReport
from ..rng import SeedLike, UniformSource, conflict_stream_id, draw_open_unit, substream, trial_uniforms
from ..selection.kernels import NEGATIVE_INFINITY, BidsLike, bids_array, fitness_array, log_bids, positive_total
from .tree import reduce_tree_max

logger = logging.getLogger(__name__)

DEFAULT_TRACE_LIMIT = 10_000
# cells of bid matrix materialised per block in round_statistics
_BLOCK_CELLS = 1 << 20


def _race(bids: np.ndarray, index_of: np.ndarray, conflict_rng: UniformSource,
          trace_limit: int) -> SimulationReport:
    """Race over finite bids only; index_of maps positions back to processor ids."""
    cell = SharedCellState()
    trace: List[RoundTrace] = []
    rounds = successes = 0

    active = np.flatnonzero(bids > cell.s)
    while active.size:
        before = active.size
        pick = min(int(draw_open_unit(conflict_rng) * before), before - 1)
        winner = active[pick]
        cell.s = float(bids[winner])
        active = active[bids[active] > cell.s]
        rounds += 1
        if 2 * active.size <= before:
            successes += 1
        if len(trace) < trace_limit:
            trace.append(RoundTrace(
                round_number=rounds,
                active_before=before,
                winner=int(index_of[winner]),
                s_after=cell.s,
                active_after=int(active.size),
            ))

    # after the barrier every processor with r_i = s writes; the lowest index is kept
    cell.output = int(index_of[np.flatnonzero(bids == cell.s)[0]])
    return SimulationReport(
        result=SelectionResult(index=cell.output, winning_bid=cell.s, rounds=rounds),
        rounds=rounds,
        trace=trace,
        k=int(bids.size),
        successes=successes,
        truncated=rounds > len(trace),
    )


def simulate_max_race(b: BidsLike, conflict_rng: UniformSource,
                      trace_limit: int = DEFAULT_TRACE_LIMIT) -> SimulationReport:
    arr = bids_array(b)
    finite = np.flatnonzero(arr > NEGATIVE_INFINITY)
    if finite.size == 0:
        raise AllZeroFitness("No finite bid; every fitness value is zero.", {"n": int(arr.size)})
    return _race(arr[finite], finite, conflict_rng, trace_limit)


def race_bound(k: int) -> int:
    """2 * ceil(log2 k) rounds, or 1 when a single processor bids."""
    if k <= 1:
        return 1
    return 2 * math.ceil(math.log2(k))


def race_trials(f, seed: SeedLike, trial_start: int, count: int,
                trace_limit: int = 0) -> Iterator[SimulationReport]:
    """
    Race freshly drawn log-bids for trials [trial_start, trial_start + count).
    Trial t bids from streams t*n + i and resolves conflicts from conflict_stream_id(t).
    """
    arr = fitness_array(f)
    positive_total(arr)

    # zero-fitness processors never become active; their streams are not needed
    positive = np.flatnonzero(arr > 0)
    weights = arr[positive]
    block = max(1, _BLOCK_CELLS // positive.size)
    for start in range(trial_start, trial_start + count, block):
        size = min(block, trial_start + count - start)
        bid_rows = log_bids(weights, trial_uniforms(seed, arr.size, start, size, indices=positive))
        for offset in range(size):
            yield _race(bid_rows[offset], positive, substream(seed, conflict_stream_id(start + offset)),
                        trace_limit)


def round_statistics(f, trials: int, seed: SeedLike,
                     trace_limit: int = 0) -> RoundStatistics:
    """Mean, maximum and histogram of race rounds over `trials` fresh bid vectors."""
    if trials < 1:
        raise InvalidTrialCount(f"trials must be >= 1, got {trials}", {"trials": trials})
    arr = fitness_array(f)

    histogram: Counter = Counter()
    total_rounds = total_successes = 0
    for report in race_trials(arr, seed, 0, trials, trace_limit):
        histogram[report.rounds] += 1
        total_rounds += report.rounds
        total_successes += report.successes
    k = int(np.count_nonzero(arr > 0))
    logger.debug(f"round_statistics: {trials} trials, k={k}, n={arr.size}")

    return RoundStatistics(
        k=k,
        n=int(arr.size),
        trials=trials,
        mean_rounds=total_rounds / trials,
        max_rounds=max(histogram),
        histogram=dict(sorted(histogram.items())),
        success_rate=total_successes / total_rounds,
    )


def rounds_row(f, trials: int, seed: SeedLike) -> dict:
    """
    One rounds CSV row for an arbitrary fitness vector. `tree_depth` is the
    binary-tree reduction depth over trial 0's bids, kept for comparison.
    """
    stats = round_statistics(f, trials, seed)
    arr = fitness_array(f)
    tree = reduce_tree_max(log_bids(arr, trial_uniforms(seed, arr.size, 0, 1)[0]))
    logger.info(
        f"k={stats.k} n={stats.n}: mean_rounds={stats.mean_rounds:.4f} max_rounds={stats.max_rounds} "
        f"success_rate={stats.success_rate:.4f} tree_depth={tree.depth}"
    )
    return {
        "k": stats.k,
        "n": stats.n,
        "trials": trials,
        "mean_rounds": stats.mean_rounds,
        "max_rounds": stats.max_rounds,
        "bound": race_bound(stats.k),
        "tree_depth": tree.depth,
    }


def round_sweep(ks: Iterable[int], trials: int, seed: SeedLike,
                n_factor: int = 1, n: Optional[int] = None) -> List[dict]:
    """
    One row per k with k unit weights padded with zeros to n (or k * n_factor)
    processors: k, n, trials, mean_rounds, max_rounds, bound.
    """
    rows = []
    for k in ks:
        size = n if n is not None else k * n_factor
        if k < 1 or size < k:
            raise ValidationError(f"invalid sweep point k={k}, n={size}", {"k": k, "n": size})
        f = np.zeros(size)
        f[:k] = 1.0
        rows.append(rounds_row(f, trials, seed))
    return rows
