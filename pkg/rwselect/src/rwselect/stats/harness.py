"""
Monte Carlo experiment runner. Trial t always draws from streams t*n + i
(and conflict_stream_id(t) for the PRAM race), so tables do not depend on
how trials are split between workers.
"""
import concurrent.futures
import logging
from enum import Enum
from typing import Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from ..errors import InvalidTrialCount, ValidationError
from ..models.execution import ExecConfig
from ..models.stats import FrequencyTable
from ..parallel.executor import ParallelSelector
from ..pram.simulator import race_trials
from ..rng import SeedLike
from ..selection.batch import batch_independent, batch_log_bid, batch_prefix_sum
from ..selection.kernels import FitnessLike, analytic_probabilities, fitness_array

logger = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 100_000
# upper bound on trials * n materialised per block
_BLOCK_CELLS = 1 << 22


class Algorithm(str, Enum):
    PREFIX_SUM = "prefix_sum"
    INDEPENDENT = "independent"
    LOG_BID = "log_bid"
    LOG_BID_PARALLEL = "log_bid_parallel"
    PRAM_SIM = "pram_sim"

    @classmethod
    def parse(cls, value: Union[str, "Algorithm"]) -> "Algorithm":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower().replace("-", "_"))
        except ValueError:
            choices = ", ".join(a.value for a in cls)
            raise ValidationError(f"Unknown algorithm {value!r}; expected one of {choices}")


_BATCH: Dict[Algorithm, Callable] = {
    Algorithm.PREFIX_SUM: batch_prefix_sum,
    Algorithm.INDEPENDENT: batch_independent,
    Algorithm.LOG_BID: batch_log_bid,
}


def _blocks(trials: int, size: int) -> List[Tuple[int, int]]:
    return [(start, min(size, trials - start)) for start in range(0, trials, size)]


def _count_batch(kernel: Callable, arr: np.ndarray, seed: SeedLike, trials: int,
                 workers: int, block_size: int) -> np.ndarray:
    size = max(1, min(block_size, _BLOCK_CELLS // arr.size))

    def _run(block: Tuple[int, int]) -> np.ndarray:
        start, count = block
        return np.bincount(kernel(arr, seed, start, count), minlength=arr.size)

    blocks = _blocks(trials, size)
    counts = np.zeros(arr.size, dtype=np.int64)
    if workers <= 1 or len(blocks) == 1:
        for block in blocks:
            counts += _run(block)
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            # addition commutes, so completion order does not matter
            for partial in executor.map(_run, blocks):
                counts += partial
    return counts


def _count_parallel(arr: np.ndarray, seed: SeedLike, trials: int, workers: int) -> np.ndarray:
    counts = np.zeros(arr.size, dtype=np.int64)
    with ParallelSelector(ExecConfig(worker_count=workers)) as selector:
        for trial in range(trials):
            counts[selector.select(arr, seed, trial).index] += 1
    return counts


def _count_pram(arr: np.ndarray, seed: SeedLike, trials: int) -> np.ndarray:
    counts = np.zeros(arr.size, dtype=np.int64)
    for report in race_trials(arr, seed, 0, trials):
        counts[report.result.index] += 1
    return counts


def run_experiment(algorithm: Union[str, Algorithm], f: FitnessLike, trials: int, seed: SeedLike,
                   workers: int = 1, block_size: int = DEFAULT_BLOCK_SIZE) -> FrequencyTable:
    """Run one selector `trials` times and tabulate selection frequencies."""
    algorithm = Algorithm.parse(algorithm)
    if trials < 1:
        raise InvalidTrialCount(f"trials must be >= 1, got {trials}", {"trials": trials})
    arr = fitness_array(f)
    expected = analytic_probabilities(arr)

    logger.info(f"Running {algorithm.value}: n={arr.size}, trials={trials}, workers={workers}")
    if algorithm in _BATCH:
        counts = _count_batch(_BATCH[algorithm], arr, seed, trials, workers, block_size)
    elif algorithm is Algorithm.LOG_BID_PARALLEL:
        counts = _count_parallel(arr, seed, trials, workers)
    else:
        counts = _count_pram(arr, seed, trials)

    return FrequencyTable(
        algorithm=algorithm.value,
        n=int(arr.size),
        trials=trials,
        counts=counts.tolist(),
        empirical=(counts / trials).tolist(),
        expected=expected,
    )


def compare_experiment(f: FitnessLike, algorithms: Sequence[Union[str, Algorithm]], trials: int,
                       seed: SeedLike, workers: int = 1,
                       block_size: int = DEFAULT_BLOCK_SIZE) -> Dict[str, FrequencyTable]:
    """Run several algorithms on the same fitness vector and seed."""
    return {
        Algorithm.parse(a).value: run_experiment(a, f, trials, seed, workers=workers, block_size=block_size)
        for a in algorithms
    }
