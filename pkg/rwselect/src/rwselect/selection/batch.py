"""
Vectorised trial blocks. Trial t uses streams t*n + i, so every index returned
here equals what the scalar kernels return for the same trial.
"""
import numpy as np

from ..rng import SeedLike, trial_uniforms, uniform_block
from .kernels import independent_products, log_bids, prefix_index, unit_scaled


def batch_log_bid(arr: np.ndarray, seed: SeedLike, trial_start: int, count: int) -> np.ndarray:
    u = trial_uniforms(seed, arr.size, trial_start, count)
    return np.argmax(log_bids(arr, u), axis=1)


def batch_independent(arr: np.ndarray, seed: SeedLike, trial_start: int, count: int) -> np.ndarray:
    u = trial_uniforms(seed, arr.size, trial_start, count)
    return np.argmax(independent_products(arr, u), axis=1)


def batch_prefix_sum(arr: np.ndarray, seed: SeedLike, trial_start: int, count: int) -> np.ndarray:
    """One uniform per trial, drawn from the trial's index-0 stream."""
    streams = np.arange(trial_start, trial_start + count, dtype=np.uint64) * np.uint64(arr.size)
    u = uniform_block(seed, streams)
    p = np.cumsum(unit_scaled(arr))
    return prefix_index(p, arr, u * p[-1])
