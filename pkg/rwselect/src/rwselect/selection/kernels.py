"""
Sequential reference kernels: prefix-sum roulette, independent roulette and
logarithmic random bidding.
"""
import logging
import sys
from typing import Sequence, Union

import numpy as np

from ..errors import AllZeroFitness, InvalidFitness, ValidationError
from ..models.fitness import BidVector, FitnessVector, PrefixSums, ProbabilityVector, SelectionResult
from ..rng import UniformSource, draw_open_unit

logger = logging.getLogger(__name__)

NEGATIVE_INFINITY = float("-inf")
_DBL_MAX = sys.float_info.max

FitnessLike = Union[FitnessVector, Sequence[float], np.ndarray]
BidsLike = Union[BidVector, Sequence[float], np.ndarray]


def fitness_array(f: FitnessLike) -> np.ndarray:
    """Validate fitness values and return them as a float64 array."""
    if isinstance(f, FitnessVector):
        return f.as_array()
    try:
        arr = np.asarray(f, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise InvalidFitness(f"Fitness values must be real numbers: {e}")
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidFitness("Fitness vector must be a non-empty one-dimensional sequence.")
    bad = ~np.isfinite(arr) | (arr < 0)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise InvalidFitness(
            f"fitness[{i}] must be finite and >= 0, got {arr[i]!r}",
            {"index": i, "value": repr(float(arr[i]))},
        )
    return arr


def unit_scaled(arr: np.ndarray) -> np.ndarray:
    """
    Weights divided by the largest weight. Sums and prefix sums of the result
    stay finite for any finite input; proportions are unchanged.
    """
    top = float(arr.max())
    if not top > 0:
        raise AllZeroFitness("All fitness values are zero; selection probabilities are undefined.", {"n": int(arr.size)})
    return arr / top


def positive_total(arr: np.ndarray) -> float:
    """Total weight in units of the largest weight; raises AllZeroFitness when nothing is positive."""
    return float(unit_scaled(arr).sum())


def analytic_probabilities(f: FitnessLike) -> ProbabilityVector:
    """F_i = f_i / sum(f)."""
    scaled = unit_scaled(fitness_array(f))
    return ProbabilityVector(values=tuple((scaled / scaled.sum()).tolist()))


def prefix_sums(f: FitnessLike) -> PrefixSums:
    return PrefixSums(p=tuple(np.cumsum(fitness_array(f)).tolist()))


def log_bids(arr: np.ndarray, u: np.ndarray) -> np.ndarray:
    """
    r = log(u) / f elementwise (u broadcasts against f); zero fitness maps to -inf.
    Positive fitness always gives a finite bid, clamped at -DBL_MAX on overflow.
    """
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        raw = np.log(u) / arr
    return np.where(arr > 0, np.maximum(raw, -_DBL_MAX), NEGATIVE_INFINITY)


def independent_products(arr: np.ndarray, u: np.ndarray) -> np.ndarray:
    """r = f * u elementwise; zero fitness maps to -inf."""
    return np.where(arr > 0, arr * u, NEGATIVE_INFINITY)


def bid(f_i: float, u: float) -> float:
    """Logarithmic random bid for one index."""
    arr = fitness_array([f_i])
    if not 0.0 < u < 1.0:
        raise ValidationError(f"u must lie in (0, 1), got {u!r}")
    return float(log_bids(arr, np.float64(u))[0])


def _draw_all(arr: np.ndarray, sources: Sequence[UniformSource]) -> np.ndarray:
    if len(sources) != arr.size:
        raise ValidationError(
            f"Expected {arr.size} sources, got {len(sources)}",
            {"n": int(arr.size), "sources": len(sources)},
        )
    return np.fromiter((draw_open_unit(s) for s in sources), dtype=np.float64, count=arr.size)


def make_bids(f: FitnessLike, sources: Sequence[UniformSource]) -> BidVector:
    """One draw per index, including zero-fitness indices."""
    arr = fitness_array(f)
    return BidVector(bids=tuple(log_bids(arr, _draw_all(arr, sources)).tolist()))


def make_independent_bids(f: FitnessLike, sources: Sequence[UniformSource]) -> BidVector:
    arr = fitness_array(f)
    return BidVector(bids=tuple(independent_products(arr, _draw_all(arr, sources)).tolist()))


def bids_array(b: BidsLike) -> np.ndarray:
    if isinstance(b, BidVector):
        return b.as_array()
    return np.asarray(b, dtype=np.float64)


def argmax_bid(b: BidsLike) -> SelectionResult:
    """Index of the maximum bid; the lowest index wins ties."""
    arr = bids_array(b)
    if arr.size == 0 or not (arr > NEGATIVE_INFINITY).any():
        raise AllZeroFitness("No finite bid; every fitness value is zero.", {"n": int(arr.size)})
    i = int(np.argmax(arr))
    return SelectionResult(index=i, winning_bid=float(arr[i]))


def select_log_bid(f: FitnessLike, rng: Sequence[UniformSource]) -> SelectionResult:
    arr = fitness_array(f)
    positive_total(arr)
    return argmax_bid(make_bids(arr, rng))


def select_independent(f: FitnessLike, rng: Sequence[UniformSource]) -> SelectionResult:
    """Biased baseline: argmax of f_i * u_i."""
    arr = fitness_array(f)
    positive_total(arr)
    return argmax_bid(make_independent_bids(arr, rng))


def prefix_index(p: np.ndarray, arr: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Indices i with p[i-1] <= r < p[i]."""
    idx = np.searchsorted(p, r, side="right")
    # u * p[-1] can round up to p[-1] itself
    overflow = idx >= p.size
    if np.any(overflow):
        idx = np.where(overflow, int(np.flatnonzero(arr > 0)[-1]), idx)
    return idx


def select_prefix_sum(f: FitnessLike, u: float) -> SelectionResult:
    arr = fitness_array(f)
    scaled = unit_scaled(arr)
    if not 0.0 < u < 1.0:
        raise ValidationError(f"u must lie in (0, 1), got {u!r}")
    p = np.cumsum(scaled)
    i = int(prefix_index(p, arr, np.float64(u) * p[-1]))
    return SelectionResult(index=i)
