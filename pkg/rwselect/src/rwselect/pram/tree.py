import numpy as np

from ..errors import AllZeroFitness
from ..models.fitness import SelectionResult
from ..models.pram import TreeReduction
from ..selection.kernels import NEGATIVE_INFINITY, BidsLike, bids_array


def reduce_tree_max(b: BidsLike) -> TreeReduction:
    """
    Pairwise maximum, one tree level per step, carrying the index.
    The left child wins ties, so the lowest index survives.
    """
    vals = bids_array(b)
    n = vals.size
    if n == 0 or not (vals > NEGATIVE_INFINITY).any():
        raise AllZeroFitness("No finite bid; every fitness value is zero.", {"n": int(n)})

    idx = np.arange(n)
    depth = 0
    while vals.size > 1:
        if vals.size % 2:
            vals = np.append(vals, NEGATIVE_INFINITY)
            idx = np.append(idx, n)
        left, right = vals[0::2], vals[1::2]
        take_right = right > left
        vals = np.where(take_right, right, left)
        idx = np.where(take_right, idx[1::2], idx[0::2])
        depth += 1

    return TreeReduction(
        result=SelectionResult(index=int(idx[0]), winning_bid=float(vals[0])),
        depth=depth,
    )
