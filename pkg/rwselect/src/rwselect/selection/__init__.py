from .kernels import (
    NEGATIVE_INFINITY,
    analytic_probabilities,
    argmax_bid,
    bid,
    make_bids,
    make_independent_bids,
    prefix_sums,
    select_independent,
    select_log_bid,
    select_prefix_sum,
)
from .independent import independent_probabilities

__all__ = [
    "NEGATIVE_INFINITY",
    "analytic_probabilities",
    "argmax_bid",
    "bid",
    "independent_probabilities",
    "make_bids",
    "make_independent_bids",
    "prefix_sums",
    "select_independent",
    "select_log_bid",
    "select_prefix_sum",
]
