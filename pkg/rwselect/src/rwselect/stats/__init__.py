from .goodness import binomial_sigma, chi_square, tv_distance
from .harness import Algorithm, compare_experiment, run_experiment
from .tables import TABLE1_FITNESS, TABLE2_FITNESS, table1_experiment, table2_experiment

__all__ = [
    "Algorithm",
    "TABLE1_FITNESS",
    "TABLE2_FITNESS",
    "binomial_sigma",
    "chi_square",
    "compare_experiment",
    "run_experiment",
    "table1_experiment",
    "table2_experiment",
    "tv_distance",
]
