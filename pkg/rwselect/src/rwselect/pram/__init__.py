from .simulator import race_bound, race_trials, round_statistics, round_sweep, rounds_row, simulate_max_race
from .tree import reduce_tree_max

__all__ = ["race_bound", "race_trials", "reduce_tree_max", "round_statistics", "round_sweep", "rounds_row",
           "simulate_max_race"]
