"""Built-in reference configurations and side-by-side comparison tables."""
from typing import Dict, Optional, Sequence, Tuple, Union

from pydantic import BaseModel

from ..models.fitness import ProbabilityVector
from ..models.stats import FrequencyTable
from ..rng import SeedLike
from ..selection.independent import independent_probabilities
from ..selection.kernels import FitnessLike, analytic_probabilities, fitness_array
from .harness import DEFAULT_BLOCK_SIZE, Algorithm, compare_experiment

# f_i = i for i = 0..9
TABLE1_FITNESS: Tuple[float, ...] = tuple(float(i) for i in range(10))
# f_0 = 1, f_1..f_99 = 2; table2 shows the first 10 rows unless asked for all
TABLE2_FITNESS: Tuple[float, ...] = (1.0,) + (2.0,) * 99
TABLE2_DISPLAY_ROWS = 10

TABLE_ALGORITHMS = (Algorithm.INDEPENDENT, Algorithm.LOG_BID)

# CSV column label per algorithm
COLUMN_LABELS: Dict[str, str] = {
    Algorithm.PREFIX_SUM.value: "prefix_sum",
    Algorithm.INDEPENDENT.value: "independent",
    Algorithm.LOG_BID.value: "logarithmic",
    Algorithm.LOG_BID_PARALLEL.value: "logarithmic_parallel",
    Algorithm.PRAM_SIM.value: "pram",
}


class ComparisonTable(BaseModel):
    fitness: Tuple[float, ...]
    expected: ProbabilityVector
    # exact biased probabilities; only set when the independent column is run
    independent_expected: Optional[ProbabilityVector] = None
    tables: Dict[str, FrequencyTable]
    display_rows: Optional[int] = None


def comparison_table(f: FitnessLike, algorithms: Sequence[Union[str, Algorithm]], trials: int,
                     seed: SeedLike, workers: int = 1, block_size: int = DEFAULT_BLOCK_SIZE,
                     display_rows: Optional[int] = None) -> ComparisonTable:
    arr = fitness_array(f)
    names = [Algorithm.parse(a) for a in algorithms]
    return ComparisonTable(
        fitness=tuple(arr.tolist()),
        expected=analytic_probabilities(arr),
        independent_expected=independent_probabilities(arr) if Algorithm.INDEPENDENT in names else None,
        tables=compare_experiment(arr, names, trials, seed, workers=workers, block_size=block_size),
        display_rows=display_rows,
    )


def table1_experiment(trials: int, seed: SeedLike, workers: int = 1,
                      block_size: int = DEFAULT_BLOCK_SIZE) -> ComparisonTable:
    return comparison_table(TABLE1_FITNESS, TABLE_ALGORITHMS, trials, seed, workers, block_size)


def table2_experiment(trials: int, seed: SeedLike, workers: int = 1, block_size: int = DEFAULT_BLOCK_SIZE,
                      all_rows: bool = False) -> ComparisonTable:
    return comparison_table(
        TABLE2_FITNESS, TABLE_ALGORITHMS, trials, seed, workers, block_size,
        display_rows=None if all_rows else TABLE2_DISPLAY_ROWS,
    )
