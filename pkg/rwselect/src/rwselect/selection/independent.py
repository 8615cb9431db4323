import numpy as np

from ..models.fitness import ProbabilityVector
from .kernels import FitnessLike, fitness_array, unit_scaled


def independent_probabilities(f: FitnessLike) -> ProbabilityVector:
    """
    Exact selection probabilities of the independent roulette (argmax of f_i * u_i).

    With G(x) = prod_j min(x / f_j, 1) over every positive weight, index i wins
    with probability H(f_i) = integral over [0, f_i] of G(x) / x dx. H only
    depends on the upper limit, so one pass over the sorted distinct weights
    gives every index.
    """
    scaled = unit_scaled(fitness_array(f))
    positive = scaled > 0
    values, inverse, counts = np.unique(scaled[positive], return_inverse=True, return_counts=True)
    logs = np.log(values)

    # on (values[q-1], values[q]) the factors with f_j >= values[q] stay x / f_j
    m = np.cumsum(counts[::-1])[::-1].astype(np.float64)
    log_prod = np.cumsum((counts * logs)[::-1])[::-1]
    log_scale = -np.log(m) - log_prod

    lower = np.concatenate(([0.0], values[:-1]))
    upper_term = np.exp(log_scale + m * logs)
    with np.errstate(divide="ignore"):
        lower_term = np.where(lower > 0, np.exp(log_scale + m * np.log(lower)), 0.0)

    wins = np.cumsum(upper_term - lower_term)
    out = np.zeros(scaled.size)
    out[positive] = wins[inverse.reshape(-1)]
    return ProbabilityVector(values=tuple(out.tolist()))
