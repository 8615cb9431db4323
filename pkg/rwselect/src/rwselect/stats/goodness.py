import math
from typing import List

import numpy as np
import scipy.stats as stats

from ..errors import ZeroExpectationViolation
from ..models.stats import FrequencyTable, GoodnessOfFit

DEFAULT_ALPHA = 0.001


def tv_distance(t: FrequencyTable) -> float:
    """Half the L1 distance between empirical and expected frequencies."""
    empirical = np.asarray(t.empirical)
    expected = t.expected.as_array()
    return min(1.0, 0.5 * float(np.abs(empirical - expected).sum()))


def binomial_sigma(t: FrequencyTable) -> List[float]:
    """Per-index standard error sqrt(F(1-F)/trials) of the empirical frequency."""
    expected = t.expected.as_array()
    return np.sqrt(expected * (1.0 - expected) / t.trials).tolist()


def chi_square(t: FrequencyTable, alpha: float = DEFAULT_ALPHA) -> GoodnessOfFit:
    """
    Pearson statistic over indices with positive expectation. Indices with zero
    expectation are excluded and must have zero counts.
    """
    counts = np.asarray(t.counts, dtype=np.float64)
    expected = t.expected.as_array()
    included = expected > 0

    stray = np.flatnonzero(~included & (counts > 0))
    if stray.size:
        raise ZeroExpectationViolation(
            f"Index {int(stray[0])} has zero expected probability but {int(counts[stray[0]])} counts.",
            {"algorithm": t.algorithm, "indices": stray.tolist()},
        )

    wanted = t.trials * expected[included]
    statistic = float(np.sum((counts[included] - wanted) ** 2 / wanted))
    dof = int(included.sum()) - 1
    if dof > 0:
        p_value = float(stats.chi2.sf(statistic, dof))
        critical = float(stats.chi2.ppf(1.0 - alpha, dof))
    else:
        p_value, critical = 1.0, math.inf

    return GoodnessOfFit(
        tv_distance=tv_distance(t),
        chi_square=statistic,
        degrees_of_freedom=dof,
        p_value=p_value,
        critical_value=critical,
    )
