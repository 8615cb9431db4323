import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator


class FitnessVector(BaseModel):
    """
    Input weights f_0..f_{n-1}. At least one positive entry is checked at
    selection time, not here.
    """
    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...]

    @field_validator("values")
    @classmethod
    def _check_values(cls, v):
        if not v:
            raise ValueError("fitness vector must have at least one entry")
        for i, x in enumerate(v):
            if not math.isfinite(x) or x < 0:
                raise ValueError(f"fitness[{i}] must be finite and >= 0, got {x!r}")
        return v

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def k(self) -> int:
        """Number of positive entries."""
        return sum(1 for x in self.values if x > 0)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


class ProbabilityVector(BaseModel):
    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


class BidVector(BaseModel):
    """Transformed values r_i; float('-inf') marks zero fitness."""
    model_config = ConfigDict(frozen=True)

    bids: Tuple[float, ...]

    @property
    def k(self) -> int:
        return sum(1 for b in self.bids if b != -math.inf)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.bids, dtype=np.float64)


class PrefixSums(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: Tuple[float, ...]

    @property
    def total(self) -> float:
        return self.p[-1]


class SelectionResult(BaseModel):
    index: int
    winning_bid: Optional[float] = None
    rounds: Optional[int] = None
