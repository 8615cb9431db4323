from typing import List, Optional

from pydantic import BaseModel, Field

from .fitness import ProbabilityVector


class FrequencyTable(BaseModel):
    algorithm: str
    n: int
    trials: int
    counts: List[int]
    empirical: List[float]
    expected: ProbabilityVector


class GoodnessOfFit(BaseModel):
    tv_distance: float = Field(ge=0.0, le=1.0)
    chi_square: float = Field(ge=0.0)
    degrees_of_freedom: int
    p_value: Optional[float] = None
    critical_value: Optional[float] = None
