from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from .fitness import SelectionResult


class SharedCellState(BaseModel):
    """Shared cell s and the output slot. s starts below every bid."""
    s: float = float("-inf")
    output: Optional[int] = None


class RoundTrace(BaseModel):
    round_number: int
    active_before: int
    winner: int
    s_after: float
    active_after: int

    @property
    def success(self) -> bool:
        """At least half of the active processors became inactive."""
        return 2 * self.active_after <= self.active_before


class SimulationReport(BaseModel):
    result: SelectionResult
    rounds: int
    trace: List[RoundTrace] = Field(default_factory=list)
    k: int
    successes: int = 0
    truncated: bool = False


class RoundStatistics(BaseModel):
    k: int
    n: int
    trials: int
    mean_rounds: float
    max_rounds: int
    histogram: Dict[int, int]
    success_rate: float


class TreeReduction(BaseModel):
    result: SelectionResult
    depth: int
