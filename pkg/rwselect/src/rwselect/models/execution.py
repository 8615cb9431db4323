from pydantic import BaseModel, ConfigDict, Field

from ..config import default_workers


class ExecConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    worker_count: int = Field(default_factory=default_workers, ge=1)
    chunk_size: int = Field(4096, ge=1)


class ContentionReport(BaseModel):
    trials: int
    worker_count: int
    mean_shared_updates_per_trial: float
    max_shared_updates: int
