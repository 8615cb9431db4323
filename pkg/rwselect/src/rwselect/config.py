import os
import logging
from pathlib import Path
from typing import List, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError as PydanticValidationError

from .errors import ValidationError

logger = logging.getLogger(__name__)

SEED_ENV = "RWS_SEED"
DEFAULT_SEED = 12345
DEFAULT_SETTINGS_PATH = "rws.yaml"
MAX_SEED = (1 << 64) - 1


def load_env_file(path: str = ".env"):
    """
    Load environment variables from a .env file into os.environ.
    Does not override existing values.
    """
    p = Path(path)
    if not p.exists():
        return

    try:
        with open(p) as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith('#'):
                    continue
                if '=' in line:
                    key, val = line.split('=', 1)
                    key = key.strip()
                    val = val.strip()
                    if key not in os.environ:
                        os.environ[key] = val
    except Exception as e:
        logger.warning(f"Failed to load .env: {e}")


def parse_seed(value: Union[str, int]) -> int:
    """Parse a seed given as decimal or 0x-prefixed hex; must fit in 64 unsigned bits."""
    if isinstance(value, int) and not isinstance(value, bool):
        seed = value
    else:
        text = str(value).strip().lower()
        try:
            seed = int(text, 16) if text.startswith("0x") else int(text, 10)
        except ValueError:
            raise ValidationError(f"Seed must be decimal or 0x-prefixed hex, got {value!r}.")
    if seed < 0 or seed > MAX_SEED:
        raise ValidationError("Seed must be in [0, 2^64).", {"seed": str(value)})
    return seed


def resolve_seed(flag_value: Optional[str] = None) -> int:
    """--seed wins, then RWS_SEED, then the built-in default."""
    if flag_value is not None:
        return parse_seed(flag_value)
    env_value = os.environ.get(SEED_ENV)
    if env_value:
        logger.debug(f"Using seed from {SEED_ENV}")
        return parse_seed(env_value)
    return DEFAULT_SEED


def default_workers() -> int:
    return os.cpu_count() or 1


class Settings(BaseModel):
    """Experiment defaults, overridable from rws.yaml and CLI flags."""
    model_config = ConfigDict(extra="forbid")

    trials: int = Field(10_000_000, ge=1)
    workers: int = Field(default_factory=default_workers, ge=1)
    chunk_size: int = Field(4096, ge=1)
    block_size: int = Field(100_000, ge=1)
    trace_limit: int = Field(10_000, ge=0)
    ks: List[int] = Field(default_factory=lambda: [1 << e for e in range(11)])


def load_settings(path: Optional[str] = None) -> Settings:
    """
    Load settings from YAML.
    Expected shape:
      rwselect:
        trials: 10000000
        workers: 8
    A missing default file yields built-in defaults; a missing explicit file is an error.
    """
    explicit = path is not None
    p = Path(path or DEFAULT_SETTINGS_PATH)
    if not p.exists():
        if explicit:
            raise ValidationError(f"Settings file not found: {p}")
        return Settings()

    try:
        data = yaml.safe_load(p.read_text()) or {}
    except Exception as e:
        raise ValidationError(f"Invalid settings YAML: {e}")

    if not isinstance(data, dict) or not isinstance(data.get("rwselect", {}), dict):
        raise ValidationError("Settings file must contain a 'rwselect' mapping.")

    try:
        return Settings(**(data.get("rwselect") or {}))
    except PydanticValidationError as e:
        raise ValidationError(f"Invalid settings in {p}", {"errors": str(e)})


load_env_file()
