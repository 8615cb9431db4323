import math
from pathlib import Path

from .errors import FitnessFileError
from .models.fitness import FitnessVector


def parse_fitness(text: str, source: str = "<text>") -> FitnessVector:
    """
    Parse fitness values, one non-negative decimal per line.
    Blank lines are skipped; '#' starts a comment.
    """
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            value = float(line)
        except ValueError:
            raise FitnessFileError(
                f"{source}:{lineno}: not a number: {line!r}",
                {"path": source, "line": lineno},
            )
        if not math.isfinite(value) or value < 0:
            raise FitnessFileError(
                f"{source}:{lineno}: fitness must be finite and >= 0, got {line!r}",
                {"path": source, "line": lineno},
            )
        values.append(value)

    if not values:
        raise FitnessFileError(f"{source}: no fitness values found.", {"path": source})
    return FitnessVector(values=tuple(values))


def load_fitness(path: str) -> FitnessVector:
    p = Path(path)
    if not p.exists():
        raise FitnessFileError(f"Fitness file not found: {path}", {"path": path})
    try:
        text = p.read_text()
    except (OSError, UnicodeDecodeError) as e:
        raise FitnessFileError(f"Cannot read fitness file {path}: {e}", {"path": path})
    return parse_fitness(text, source=path)
