import logging
import sys

_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def level_for_verbosity(verbosity: int) -> int:
    """0 -> WARNING, 1 -> INFO, 2 or more -> DEBUG."""
    return _LEVELS[max(0, min(verbosity, len(_LEVELS) - 1))]


def configure_logging(verbosity: int = 0):
    """Send log records to stderr; results own stdout."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(levelname)s] %(name)s: %(message)s"))

    root = logging.getLogger()
    root.setLevel(level_for_verbosity(verbosity))
    for old in list(root.handlers):
        root.removeHandler(old)
    root.addHandler(handler)

    # numpy/scipy RuntimeWarnings go through the same handler
    logging.captureWarnings(True)
