import json
import traceback

class RouletteError(Exception):
    """Base exception for rwselect"""
    exit_code = 1

    def __init__(self, message: str, details: dict = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

class ValidationError(RouletteError):
    """Input validation errors"""
    exit_code = 2

class InvalidFitness(ValidationError):
    """A fitness value is negative, NaN or infinite"""
    pass

class InvalidTrialCount(ValidationError):
    """Trial count below one"""
    pass

class FitnessFileError(ValidationError):
    """Fitness file missing or unparseable"""
    pass

class AllZeroFitness(RouletteError):
    """No positive fitness, so no index can be selected"""
    exit_code = 3

class ZeroExpectationViolation(RouletteError):
    """An index with zero expected probability was observed"""
    exit_code = 3

class OutputError(RouletteError):
    """Output path could not be written"""
    exit_code = 4

class UnknownError(RouletteError):
    """Unexpected errors"""
    pass

def exit_code_for(e: Exception) -> int:
    if isinstance(e, RouletteError):
        return e.exit_code
    return UnknownError.exit_code

def format_error(e: Exception) -> str:
    """JSON error envelope written to stderr by the CLI."""
    if isinstance(e, RouletteError):
        error = {"type": type(e).__name__, "message": e.message, "details": e.details}
    else:
        error = {
            "type": UnknownError.__name__,
            "message": str(e),
            "details": {"traceback": traceback.format_exc().splitlines()},
        }
    error["exit_code"] = exit_code_for(e)
    return json.dumps({"ok": False, "error": error, "meta": {"version": 1}}, indent=2)
