import json
import logging
import unittest
from pathlib import Path
import sys

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "rwselect" / "src"
sys.path.insert(0, str(SRC))

from rwselect.logging import configure_logging, level_for_verbosity
from rwselect.errors import (
    AllZeroFitness,
    FitnessFileError,
    InvalidFitness,
    OutputError,
    RouletteError,
    ZeroExpectationViolation,
    exit_code_for,
    format_error,
)


class TestErrors(unittest.TestCase):
    def test_exit_codes(self):
        self.assertEqual(exit_code_for(InvalidFitness("x")), 2)
        self.assertEqual(exit_code_for(FitnessFileError("x")), 2)
        self.assertEqual(exit_code_for(AllZeroFitness("x")), 3)
        self.assertEqual(exit_code_for(ZeroExpectationViolation("x")), 3)
        self.assertEqual(exit_code_for(OutputError("x")), 4)
        self.assertEqual(exit_code_for(RouletteError("x")), 1)
        self.assertEqual(exit_code_for(KeyError("x")), 1)

    def test_envelope(self):
        payload = json.loads(format_error(AllZeroFitness("all zero", {"n": 2})))
        self.assertFalse(payload["ok"])
        self.assertEqual(payload["error"]["type"], "AllZeroFitness")
        self.assertEqual(payload["error"]["message"], "all zero")
        self.assertEqual(payload["error"]["details"], {"n": 2})
        self.assertEqual(payload["error"]["exit_code"], 3)
        self.assertEqual(payload["meta"]["version"], 1)

    def test_unknown_envelope(self):
        payload = json.loads(format_error(RuntimeError("boom")))
        self.assertEqual(payload["error"]["type"], "UnknownError")
        self.assertIn("traceback", payload["error"]["details"])
        self.assertEqual(payload["error"]["exit_code"], 1)


class TestLogging(unittest.TestCase):
    def test_verbosity_levels(self):
        self.assertEqual(level_for_verbosity(0), logging.WARNING)
        self.assertEqual(level_for_verbosity(1), logging.INFO)
        self.assertEqual(level_for_verbosity(5), logging.DEBUG)

    def test_single_handler(self):
        configure_logging(1)
        configure_logging(2)
        root = logging.getLogger()
        self.assertEqual(len(root.handlers), 1)
        self.assertEqual(root.level, logging.DEBUG)
        configure_logging(0)


if __name__ == "__main__":
    unittest.main()
