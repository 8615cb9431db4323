import unittest
from pathlib import Path
import sys

from click.testing import CliRunner

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "rwselect" / "src"
sys.path.insert(0, str(SRC))

from rwselect.cli import cli


def _data_rows(text):
    return [line.split(",") for line in text.splitlines() if line and not line.startswith("#")]


def _summary(text, label):
    line = next(l for l in text.splitlines() if l.startswith(f"# {label}:"))
    return dict(part.split("=") for part in line.split(": ", 1)[1].split())


class TestCliValidation(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()

    def _invoke(self, args, files=None, env=None):
        with self.runner.isolated_filesystem():
            for name, text in (files or {}).items():
                Path(name).write_text(text)
            return self.runner.invoke(cli, args, env=env or {"RWS_SEED": ""})

    def test_select_single_positive(self):
        result = self._invoke(["select", "--fitness", "f.txt"], {"f.txt": "0\n5\n"})
        self.assertEqual(result.exit_code, 0, result.output)
        lines = result.output.splitlines()
        self.assertEqual(lines[0], "1")
        self.assertTrue(lines[1].startswith("winning_bid="))

    def test_select_every_algorithm(self):
        for alg in ("prefix-sum", "independent", "log-bid", "log-bid-parallel", "pram-sim"):
            result = self._invoke(["select", "--fitness", "f.txt", "--algorithm", alg, "--workers", "2"],
                                  {"f.txt": "0\n3\n0\n"})
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertEqual(result.output.splitlines()[0], "1")
        pram = self._invoke(["select", "--fitness", "f.txt", "--algorithm", "pram-sim"], {"f.txt": "1\n2\n"})
        self.assertTrue(any(l.startswith("rounds=") for l in pram.output.splitlines()))

    def test_select_reproducible(self):
        args = ["select", "--fitness", "f.txt", "--algorithm", "prefix-sum", "--seed", "99"]
        first = self._invoke(args, {"f.txt": "2\n1\n"})
        second = self._invoke(args, {"f.txt": "2\n1\n"})
        self.assertEqual(first.output, second.output)
        self.assertIn(first.output.strip(), ("0", "1"))

    def test_seed_from_environment(self):
        args = ["select", "--fitness", "f.txt"]
        files = {"f.txt": "1\n1\n1\n1\n1\n1\n1\n1\n"}
        by_env = self._invoke(args, files, env={"RWS_SEED": "0x2a"})
        by_flag = self._invoke(args + ["--seed", "42"], files)
        self.assertEqual(by_env.output, by_flag.output)

    def test_select_all_zero(self):
        result = self._invoke(["select", "--fitness", "f.txt"], {"f.txt": "0\n0\n"})
        self.assertEqual(result.exit_code, 3)
        self.assertIn("AllZeroFitness", result.output)

    def test_select_parse_error(self):
        result = self._invoke(["select", "--fitness", "f.txt"], {"f.txt": "1\nx\n"})
        self.assertEqual(result.exit_code, 2)
        self.assertIn("FitnessFileError", result.output)

    def test_missing_fitness_file(self):
        self.assertEqual(self._invoke(["select", "--fitness", "nope.txt"]).exit_code, 2)
        self.assertEqual(self._invoke(["compare", "--fitness", "nope.txt", "--trials", "10"]).exit_code, 2)

    def test_missing_required_option(self):
        self.assertEqual(self._invoke(["select"]).exit_code, 2)

    def test_bad_seed(self):
        result = self._invoke(["select", "--fitness", "f.txt", "--seed", "-5"], {"f.txt": "1\n"})
        self.assertEqual(result.exit_code, 2)

    def test_table1_single_trial(self):
        result = self._invoke(["table1", "--trials", "1", "--workers", "1"])
        self.assertEqual(result.exit_code, 0, result.output)
        rows = _data_rows(result.output)
        self.assertEqual(rows[0], ["i", "f_i", "F_i", "independent", "logarithmic"])
        for col in (3, 4):
            self.assertAlmostEqual(sum(float(r[col]) for r in rows[1:]), 1.0)

    def test_table2_rows(self):
        result = self._invoke(["table2", "--trials", "1000", "--workers", "1"])
        self.assertEqual(result.exit_code, 0, result.output)
        rows = _data_rows(result.output)
        self.assertEqual(len(rows), 11)
        self.assertEqual(rows[1][3], "0.000000")

    def test_table1_with_fitness_override(self):
        result = self._invoke(["table1", "--trials", "100", "--fitness", "f.txt"], {"f.txt": "1\n3\n"})
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(len(_data_rows(result.output)), 3)

    def test_trials_must_be_positive(self):
        self.assertEqual(self._invoke(["table1", "--trials", "0"]).exit_code, 2)
        self.assertEqual(self._invoke(["rounds", "--trials", "0"]).exit_code, 2)

    def test_unwritable_output(self):
        result = self._invoke(["table1", "--trials", "10", "--out", "missing/dir/t.csv"])
        self.assertEqual(result.exit_code, 4)
        self.assertIn("OutputError", result.output)

    def test_out_file(self):
        with self.runner.isolated_filesystem():
            result = self.runner.invoke(cli, ["table1", "--trials", "10", "--seed", "1", "--out", "t1.csv"])
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertTrue(Path("t1.csv").read_text().startswith("i,f_i,F_i,independent,logarithmic\n"))

    def test_rounds(self):
        result = self._invoke(["rounds", "--trials", "200", "--ks", "1,2,32"])
        self.assertEqual(result.exit_code, 0, result.output)
        rows = _data_rows(result.output)
        self.assertEqual(rows[0], ["k", "n", "trials", "mean_rounds", "max_rounds", "bound"])
        self.assertEqual(rows[1][3], "1.0000")
        for row in rows[1:]:
            self.assertLessEqual(float(row[3]), float(row[5]))

    def test_rounds_bad_ks(self):
        self.assertEqual(self._invoke(["rounds", "--ks", "1,x"]).exit_code, 2)
        self.assertEqual(self._invoke(["rounds", "--ks", "8", "--n", "4", "--trials", "5"]).exit_code, 2)

    def test_compare_bias(self):
        result = self._invoke(["compare", "--fitness", "f.txt", "--trials", "200000", "--seed", "1"],
                              {"f.txt": "2\n1\n"})
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertAlmostEqual(float(_summary(result.output, "independent")["tv_distance"]), 1 / 12, delta=0.006)
        self.assertLess(float(_summary(result.output, "logarithmic")["tv_distance"]), 0.006)
        self.assertLess(float(_summary(result.output, "prefix_sum")["tv_distance"]), 0.006)
        self.assertLess(float(_summary(result.output, "logarithmic")["max_abs_z"]), 5.0)
        self.assertTrue(any(l.startswith("# sigma: ") for l in result.output.splitlines()))

    def test_compare_include_parallel(self):
        result = self._invoke(["compare", "--fitness", "f.txt", "--trials", "50", "--include-parallel"],
                              {"f.txt": "1\n2\n3\n"})
        self.assertEqual(result.exit_code, 0, result.output)
        header = _data_rows(result.output)[0]
        self.assertEqual(header[3:], ["prefix_sum", "independent", "logarithmic", "logarithmic_parallel", "pram"])

    def test_bench(self):
        result = self._invoke(["bench", "--trials", "1000", "--workers", "1"])
        self.assertEqual(result.exit_code, 0, result.output)
        rows = _data_rows(result.output)
        self.assertEqual(rows[0], ["algorithm", "n", "trials", "seconds", "selections_per_second"])
        self.assertEqual([r[0] for r in rows[1:]], ["prefix_sum", "independent", "log_bid"])

    def test_config_file(self):
        result = self._invoke(["--config", "rws.yaml", "table1", "--workers", "1"],
                              {"rws.yaml": "rwselect:\n  trials: 20\n"})
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("# trials=20 n=10", result.output)

    def test_bad_config(self):
        result = self._invoke(["table1"], {"rws.yaml": "rwselect:\n  trials: -1\n"})
        self.assertEqual(result.exit_code, 2)
        self.assertEqual(self._invoke(["--config", "absent.yaml", "table1"]).exit_code, 2)


if __name__ == "__main__":
    unittest.main()
