import random
import threading
import unittest
from pathlib import Path
import sys

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "rwselect" / "src"
sys.path.insert(0, str(SRC))

from rwselect.errors import AllZeroFitness, InvalidTrialCount
from rwselect.models.execution import ExecConfig
from rwselect.parallel import ParallelSelector, SharedMaxCell, contention_report, select_log_bid_parallel
from rwselect.parallel.cell import EMPTY, beats
from rwselect.rng import index_sources
from rwselect.selection import select_log_bid
from rwselect.selection.batch import batch_log_bid


class TestSharedMaxCell(unittest.TestCase):
    def test_beats(self):
        self.assertTrue(beats(-1.0, 5, EMPTY))
        self.assertTrue(beats(-1.0, 5, (-2.0, 0)))
        self.assertTrue(beats(-1.0, 2, (-1.0, 3)))
        self.assertFalse(beats(-1.0, 4, (-1.0, 3)))
        self.assertFalse(beats(-3.0, 0, (-1.0, 3)))

    def test_compare_and_set(self):
        cell = SharedMaxCell()
        self.assertTrue(cell.compare_and_set(EMPTY, (-1.0, 0)))
        self.assertFalse(cell.compare_and_set(EMPTY, (-0.5, 1)))
        self.assertEqual(cell.read(), (-1.0, 0))
        self.assertEqual(cell.updates, 1)

    def test_concurrent_offers_keep_maximum(self):
        rnd = random.Random(4)
        offers = [(-rnd.random(), i) for i in range(4000)]
        # duplicate the best bid at a higher index
        best = max(offers)
        offers.append((best[0], 10_000))

        cell = SharedMaxCell()

        def worker(part):
            for b, i in part:
                cell.offer(b, i)

        threads = [threading.Thread(target=worker, args=(offers[w::8],)) for w in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        self.assertEqual(cell.read(), max(offers, key=lambda o: (o[0], -o[1])))
        self.assertEqual(cell.read()[1], best[1])


class TestParallelSelection(unittest.TestCase):
    def test_matches_sequential(self):
        arr = np.random.default_rng(17).uniform(0.0, 3.0, size=300)
        arr[::7] = 0.0
        for workers in (1, 2, 8):
            cfg = ExecConfig(worker_count=workers, chunk_size=32)
            with ParallelSelector(cfg) as selector:
                for trial in range(100):
                    expected = select_log_bid(arr, index_sources(123, arr.size, trial))
                    got = selector.select(arr, 123, trial)
                    self.assertEqual(got.index, expected.index)
                    self.assertEqual(got.winning_bid, expected.winning_bid)

    def test_no_lost_maxima_under_load(self):
        arr = np.random.default_rng(31).uniform(0.0, 1.0, size=100_000)
        cfg = ExecConfig(worker_count=8, chunk_size=512)
        with ParallelSelector(cfg) as selector:
            for seed in (1, 2, 3):
                for trial in range(5):
                    expected = int(batch_log_bid(arr, seed, trial, 1)[0])
                    for _ in range(2):
                        result, cell = selector.race(arr, seed, trial)
                        self.assertEqual(result.index, expected)
                        self.assertEqual(cell.read()[1], expected)

    def test_one_shot(self):
        f = [0.0, 5.0, 0.0]
        self.assertEqual(select_log_bid_parallel(f, 1, ExecConfig(worker_count=2, chunk_size=1)).index, 1)

    def test_all_zero(self):
        with self.assertRaises(AllZeroFitness):
            select_log_bid_parallel([0.0, 0.0], 1, ExecConfig(worker_count=2, chunk_size=1))

    def test_requires_context(self):
        with self.assertRaises(RuntimeError):
            ParallelSelector().select([1.0], 1)


class TestContention(unittest.TestCase):
    def test_single_positive_writes_once(self):
        report = contention_report([0, 0, 4, 0], 20, seed=1, cfg=ExecConfig(worker_count=2, chunk_size=1))
        self.assertEqual(report.mean_shared_updates_per_trial, 1.0)
        self.assertEqual(report.max_shared_updates, 1)

    def test_sublinear_updates(self):
        n = 4096
        report = contention_report(np.ones(n), 10, seed=2, cfg=ExecConfig(worker_count=4, chunk_size=64))
        self.assertGreaterEqual(report.mean_shared_updates_per_trial, 1.0)
        self.assertLess(report.mean_shared_updates_per_trial, n / 4)
        self.assertEqual(report.worker_count, 4)

    def test_updates_grow_slowly_with_k(self):
        cfg = ExecConfig(worker_count=8)
        small = contention_report(np.ones(64), 200, seed=3, cfg=cfg).mean_shared_updates_per_trial
        large = contention_report(np.ones(1024), 200, seed=3, cfg=cfg).mean_shared_updates_per_trial
        self.assertLess(large, 4 * small)

    def test_invalid_trials(self):
        with self.assertRaises(InvalidTrialCount):
            contention_report([1, 1], 0, seed=1)


if __name__ == "__main__":
    unittest.main()
