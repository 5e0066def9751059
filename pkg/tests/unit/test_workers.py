# tests/unit/test_workers.py
import random
import threading
import time

import pytest

from app.application.config import settings
from app.utils.seeding import derive_seed
from app.workers.pool import WorkerPool, resolve_threads, run_ordered


def jittered_square(x: int) -> int:
    time.sleep(random.random() * 0.005)
    return x * x


class TestResolveThreads:
    def test_flag_wins(self, monkeypatch):
        monkeypatch.setattr(settings, "DIP_THREADS", 3)
        assert resolve_threads(2) == 2

    def test_environment_default(self, monkeypatch):
        monkeypatch.setattr(settings, "DIP_THREADS", 3)
        assert resolve_threads() == 3

    def test_invalid_flag(self):
        with pytest.raises(ValueError):
            resolve_threads(0)


class TestWorkerPool:
    @pytest.mark.parametrize("threads", [1, 4])
    def test_results_in_item_order(self, threads):
        with WorkerPool(threads) as pool:
            assert pool.map_ordered(jittered_square, range(30)) == [x * x for x in range(30)]

    def test_on_result_runs_in_caller_thread(self):
        caller = threading.get_ident()
        seen = []
        with WorkerPool(4) as pool:
            pool.map_ordered(
                jittered_square, range(10), lambda i, r: seen.append((i, r, threading.get_ident()))
            )
        assert sorted(i for i, _, _ in seen) == list(range(10))
        assert all(r == i * i and ident == caller for i, r, ident in seen)

    def test_worker_error_propagates(self):
        def boom(x):
            if x == 3:
                raise RuntimeError("boom")
            return x

        with pytest.raises(RuntimeError):
            with WorkerPool(2) as pool:
                pool.map_ordered(boom, range(6))

    def test_cancelled_sequential_pool(self):
        with WorkerPool(1) as pool:
            pool.cancelled.set()
            with pytest.raises(KeyboardInterrupt):
                pool.map_ordered(jittered_square, range(3))

    def test_run_ordered_without_pool(self):
        assert run_ordered(lambda x: x + 1, [1, 2, 3]) == [2, 3, 4]


class TestDeriveSeed:
    def test_deterministic_and_distinct(self):
        assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
        assert len({derive_seed(1, i) for i in range(100)}) == 100
        assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)

    def test_range(self):
        assert 0 <= derive_seed(2**63, 5) < 2**64

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            derive_seed(-1)
