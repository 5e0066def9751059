# app/workers/pool.py
import logging
import threading
from concurrent.futures import FIRST_COMPLETED, Future, ThreadPoolExecutor, wait
from typing import Callable, Dict, List, Optional, Sequence, TypeVar

from app.application.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(requested: Optional[int] = None) -> int:
    """Число потоков: флаг --threads > DIP_THREADS > os.cpu_count()"""
    if requested is not None:
        if requested < 1:
            raise ValueError(f"threads must be >= 1, got {requested}")
        return requested
    return settings.default_threads()


class WorkerPool:
    """
    Пул потоков для независимых испытаний

    Результаты собираются по индексу задачи, порядок завершения не влияет
    на итог. NumPy отпускает GIL в BLAS-операциях.
    """

    def __init__(self, threads: Optional[int] = None):
        self.threads = resolve_threads(threads)
        self._executor: Optional[ThreadPoolExecutor] = None
        self.cancelled = threading.Event()

    def __enter__(self) -> "WorkerPool":
        if self.threads > 1:
            self._executor = ThreadPoolExecutor(
                max_workers=self.threads, thread_name_prefix="dip-worker"
            )
        return self

    def __exit__(self, exc_type, exc, tb):
        self.shutdown(cancel=exc_type is not None)
        return False

    def shutdown(self, cancel: bool = False):
        if cancel:
            self.cancelled.set()
        if self._executor is not None:
            self._executor.shutdown(wait=True, cancel_futures=cancel)
            self._executor = None

    def map_ordered(
        self,
        fn: Callable[[T], R],
        items: Sequence[T],
        on_result: Optional[Callable[[int, R], None]] = None,
    ) -> List[R]:
        """
        Применить fn ко всем элементам; результат в порядке items

        on_result(index, result) вызывается в вызывающем потоке по мере
        завершения задач.
        """
        if self._executor is None:
            results = []
            for index, item in enumerate(items):
                if self.cancelled.is_set():
                    raise KeyboardInterrupt("worker pool cancelled")
                result = fn(item)
                results.append(result)
                if on_result:
                    on_result(index, result)
            return results

        futures: Dict[Future, int] = {
            self._executor.submit(fn, item): index for index, item in enumerate(items)
        }
        collected: Dict[int, R] = {}
        pending = set(futures)
        try:
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for future in done:
                    index = futures[future]
                    collected[index] = future.result()
                    if on_result:
                        on_result(index, collected[index])
        except BaseException:
            for future in pending:
                future.cancel()
            raise
        return [collected[i] for i in range(len(items))]


def run_ordered(
    fn: Callable[[T], R],
    items: Sequence[T],
    pool: Optional[WorkerPool] = None,
    on_result: Optional[Callable[[int, R], None]] = None,
) -> List[R]:
    """map_ordered на переданном пуле или последовательно"""
    if pool is None:
        with WorkerPool(threads=1) as local:
            return local.map_ordered(fn, items, on_result)
    return pool.map_ordered(fn, items, on_result)
