import os
import threading

from astrbot_plugin_invariants.services.scheduler import WorkScheduler, available_threads


def square(x: int) -> int:
    return x * x


def test_serial_map_keeps_order():
    assert WorkScheduler(1).map(square, range(5)) == [0, 1, 4, 9, 16]


def test_parallel_map_keeps_order():
    assert WorkScheduler(3).map(square, range(20)) == [x * x for x in range(20)]


def test_zero_threads_means_all_cores():
    assert WorkScheduler(0).threads == available_threads() >= 1


def test_empty_input():
    assert WorkScheduler(4).map(square, []) == []


def worker_pid(_: int) -> int:
    return os.getpid()


def test_worker_thread_runs_serially():
    results = []
    thread = threading.Thread(target=lambda: results.extend(WorkScheduler(4).map(worker_pid, range(8))))
    thread.start()
    thread.join()
    assert results == [os.getpid()] * 8
