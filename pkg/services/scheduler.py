"""并行工作调度"""
import multiprocessing
import os
import threading
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from typing import Any, Callable, Iterable, List, Optional

from ..utils.logger import logger


def available_threads() -> int:
    return os.cpu_count() or 1


class WorkScheduler:
    """按输入顺序返回结果的并行 map

    threads <= 0 表示使用全部可用核心；只有一个工作项或只有一个线程时串行执行。
    只在主线程中 fork，其余线程里一律串行。
    工作函数必须是模块顶层函数，参数可 pickle。
    """

    def __init__(self, threads: int = 0):
        self.threads = threads if threads > 0 else available_threads()

    def map(self, func: Callable[[Any], Any], items: Iterable[Any]) -> List[Any]:
        items = list(items)
        workers = min(self.threads, len(items))
        if workers <= 1:
            return [func(item) for item in items]

        context = self._fork_context()
        if context is None or threading.current_thread() is not threading.main_thread():
            logger.debug("非主线程或不支持 fork，串行执行")
            return [func(item) for item in items]
        try:
            with ProcessPoolExecutor(max_workers=workers, mp_context=context) as pool:
                return list(pool.map(func, items))
        except (BrokenProcessPool, OSError) as e:
            logger.warning(f"⚠️ 进程池不可用，改为串行执行: {e}")
            return [func(item) for item in items]

    @staticmethod
    def _fork_context() -> Optional[Any]:
        """子进程需要继承已加载的插件模块，只在支持 fork 的平台上并行"""
        if "fork" not in multiprocessing.get_all_start_methods():
            return None
        return multiprocessing.get_context("fork")
