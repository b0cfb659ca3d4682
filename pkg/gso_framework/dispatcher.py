import logging
import multiprocessing
import typing as T
from concurrent.futures import ProcessPoolExecutor
from logging.handlers import QueueHandler, QueueListener
from multiprocessing import Queue

from gso_framework.logger.utils import setup_logging
from gso_framework.utils import init_worker_logging

"""
WARNING FOR MAINTAINERS:
    This class uses its own multiprocessing context.
    Do NOT use basic multiprocessing.Queue for pool workers, use self.mp_context.Queue instead.
    Trial functions and their arguments are pickled, so they must live at module level.
"""


class TrialDispatcher:
    def __init__(
            self,
            workers: int = 1,
            log_level: str = "INFO",
            log_file: T.Optional[str] = None,
            log_queue: T.Optional[Queue] = None,
    ):
        if workers < 1:
            raise ValueError(f"At least one worker is required, got {workers}.")

        self.workers: int = workers
        self.log_level: str = log_level.upper()

        # Workers are spawned: a fork after numpy/BLAS threads started can deadlock the child.
        self.mp_context = multiprocessing.get_context("spawn")

        self.log_queue: T.Optional[Queue] = log_queue
        self._log_listener: T.Optional[QueueListener] = None
        self.log = logging.getLogger("TrialDispatcher")

        if self.workers > 1 and self.log_queue is None:
            self.run_logging(log_file)

    def run(self, trial_func: T.Callable[..., T.Any], trial_indices: T.Iterable[int], *args) -> T.List[T.Any]:
        """
        Calls ``trial_func(*args, trial_index)`` for every index.
        Results come back in the order of trial_indices whatever the completion order.
        """
        trial_indices = list(trial_indices)
        self.log.info(f"Dispatching {len(trial_indices)} trials on {self.workers} worker(s).")

        if self.workers == 1:
            return [trial_func(*args, index) for index in trial_indices]

        with ProcessPoolExecutor(
                max_workers=min(self.workers, max(1, len(trial_indices))),
                mp_context=self.mp_context,
                initializer=init_worker_logging,
                initargs=(self.log_queue, self.log_level),
        ) as executor:
            futures = [executor.submit(trial_func, *args, index) for index in trial_indices]
            return [future.result() for future in futures]

    def run_logging(self, log_file: T.Optional[str] = None) -> None:
        self.log_queue, self._log_listener = setup_logging(self.mp_context, log_file)
        self._log_listener.start()

        # Clear any handlers that have already existed
        self.log.handlers.clear()
        self.log.setLevel(self.log_level)
        self.log.addHandler(QueueHandler(self.log_queue))

        # Don't propagate to root logger
        self.log.propagate = False

    def stop_logging(self) -> None:
        if self._log_listener is not None:
            self._log_listener.stop()
            self._log_listener = None
            self.log.handlers.clear()
            self.log.propagate = True
