import logging
import typing as T
from functools import wraps
from logging.handlers import QueueHandler
from multiprocessing import Queue

import numpy as np


def trial_seed(master_seed: int, trial_index: int) -> int:
    """
    Seed of one trial: ``master_seed + trial_index`` mixed through numpy's SeedSequence,
    keeping the first 32-bit word of the generated state.
    """
    sequence = np.random.SeedSequence(master_seed + trial_index)
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def make_rng(seed: T.Optional[int]) -> np.random.Generator:
    # PCG64 bit generator; standard_normal draws use the ziggurat method
    return np.random.default_rng(seed)


class EvaluationCounter:
    """Counts calls to the wrapped cost function. Picklable as long as the wrapped function is."""

    def __init__(self, cost_fn: T.Callable[[np.ndarray], float]):
        self.cost_fn = cost_fn
        self.calls: int = 0

    def __call__(self, position: np.ndarray) -> float:
        self.calls += 1
        return self.cost_fn(position)


def init_worker_logging(log_queue: Queue, log_level: str = "INFO") -> None:
    """
    Initializes logging for a worker process.
    Any logger created inside the process ends up on the parent's log queue through the root handler.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(log_level.upper())
    root_logger.handlers.clear()
    root_logger.handlers.append(QueueHandler(log_queue))


def log_failures(trial_func: T.Callable) -> T.Callable:
    @wraps(trial_func)
    def logged_call(*args, **kwargs) -> T.Any:
        trial_index = kwargs.get("trial_index", args[-1] if args else "unknown")
        dispatcher_log = logging.getLogger("TrialDispatcher")

        try:
            return trial_func(*args, **kwargs)
        except Exception as e:
            dispatcher_log.warning(f"Exception happened in trial {trial_index}")
            dispatcher_log.error(e, exc_info=True)
            raise

    return logged_call
