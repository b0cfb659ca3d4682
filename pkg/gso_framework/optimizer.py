import logging
import typing as T

import numpy as np
from pydantic import BaseModel, ConfigDict

from gso_framework.gso import Bounds
from gso_framework.utils import EvaluationCounter

CostFn = T.Callable[[np.ndarray], float]


class OptimizationResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    position: np.ndarray
    error: float
    iterations: int
    evaluations: int
    # best raw error after initialization and after every iteration
    history: T.List[float]


class Optimizer:
    def __init__(
            self,
            name: str,
            cost_fn: CostFn,
            bounds: Bounds,
            rng: np.random.Generator,
            max_iter: int = 50,
            *args,
            **kwargs
    ):
        if max_iter < 0:
            raise ValueError(f"max_iter must be non-negative, got {max_iter}.")

        self.name: str = name
        self.bounds: Bounds = bounds
        self.rng: np.random.Generator = rng
        self.max_iter: int = max_iter

        self.counter = EvaluationCounter(cost_fn)
        self.history: T.List[float] = []
        self.log = logging.getLogger(f"{self.__class__.__name__} ({self.name})")

    def initialize(self) -> None:
        """Draws and evaluates the initial population."""
        raise NotImplementedError()

    def step(self) -> None:
        raise NotImplementedError()

    def best(self) -> T.Tuple[np.ndarray, float]:
        """Best position found so far with its raw error."""
        raise NotImplementedError()

    @property
    def evaluations(self) -> int:
        return self.counter.calls

    def run(self) -> OptimizationResult:
        """Iterates until max_iter or until a zero error is found."""
        self.initialize()
        position, error = self.best()
        self.history = [error]

        iterations = 0
        while iterations < self.max_iter and error > 0.0:
            self.step()
            iterations += 1
            position, error = self.best()
            self.history.append(error)

        self.log.debug(f"Finished after {iterations} iterations and {self.evaluations} evaluations, error {error:.6g}.")
        return OptimizationResult(
            position=np.array(position, dtype=float, copy=True),
            error=error,
            iterations=iterations,
            evaluations=self.evaluations,
            history=self.history,
        )
