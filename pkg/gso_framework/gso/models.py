import math
import typing as T
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from gso_framework.gso.geometry import compute_lmax


class BoundaryPolicy(str, Enum):
    REVERT = "revert"
    ABSORB = "absorb"


class Bounds(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    lower: np.ndarray
    upper: np.ndarray

    @field_validator("lower", "upper", mode="before")
    @classmethod
    def _as_vector(cls, value: T.Any) -> np.ndarray:
        return np.atleast_1d(np.asarray(value, dtype=float))

    @model_validator(mode="after")
    def _check_box(self) -> "Bounds":
        if self.lower.ndim != 1 or self.lower.shape != self.upper.shape:
            raise ValueError("Lower and upper bounds must be vectors of the same length.")

        if self.lower.size < 2:
            raise ValueError(f"Bounds need at least 2 dimensions, got {self.lower.size}.")

        if np.any(self.lower >= self.upper):
            raise ValueError("Every lower bound must be strictly below its upper bound.")

        return self

    @classmethod
    def box(cls, low: float, high: float, n: int) -> "Bounds":
        return cls(lower=np.full(n, low, dtype=float), upper=np.full(n, high, dtype=float))

    @property
    def dimension(self) -> int:
        return int(self.lower.size)

    def restrict(self, offset: int, length: int) -> "Bounds":
        return Bounds(lower=self.lower[offset:offset + length], upper=self.upper[offset:offset + length])

    def contains(self, position: np.ndarray) -> bool:
        return bool(np.all(position >= self.lower) and np.all(position <= self.upper))


class Member(BaseModel):
    """
    One candidate solution of a group.

    cost is what producer selection compares (the decay-penalised cost when weight decay is on),
    error is the raw fitness of the current position.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    position: np.ndarray
    head_angle: np.ndarray
    prev_position: np.ndarray
    cost: float = math.inf
    error: float = math.inf
    decay: float = Field(0.0, ge=0.0)
    error_sum: float = 0.0
    error_count: int = Field(0, ge=0)

    @property
    def mean_error(self) -> float:
        if self.error_count == 0:
            return math.inf

        return self.error_sum / self.error_count


class GroupState(BaseModel):
    """
    A population of members over one box.

    best_position/best_cost hold the lowest raw fitness ever evaluated by the group.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    members: T.List[Member]
    bounds: Bounds
    producer_index: int = 0
    best_position: np.ndarray
    best_cost: float = math.inf
    iteration: int = 0
    stagnation: int = 0
    saved_angle: T.Optional[np.ndarray] = None

    @property
    def producer(self) -> Member:
        return self.members[self.producer_index]

    @property
    def dimension(self) -> int:
        return self.bounds.dimension


class GsoParams(BaseModel):
    population: int = Field(50, ge=1)
    max_iter: int = Field(50, ge=0)
    scrounger_fraction: float = Field(0.8, gt=0.0, lt=1.0)
    theta_max: float = Field(gt=0.0)
    alpha_max: float = Field(gt=0.0)
    l_max: float = Field(gt=0.0)
    a: int = Field(ge=1)
    boundary_policy: BoundaryPolicy = BoundaryPolicy.REVERT

    @classmethod
    def for_bounds(cls, bounds: Bounds, **kwargs) -> "GsoParams":
        """Fixed parameters derived from the dimension: a = round(sqrt(n + 1)), theta = pi / a^2, alpha = theta / 2."""
        a = int(round(math.sqrt(bounds.dimension + 1)))
        theta_max = math.pi / a ** 2
        defaults = {
            "a": a,
            "theta_max": theta_max,
            "alpha_max": theta_max / 2,
            "l_max": compute_lmax(bounds),
        }
        defaults.update(kwargs)
        return cls(**defaults)
