import numpy as np
from pydantic import BaseModel, Field

from gso_framework.gso.models import Member


class WdParams(BaseModel):
    enabled: bool = False
    lambda0: float = Field(5e-6, ge=0.0)
    inc: float = Field(1e-3, gt=0.0)


def apply_decay(position: np.ndarray, decay: float) -> np.ndarray:
    return position - decay * position


def regularized_cost(error: float, decay: float, position: np.ndarray) -> float:
    return float(error + decay / 2 * np.dot(position, position))


def update_lambda(decay: float, current_error: float, mean_error: float, inc: float) -> float:
    """Grows the coefficient while the error beats the running mean, shrinks it otherwise; never below zero."""
    if current_error < mean_error:
        return decay + inc

    return max(0.0, decay - inc)


def update_error_history(member: Member, current_error: float) -> Member:
    member.error_sum += current_error
    member.error_count += 1
    return member
