import typing as T

import numpy as np

if T.TYPE_CHECKING:
    from gso_framework.gso.models import Bounds, BoundaryPolicy


def direction_from_angles(angle: T.Any, n: T.Optional[int] = None) -> np.ndarray:
    """
    Unit search direction D(phi) in R^n from a head angle of n - 1 polar components.

    :param angle: head angle, length n - 1 >= 1
    :param n: expected dimension; when given, a head angle of another length is rejected
    """
    angle = np.asarray(angle, dtype=float)
    if angle.ndim != 1 or angle.size < 1:
        raise ValueError(f"Head angle must be a vector with at least one component, got shape {angle.shape}.")

    if n is not None and angle.size != n - 1:
        raise ValueError(f"Head angle for dimension {n} must have {n - 1} components, got {angle.size}.")

    cos = np.cos(angle)
    sin = np.sin(angle)
    # tail[q] = cos(phi_q) * ... * cos(phi_last)
    tail = np.cumprod(cos[::-1])[::-1]

    direction = np.empty(angle.size + 1)
    direction[0] = tail[0]
    direction[1:-1] = sin[:-1] * tail[1:]
    direction[-1] = sin[-1]
    return direction


def compute_lmax(bounds: "Bounds") -> float:
    return float(np.sqrt(np.sum(np.square(bounds.upper - bounds.lower))))


def enforce_bounds(candidate: np.ndarray, previous: np.ndarray, bounds: "Bounds",
                   policy: "BoundaryPolicy") -> np.ndarray:
    """
    Revert: a candidate outside the box is replaced by the previous position.
    Absorb: every violating component is clamped onto the violated bound.
    """
    # imported here, models depends on this module
    from gso_framework.gso.models import BoundaryPolicy

    if policy == BoundaryPolicy.ABSORB:
        return np.clip(candidate, bounds.lower, bounds.upper)

    if np.any(candidate < bounds.lower) or np.any(candidate > bounds.upper):
        return np.array(previous, dtype=float, copy=True)

    return candidate
