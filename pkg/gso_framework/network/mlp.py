import typing as T

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.special import expit


class MlpTopology(BaseModel):
    inputs: int = Field(ge=1)
    hidden: int = Field(6, ge=1)
    outputs: int = Field(ge=1)

    @property
    def dimension(self) -> int:
        return dimension(self)


class EncodedNetwork(BaseModel):
    """
    Weights of a one-hidden-layer network.
    w1 is inputs x hidden, theta1 hidden, w2 hidden x outputs, theta2 outputs.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    w1: np.ndarray
    theta1: np.ndarray
    w2: np.ndarray
    theta2: np.ndarray

    @property
    def topology(self) -> MlpTopology:
        return MlpTopology(inputs=self.w1.shape[0], hidden=self.w1.shape[1], outputs=self.w2.shape[1])


class PatternSet(BaseModel):
    """Feature rows with their one-hot targets."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    features: np.ndarray
    targets: np.ndarray

    @field_validator("features", "targets", mode="before")
    @classmethod
    def _as_matrix(cls, value: T.Any) -> np.ndarray:
        return np.atleast_2d(np.asarray(value, dtype=float))

    @model_validator(mode="after")
    def _check_rows(self) -> "PatternSet":
        if self.features.shape[0] != self.targets.shape[0]:
            raise ValueError("Features and targets must have the same number of rows.")

        return self

    @property
    def labels(self) -> np.ndarray:
        return np.argmax(self.targets, axis=1)

    def __len__(self) -> int:
        return int(self.features.shape[0])


def dimension(topology: MlpTopology) -> int:
    i, h, c = topology.inputs, topology.hidden, topology.outputs
    return i * h + h + h * c + c


def encode(network: EncodedNetwork) -> np.ndarray:
    return np.concatenate([network.w1.ravel(), network.theta1, network.w2.ravel(), network.theta2])


def decode(topology: MlpTopology, flat: np.ndarray) -> EncodedNetwork:
    flat = np.asarray(flat, dtype=float)
    if flat.shape != (topology.dimension,):
        raise ValueError(f"Weight vector must have {topology.dimension} components, got {flat.shape}.")

    i, h, c = topology.inputs, topology.hidden, topology.outputs
    cut1 = i * h
    cut2 = cut1 + h
    cut3 = cut2 + h * c
    return EncodedNetwork(
        w1=flat[:cut1].reshape(i, h),
        theta1=flat[cut1:cut2],
        w2=flat[cut2:cut3].reshape(h, c),
        theta2=flat[cut3:],
    )


def forward(topology: MlpTopology, flat: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Logistic outputs for one pattern (vector) or many patterns (one per row)."""
    network = decode(topology, flat)
    hidden = expit(np.asarray(x, dtype=float) @ network.w1 + network.theta1)
    return expit(hidden @ network.w2 + network.theta2)


def _check_patterns(patterns: PatternSet) -> None:
    if len(patterns) == 0:
        raise ValueError("Pattern set is empty.")


def mse_cost(topology: MlpTopology, flat: np.ndarray, patterns: PatternSet) -> float:
    """Squared output error summed over the output nodes, averaged over the patterns."""
    _check_patterns(patterns)
    outputs = forward(topology, flat, patterns.features)
    return float(np.sum(np.square(patterns.targets - outputs)) / len(patterns))


def accuracy(topology: MlpTopology, flat: np.ndarray, patterns: PatternSet) -> float:
    _check_patterns(patterns)
    outputs = forward(topology, flat, patterns.features)
    # argmax keeps the lowest class index on ties
    return float(np.mean(np.argmax(outputs, axis=1) == patterns.labels))


class MseCost:
    """Pure cost function over flat weight vectors, bound to one pattern set."""

    def __init__(self, topology: MlpTopology, patterns: PatternSet):
        _check_patterns(patterns)
        self.topology = topology
        self.patterns = patterns

    def __call__(self, flat: np.ndarray) -> float:
        return mse_cost(self.topology, flat, self.patterns)


def make_cost_fn(topology: MlpTopology, eval_split: PatternSet) -> MseCost:
    return MseCost(topology, eval_split)
