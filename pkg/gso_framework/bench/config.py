import os
import typing as T
from enum import Enum

from envyaml import EnvYAML
from pydantic import BaseModel, Field, ValidationError, model_validator

from gso_framework.cooperative import Variant
from gso_framework.exceptions import ConfigError
from gso_framework.gso import BoundaryPolicy, WdParams
from gso_framework.optimizers import Algorithm


class FitnessSplit(str, Enum):
    TRAIN = "train"
    VALIDATION = "validation"


class ReportFormat(str, Enum):
    JSONL = "jsonl"
    CSV = "csv"


class ExperimentConfig(BaseModel):
    dataset: str
    algorithm: Algorithm = Algorithm.GSO
    trials: int = Field(50, ge=1)
    population: int = Field(50, ge=1)
    max_iter: int = Field(50, ge=0)
    seed: int = Field(0, ge=0)
    workers: int = Field(1, ge=1)
    scrounger_fraction: float = Field(0.8, gt=0.0, lt=1.0)
    boundary_policy: T.Optional[BoundaryPolicy] = None
    hidden: int = Field(6, ge=1)
    fitness_split: FitnessSplit = FitnessSplit.VALIDATION
    wd_enabled: T.Optional[bool] = None
    wd_lambda0: float = Field(5e-6, ge=0.0)
    wd_inc: float = Field(1e-3, ge=0.0)
    k: int = Field(5, ge=1)
    variant: T.Optional[Variant] = None
    exchange_half: T.Optional[int] = Field(None, ge=1)
    log_level: str = "INFO"
    log_file: T.Optional[str] = None
    out: T.Optional[str] = None
    format: ReportFormat = ReportFormat.JSONL

    @model_validator(mode="after")
    def _implied_by_algorithm(self) -> "ExperimentConfig":
        if self.wd_enabled is None:
            self.wd_enabled = self.algorithm.weight_decay

        if self.variant is not None and self.variant != self.algorithm.variant:
            raise ValueError(f"coop.variant={self.variant.value} contradicts algorithm {self.algorithm.value}.")

        if self.variant is None:
            self.variant = self.algorithm.variant

        return self

    @property
    def wd(self) -> WdParams:
        return WdParams(enabled=self.wd_enabled, lambda0=self.wd_lambda0, inc=self.wd_inc)


# config file key -> ExperimentConfig field
CONFIG_KEYS: T.Dict[str, str] = {
    "dataset": "dataset",
    "algorithm": "algorithm",
    "trials": "trials",
    "population": "population",
    "max_iter": "max_iter",
    "seed": "seed",
    "workers": "workers",
    "scrounger_fraction": "scrounger_fraction",
    "boundary_policy": "boundary_policy",
    "mlp.hidden": "hidden",
    "fitness.split": "fitness_split",
    "wd.enabled": "wd_enabled",
    "wd.lambda0": "wd_lambda0",
    "wd.inc": "wd_inc",
    "coop.k": "k",
    "coop.variant": "variant",
    "coop.exchange_half": "exchange_half",
    "log.level": "log_level",
    "log.file": "log_file",
    "out": "out",
    "format": "format",
}


def read_config_file(path: str) -> T.Dict[str, T.Any]:
    if not os.path.isfile(path):
        raise ConfigError(f"Config file {path} does not exist.")

    try:
        config = EnvYAML(path)
    except Exception as e:
        raise ConfigError(f"Config file {path} can't be parsed: {e}")

    values = {}
    for key, field in CONFIG_KEYS.items():
        value = config.get(key, None)
        if value is not None:
            values[field] = value

    return values


def load_config(path: T.Optional[str] = None, overrides: T.Optional[T.Dict[str, T.Any]] = None) -> ExperimentConfig:
    """
    Model defaults, then the config file, then the overrides (CLI flags).
    Overrides are keyed either by config file key or by field name; None values are ignored.
    A relative dataset path from the config file is taken relative to the config file.
    """
    values = read_config_file(path) if path else {}
    if path and "dataset" in values and not os.path.isabs(values["dataset"]):
        values["dataset"] = os.path.join(os.path.dirname(os.path.abspath(path)), values["dataset"])

    for key, value in (overrides or {}).items():
        if value is not None:
            values[CONFIG_KEYS.get(key, key)] = value

    if "dataset" not in values:
        raise ConfigError("No dataset manifest given: set `dataset` in the config file or pass --dataset.")

    try:
        return ExperimentConfig(**values)
    except ValidationError as e:
        raise ConfigError(f"'Config' params are incorrect: {e}")
