import logging
import os
import typing as T

import numpy as np
import pandas as pd
from envyaml import EnvYAML
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from gso_framework.exceptions import ConfigError, DatasetError
from gso_framework.network import PatternSet

log = logging.getLogger(__name__)

Column = T.Union[int, str]


class SplitSizes(BaseModel):
    train: int = Field(ge=1)
    validation: int = Field(0, ge=0)
    test: int = Field(0, ge=0)

    @property
    def total(self) -> int:
        return self.train + self.validation + self.test


class DatasetManifest(BaseModel):
    name: str
    path: str
    label_column: Column = -1
    ignored_columns: T.List[Column] = []
    header: bool = False
    separator: str = ","
    sizes: SplitSizes


class Dataset(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    features: np.ndarray
    labels: np.ndarray
    class_names: T.List[str]
    dropped_rows: int = 0

    @model_validator(mode="after")
    def _check(self) -> "Dataset":
        if len(self.class_names) < 2:
            raise ValueError(f"Dataset {self.name} needs at least 2 classes, got {len(self.class_names)}.")

        if self.features.shape[0] != self.labels.shape[0]:
            raise ValueError("Every feature row needs a label.")

        return self

    @property
    def rows(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


class Splits(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray


class MinMaxTransform(BaseModel):
    """Per-feature affine map sending the train minimum to -1 and the train maximum to +1."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    mins: np.ndarray
    maxs: np.ndarray

    def apply(self, features: np.ndarray) -> np.ndarray:
        span = self.maxs - self.mins
        safe_span = np.where(span > 0, span, 1.0)
        scaled = 2 * (features - self.mins) / safe_span - 1
        # constant features carry no information
        return np.where(span > 0, scaled, 0.0)


def _resolve_column(columns: T.Sequence[T.Any], column: Column) -> T.Any:
    if isinstance(column, str) and column in columns:
        return column

    try:
        return columns[int(column)]
    except (ValueError, IndexError):
        raise DatasetError(f"Column {column!r} is not present; available columns: {list(columns)}.")


def load_csv(path: str, label_column: Column = -1, ignored_columns: T.Sequence[Column] = (),
             header: bool = False, separator: str = ",", name: T.Optional[str] = None) -> Dataset:
    """
    Reads a delimited classification file.
    Rows with a non-numeric feature cell or an empty label are dropped and counted;
    class ids follow the order in which labels first appear among the kept rows.
    """
    sep = r"\s+" if separator == "whitespace" else separator

    try:
        frame = pd.read_csv(path, header=0 if header else None, sep=sep, dtype=str,
                            keep_default_na=False, skipinitialspace=True)
    except FileNotFoundError:
        raise DatasetError(f"Dataset file {path} does not exist.")
    except pd.errors.EmptyDataError:
        raise DatasetError(f"Dataset file {path} is empty.")
    except (OSError, pd.errors.ParserError) as e:
        raise DatasetError(f"Dataset file {path} can't be read: {e}.")

    columns = list(frame.columns)
    label_key = _resolve_column(columns, label_column)
    ignored = {_resolve_column(columns, c) for c in ignored_columns}
    feature_keys = [c for c in columns if c != label_key and c not in ignored]
    if not feature_keys:
        raise DatasetError(f"Dataset file {path} has no feature columns.")

    features = frame[feature_keys].apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
    labels = frame[label_key].astype(str).str.strip()

    usable = features.notna().all(axis=1) & (labels != "")
    dropped = int((~usable).sum())
    if not usable.any():
        raise DatasetError(f"Dataset file {path} has no usable rows.")

    if dropped:
        log.warning(f"Dropped {dropped} rows with missing or non-numeric cells from {path}.")

    labels = labels[usable]
    class_names = [str(c) for c in pd.unique(labels)]
    class_ids = {c: i for i, c in enumerate(class_names)}

    try:
        return Dataset(
            name=name or os.path.splitext(os.path.basename(path))[0],
            features=features[usable].to_numpy(dtype=float),
            labels=labels.map(class_ids).to_numpy(dtype=int),
            class_names=class_names,
            dropped_rows=dropped,
        )
    except ValidationError as e:
        raise DatasetError(str(e))


def load_manifest(path: str) -> DatasetManifest:
    """Reads a YAML manifest; a relative data path is taken relative to the manifest's directory."""
    if not os.path.isfile(path):
        raise ConfigError(f"Dataset manifest {path} does not exist.")

    config = EnvYAML(path)
    try:
        manifest = DatasetManifest(
            name=config.get("name", os.path.splitext(os.path.basename(path))[0]),
            path=config["path"],
            label_column=config.get("label_column", -1),
            ignored_columns=config.get("ignored_columns", None) or [],
            header=config.get("header", False),
            separator=config.get("separator", ","),
            sizes=config["sizes"],
        )
    except (KeyError, ValidationError) as e:
        raise ConfigError(f"Dataset manifest {path} is incorrect: {e}")

    if not os.path.isabs(manifest.path):
        manifest.path = os.path.normpath(os.path.join(os.path.dirname(os.path.abspath(path)), manifest.path))

    return manifest


def load_dataset(manifest: DatasetManifest) -> Dataset:
    return load_csv(manifest.path, manifest.label_column, manifest.ignored_columns, manifest.header,
                    manifest.separator, name=manifest.name)


def scale_sizes(sizes: SplitSizes, rows: int) -> T.Tuple[SplitSizes, bool]:
    """Shrinks the split sizes proportionally when the file has fewer usable rows than they add up to."""
    if sizes.total <= rows:
        return sizes, False

    factor = rows / sizes.total
    scaled = SplitSizes(
        train=max(1, int(sizes.train * factor)),
        validation=int(sizes.validation * factor),
        test=int(sizes.test * factor),
    )
    log.warning(f"Only {rows} usable rows for sizes {sizes.train}/{sizes.validation}/{sizes.test}, "
                f"scaled to {scaled.train}/{scaled.validation}/{scaled.test}.")
    return scaled, True


def split(rows: int, sizes: SplitSizes, rng: np.random.Generator) -> Splits:
    """Cuts one uniform permutation of the row indices into train, validation and test blocks."""
    if sizes.total > rows:
        raise DatasetError(f"Split sizes add up to {sizes.total}, only {rows} rows are available.")

    order = rng.permutation(rows)
    cut1 = sizes.train
    cut2 = cut1 + sizes.validation
    return Splits(train=order[:cut1], validation=order[cut1:cut2], test=order[cut2:cut2 + sizes.test])


def normalize(features: np.ndarray, splits: Splits) -> T.Tuple[np.ndarray, MinMaxTransform]:
    """Fits the min-max transform on the training rows only and applies it to every row."""
    if splits.train.size == 0:
        raise ValueError("Normalization needs a non-empty training split.")

    train = features[splits.train]
    transform = MinMaxTransform(mins=train.min(axis=0), maxs=train.max(axis=0))
    return transform.apply(features), transform


def one_hot(label: int, n_classes: int) -> np.ndarray:
    if not 0 <= label < n_classes:
        raise ValueError(f"Label {label} is outside [0, {n_classes}).")

    target = np.zeros(n_classes)
    target[label] = 1.0
    return target


def pattern_sets(features: np.ndarray, labels: np.ndarray, n_classes: int,
                 splits: Splits) -> T.Dict[str, PatternSet]:
    targets = np.eye(n_classes)[labels]
    return {
        name: PatternSet(features=features[index], targets=targets[index])
        for name, index in (("train", splits.train), ("validation", splits.validation), ("test", splits.test))
    }
