import typing as T

import numpy as np
from pydantic import BaseModel, model_validator


class Partition(BaseModel):
    """Contiguous, ordered, disjoint spans (offset, length) covering dimensions 0..n-1."""
    k: int
    spans: T.List[T.Tuple[int, int]]

    @model_validator(mode="after")
    def _check_spans(self) -> "Partition":
        if len(self.spans) != self.k:
            raise ValueError(f"Partition declares k={self.k} but has {len(self.spans)} spans.")

        expected_offset = 0
        for offset, length in self.spans:
            if offset != expected_offset or length < 1:
                raise ValueError(f"Spans must be contiguous and non-empty, got {self.spans}.")
            expected_offset += length

        return self

    @property
    def dimension(self) -> int:
        offset, length = self.spans[-1]
        return offset + length

    def piece(self, vector: np.ndarray, j: int) -> np.ndarray:
        offset, length = self.spans[j]
        return vector[offset:offset + length]

    def split(self, vector: np.ndarray) -> T.List[np.ndarray]:
        return [np.array(self.piece(vector, j), dtype=float, copy=True) for j in range(self.k)]

    def assemble(self, pieces: T.Sequence[np.ndarray]) -> np.ndarray:
        return np.concatenate([np.asarray(p, dtype=float) for p in pieces])


def make_partition(n: int, k: int) -> Partition:
    """Balanced split: the first n mod k spans get ceil(n/k) dimensions, the rest floor(n/k)."""
    if k < 1 or k > n:
        raise ValueError(f"Number of partitions must be in [1, {n}], got {k}.")

    base, extra = divmod(n, k)
    spans = []
    offset = 0
    for j in range(k):
        length = base + (1 if j < extra else 0)
        spans.append((offset, length))
        offset += length

    return Partition(k=k, spans=spans)
