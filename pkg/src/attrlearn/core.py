"""Domain types shared by every learner: examples, datasets, the attribute
oracle, trained models and the RNG contract."""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field
from typing import Any, Iterator

import numpy as np

BOUND_SLACK = 1e-12


class AttrLearnError(Exception):
    """Base class for errors raised by this package."""


class DataError(AttrLearnError, ValueError):
    """Input data violates a documented precondition."""


class BudgetExceeded(AttrLearnError):
    pass


class IndexOutOfBounds(AttrLearnError, IndexError):
    pass


class DimensionMismatch(DataError):
    pass


class EmptyDataset(DataError):
    pass


class OddBudget(DataError):
    pass


class InvalidSize(DataError):
    pass


class ZeroVector(DataError):
    pass


class NonPositiveRadius(DataError):
    pass


class InvalidArgument(DataError):
    pass


# ---------------------------------------------------------------------------
# random streams
# ---------------------------------------------------------------------------


def _label_word(label: Any) -> int:
    if isinstance(label, (int, np.integer)) and label >= 0:
        return int(label)
    return zlib.crc32(str(label).encode("utf-8"))


def rng_stream(seed: int, *labels: Any) -> np.random.Generator:
    """Return a PCG64 generator for ``seed``.

    Extra ``labels`` derive an independent child stream: the seed and the
    labels (non-negative ints verbatim, anything else through CRC32 of its
    ``str``) are mixed by ``numpy.random.SeedSequence``. The derivation does
    not depend on draws made from any other stream.
    """
    words = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [_label_word(lab) for lab in labels]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(words)))


def as_rng(rng: np.random.Generator | int | None) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return rng_stream(0 if rng is None else int(rng))


def seed_of(rng) -> int | None:
    """The integer seed behind ``rng``, or None for a live generator."""
    if isinstance(rng, (int, np.integer)):
        return int(rng)
    return None


# ---------------------------------------------------------------------------
# examples and datasets
# ---------------------------------------------------------------------------


def _check_bounded(values: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise DataError(f"{what} contains non-finite values")
    if values.size and np.max(np.abs(values)) > 1.0 + BOUND_SLACK:
        raise DataError(f"{what} has entries outside [-1, 1]")


@dataclass(frozen=True)
class LabeledExample:
    x: np.ndarray
    y: float

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 1 or x.size < 1:
            raise DataError("x must be a non-empty vector")
        _check_bounded(x, "x")
        _check_bounded(np.asarray([self.y], dtype=float), "y")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", float(self.y))

    @property
    def d(self) -> int:
        return self.x.size


@dataclass(frozen=True)
class Dataset:
    """An ordered sample ``(x_1, y_1), ..., (x_m, y_m)`` stored as arrays.

    ``X`` has shape ``(m, d)``. Values outside ``[-1, 1]`` are rejected,
    never clipped.
    """

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        X = np.array(self.X, dtype=float, copy=True)
        y = np.array(self.y, dtype=float, copy=True).reshape(-1)
        if X.ndim != 2:
            raise DataError("X must be two-dimensional")
        if X.shape[0] != y.shape[0]:
            raise DimensionMismatch(f"{X.shape[0]} rows but {y.shape[0]} targets")
        if X.shape[1] < 1:
            raise DataError("dimension d must be at least 1")
        _check_bounded(X, "X")
        _check_bounded(y, "y")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_examples(cls, examples) -> "Dataset":
        examples = list(examples)
        if not examples:
            raise EmptyDataset("no examples given")
        d = examples[0].d
        if any(ex.d != d for ex in examples):
            raise DimensionMismatch("examples have differing dimensions")
        return cls(np.stack([ex.x for ex in examples]), [ex.y for ex in examples])

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def __len__(self) -> int:
        return self.m

    def __iter__(self) -> Iterator[LabeledExample]:
        for i in range(self.m):
            yield self.example(i)

    def example(self, i: int) -> LabeledExample:
        return LabeledExample(self.X[i], self.y[i])

    def subset(self, idx) -> "Dataset":
        return Dataset(self.X[idx], self.y[idx])

    def prefix(self, m: int) -> "Dataset":
        if not 0 < m <= self.m:
            raise InvalidArgument(f"prefix length {m} not in 1..{self.m}")
        return Dataset(self.X[:m], self.y[:m])


def require_nonempty(dataset: Dataset) -> None:
    if dataset.m == 0:
        raise EmptyDataset("dataset has no examples")


# ---------------------------------------------------------------------------
# attribute oracle
# ---------------------------------------------------------------------------


class AttributeOracle:
    """Gatekeeper for one example's attributes under a reveal budget.

    Every call to :meth:`reveal` costs one unit of budget, repeated indices
    included. The target is free.
    """

    __slots__ = ("_x", "_y", "budget", "revealed_count", "cache")

    def __init__(self, x, y: float, budget: int):
        if budget < 0:
            raise InvalidArgument("budget must be non-negative")
        self._x = x
        self._y = float(y)
        self.budget = int(budget)
        self.revealed_count = 0
        self.cache: dict[int, float] = {}

    @classmethod
    def for_example(cls, example: LabeledExample, budget: int) -> "AttributeOracle":
        return cls(example.x, example.y, budget)

    @property
    def d(self) -> int:
        return len(self._x)

    @property
    def remaining(self) -> int:
        return self.budget - self.revealed_count

    def reveal(self, i: int) -> float:
        if self.revealed_count >= self.budget:
            raise BudgetExceeded(f"budget of {self.budget} reveals exhausted")
        if not 0 <= i < len(self._x):
            raise IndexOutOfBounds(f"attribute index {i} out of range for d={len(self._x)}")
        self.revealed_count += 1
        value = float(self._x[i])
        self.cache[int(i)] = value
        return value

    def target(self) -> float:
        return self._y


# ---------------------------------------------------------------------------
# loss and models
# ---------------------------------------------------------------------------


def evaluate_loss(w, example: LabeledExample) -> float:
    """Squared loss ``(<w, x> - y)**2``."""
    w = np.asarray(w, dtype=float)
    if w.shape != example.x.shape:
        raise DimensionMismatch(f"w has shape {w.shape}, x has {example.x.shape}")
    r = float(w @ example.x) - example.y
    return r * r


def empirical_risk(w, dataset: Dataset) -> float:
    """Mean squared loss of ``w`` over ``dataset``."""
    require_nonempty(dataset)
    w = np.asarray(w, dtype=float)
    if w.shape != (dataset.d,):
        raise DimensionMismatch(f"w has shape {w.shape}, data has d={dataset.d}")
    r = dataset.X @ w - dataset.y
    return float(np.mean(r * r))


def norms(w) -> dict[str, float]:
    w = np.asarray(w, dtype=float)
    return {
        "l0": float(np.count_nonzero(w)),
        "l1": float(np.sum(np.abs(w))),
        "l2": float(np.linalg.norm(w)),
    }


@dataclass
class Model:
    """Trained weights plus the metadata needed to reproduce them."""

    algo: str
    weights: np.ndarray
    hyperparameters: dict = field(default_factory=dict)
    attributes_consumed: int = 0
    seed: int | None = None
    train_size: int = 0
    last_iterate: np.ndarray | None = None
    trace: dict | None = None

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)

    @property
    def d(self) -> int:
        return self.weights.size

    def predict(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.weights

    def to_dict(self) -> dict:
        return {
            "algo": self.algo,
            "d": self.d,
            "weights": [float(v) for v in self.weights],
            "hyperparameters": self.hyperparameters,
            "attributes_consumed": int(self.attributes_consumed),
            "seed": self.seed,
            "train_size": int(self.train_size),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Model":
        weights = np.asarray(data["weights"], dtype=float)
        if "d" in data and int(data["d"]) != weights.size:
            raise DimensionMismatch("model file: d does not match weights length")
        return cls(
            algo=data["algo"],
            weights=weights,
            hyperparameters=dict(data.get("hyperparameters", {})),
            attributes_consumed=int(data.get("attributes_consumed", 0)),
            seed=data.get("seed"),
            train_size=int(data.get("train_size", 0)),
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "Model":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))
