"""Metrics, cross-validated tuning, learning curves and the experiment
runner that ties them together."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .aer import AerConfig, default_lambda, train_aer
from .baseline import train_baseline, train_naive
from .core import (
    DataError,
    Dataset,
    DimensionMismatch,
    InvalidArgument,
    Model,
    require_nonempty,
    rng_stream,
)
from .datasets import load_csv, split
from .full_info import FullInfoConfig, train_constrained
from .quadratic import SolverConfig

ALGORITHMS = ("baseline", "aer", "naive", "lasso", "ridge")
PARTIAL_INFO = frozenset({"baseline", "aer", "naive"})
CURVE_HEADER = ["algo", "m", "attributes", "sq_error", "cls_error", "seed"]


class NonBinaryLabels(DataError):
    pass


class TooFewExamples(DataError):
    pass


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


def _weights(model) -> np.ndarray:
    return model.weights if isinstance(model, Model) else np.asarray(model, dtype=float)


def test_squared_error(model, dataset: Dataset) -> float:
    require_nonempty(dataset)
    w = _weights(model)
    if w.shape != (dataset.d,):
        raise DimensionMismatch(f"model has d={w.size}, data has d={dataset.d}")
    r = dataset.X @ w - dataset.y
    return float(np.mean(r * r))


def is_binary(dataset: Dataset) -> bool:
    return bool(np.all(np.abs(dataset.y) == 1.0))


def test_classification_error(model, dataset: Dataset) -> float:
    """Fraction of examples with ``sign(<w, x>) != y``; a zero score is an error."""
    require_nonempty(dataset)
    if not is_binary(dataset):
        raise NonBinaryLabels("classification error needs labels in {-1, +1}")
    w = _weights(model)
    if w.shape != (dataset.d,):
        raise DimensionMismatch(f"model has d={w.size}, data has d={dataset.d}")
    return float(np.mean(np.sign(dataset.X @ w) != dataset.y))


# keep pytest from collecting these when tests import them by name
test_squared_error.__test__ = False
test_classification_error.__test__ = False


# ---------------------------------------------------------------------------
# one entry point for every learner
# ---------------------------------------------------------------------------


def resolve_b2(b2, B: float, d: int) -> float:
    """``None`` -> ``B``; ``"dense"`` -> ``B / sqrt(d)``; numbers pass through."""
    if b2 is None:
        return float(B)
    if b2 == "dense":
        return float(B) / math.sqrt(d)
    return float(b2)


def resolve_lambda(params: dict, d: int, m: int, k: int) -> float:
    lam = params.get("lambda", "auto")
    if lam is None or lam == "auto":
        auto = default_lambda(params["B"], resolve_b2(params.get("b2"), params["B"], d), d, m, k)
        return auto * float(params.get("lambda_scale", 1.0))
    return float(lam)


def fit(algorithm: str, dataset: Dataset, params: dict, k: int | None, seed: int = 0) -> Model:
    """Train ``algorithm`` on ``dataset``.

    ``params`` holds ``B`` and, for AER, optional ``lambda`` (a number or
    ``"auto"``), ``lambda_scale`` and ``b2``.
    """
    if algorithm not in ALGORITHMS:
        raise InvalidArgument(f"unknown algorithm {algorithm!r}")
    if algorithm == "aer":
        lam = resolve_lambda(params, dataset.d, dataset.m, k)
        model = train_aer(dataset, AerConfig(k=k, lam=lam, B=float(params["B"]), seed=seed))
        model.hyperparameters.update({key: params[key] for key in ("lambda_scale", "b2") if key in params})
        return model
    if algorithm == "baseline":
        cfg = SolverConfig(max_iters=int(params.get("max_iters", 2000)))
        return train_baseline(dataset, k, float(params["B"]), cfg, rng=seed)
    if algorithm == "naive":
        return train_naive(dataset, k, rng=seed)
    norm = "l1" if algorithm == "lasso" else "l2"
    model = train_constrained(dataset, FullInfoConfig(float(params["B"]), norm))
    model.seed = seed
    return model


# ---------------------------------------------------------------------------
# cross-validation
# ---------------------------------------------------------------------------


@dataclass
class TuningGrid:
    """Candidate values per hyperparameter.

    For AER, ``lambdas`` gives absolute values; when it is None the
    candidates are ``lambda_scales`` times the automatic lambda of each
    training fold.
    """

    B: tuple = (0.1, 1.0, 10.0, 100.0)
    lambdas: tuple | None = None
    lambda_scales: tuple = (0.1, 1.0, 10.0)
    folds: int = 10

    def __post_init__(self):
        if not self.B:
            raise InvalidArgument("grid needs at least one B")
        if self.folds < 2:
            raise InvalidArgument("folds must be >= 2")
        if self.lambdas is not None and not self.lambdas:
            raise InvalidArgument("lambda grid is empty")
        if self.lambdas is None and not self.lambda_scales:
            raise InvalidArgument("lambda_scales is empty")

    @classmethod
    def from_dict(cls, data: dict) -> "TuningGrid":
        kw = {}
        if "B" in data:
            kw["B"] = tuple(float(b) for b in data["B"])
        if data.get("lambda") is not None:
            kw["lambdas"] = tuple(float(v) for v in data["lambda"])
        if "lambda_scale" in data:
            kw["lambda_scales"] = tuple(float(v) for v in data["lambda_scale"])
        if "folds" in data:
            kw["folds"] = int(data["folds"])
        return cls(**kw)

    def cells(self, algorithm: str) -> list[dict]:
        """Parameter dicts, ordered by the tie-breaking rule: smaller B, then smaller lambda."""
        Bs = sorted(self.B)
        if algorithm == "naive":
            return [{}]
        if algorithm != "aer":
            return [{"B": b} for b in Bs]
        if self.lambdas is not None:
            return [{"B": b, "lambda": lam} for b in Bs for lam in sorted(self.lambdas)]
        return [{"B": b, "lambda": "auto", "lambda_scale": s} for b in Bs for s in sorted(self.lambda_scales)]


def fold_indices(m: int, folds: int, seed: int) -> list[np.ndarray]:
    """One seeded shuffle, then contiguous blocks."""
    perm = rng_stream(seed, "folds").permutation(m)
    return [block for block in np.array_split(perm, folds)]


def _cv_job(args):
    algorithm, train, valid, params, k, seed = args
    return test_squared_error(fit(algorithm, train, params, k, seed), valid)


def _run_jobs(func, jobs_args, jobs: int):
    if jobs <= 1 or len(jobs_args) <= 1:
        return [func(a) for a in jobs_args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, jobs_args))


def cross_validate(dataset: Dataset, algorithm: str, grid: TuningGrid, k, seed: int = 0,
                   jobs: int = 1, return_scores: bool = False):
    """Pick the grid cell with least mean validation squared error.

    Every cell sees the same folds and the same per-fold training seeds.
    """
    if dataset.m < grid.folds:
        raise TooFewExamples(f"{dataset.m} examples for {grid.folds} folds")
    if not isinstance(seed, (int, np.integer)):
        seed = int(seed.integers(2**63))
    blocks = fold_indices(dataset.m, grid.folds, seed)
    splits = []
    for f in range(grid.folds):
        train_idx = np.concatenate([b for g, b in enumerate(blocks) if g != f])
        splits.append((dataset.subset(train_idx), dataset.subset(blocks[f])))
    cells = grid.cells(algorithm)
    args = [
        (algorithm, tr, va, cell, k, int(rng_stream(seed, "cv-train", f).integers(2**31)))
        for cell in cells
        for f, (tr, va) in enumerate(splits)
    ]
    errors = np.array(_run_jobs(_cv_job, args, jobs)).reshape(len(cells), grid.folds)
    means = errors.mean(axis=1)
    best = int(np.argmin(means))  # first minimum: cells are in tie-break order
    if return_scores:
        return cells[best], list(zip(cells, means.tolist()))
    return cells[best]


# ---------------------------------------------------------------------------
# learning curves
# ---------------------------------------------------------------------------


@dataclass
class CurvePoint:
    algo: str
    m_used: int
    attributes_used: int
    test_sq_error: float
    test_cls_error: float
    seed: int
    attributes_budgeted: int = 0

    def csv_row(self) -> list:
        return [self.algo, self.m_used, self.attributes_used,
                repr(self.test_sq_error), repr(self.test_cls_error), self.seed]


def _curve_job(args):
    algorithm, train, test, params, k, m_used, seed = args
    model = fit(algorithm, train.prefix(m_used), params, k, seed)
    cls = test_classification_error(model, test) if is_binary(test) else float("nan")
    budget = m_used * (k if algorithm in PARTIAL_INFO else train.d)
    return CurvePoint(algorithm, m_used, int(model.attributes_consumed),
                      test_squared_error(model, test), cls, seed, budget)


def learning_curve(train: Dataset, test: Dataset, algorithm: str, params: dict,
                   prefixes, seeds, k, jobs: int = 1) -> list[CurvePoint]:
    """Retrain from scratch on each prefix, for each seed; evaluate on ``test``.

    Points come back ordered by (prefix, seed). ``cls_error`` is NaN when
    the test labels are not all +-1.
    """
    prefixes = [int(p) for p in prefixes]
    if any(b <= a for a, b in zip(prefixes, prefixes[1:])):
        raise InvalidArgument("prefix schedule must be strictly increasing")
    if prefixes and (prefixes[0] < 1 or prefixes[-1] > train.m):
        raise InvalidArgument(f"prefixes must lie in 1..{train.m}")
    args = [(algorithm, train, test, params, k, p, int(s)) for p in prefixes for s in seeds]
    return _run_jobs(_curve_job, args, jobs)


def write_curve_csv(points, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CURVE_HEADER)
        for p in points:
            writer.writerow(p.csv_row())


def read_curve_csv(path) -> list[CurvePoint]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CURVE_HEADER:
            raise DataError(f"{path}: header {header} != {CURVE_HEADER}")
        return [CurvePoint(r[0], int(r[1]), int(r[2]), float(r[3]), float(r[4]), int(r[5]))
                for r in reader]


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


@dataclass
class ExperimentConfig:
    """Everything needed to regenerate one figure's data.

    ``data`` is a CSV path (split per seed with ``test_fraction``) or a dict
    with ``train`` and ``test`` paths. ``algorithms`` maps a name to fixed
    params; with ``tune`` set, params are picked per seed by
    cross-validation on that seed's training set.
    """

    data: str | dict
    algorithms: dict
    prefixes: list
    seeds: list
    k: int = 4
    test_fraction: float = 0.1
    tune: dict | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        missing = [key for key in ("data", "algorithms", "prefixes", "seeds") if key not in raw]
        if missing:
            raise DataError(f"experiment config lacks {missing}")
        algos = raw["algorithms"]
        if isinstance(algos, list):
            algos = {a: {} for a in algos}
        for a in algos:
            if a not in ALGORITHMS:
                raise DataError(f"unknown algorithm {a!r} in config")
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{key: val for key, val in raw.items() if key in known} | {"algorithms": algos})


def run_experiment(cfg: ExperimentConfig, jobs: int = 1, log=None) -> list[CurvePoint]:
    if isinstance(cfg.data, dict):
        fixed = (load_csv(cfg.data["train"]), load_csv(cfg.data["test"]))
        full = None
    else:
        fixed = None
        full = load_csv(cfg.data)
    points = []
    for seed in cfg.seeds:
        seed = int(seed)
        train, test = fixed if fixed else split(full, cfg.test_fraction, rng_stream(seed, "split"))
        prefixes = [p for p in cfg.prefixes if p <= train.m]
        for algo, params in cfg.algorithms.items():
            params = dict(params)
            if cfg.tune is not None:
                grid = TuningGrid.from_dict(cfg.tune)
                params.update(cross_validate(train, algo, grid, cfg.k, seed, jobs))
            if log:
                log(f"seed {seed} {algo} params {params}")
            points.extend(learning_curve(train, test, algo, params, prefixes, [seed], cfg.k, jobs))
    return points
