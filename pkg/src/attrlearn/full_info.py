"""Full-information reference learners: least squares constrained to an
L1 ball (Lasso, constraint form) or an L2 ball (ridge, constraint form)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dataset, InvalidArgument, Model, require_nonempty
from .projection import project_l1, project_l2
from .quadratic import SolverConfig, minimize_quadratic

_PROJECTORS = {
    "l1": lambda w, B: project_l1(w, B).u,
    "l2": project_l2,
}


@dataclass(frozen=True)
class FullInfoConfig:
    B: float
    norm: str = "l1"
    max_iters: int = 20000
    tolerance: float = 1e-9  # on the gradient mapping

    def __post_init__(self):
        if not self.B > 0:
            raise InvalidArgument("B must be positive")
        if self.norm not in _PROJECTORS:
            raise InvalidArgument(f"norm must be 'l1' or 'l2', got {self.norm!r}")

    def solver(self) -> SolverConfig:
        return SolverConfig(max_iters=self.max_iters, mapping_tolerance=self.tolerance)


def least_squares_quadratic(dataset: Dataset):
    """``(Q, c, const)`` with ``L_S(w) = w^T Q w - c^T w + const``."""
    X, y = dataset.X, dataset.y
    m = dataset.m
    return X.T @ X / m, 2.0 * (X.T @ y) / m, float(y @ y) / m


def train_constrained(dataset: Dataset, cfg: FullInfoConfig, return_result=False):
    require_nonempty(dataset)
    Q, c, const = least_squares_quadratic(dataset)
    proj = _PROJECTORS[cfg.norm]
    res = minimize_quadratic(Q, c, const, lambda w: proj(w, cfg.B), cfg.solver())
    model = Model(
        algo="lasso" if cfg.norm == "l1" else "ridge",
        weights=res.w,
        hyperparameters={"B": cfg.B, "norm": cfg.norm},
        attributes_consumed=dataset.m * dataset.d,
        train_size=dataset.m,
    )
    return (model, res) if return_result else model


def train_lasso(dataset: Dataset, B: float, **kw) -> Model:
    return train_constrained(dataset, FullInfoConfig(B, "l1", **kw))


def train_ridge(dataset: Dataset, B: float, **kw) -> Model:
    return train_constrained(dataset, FullInfoConfig(B, "l2", **kw))


def gradient_mapping_norm(dataset: Dataset, w, cfg: FullInfoConfig, step: float = None) -> float:
    """``||w - P(w - s grad)|| / s``; zero exactly at a constrained optimum."""
    Q, c, _ = least_squares_quadratic(dataset)
    if step is None:
        step = 1.0 / (2.0 * max(np.linalg.eigvalsh(Q)[-1], 1e-12))
    w = np.asarray(w, dtype=float)
    grad = 2.0 * Q @ w - c
    return float(np.linalg.norm(w - _PROJECTORS[cfg.norm](w - step * grad, cfg.B)) / step)
