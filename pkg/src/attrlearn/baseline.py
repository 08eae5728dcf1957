"""Loss-estimating learner: build an unbiased quadratic surrogate of the
training loss from random attribute pairs, then minimize it over an L1
ball. Also the naive averaged-vector learner."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    AttributeOracle,
    Dataset,
    DimensionMismatch,
    InvalidSize,
    Model,
    OddBudget,
    as_rng,
    seed_of,
    require_nonempty,
)
from .estimators import estimate_instance, gram_terms
from .projection import project_l1
from .quadratic import SolverConfig, minimize_quadratic, quadratic_value
from .sampling import sample_pair_set


@dataclass
class SurrogateLoss:
    """``L~(w) = w^T A_bar w - w^T v_bar + y_bar``.

    ``v_bar`` accumulates ``+2 y v / m``, so the linear term enters with a
    minus sign; that makes ``E[L~(w)] = L_S(w)``.
    """

    A_bar: np.ndarray
    v_bar: np.ndarray
    y_bar: float
    m: int

    @property
    def d(self) -> int:
        return self.v_bar.size


def _check_baseline_budget(k: int, d: int) -> None:
    if k < 2 or k % 2:
        raise OddBudget(f"budget k must be an even integer >= 2, got {k}")
    if k // 2 > d * d:
        raise InvalidSize(f"k/2={k // 2} pairs exceed d^2={d * d}")


def accumulate_baseline(dataset: Dataset, k: int, rng, pairs_per_example=None) -> SurrogateLoss:
    """Average the per-example Gram and instance estimates over ``dataset``.

    Draws the same pairs, and reveals the same attributes, as calling
    ``estimate_gram_and_instance`` once per example, but accumulates sparsely.

    ``pairs_per_example`` fixes the pair sets instead of drawing them (one
    ``(k/2, 2)`` array per example); used to enumerate outcomes exactly.
    """
    require_nonempty(dataset)
    _check_baseline_budget(k, dataset.d)
    rng = as_rng(rng)
    m, d = dataset.m, dataset.d
    half = k // 2
    upper = np.zeros((d, d))
    v_sum = np.zeros(d)
    y_sum = 0.0
    for t in range(m):
        y = float(dataset.y[t])
        oracle = AttributeOracle(dataset.X[t], y, k)
        if pairs_per_example is None:
            pairs = sample_pair_set(d, half, rng)
        else:
            pairs = pairs_per_example[t]
        ii, jj, a, xi, xj = gram_terms(oracle, pairs, k)
        assert oracle.revealed_count == k
        np.add.at(upper, (np.minimum(ii, jj), np.maximum(ii, jj)), a)
        c = 2.0 * y * d / k
        np.add.at(v_sum, ii, c * xi)
        np.add.at(v_sum, jj, c * xj)
        y_sum += y * y
    A_bar = (upper + upper.T) / m
    v_bar = v_sum / m
    y_bar = y_sum / m
    return SurrogateLoss(A_bar, v_bar, y_bar, m)


def surrogate_value(s: SurrogateLoss, w) -> float:
    w = np.asarray(w, dtype=float)
    if w.shape != (s.d,):
        raise DimensionMismatch(f"w has shape {w.shape}, surrogate has d={s.d}")
    return quadratic_value(s.A_bar, s.v_bar, s.y_bar, w)


def minimize_surrogate(s: SurrogateLoss, B: float, cfg: SolverConfig = SolverConfig(), return_result=False):
    """Projected-gradient minimization of the surrogate over ``||w||_1 <= B``.

    ``A_bar`` may be indefinite, so this is a local search from 0; the best
    iterate seen is returned.
    """
    project_l1(np.zeros(1), B)  # validates B
    res = minimize_quadratic(s.A_bar, s.v_bar, s.y_bar, lambda z: project_l1(z, B).u, cfg)
    return res if return_result else res.w


def train_baseline(dataset: Dataset, k: int, B: float, cfg: SolverConfig = SolverConfig(), rng=0) -> Model:
    s = accumulate_baseline(dataset, k, as_rng(rng))
    w = minimize_surrogate(s, B, cfg)
    return Model(
        algo="baseline",
        weights=w,
        hyperparameters={"k": k, "B": B},
        attributes_consumed=dataset.m * k,
        seed=seed_of(rng),
        train_size=dataset.m,
    )


def train_naive(dataset: Dataset, k: int, rng=0) -> Model:
    """Averaged vector ``(1/m) sum_t y_t v_t`` with ``v_t`` from ``k`` reveals.

    Optimal when the attribute correlation matrix is the identity.
    """
    require_nonempty(dataset)
    if not 1 <= k <= dataset.d:
        raise InvalidSize(f"k={k} must lie in 1..{dataset.d}")
    gen = as_rng(rng)
    m = dataset.m
    w = np.zeros(dataset.d)
    for t in range(m):
        y = float(dataset.y[t])
        oracle = AttributeOracle(dataset.X[t], y, k)
        w += y * estimate_instance(oracle, k, gen)
    return Model(
        algo="naive",
        weights=w / m,
        hyperparameters={"k": k},
        attributes_consumed=m * k,
        seed=seed_of(rng),
        train_size=m,
    )
