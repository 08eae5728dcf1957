"""Gradient-estimating learner: Pegasos-style stochastic descent on the
squared loss where each step sees only ``k`` attributes of its example,
followed by projection onto an L1 ball and iterate averaging."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    AttributeOracle,
    Dataset,
    InvalidArgument,
    InvalidSize,
    Model,
    OddBudget,
    as_rng,
    require_nonempty,
    seed_of,
)
from .estimators import GradientEstimate, estimate_gradient
from .projection import project_l1


def default_lambda(B: float, B2: float, d: int, m: int, k: int) -> float:
    """Regularization ``((B + 1) d / B2) * sqrt(ln(m) / (m k))``.

    This is the setting under which the averaged iterate's excess risk is
    ``O(d (B+1) B2 / sqrt(k) * sqrt(ln m / m))``. Natural log.
    """
    if not (B > 0 and B2 > 0 and d > 0 and k > 0):
        raise InvalidArgument("B, B2, d and k must be positive")
    if m < 2:
        raise InvalidArgument("m must be at least 2 (ln m must be positive)")
    return (B + 1.0) * d / B2 * math.sqrt(math.log(m) / (m * k))


@dataclass(frozen=True)
class AerConfig:
    k: int
    lam: float
    B: float
    seed: int = 0
    # exact <w,x> and x in place of the estimates: plain projected Pegasos
    full_information: bool = False

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise OddBudget(f"budget k must be an even integer >= 2, got {self.k}")
        if not self.lam > 0:
            raise InvalidArgument("lambda must be positive")
        if not self.B > 0:
            raise InvalidArgument("B must be positive")


@dataclass
class AerState:
    w: np.ndarray
    w_bar_accum: np.ndarray
    m: int
    t: int = 1
    attributes_consumed: int = 0
    l1_trace: list = field(default_factory=list)

    @classmethod
    def initial(cls, d: int, m: int) -> "AerState":
        return cls(np.zeros(d), np.zeros(d), m)


def _exact_gradient(oracle: AttributeOracle, w: np.ndarray) -> GradientEstimate:
    x = np.array([oracle.reveal(i) for i in range(oracle.d)])
    y_hat = float(w @ x)
    return GradientEstimate(2.0 * (y_hat - oracle.target()) * x, y_hat, x)


def aer_step(
    state: AerState,
    oracle: AttributeOracle,
    cfg: AerConfig,
    rng: np.random.Generator,
    estimate: GradientEstimate | None = None,
) -> AerState:
    """One update, in place: shrink, step against the gradient estimate,
    project onto the L1 ball, accumulate the average.

    ``estimate`` bypasses sampling with a precomputed gradient estimate.
    """
    t = state.t
    before = oracle.revealed_count
    if estimate is None:
        if cfg.full_information:
            estimate = _exact_gradient(oracle, state.w)
        else:
            estimate = estimate_gradient(oracle, state.w, cfg.k, rng)
    state.attributes_consumed += oracle.revealed_count - before
    w = (1.0 - 1.0 / t) * state.w - (1.0 / (cfg.lam * t)) * estimate.g
    state.w = project_l1(w, cfg.B).u
    state.w_bar_accum += state.w / state.m
    state.t = t + 1
    return state


def train_aer(dataset: Dataset, cfg: AerConfig, checkpoints=None, record_l1=False) -> Model:
    """Single in-order pass; returns the averaged iterate.

    ``checkpoints`` lists prefix lengths at which the running mean of the
    iterates is stored in ``model.trace["checkpoints"]``. With a fixed
    ``cfg`` the running mean after ``n`` steps is the output a run on the
    first ``n`` examples would produce (up to summation rounding).
    """
    require_nonempty(dataset)
    m, d = dataset.m, dataset.d
    if not cfg.full_information and cfg.k // 2 > d:
        raise InvalidSize(f"k/2={cfg.k // 2} exceeds d={d}")
    budget = d if cfg.full_information else cfg.k
    rng = as_rng(cfg.seed)
    state = AerState.initial(d, m)
    wanted = set() if checkpoints is None else {int(c) for c in checkpoints}
    snapshots = {}
    running = np.zeros(d)
    X, Y = dataset.X, dataset.y
    for n in range(m):
        oracle = AttributeOracle(X[n], Y[n], budget)
        aer_step(state, oracle, cfg, rng)
        assert oracle.revealed_count <= budget
        if record_l1:
            state.l1_trace.append(float(np.abs(state.w).sum()))
        if wanted:
            running += state.w
            if n + 1 in wanted:
                snapshots[n + 1] = running / (n + 1)
    trace = {}
    if wanted:
        trace["checkpoints"] = snapshots
    if record_l1:
        trace["l1"] = state.l1_trace
    return Model(
        algo="aer",
        weights=state.w_bar_accum.copy(),
        hyperparameters={"k": cfg.k, "lambda": cfg.lam, "B": cfg.B,
                         "full_information": cfg.full_information},
        attributes_consumed=state.attributes_consumed,
        seed=seed_of(cfg.seed),
        train_size=m,
        last_iterate=state.w.copy(),
        trace=trace or None,
    )
