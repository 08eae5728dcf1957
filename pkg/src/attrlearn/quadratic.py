"""Projected gradient descent for ``f(w) = w^T Q w - c^T w + const`` over a
norm ball. Shared by the Baseline surrogate and the full-information
learners; ``Q`` must be symmetric but need not be positive semidefinite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import InvalidArgument


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 2000
    initial_step: float = 1.0
    shrink: float = 0.5
    sufficient_decrease: float = 1e-4
    tolerance: float = 1e-9
    max_backtracks: int = 100
    # when set, stop on the gradient mapping |w+ - w| / step instead of the decrease in f
    mapping_tolerance: float | None = None

    def __post_init__(self):
        if self.max_iters < 1:
            raise InvalidArgument("max_iters must be >= 1")
        if not self.tolerance > 0:
            raise InvalidArgument("tolerance must be positive")
        if not 0 < self.shrink < 1:
            raise InvalidArgument("shrink must lie in (0, 1)")
        if not self.initial_step > 0:
            raise InvalidArgument("initial_step must be positive")
        if self.mapping_tolerance is not None and not self.mapping_tolerance > 0:
            raise InvalidArgument("mapping_tolerance must be positive")


@dataclass
class SolveResult:
    w: np.ndarray
    objective: float
    n_iter: int
    converged: bool
    history: list = field(default_factory=list)
    step: float = 0.0


def quadratic_value(Q, c, const, w) -> float:
    return float(w @ Q @ w - c @ w + const)


def minimize_quadratic(
    Q: np.ndarray,
    c: np.ndarray,
    const: float,
    project: Callable[[np.ndarray], np.ndarray],
    cfg: SolverConfig = SolverConfig(),
    w0: np.ndarray | None = None,
) -> SolveResult:
    """Backtracking projected gradient from ``w0`` (default 0).

    Armijo rule along the projection arc:
    ``f(w+) <= f(w) + sigma * grad . (w+ - w)``. Each iteration first tries
    the previous accepted step enlarged by ``1/shrink``. Stops when an
    accepted step lowers ``f`` by at most ``tolerance * max(1, |f|)`` (or, with
    ``mapping_tolerance`` set, moves by at most ``mapping_tolerance * step``),
    when no step is accepted, or after ``max_iters``. Returns the best iterate.
    """
    Q = np.asarray(Q, dtype=float)
    c = np.asarray(c, dtype=float)
    w = project(np.zeros(c.size) if w0 is None else np.asarray(w0, dtype=float))
    Qw = Q @ w
    f = float(w @ Qw - c @ w + const)
    best_w, best_f = w, f
    history = [f]
    step = cfg.initial_step
    converged = False
    n_iter = 0
    for n_iter in range(1, cfg.max_iters + 1):
        grad = 2.0 * Qw - c
        step = step / cfg.shrink if n_iter > 1 else cfg.initial_step
        accepted = False
        for _ in range(cfg.max_backtracks):
            w_new = project(w - step * grad)
            delta = w_new - w
            if not np.any(delta):
                break
            Qw_new = Q @ w_new
            f_new = float(w_new @ Qw_new - c @ w_new + const)
            if f_new <= f + cfg.sufficient_decrease * float(grad @ delta):
                accepted = True
                break
            step *= cfg.shrink
        if not accepted:
            converged = True
            break
        decrease = f - f_new
        mapping = float(np.linalg.norm(delta)) / step
        w, Qw, f = w_new, Qw_new, f_new
        history.append(f)
        if f < best_f:
            best_w, best_f = w, f
        if cfg.mapping_tolerance is not None:
            done = mapping <= cfg.mapping_tolerance
        else:
            done = decrease <= cfg.tolerance * max(1.0, abs(f))
        if done:
            converged = True
            break
    return SolveResult(best_w.copy(), best_f, n_iter, converged, history, step)
