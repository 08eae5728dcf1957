"""Unbiased estimators built from budgeted attribute reveals.

Each estimator is split into a sampling step and a deterministic
``*_from_*`` step that turns a fixed draw into the estimate. The split lets
tests average the deterministic step over every possible draw.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import AttributeOracle, InvalidSize, OddBudget
from .sampling import sample_pair_set, sample_subset, sample_weighted_index


class GradientEstimate(NamedTuple):
    g: np.ndarray
    y_hat: float
    v: np.ndarray


def _check_even(k: int) -> None:
    if k < 2 or k % 2:
        raise OddBudget(f"budget k must be an even integer >= 2, got {k}")


def instance_from_subset(oracle: AttributeOracle, subset) -> np.ndarray:
    """``v_r = (d/b) x_r`` on the revealed subset, zero elsewhere."""
    d = oracle.d
    b = len(subset)
    v = np.zeros(d)
    scale = d / b
    for r in subset:
        v[r] = scale * oracle.reveal(int(r))
    return v


def estimate_instance(oracle: AttributeOracle, b: int, rng: np.random.Generator) -> np.ndarray:
    """Sparse unbiased estimate of ``x`` from ``b`` distinct uniform reveals."""
    if not 1 <= b <= oracle.d:
        raise InvalidSize(f"b={b} must lie in 1..{oracle.d}")
    return instance_from_subset(oracle, sample_subset(oracle.d, b, rng))


def gram_terms(oracle: AttributeOracle, pairs, k: int):
    """Sparse terms of the Gram/instance estimate for fixed ordered pairs.

    Returns ``(ii, jj, a, xi, xj)`` arrays: pair ``p`` adds ``a[p]`` to both
    ``A[ii[p], jj[p]]`` and ``A[jj[p], ii[p]]``, and ``(d/k) xi[p]``,
    ``(d/k) xj[p]`` to ``v[ii[p]]``, ``v[jj[p]]``. Each pair costs two
    reveals, diagonal pairs included.
    """
    n = len(pairs)
    ii = np.empty(n, dtype=np.intp)
    jj = np.empty(n, dtype=np.intp)
    xi = np.empty(n)
    xj = np.empty(n)
    for p, (i, j) in enumerate(pairs):
        ii[p] = i
        jj[p] = j
        xi[p] = oracle.reveal(int(i))
        xj[p] = oracle.reveal(int(j))
    d = oracle.d
    return ii, jj, (d * d / k) * xi * xj, xi, xj


def gram_from_pairs(oracle: AttributeOracle, pairs, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense ``(A, v)`` for a fixed set of ``k/2`` ordered pairs."""
    d = oracle.d
    ii, jj, a, xi, xj = gram_terms(oracle, pairs, k)
    upper = np.zeros((d, d))
    np.add.at(upper, (np.minimum(ii, jj), np.maximum(ii, jj)), a)
    v = np.zeros(d)
    np.add.at(v, ii, (d / k) * xi)
    np.add.at(v, jj, (d / k) * xj)
    # upper + upper.T is symmetric bit for bit; the diagonal doubles as required
    return upper + upper.T, v


def estimate_gram_and_instance(
    oracle: AttributeOracle, k: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Unbiased estimates of ``x x^T`` (symmetric) and ``x`` from ``k`` reveals."""
    _check_even(k)
    return gram_from_pairs(oracle, sample_pair_set(oracle.d, k // 2, rng), k)


def gradient_from_draws(
    oracle: AttributeOracle, w: np.ndarray, k: int, subset, draws
) -> GradientEstimate:
    """Gradient estimate for a fixed uniform ``subset`` and weighted ``draws``.

    ``draws`` is ignored (and nothing is revealed for it) when ``w`` is zero,
    since ``<0, x> = 0`` needs no observation.
    """
    v = instance_from_subset(oracle, subset)
    w1 = float(np.sum(np.abs(w)))
    y_hat = 0.0
    if w1 > 0:
        acc = 0.0
        for i in draws:
            i = int(i)
            acc += np.sign(w[i]) * oracle.reveal(i)
        y_hat = (2.0 / k) * w1 * acc
    g = 2.0 * (y_hat - oracle.target()) * v
    return GradientEstimate(g, y_hat, v)


def estimate_gradient(
    oracle: AttributeOracle, w, k: int, rng: np.random.Generator
) -> GradientEstimate:
    """Unbiased estimate of ``2 (<w, x> - y) x`` using at most ``k`` reveals.

    ``k/2`` distinct uniform reveals build ``v``; ``k/2`` draws with
    replacement from ``|w_i| / ||w||_1`` build the prediction estimate.
    """
    _check_even(k)
    w = np.asarray(w, dtype=float)
    half = k // 2
    if half > oracle.d:
        raise InvalidSize(f"k/2={half} exceeds d={oracle.d}")
    subset = sample_subset(oracle.d, half, rng)
    draws = sample_weighted_index(w, rng, size=half) if np.any(w) else ()
    return gradient_from_draws(oracle, w, k, subset, draws)
