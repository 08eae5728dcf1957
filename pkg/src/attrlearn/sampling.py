"""Randomization primitives: uniform subsets, uniform sets of ordered pairs,
and index draws proportional to ``|w_i|``.

Every sampler consumes a fixed number of uniforms for a given call shape,
so a seed reproduces a run exactly.
"""

from __future__ import annotations

import numpy as np

from .core import InvalidSize, ZeroVector


def sample_subset(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random subset of ``range(n)`` with ``size`` elements.

    Partial Fisher-Yates over a virtual ``arange(n)``; only swapped slots are
    stored, so the cost is O(size). Returns indices in draw order.
    """
    if size < 0 or size > n:
        raise InvalidSize(f"cannot draw {size} distinct items from {n}")
    if size == 0:
        return np.empty(0, dtype=np.intp)
    u = rng.random(size)
    swapped: dict[int, int] = {}
    out = np.empty(size, dtype=np.intp)
    for pos in range(size):
        j = pos + int(u[pos] * (n - pos))
        if j >= n:  # u * (n - pos) can round up to n - pos
            j = n - 1
        out[pos] = swapped.get(j, j)
        swapped[j] = swapped.get(pos, pos)
    return out


def sample_pair_set(d: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random set of ``size`` distinct ordered pairs from ``[d] x [d]``.

    The diagonal is included. Returns an array of shape ``(size, 2)``.
    """
    if size < 0 or size > d * d:
        raise InvalidSize(f"cannot draw {size} distinct pairs from {d}x{d}")
    flat = sample_subset(d * d, size, rng)
    return np.stack([flat // d, flat % d], axis=1)


def sample_weighted_index(w, rng: np.random.Generator, size: int | None = None):
    """Draw index ``i`` with probability ``|w_i| / ||w||_1``.

    With ``size`` given, returns that many independent draws (with
    replacement). Inverse CDF on prefix sums of ``|w|``; a uniform landing
    exactly on a boundary goes to the lower index.
    """
    cdf = np.cumsum(np.abs(np.asarray(w, dtype=float)))
    total = cdf[-1] if cdf.size else 0.0
    if not total > 0:
        raise ZeroVector("weighted sampling needs ||w||_1 > 0")
    u = rng.random(1 if size is None else size) * total
    idx = np.searchsorted(cdf, u, side="right")
    if idx.max() >= cdf.size:
        # u * total rounded up to total: fall back to the last positive weight
        idx[idx >= cdf.size] = np.flatnonzero(np.diff(cdf, prepend=0.0))[-1]
    return int(idx[0]) if size is None else idx
