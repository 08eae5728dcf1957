"""Euclidean projections onto L1 and L2 balls."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import NonPositiveRadius


class ProjectionResult(NamedTuple):
    u: np.ndarray
    threshold: float


def l1_threshold(w, B: float) -> float:
    """Soft-threshold level ``theta`` with ``sum(max(|w_i| - theta, 0)) = B``.

    Returns 0 when ``||w||_1 <= B``. Sort-based, O(d log d).
    """
    a = np.abs(np.asarray(w, dtype=float))
    if a.sum() <= B:
        return 0.0
    s = np.sort(a)[::-1]
    css = np.cumsum(s)
    ranks = np.arange(1, s.size + 1)
    # largest rho with s_rho > (css_rho - B) / rho
    rho = np.nonzero(s * ranks > css - B)[0][-1]
    return max(float((css[rho] - B) / (rho + 1)), 0.0)


def project_l1(w, B: float) -> ProjectionResult:
    """Project ``w`` onto ``{u : ||u||_1 <= B}``."""
    if not B > 0:
        raise NonPositiveRadius(f"radius must be positive, got {B}")
    w = np.asarray(w, dtype=float)
    theta = l1_threshold(w, B)
    if theta == 0.0:
        return ProjectionResult(w.copy(), 0.0)
    u = np.sign(w) * np.maximum(np.abs(w) - theta, 0.0)
    return ProjectionResult(u, theta)


def project_l2(w, B: float) -> np.ndarray:
    """Project ``w`` onto ``{u : ||u||_2 <= B}`` by rescaling."""
    if not B > 0:
        raise NonPositiveRadius(f"radius must be positive, got {B}")
    w = np.asarray(w, dtype=float)
    n = np.linalg.norm(w)
    if n <= B:
        return w.copy()
    return w * (B / n)
