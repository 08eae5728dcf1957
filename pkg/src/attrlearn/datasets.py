"""Synthetic distributions with known risks, MNIST IDX ingestion, digit-pair
tasks, splits and the CSV dataset format."""

from __future__ import annotations

import gzip
import itertools
import struct
from dataclasses import dataclass

import numpy as np

from .core import (
    DataError,
    Dataset,
    DimensionMismatch,
    InvalidArgument,
    as_rng,
)

IDX_IMAGES_MAGIC = 2051
IDX_LABELS_MAGIC = 2049


class InvalidSpec(DataError):
    pass


class BadMagic(DataError):
    pass


class TruncatedFile(DataError):
    pass


class CountMismatch(DataError):
    pass


class EmptySelection(DataError):
    pass


# ---------------------------------------------------------------------------
# lower-bound construction: one weakly informative feature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LowerBoundSpec:
    """``x`` uniform on ``{-1, +1}^d``; ``y = x_j`` w.p. ``1/2 + p``, else ``-x_j``.

    The risk minimizer is ``2p e_j`` with risk ``1 - 4p^2``; ``p = sqrt(eps)``
    makes its excess over ``w = 0`` equal to ``4 eps``.
    """

    d: int
    j: int
    p: float

    def __post_init__(self):
        if self.d < 1:
            raise InvalidSpec("d must be >= 1")
        if not 0 <= self.j < self.d:
            raise InvalidSpec(f"good feature j={self.j} outside 0..{self.d - 1}")
        if not 0 <= self.p <= 0.5:
            raise InvalidSpec(f"p={self.p} outside [0, 1/2]")

    @classmethod
    def from_epsilon(cls, d: int, j: int, eps: float) -> "LowerBoundSpec":
        return cls(d, j, float(np.sqrt(eps)))

    @property
    def w_star(self) -> np.ndarray:
        w = np.zeros(self.d)
        w[self.j] = 2.0 * self.p
        return w

    @property
    def optimal_risk(self) -> float:
        return 1.0 - 4.0 * self.p**2


def gen_lowerbound(spec: LowerBoundSpec, m: int, rng) -> Dataset:
    if m < 1:
        raise InvalidSpec("m must be >= 1")
    rng = as_rng(rng)
    X = np.where(rng.random((m, spec.d)) < 0.5, -1.0, 1.0)
    agree = rng.random(m) < 0.5 + spec.p
    y = np.where(agree, X[:, spec.j], -X[:, spec.j])
    return Dataset(X, y)


def risk_lowerbound(w, spec: LowerBoundSpec) -> float:
    """Exact risk ``sum_i w_i^2 + 1 - 4 p w_j``."""
    w = np.asarray(w, dtype=float)
    if w.shape != (spec.d,):
        raise DimensionMismatch(f"w has shape {w.shape}, spec has d={spec.d}")
    return float(w @ w + 1.0 - 4.0 * spec.p * w[spec.j])


# ---------------------------------------------------------------------------
# generic bounded linear task
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearTaskSpec:
    """``x`` uniform on ``[-1, 1]^d``, ``y = <w*, x> + U[-h, h]``.

    Targets stay in ``[-1, 1]`` for every draw when ``||w*||_1 + h <= 1``.
    Otherwise ``clip=True`` clamps the rare out-of-range target.
    """

    w_star: np.ndarray
    noise_halfwidth: float = 0.0
    clip: bool = False

    def __post_init__(self):
        w = np.asarray(self.w_star, dtype=float).reshape(-1)
        object.__setattr__(self, "w_star", w)
        if self.noise_halfwidth < 0:
            raise InvalidSpec("noise half-width must be non-negative")
        if not self.clip and np.abs(w).sum() + self.noise_halfwidth > 1.0 + 1e-12:
            raise InvalidSpec("||w*||_1 + h > 1 would put targets outside [-1, 1]; set clip")

    @property
    def d(self) -> int:
        return self.w_star.size


def dense_weights(d: int, l1: float = 1.0, rng=None) -> np.ndarray:
    """``l1 / d`` in every coordinate, with random signs when ``rng`` is given."""
    w = np.full(d, l1 / d)
    if rng is not None:
        w *= np.where(as_rng(rng).random(d) < 0.5, -1.0, 1.0)
    return w


def gen_linear(spec: LinearTaskSpec, d: int, m: int, rng) -> Dataset:
    if d != spec.d:
        raise DimensionMismatch(f"d={d} but w* has length {spec.d}")
    if m < 1:
        raise InvalidSpec("m must be >= 1")
    rng = as_rng(rng)
    X = rng.uniform(-1.0, 1.0, size=(m, d))
    y = X @ spec.w_star + rng.uniform(-spec.noise_halfwidth, spec.noise_halfwidth, size=m)
    if spec.clip:
        np.clip(y, -1.0, 1.0, out=y)
    return Dataset(X, y)


def risk_linear(w, spec: LinearTaskSpec) -> float:
    """Risk ``||w - w*||^2 / 3 + h^2 / 3`` of the unclipped task."""
    w = np.asarray(w, dtype=float)
    if w.shape != spec.w_star.shape:
        raise DimensionMismatch(f"w has shape {w.shape}, spec has d={spec.d}")
    diff = w - spec.w_star
    return float(diff @ diff / 3.0 + spec.noise_halfwidth**2 / 3.0)


# ---------------------------------------------------------------------------
# deterministic-label instance: predicting from two of three attributes
# ---------------------------------------------------------------------------


def two_attribute_floor(w_star=(1 / 3, 1 / 3, 1 / 3), attributes=(0, 1)) -> float:
    """Least risk of ``sum_a c_a x_a + c_0`` using only ``attributes``.

    ``x`` is uniform on the sign patterns ``{-1, +1}^d`` and ``y = <w*, x>``;
    the minimum is found by least squares over all ``2^d`` equiprobable
    points. The conditional mean given the seen attributes is linear here,
    so this is also the floor for any predictor that sees only them.
    """
    w_star = np.asarray(w_star, dtype=float)
    X = np.array(list(itertools.product((-1.0, 1.0), repeat=w_star.size)))
    y = X @ w_star
    F = np.column_stack([X[:, list(attributes)], np.ones(len(X))])
    coef, *_ = np.linalg.lstsq(F, y, rcond=None)
    r = F @ coef - y
    return float(np.mean(r * r))


# ---------------------------------------------------------------------------
# IDX (MNIST) files
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdxImageSet:
    count: int
    rows: int
    cols: int
    pixels: np.ndarray  # uint8, shape (count, rows * cols)


def _read_bytes(path) -> bytes:
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    return raw


def _header(raw: bytes, n_words: int, magic: int, path) -> tuple:
    size = 4 * n_words
    if len(raw) >= 4:
        (found,) = struct.unpack(">I", raw[:4])
        if found != magic:
            raise BadMagic(f"{path}: magic {found} (expected {magic})")
    if len(raw) < size:
        raise TruncatedFile(f"{path}: header needs {size} bytes, file has {len(raw)}")
    return struct.unpack(f">{n_words}I", raw[:size])


def load_idx_images(path) -> IdxImageSet:
    raw = _read_bytes(path)
    _, count, rows, cols = _header(raw, 4, IDX_IMAGES_MAGIC, path)
    need = 16 + count * rows * cols
    if len(raw) < need:
        raise TruncatedFile(f"{path}: expected {need} bytes, found {len(raw)}")
    pixels = np.frombuffer(raw, dtype=np.uint8, count=count * rows * cols, offset=16)
    return IdxImageSet(count, rows, cols, pixels.reshape(count, rows * cols).copy())


def load_idx_labels(path) -> np.ndarray:
    raw = _read_bytes(path)
    _, count = _header(raw, 2, IDX_LABELS_MAGIC, path)
    if len(raw) < 8 + count:
        raise TruncatedFile(f"{path}: expected {8 + count} bytes, found {len(raw)}")
    return np.frombuffer(raw, dtype=np.uint8, count=count, offset=8).copy()


def write_idx_images(images: IdxImageSet, path) -> None:
    with open(path, "wb") as fh:
        fh.write(struct.pack(">4I", IDX_IMAGES_MAGIC, images.count, images.rows, images.cols))
        fh.write(np.ascontiguousarray(images.pixels, dtype=np.uint8).tobytes())


def write_idx_labels(labels, path) -> None:
    labels = np.asarray(labels, dtype=np.uint8)
    with open(path, "wb") as fh:
        fh.write(struct.pack(">2I", IDX_LABELS_MAGIC, labels.size))
        fh.write(labels.tobytes())


def make_pair_task(images: IdxImageSet, labels, digit_a: int, digit_b: int) -> Dataset:
    """Binary regression task: ``digit_a`` -> -1, ``digit_b`` -> +1.

    Pixels map affinely from ``[0, 255]`` onto ``[-1, 1]``.
    """
    labels = np.asarray(labels)
    if images.count != labels.size:
        raise CountMismatch(f"{images.count} images but {labels.size} labels")
    if digit_a == digit_b or not (0 <= digit_a <= 9 and 0 <= digit_b <= 9):
        raise InvalidArgument("digits must be distinct values in 0..9")
    keep = (labels == digit_a) | (labels == digit_b)
    if not keep.any():
        raise EmptySelection(f"no images of digits {digit_a} or {digit_b}")
    X = (2.0 * images.pixels[keep].astype(float) - 255.0) / 255.0
    y = np.where(labels[keep] == digit_b, 1.0, -1.0)
    return Dataset(X, y)


def digit_pairs() -> list[tuple[int, int]]:
    return list(itertools.combinations(range(10), 2))


# ---------------------------------------------------------------------------
# splits and CSV
# ---------------------------------------------------------------------------


def split(dataset: Dataset, test_fraction: float, rng) -> tuple[Dataset, Dataset]:
    """Shuffle once, then cut off ``round(m * test_fraction)`` test examples."""
    if not 0 < test_fraction < 1:
        raise InvalidArgument("test_fraction must lie in (0, 1)")
    perm = as_rng(rng).permutation(dataset.m)
    n_test = int(round(dataset.m * test_fraction))
    return dataset.subset(np.sort(perm[n_test:])), dataset.subset(np.sort(perm[:n_test]))


def save_csv(dataset: Dataset, path) -> None:
    header = ",".join(["y"] + [f"x{i}" for i in range(dataset.d)])
    data = np.column_stack([dataset.y, dataset.X])
    np.savetxt(path, data, delimiter=",", header=header, comments="", fmt="%.17g")


def load_csv(path) -> Dataset:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    if not header or header[0] != "y" or header[1:] != [f"x{i}" for i in range(len(header) - 1)]:
        raise DataError(f"{path}: header must be y,x0,...,x{{d-1}}")
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc
    if data.shape[0] == 0:
        raise DataError(f"{path}: no rows")
    if data.shape[1] != len(header):
        raise DataError(f"{path}: rows have {data.shape[1]} columns, header has {len(header)}")
    return Dataset(data[:, 1:], data[:, 0])

