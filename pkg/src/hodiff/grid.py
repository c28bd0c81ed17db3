"""Containers, Neumann borders, staggered storage and palette mapping.

Array conventions used throughout the package:

* 1D signals are stored as ``u[0..N-1]`` holding pixels ``u_1..u_N``.
  After :func:`extend_neumann_1d` slot ``k`` holds ``u_k`` for ``k = 0..N+1``.
* 2D images are ``(N, N)`` arrays with axis 0 the first pixel index ``i``
  and axis 1 the second index ``j``. The bordered grid is ``(N+2, N+2)``
  and slot ``[i, j]`` holds ``u_{i,j}``.
* Staggered fields carry the half-index of their first slot, so slot ``k``
  of a :class:`Staggered1D` with ``first=1.5`` sits at half-index ``k + 1.5``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PALETTE_MAX = 256
# smallest size the four-point stencils accept
MIN_SIZE = 4
# smallest size a container accepts (a Neumann border needs two samples)
MIN_CONTAINER = 2


class InvalidInputError(ValueError):
    """Input array has the wrong shape, size or contains non-finite values."""


class InvalidParameterError(ValueError):
    """A scalar parameter is outside its admissible range."""


def _frozen(values, ndim):
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != ndim:
        raise InvalidInputError(f"expected a {ndim}D array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Signal1D:
    """A row of grey intensities ``u_1..u_N`` with spacing ``h``."""

    values: np.ndarray
    h: float = 1.0

    def __post_init__(self):
        arr = _frozen(self.values, 1)
        if arr.size < MIN_CONTAINER:
            raise InvalidInputError(f"signal needs at least {MIN_CONTAINER} samples, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("signal contains non-finite values")
        if not self.h > 0:
            raise InvalidParameterError(f"grid spacing must be positive, got {self.h}")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class GreyImage:
    """A square ``N x N`` grey image on the ``[1, palette_max]`` scale."""

    values: np.ndarray
    h: float = 1.0
    palette_max: int = PALETTE_MAX

    def __post_init__(self):
        arr = _frozen(self.values, 2)
        if arr.shape[0] != arr.shape[1]:
            raise InvalidInputError(f"image must be square, got shape {arr.shape}")
        if arr.shape[0] < MIN_CONTAINER:
            raise InvalidInputError(f"image needs N >= {MIN_CONTAINER}, got N={arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("image contains non-finite values")
        if not self.h > 0:
            raise InvalidParameterError(f"grid spacing must be positive, got {self.h}")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def is_quantized(self) -> bool:
        v = self.values
        return bool(np.all(v == np.round(v)) and v.min() >= 1 and v.max() <= self.palette_max)


@dataclass(frozen=True)
class Staggered1D:
    """Values at half-integer positions ``first, first + 1, ...``."""

    values: np.ndarray
    first: float
    quantity: str = ""

    def at(self, half_index: float) -> float:
        k = half_index - self.first
        if k != int(k) or not 0 <= k < self.values.size:
            raise IndexError(f"{self.quantity or 'field'} has no value at {half_index}")
        return float(self.values[int(k)])

    @property
    def last(self) -> float:
        return self.first + self.values.size - 1


@dataclass(frozen=True)
class Staggered2D:
    """Values on a rectangle of (half-)integer nodes.

    ``first`` gives the position of slot ``[0, 0]`` along each axis; either
    coordinate may be integer (averages staggered in one axis only).
    """

    values: np.ndarray
    first: tuple = (1.5, 1.5)
    quantity: str = ""

    def at(self, x: float, y: float) -> float:
        kx, ky = x - self.first[0], y - self.first[1]
        nx, ny = self.values.shape
        if kx != int(kx) or ky != int(ky) or not (0 <= kx < nx and 0 <= ky < ny):
            raise IndexError(f"{self.quantity or 'field'} has no value at ({x}, {y})")
        return float(self.values[int(kx), int(ky)])

    @property
    def last(self) -> tuple:
        nx, ny = self.values.shape
        return (self.first[0] + nx - 1, self.first[1] + ny - 1)


def extend_neumann_1d(u) -> np.ndarray:
    """Return ``[u_1, u_1, ..., u_N, u_N]`` (indices ``0..N+1``)."""
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 1 or u.size < 2:
        raise InvalidInputError(f"need a 1D signal with at least 2 samples, got shape {u.shape}")
    out = np.empty(u.size + 2)
    out[1:-1] = u
    out[0] = u[0]
    out[-1] = u[-1]
    return out


def extend_neumann_2d(u) -> np.ndarray:
    """Border an ``N x N`` image by edge replication.

    The four corner slots are set to 0; no stencil in this package reads them.
    """
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] < 2:
        raise InvalidInputError(f"need a square image with N >= 2, got shape {u.shape}")
    n = u.shape[0]
    out = np.zeros((n + 2, n + 2))
    out[1:-1, 1:-1] = u
    out[0, 1:-1] = u[0]
    out[-1, 1:-1] = u[-1]
    out[1:-1, 0] = u[:, 0]
    out[1:-1, -1] = u[:, -1]
    return out


def round_half_away(x):
    """Round to the nearest integer, ties away from zero."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def renormalize_palette(img, palette_max: int = PALETTE_MAX) -> np.ndarray:
    """Affinely map ``[min, max]`` onto ``[1, palette_max]`` and round.

    A constant image carries no contrast and maps to mid-grey
    ``(palette_max + 1) // 2``.
    """
    v = np.asarray(getattr(img, "values", img), dtype=np.float64)
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("cannot renormalize non-finite values")
    lo, hi = v.min(), v.max()
    if lo == hi:
        return np.full(v.shape, float((palette_max + 1) // 2))
    scaled = 1.0 + (palette_max - 1) * (v - lo) / (hi - lo)
    return np.clip(round_half_away(scaled), 1, palette_max)
