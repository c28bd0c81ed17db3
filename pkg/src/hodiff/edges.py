"""Edge detection post-processing, test patterns and the invariance checker."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .grid import (
    MIN_SIZE,
    PALETTE_MAX,
    GreyImage,
    InvalidInputError,
    InvalidParameterError,
    renormalize_palette,
)
from .hdiff1d import trace_1d
from .hdiff2d import multi_step_2d, trace_2d
from .perona_malik import PMParams, _pm_increment, pm_run

SCHEMES = ("highorder", "pm")
PATTERN_KINDS = (
    "checkerboard",
    "v-stripes",
    "h-stripes",
    "half-plane-x",
    "half-plane-y",
    "diagonal",
    "disk",
    "ramp-1d",
)


def _check_tau(tau):
    if int(tau) != tau or not 128 <= tau <= PALETTE_MAX:
        raise InvalidParameterError(f"tau must be an integer in [128, {PALETTE_MAX}], got {tau}")
    return int(tau)


@dataclass(frozen=True)
class EdgeParams:
    gammas: Sequence[float] = (-8.0,)
    tau: int = 162
    scheme: str = "highorder"
    pm: Optional[PMParams] = None

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        _check_tau(self.tau)
        if self.scheme not in SCHEMES:
            raise InvalidParameterError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.scheme == "highorder" and not self.gammas:
            raise InvalidParameterError("gamma schedule must not be empty")
        if self.scheme == "pm" and self.pm is None:
            raise InvalidParameterError("perona-malik scheme needs PMParams")


def cutoff_filter(img, tau: int) -> np.ndarray:
    """White (256) where the grey is ``>= tau`` or ``<= 256 - tau``, black (1) elsewhere."""
    tau = _check_tau(tau)
    phi = np.asarray(getattr(img, "values", img), dtype=np.float64)
    white = (phi >= tau) | (phi <= PALETTE_MAX - tau)
    return np.where(white, float(PALETTE_MAX), 1.0)


def detect_edges(img, params: EdgeParams) -> np.ndarray:
    """Evolve with the chosen scheme, renormalize to ``[1, 256]``, then cut off."""
    u = img.values if isinstance(img, GreyImage) else np.asarray(img, dtype=np.float64)
    if params.scheme == "highorder":
        u = multi_step_2d(u, params.gammas)
    else:
        u = pm_run(u, params.pm)
    return cutoff_filter(renormalize_palette(u), params.tau)


@dataclass(frozen=True)
class PatternSpec:
    """A synthetic test image.

    ``split`` is the last index (1-based) carrying ``v1`` for half-planes and
    the mid-value index for ``ramp-1d``; ``period`` is the stripe width;
    ``radius`` is used by ``disk`` only.
    """

    kind: str
    n: int = 10
    v1: float = 1.0
    v2: float = 256.0
    period: int = 1
    split: Optional[int] = None
    radius: Optional[float] = None

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise InvalidParameterError(f"unknown pattern {self.kind!r}; choose from {PATTERN_KINDS}")
        if self.n < MIN_SIZE:
            raise InvalidParameterError(f"pattern size must be >= {MIN_SIZE}, got {self.n}")
        if self.v1 == self.v2:
            raise InvalidParameterError("v1 and v2 must differ")
        if self.period < 1:
            raise InvalidParameterError(f"period must be >= 1, got {self.period}")
        if self.split is not None and not 1 <= self.split < self.n:
            raise InvalidParameterError(f"split must lie in [1, {self.n - 1}], got {self.split}")


def generate_pattern(spec: PatternSpec) -> np.ndarray:
    """Build the requested pattern; 1-based indices ``i`` (axis 0) and ``j`` (axis 1)."""
    n, v1, v2 = spec.n, float(spec.v1), float(spec.v2)
    if spec.kind == "ramp-1d":
        mid = spec.split if spec.split is not None else (n + 1) // 2
        k = np.arange(1, n + 1)
        return np.where(k < mid, v1, np.where(k > mid, v2, (v1 + v2) / 2))
    i, j = np.indices((n, n)) + 1
    split = spec.split if spec.split is not None else n // 2
    if spec.kind == "checkerboard":
        mask = (i + j) % 2 == 0
    elif spec.kind == "v-stripes":
        mask = ((j - 1) // spec.period) % 2 == 0
    elif spec.kind == "h-stripes":
        mask = ((i - 1) // spec.period) % 2 == 0
    elif spec.kind == "half-plane-x":
        mask = i <= split
    elif spec.kind == "half-plane-y":
        mask = j <= split
    elif spec.kind == "diagonal":
        mask = ~(i < j)
    else:
        radius = spec.radius if spec.radius is not None else n * 60 / 256
        c = (n + 1) / 2
        mask = (i - c) ** 2 + (j - c) ** 2 > radius**2
    return np.where(mask, v1, v2)


@dataclass(frozen=True)
class InvarianceReport:
    is_invariant: bool
    max_abs_R: float
    max_abs_change: float


def check_invariance(img, scheme: str = "highorder", gamma: float = -8.0,
                     pm: Optional[PMParams] = None) -> InvarianceReport:
    """One step with trace: invariant iff every R is exactly 0 and nothing moved.

    Accepts a 1D signal or a square image for the high-order scheme. For
    Perona-Malik the reported R is the per-step increment divided by ``dt``.
    """
    if scheme not in SCHEMES:
        raise InvalidParameterError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    u = np.asarray(getattr(img, "values", img), dtype=np.float64)
    if scheme == "highorder":
        if u.ndim == 1:
            t = trace_1d(u, gamma)
            r_all = np.concatenate([t.R_staggered.values, t.R_integer])
        elif u.ndim == 2:
            t = trace_2d(u, gamma)
            r_all = np.concatenate([t.R_staggered.values.ravel(), t.R_integer.ravel()])
        else:
            raise InvalidInputError(f"expected a 1D or 2D array, got shape {u.shape}")
        out = t.updated
    else:
        if pm is None:
            raise InvalidParameterError("perona-malik check needs PMParams")
        inc = _pm_increment(u, pm)
        r_all = inc / pm.dt
        out = u + inc
    max_r = float(np.max(np.abs(r_all)))
    change = float(np.max(np.abs(out - u)))
    return InvarianceReport(max_r == 0.0 and np.array_equal(out, u), max_r, change)
