"""Classical Perona-Malik diffusion, explicit five-point scheme.

Used as the baseline the high-order scheme is compared against.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .grid import GreyImage, InvalidInputError, InvalidParameterError, extend_neumann_2d


class StabilityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PMParams:
    """Conductivity parameter ``a``, time step ``dt``, final time ``T``, spacing ``h``."""

    a: float
    dt: float
    T: float
    h: float = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidParameterError(f"a must be positive, got {self.a}")
        if not self.dt > 0:
            raise InvalidParameterError(f"dt must be positive, got {self.dt}")
        if not self.h > 0:
            raise InvalidParameterError(f"h must be positive, got {self.h}")
        if not self.T >= self.dt * (1 - 1e-9):
            raise InvalidParameterError(f"T must be at least dt, got T={self.T}, dt={self.dt}")
        ratio = self.T / self.dt
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio):
            raise InvalidParameterError(f"T/dt must be an integer, got {ratio}")
        if self.dt > self.h * self.h / 4:
            warnings.warn(
                f"dt={self.dt} exceeds the explicit stability bound h^2/4={self.h * self.h / 4}",
                StabilityWarning,
                stacklevel=3,
            )

    @property
    def steps(self) -> int:
        return int(round(self.T / self.dt))


def g_a(eta, a: float):
    """Conductivity ``1 / (1 + eta^2 / a^2)``."""
    if not a > 0:
        raise InvalidParameterError(f"a must be positive, got {a}")
    eta = np.asarray(eta, dtype=np.float64)
    return 1.0 / (1.0 + (eta * eta) / (a * a))


def conductivity_nodes(u_ext, a: float, h: float = 1.0) -> np.ndarray:
    """G at every pixel from centred differences on the bordered grid."""
    u = np.asarray(u_ext, dtype=np.float64)
    gx = (u[2:, 1:-1] - u[:-2, 1:-1]) / (2 * h)
    gy = (u[1:-1, 2:] - u[1:-1, :-2]) / (2 * h)
    return g_a(np.sqrt(gx * gx + gy * gy), a)


def _pm_increment(u, params: PMParams):
    h = params.h
    ue = extend_neumann_2d(u)
    G = extend_neumann_2d(conductivity_nodes(ue, params.a, h))
    c = G[1:-1, 1:-1]
    g_e = (c + G[2:, 1:-1]) / 2
    g_w = (c + G[:-2, 1:-1]) / 2
    g_n = (c + G[1:-1, 2:]) / 2
    g_s = (c + G[1:-1, :-2]) / 2
    uc = ue[1:-1, 1:-1]
    flux = (
        g_e * (ue[2:, 1:-1] - uc) / h
        - g_w * (uc - ue[:-2, 1:-1]) / h
        + g_n * (ue[1:-1, 2:] - uc) / h
        - g_s * (uc - ue[1:-1, :-2]) / h
    )
    return (params.dt / h) * flux


def _values(u):
    if isinstance(u, GreyImage):
        return u.values
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] < 2:
        raise InvalidInputError(f"need a square image with N >= 2, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise InvalidInputError("image contains non-finite values")
    return u


def pm_step(u, params: PMParams):
    """One explicit Euler step; borders are re-derived by replication."""
    v = _values(u)
    out = v + _pm_increment(v, params)
    if isinstance(u, GreyImage):
        return GreyImage(out, u.h, u.palette_max)
    return out


def pm_run(u, params: PMParams):
    """``T / dt`` steps of :func:`pm_step`."""
    for _ in range(params.steps):
        u = pm_step(u, params)
    return u


def max_stable_dt(h: float = 1.0) -> float:
    return h * h / 4

