"""One cycle of the high-order staggered anisotropic diffusion update in 1D.

Offset map (``N`` pixels, ``u_ext`` from :func:`extend_neumann_1d`):

=============  =====================  ===============
field          half-indices           slot ``k`` holds
=============  =====================  ===============
variations     1/2 .. N+1/2           ``k + 1/2``
second deriv.  3/2 .. N-1/2           ``k + 3/2``
R              3/2 .. N-1/2           ``k + 3/2``
extended R     -1/2 .. N+3/2          ``k - 1/2``
=============  =====================  ===============
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import (
    MIN_SIZE,
    InvalidInputError,
    InvalidParameterError,
    Signal1D,
    Staggered1D,
    extend_neumann_1d,
)


@dataclass(frozen=True)
class Step1DTrace:
    d: Staggered1D
    s: Staggered1D
    R_staggered: Staggered1D
    R_integer: np.ndarray
    updated: np.ndarray


def variations(u_ext, h: float = 1.0) -> Staggered1D:
    """First differences ``d_{k+1/2} = (u_{k+1} - u_k) / h`` for k = 0..N."""
    u_ext = np.asarray(u_ext, dtype=np.float64)
    return Staggered1D((u_ext[1:] - u_ext[:-1]) / h, 0.5, "d")


def second_derivative(u_ext, h: float = 1.0) -> Staggered1D:
    """Four-point second derivative at half-indices 3/2 .. N-1/2.

    ``s_{i+3/2} = (u_i - u_{i+1} - u_{i+2} + u_{i+3}) / (2 h^2)``, exact for cubics.
    """
    u_ext = np.asarray(u_ext, dtype=np.float64)
    n = u_ext.size - 2
    if n < MIN_SIZE:
        raise InvalidInputError(f"second derivative needs N >= {MIN_SIZE}, got N={n}")
    num = u_ext[:-3] - u_ext[1:-2] - u_ext[2:-1] + u_ext[3:]
    return Staggered1D(num / (2.0 * h * h), 1.5, "s")


def coefficient_R_1d(d: Staggered1D, s: Staggered1D) -> Staggered1D:
    """``R = sqrt(d^2 / (1 + d^2)) * s`` on the index range of ``s``."""
    lo = s.first - d.first
    if lo != int(lo) or lo < 0 or lo + s.values.size > d.values.size:
        raise InvalidInputError("variations do not cover the second-derivative range")
    dd = d.values[int(lo):int(lo) + s.values.size]
    return Staggered1D(np.sqrt(dd * dd / (1.0 + dd * dd)) * s.values, s.first, "R")


def extend_R_1d(R: Staggered1D) -> Staggered1D:
    """Mirror R onto half-indices -1/2, 1/2, N+1/2, N+3/2.

    ``R_{-1/2} = R_{5/2}``, ``R_{1/2} = R_{3/2}``, ``R_{N+1/2} = R_{N-1/2}``,
    ``R_{N+3/2} = R_{N-3/2}``.
    """
    if R.first != 1.5:
        raise InvalidInputError(f"R must start at half-index 3/2, starts at {R.first}")
    r = R.values
    if r.size < MIN_SIZE - 1:
        raise InvalidInputError(f"R extension needs N >= {MIN_SIZE}, got N={r.size + 1}")
    return Staggered1D(_mirror(r, axis=0), -0.5, "R")


def _mirror(r, axis):
    # slots [1, 0, 0..m-1, m-1, m-2] along `axis`
    m = r.shape[axis]
    idx = np.concatenate(([1, 0], np.arange(m), [m - 1, m - 2]))
    return np.take(r, idx, axis=axis)


def lagrange_midpoint(a, b, c, d):
    """Cubic Lagrange value midway between ``b`` and ``c`` on a unit grid."""
    return (9.0 * (b + c) - (a + d)) / 16.0


def interpolate_to_integer_1d(R_ext: Staggered1D) -> np.ndarray:
    """Interpolate extended staggered R back to pixels 1..N."""
    if R_ext.first != -0.5:
        raise InvalidInputError(f"extended R must start at half-index -1/2, starts at {R_ext.first}")
    r = R_ext.values
    if r.size < 4:
        raise InvalidInputError("extended R too short for the four-point stencil")
    return lagrange_midpoint(r[:-3], r[1:-2], r[2:-1], r[3:])


def _as_signal(u, h):
    if isinstance(u, Signal1D):
        return u.values, (u.h if h is None else h)
    return Signal1D(u, 1.0 if h is None else h).values, (1.0 if h is None else h)


def trace_1d(u, gamma: float, h: float | None = None) -> Step1DTrace:
    """Run one cycle and keep every intermediate field."""
    if not np.isfinite(gamma):
        raise InvalidParameterError(f"gamma must be finite, got {gamma}")
    values, h = _as_signal(u, h)
    if values.size < MIN_SIZE:
        raise InvalidInputError(f"high-order step needs N >= {MIN_SIZE}, got N={values.size}")
    u_ext = extend_neumann_1d(values)
    d = variations(u_ext, h)
    s = second_derivative(u_ext, h)
    R_ext = extend_R_1d(coefficient_R_1d(d, s))
    R_int = interpolate_to_integer_1d(R_ext)
    return Step1DTrace(d, s, R_ext, R_int, values + gamma * R_int)


def step_1d(u, gamma: float, h: float | None = None):
    """One update ``u_i <- u_i + gamma * R_i``.

    Returns a :class:`Signal1D` when given one, otherwise an ndarray.
    Values are not clamped to the palette.
    """
    out = trace_1d(u, gamma, h).updated
    if isinstance(u, Signal1D):
        return Signal1D(out, u.h if h is None else h)
    return out


def multi_step_1d(u, gammas, h: float | None = None):
    gammas = list(gammas)
    if not gammas:
        raise InvalidParameterError("gamma schedule must not be empty")
    for g in gammas:
        u = step_1d(u, g, h)
    return u
