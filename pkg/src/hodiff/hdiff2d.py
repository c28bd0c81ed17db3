"""One cycle of the high-order staggered anisotropic diffusion update in 2D.

Index ranges (``N x N`` image, bordered grid from :func:`extend_neumann_2d`).
Every range is the largest rectangle that avoids the four unused corners of
the bordered grid while covering what the next stage needs:

==========  =========================  ======================  ===========
field       axis 0                     axis 1                  shape
==========  =========================  ======================  ===========
avg_x       3/2 .. N-1/2               0 .. N+1                (N-1, N+2)
avg_y       0 .. N+1                   3/2 .. N-1/2            (N+2, N-1)
d_x         1/2 .. N+1/2               3/2 .. N-1/2            (N+1, N-1)
d_y         3/2 .. N-1/2               1/2 .. N+1/2            (N-1, N+1)
l, D, R     3/2 .. N-1/2               3/2 .. N-1/2            (N-1, N-1)
R extended  -1/2 .. N+3/2              -1/2 .. N+3/2           (N+3, N+3)
==========  =========================  ======================  ===========

Every per-node expression is written so that its floating-point result is
unchanged under the symmetries of the square (transpose, axis flips); the
scheme is therefore bitwise equivariant under those symmetries.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import (
    MIN_SIZE,
    GreyImage,
    InvalidInputError,
    InvalidParameterError,
    Staggered2D,
    extend_neumann_2d,
)
from .hdiff1d import _mirror


@dataclass(frozen=True)
class Step2DTrace:
    avg_x: Staggered2D
    avg_y: Staggered2D
    d_x: Staggered2D
    d_y: Staggered2D
    l: Staggered2D
    D: Staggered2D
    R_staggered: Staggered2D
    R_integer: np.ndarray
    updated: np.ndarray


def average_to_staggered(u_ext):
    """Two-point averages staggered along axis 0 and along axis 1."""
    u = np.asarray(u_ext, dtype=np.float64)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] < 4:
        raise InvalidInputError(f"expected a bordered square grid, got shape {u.shape}")
    avg_x = (u[1:-2, :] + u[2:-1, :]) / 2.0
    avg_y = (u[:, 1:-2] + u[:, 2:-1]) / 2.0
    return Staggered2D(avg_x, (1.5, 0.0), "u_avg_x"), Staggered2D(avg_y, (0.0, 1.5), "u_avg_y")


def variations_2d(avg_x: Staggered2D, avg_y: Staggered2D, h: float = 1.0):
    """Directional variations from the staggered averages.

    ``d_x`` differences ``avg_y`` along axis 0, ``d_y`` differences ``avg_x``
    along axis 1, so both land on fully staggered nodes.
    """
    ay, ax = avg_y.values, avg_x.values
    d_x = (ay[1:, :] - ay[:-1, :]) / h
    d_y = (ax[:, 1:] - ax[:, :-1]) / h
    return (
        Staggered2D(d_x, (avg_y.first[0] + 0.5, avg_y.first[1]), "d_x"),
        Staggered2D(d_y, (avg_x.first[0], avg_x.first[1] + 0.5), "d_y"),
    )


def laplacian_staggered(d_x: Staggered2D, d_y: Staggered2D, h: float = 1.0) -> Staggered2D:
    """Five-term Laplacian on the staggered nodes, built from variations two apart."""
    if d_x.first != (0.5, 1.5) or d_y.first != (1.5, 0.5):
        raise InvalidInputError("variations do not cover the staggered Laplacian range")
    gx, gy = d_x.values, d_y.values
    m = gy.shape[0]
    if gx.shape != (m + 2, m) or gy.shape != (m, m + 2):
        raise InvalidInputError(f"variation shapes {gx.shape}, {gy.shape} are inconsistent")
    lap = ((gx[2:, :] - gx[:-2, :]) + (gy[:, 2:] - gy[:, :-2])) / (2.0 * h)
    return Staggered2D(lap, (1.5, 1.5), "l")


def gradient_magnitude(d_x: Staggered2D, d_y: Staggered2D) -> Staggered2D:
    gx = d_x.values[1:-1, :]
    gy = d_y.values[:, 1:-1]
    return Staggered2D(np.sqrt(gx * gx + gy * gy), (1.5, 1.5), "D")


def coefficient_R_2d(d_x: Staggered2D, d_y: Staggered2D, l: Staggered2D):
    """Return ``(D, R)`` with ``R = sqrt(D^2 / (1 + D^2)) * l``."""
    D = gradient_magnitude(d_x, d_y)
    if D.values.shape != l.values.shape:
        raise InvalidInputError("gradient magnitude and Laplacian ranges differ")
    dd = D.values * D.values
    return D, Staggered2D(np.sqrt(dd / (1.0 + dd)) * l.values, (1.5, 1.5), "R")


def extend_R_2d(R: Staggered2D) -> Staggered2D:
    """Double mirror layer on every side, axis 0 first, then axis 1."""
    r = R.values
    if R.first != (1.5, 1.5) or r.shape[0] != r.shape[1]:
        raise InvalidInputError("R must be square and start at (3/2, 3/2)")
    if r.shape[0] < MIN_SIZE - 1:
        raise InvalidInputError(f"R extension needs N >= {MIN_SIZE}, got N={r.shape[0] + 1}")
    return Staggered2D(_mirror(_mirror(r, axis=0), axis=1), (-0.5, -0.5), "R")


def interpolate_to_integer_2d(R_ext: Staggered2D) -> np.ndarray:
    """Sixteen-point tensor Lagrange interpolation back to pixels 1..N.

    Weights are the outer product of ``(-1, 9, 9, -1)`` with itself over 256.
    Terms are summed by weight class (4 corners, 8 edges, 4 centres), each
    class as pair sums that are preserved by the symmetries of the square.
    """
    r = R_ext.values
    if R_ext.first != (-0.5, -0.5) or r.shape[0] != r.shape[1] or r.shape[0] < 4:
        raise InvalidInputError("extended R must be square, start at (-1/2, -1/2) and have >= 4 rows")
    n = r.shape[0] - 3

    def at(p, q):
        # offsets p, q in {0, 1, 2, 3} <-> -3/2, -1/2, 1/2, 3/2
        return r[p:p + n, q:q + n]

    corners = (at(0, 0) + at(3, 3)) + (at(0, 3) + at(3, 0))
    centres = (at(1, 1) + at(2, 2)) + (at(1, 2) + at(2, 1))
    edges = ((at(0, 1) + at(3, 2)) + (at(0, 2) + at(3, 1))) + (
        (at(1, 0) + at(2, 3)) + (at(2, 0) + at(1, 3))
    )
    return ((corners + 81.0 * centres) - 9.0 * edges) / 256.0


def _as_image(img, h):
    if isinstance(img, GreyImage):
        return img.values, (img.h if h is None else h)
    h = 1.0 if h is None else h
    return GreyImage(img, h).values, h


def trace_2d(img, gamma: float, h: float | None = None) -> Step2DTrace:
    """Run one cycle and keep every intermediate field."""
    if not np.isfinite(gamma):
        raise InvalidParameterError(f"gamma must be finite, got {gamma}")
    u, h = _as_image(img, h)
    if u.shape[0] < MIN_SIZE:
        raise InvalidInputError(f"high-order step needs N >= {MIN_SIZE}, got N={u.shape[0]}")
    avg_x, avg_y = average_to_staggered(extend_neumann_2d(u))
    d_x, d_y = variations_2d(avg_x, avg_y, h)
    l = laplacian_staggered(d_x, d_y, h)
    D, R = coefficient_R_2d(d_x, d_y, l)
    R_ext = extend_R_2d(R)
    R_int = interpolate_to_integer_2d(R_ext)
    return Step2DTrace(avg_x, avg_y, d_x, d_y, l, D, R_ext, R_int, u + gamma * R_int)


def step_2d(img, gamma: float, h: float | None = None):
    """One update ``u_ij <- u_ij + gamma * R_ij``; no clamping to the palette."""
    out = trace_2d(img, gamma, h).updated
    if isinstance(img, GreyImage):
        return GreyImage(out, img.h if h is None else h, img.palette_max)
    return out


def multi_step_2d(img, gammas, h: float | None = None):
    gammas = list(gammas)
    if not gammas:
        raise InvalidParameterError("gamma schedule must not be empty")
    for g in gammas:
        img = step_2d(img, g, h)
    return img
