"""Straight-line reference evaluations, written without the package's helpers.

Fields live in dicts keyed by doubled indices, so half-index ``k + 1/2`` is
key ``2k + 1`` and integer index ``i`` is key ``2i``.
"""
import math


def step_1d_oracle(u, gamma, h=1.0):
    n = len(u)
    U = {i: float(u[i - 1]) for i in range(1, n + 1)}
    U[0] = U[1]
    U[n + 1] = U[n]
    d = {}
    for i in range(-1, n):
        d[2 * i + 3] = (U[i + 2] - U[i + 1]) / h
    s = {}
    for i in range(0, n - 1):
        s[2 * i + 3] = (U[i] - U[i + 1] - U[i + 2] + U[i + 3]) / (2.0 * h * h)
    R = {}
    for i in range(0, n - 1):
        dk = d[2 * i + 3]
        R[2 * i + 3] = math.sqrt(dk * dk / (1.0 + dk * dk)) * s[2 * i + 3]
    R[-1] = R[5]
    R[1] = R[3]
    R[2 * n + 1] = R[2 * n - 1]
    R[2 * n + 3] = R[2 * n - 3]
    out = []
    for i in range(1, n + 1):
        a, b, c, e = R[2 * i - 3], R[2 * i - 1], R[2 * i + 1], R[2 * i + 3]
        Ri = (9.0 * (b + c) - (a + e)) / 16.0
        out.append(U[i] + gamma * Ri)
    return out, R


def step_2d_oracle(u, gamma, h=1.0):
    """Returns the updated image (list of lists) and the integer-node R."""
    n = len(u)
    U = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            U[i, j] = float(u[i - 1][j - 1])
    for k in range(1, n + 1):
        U[0, k] = U[1, k]
        U[n + 1, k] = U[n, k]
        U[k, 0] = U[k, 1]
        U[k, n + 1] = U[k, n]

    # averages: x-staggered uses integer j, y-staggered uses integer i
    ax = {}
    for i in range(0, n - 1):
        for j in range(-1, n + 1):
            ax[2 * i + 3, 2 * j + 2] = 0.5 * (U[i + 1, j + 1] + U[i + 2, j + 1])
    ay = {}
    for i in range(-1, n + 1):
        for j in range(0, n - 1):
            ay[2 * i + 2, 2 * j + 3] = 0.5 * (U[i + 1, j + 1] + U[i + 1, j + 2])

    dx = {}
    for i in range(-1, n):
        for j in range(0, n - 1):
            dx[2 * i + 3, 2 * j + 3] = (ay[2 * i + 4, 2 * j + 3] - ay[2 * i + 2, 2 * j + 3]) / h
    dy = {}
    for i in range(0, n - 1):
        for j in range(-1, n):
            dy[2 * i + 3, 2 * j + 3] = (ax[2 * i + 3, 2 * j + 4] - ax[2 * i + 3, 2 * j + 2]) / h

    R = {}
    for i in range(0, n - 1):
        for j in range(0, n - 1):
            I, J = 2 * i + 3, 2 * j + 3
            lap = (dx[I + 2, J] - dx[I - 2, J] + dy[I, J + 2] - dy[I, J - 2]) / (2.0 * h)
            D = math.sqrt(dx[I, J] ** 2 + dy[I, J] ** 2)
            R[I, J] = math.sqrt(D * D / (1.0 + D * D)) * lap

    def mirror(k):
        # doubled half-index -> doubled half-index inside 3..2n-1
        return {-1: 5, 1: 3, 2 * n + 1: 2 * n - 1, 2 * n + 3: 2 * n - 3}.get(k, k)

    def Rx(I, J):
        return R[mirror(I), mirror(J)]

    # coefficients exactly as printed, row by row
    W = [
        [1, -9, -9, 1],
        [-9, 81, 81, -9],
        [-9, 81, 81, -9],
        [1, -9, -9, 1],
    ]
    offs = [-3, -1, 1, 3]
    Rint = [[0.0] * n for _ in range(n)]
    out = [[0.0] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = 0.0
            for a, p in enumerate(offs):
                for b, q in enumerate(offs):
                    acc += W[a][b] * Rx(2 * i + p, 2 * j + q)
            Rint[i - 1][j - 1] = acc / 256.0
            out[i - 1][j - 1] = U[i, j] + gamma * Rint[i - 1][j - 1]
    return out, Rint


def pm_step_oracle(u, a, dt, h=1.0):
    n = len(u)
    U = {}
    for i in range(n):
        for j in range(n):
            U[i, j] = float(u[i][j])

    def val(i, j):
        return U[min(max(i, 0), n - 1), min(max(j, 0), n - 1)]

    G = {}
    for i in range(n):
        for j in range(n):
            gx = (val(i + 1, j) - val(i - 1, j)) / (2 * h)
            gy = (val(i, j + 1) - val(i, j - 1)) / (2 * h)
            G[i, j] = 1.0 / (1.0 + (gx * gx + gy * gy) / (a * a))

    def g(i, j):
        return G[min(max(i, 0), n - 1), min(max(j, 0), n - 1)]

    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = U[i, j]
            flux = (
                0.5 * (g(i, j) + g(i + 1, j)) * (val(i + 1, j) - c) / h
                - 0.5 * (g(i, j) + g(i - 1, j)) * (c - val(i - 1, j)) / h
                + 0.5 * (g(i, j) + g(i, j + 1)) * (val(i, j + 1) - c) / h
                - 0.5 * (g(i, j) + g(i, j - 1)) * (c - val(i, j - 1)) / h
            )
            out[i][j] = c + dt / h * flux
    return out
