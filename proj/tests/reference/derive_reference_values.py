"""Recomputes the frozen reference values used by the C++ tests.

Independent of the C++ code: dense numpy matrices built from the same
second-order central-difference discretization, evaluated in float64.
Run with `python3 derive_reference_values.py`; the printed values are the
ones frozen in tests/reference_values.hpp.
"""

import itertools
import math

import numpy as np


def axis(lo, hi, m):
    return np.linspace(lo, hi, m), (hi - lo) / (m - 1)


def hermite(n, xi):
    g = np.exp(-0.5 * xi * xi) / math.pi ** 0.25
    if n == 0:
        return g
    prev, cur = g, math.sqrt(2.0) * xi * g
    for k in range(1, n):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * xi * cur - math.sqrt(k / (k + 1)) * prev
    return cur


def laplacian_1d(n, h):
    return (np.diag(-2.0 * np.ones(n)) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)) / (h * h)


def ho_lowest_eigenvalue():
    x, h = axis(-8.0, 8.0, 64)
    xi = x[1:-1]
    H = -0.5 * laplacian_1d(len(xi), h) + np.diag(0.5 * xi * xi)
    return np.linalg.eigvalsh(H)[0]


def free_eigenvalues():
    _, h = axis(-8.0, 8.0, 32)
    H = -0.5 * laplacian_1d(30, h)
    return np.linalg.eigvalsh(H)[:3]


def gaussian_norm():
    x, h = axis(-8.0, 8.0, 64)
    g = (2 * math.pi) ** -0.25 * np.exp(-x * x / 4.0)
    g[0] = g[-1] = 0.0
    return np.sum(np.abs(g) ** 2) * h


def slater_pair(m, lo=-8.0, hi=8.0):
    x, h = axis(lo, hi, m)
    a, b = hermite(0, x), hermite(1, x)
    psi = (np.outer(a, b) - np.outer(b, a)) / math.sqrt(2.0)
    psi[0, :] = psi[-1, :] = psi[:, 0] = psi[:, -1] = 0.0
    return x, h, psi


def slater_norm():
    _, h, psi = slater_pair(64)
    return math.sqrt(np.sum(np.abs(psi) ** 2) * h * h)


def product_sector_weights():
    x, h = axis(-8.0, 8.0, 64)
    psi = np.outer(hermite(0, x), hermite(1, x))
    psi[0, :] = psi[-1, :] = psi[:, 0] = psi[:, -1] = 0.0
    sym = 0.5 * (psi + psi.T)
    anti = 0.5 * (psi - psi.T)
    return np.sum(np.abs(sym) ** 2) * h * h, np.sum(np.abs(anti) ** 2) * h * h


def manufactured_phase_integral():
    x, h = axis(-8.0, 8.0, 64)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    s = np.exp(-(X1 ** 2 + X2 ** 2) / 4.0)
    psi = np.exp(-0.5j * (X1 - X2)) * s
    psi[0, :] = psi[-1, :] = psi[:, 0] = psi[:, -1] = 0.0
    psi /= math.sqrt(np.sum(np.abs(psi) ** 2) * h * h)
    swapped = psi.T
    peak = np.abs(psi).max()
    mask = (np.abs(psi) >= 1e-6 * peak) & (np.abs(swapped) >= 1e-6 * peak)
    phi = np.angle(swapped * np.conj(psi))

    def wrap(d):
        return (d + math.pi) % (2 * math.pi) - math.pi

    total = 0.0
    m = len(x)
    for i in range(m):
        for j in range(m):
            if not mask[i, j]:
                continue
            g2 = 0.0
            for di, dj in ((1, 0), (0, 1)):
                up = (i + di, j + dj)
                dn = (i - di, j - dj)
                ok_up = up[0] < m and up[1] < m and mask[up]
                ok_dn = dn[0] >= 0 and dn[1] >= 0 and mask[dn]
                if ok_up and ok_dn:
                    d = wrap(phi[up] - phi[dn]) / (2 * h)
                elif ok_up:
                    d = wrap(phi[up] - phi[i, j]) / h
                elif ok_dn:
                    d = wrap(phi[i, j] - phi[dn]) / h
                else:
                    d = 0.0
                g2 += d * d
            total += abs(psi[i, j]) ** 2 * g2
    return total * h * h


def negative_control_overlap(times):
    x, h, psi = slater_pair(32)
    xi = x[1:-1]
    n = len(xi)
    T = -0.5 * laplacian_1d(n, h)
    I = np.eye(n)
    V = np.diag((0.5 * np.add.outer(xi * xi, 4.0 * xi * xi)).ravel())
    H = np.kron(T, I) + np.kron(I, T) + V
    w, U = np.linalg.eigh(H)
    v0 = psi[1:-1, 1:-1].ravel().astype(complex)
    v0 /= math.sqrt(np.vdot(v0, v0).real * h * h)
    c = U.T @ v0
    out = []
    for t in times:
        v = U @ (np.exp(-1j * w * t) * c)
        f = v.reshape(n, n)
        out.append(np.vdot(f, f.T).item() * h * h)
    return out


def projector_radius(m):
    size = m ** 3
    idx = np.arange(size).reshape(m, m, m)
    p01 = idx.transpose(1, 0, 2).ravel()
    p12 = idx.transpose(0, 2, 1).ravel()
    I = np.eye(size)
    A = 0.5 * (I + I[p01])
    B = 0.5 * (I - I[p12])
    return np.abs(np.linalg.eigvalsh(A @ B @ A)).max()


if __name__ == "__main__":
    print(f"ho_lowest_eigenvalue_m64      = {ho_lowest_eigenvalue():.17g}")
    for k, v in enumerate(free_eigenvalues()):
        print(f"free_eigenvalue_m32[{k}]       = {v:.17g}")
    print(f"gaussian_norm_m64             = {gaussian_norm():.17g}")
    print(f"slater_norm_m64               = {slater_norm():.17g}")
    s, a = product_sector_weights()
    print(f"product_sector_weights_m64    = {s:.17g} {a:.17g}")
    print(f"manufactured_phase_integral   = {manufactured_phase_integral():.17g}")
    for t, S in zip((0.5, 1.0, 2.0, 5.0), negative_control_overlap((0.5, 1.0, 2.0, 5.0))):
        print(f"negative_control_S({t})      = {S.real:.17g} {S.imag:.17g}")
    print(f"projector_radius_6            = {projector_radius(6):.17g}")
