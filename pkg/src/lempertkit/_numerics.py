"""Small numerical kernels shared across modules."""
from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2


def unit_roots(nodes: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(nodes) / nodes)


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def radial_angular_grid(size: int, radii=None) -> np.ndarray:
    """Points ``r * exp(i theta)`` on 8 radii times ``size // 8`` angles.

    The outer radii sit close to the unit circle, where every degeneracy in
    the catalogue lives.
    """
    if radii is None:
        radii = np.array([0.1, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.99])
    radii = np.asarray(radii, dtype=float)
    n_angles = max(1, size // len(radii))
    # half-step offset keeps the real axis (where +-1 singularities sit) off the grid
    theta = 2 * np.pi * (np.arange(n_angles) + 0.5) / n_angles
    return (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()


def contour_derivative(func, lam, radius, nodes: int = 32):
    """Derivative of a holomorphic scalar function by the Cauchy formula.

    ``func`` must accept arrays; ``lam`` and ``radius`` broadcast together.
    The trapezoid rule on the circle converges geometrically in ``nodes``.
    """
    lam = np.asarray(lam, dtype=complex)
    radius = np.asarray(radius, dtype=float)
    w = unit_roots(nodes)
    pts = lam[..., None] + radius[..., None] * w
    vals = func(pts)
    return np.mean(vals / w, axis=-1) / radius


def richardson(values, ratio: float = 2.0):
    """Extrapolate ``values[k] ~ L + a1 d_k + a2 d_k^2 + ...`` with ``d_k = d_0 / ratio^k``.

    Returns ``(limit, error)`` where the error is the spread of the last three
    diagonal entries of the Neville table (``inf`` with fewer than three).
    """
    values = np.asarray(values, dtype=complex)
    n = len(values)
    if n == 0:
        return complex("nan"), math.inf
    table = [values.copy()]
    for j in range(1, n):
        prev = table[-1]
        fac = ratio ** j
        table.append((fac * prev[1:] - prev[:-1]) / (fac - 1))
    # column j, last entry: order-j extrapolation from the j+1 finest points
    diag = np.array([col[-1] for col in table])
    limit = diag[-1]
    if n < 3:
        return complex(limit), math.inf
    tail = diag[-3:]
    err = float(np.max(np.abs(tail - tail[-1])))
    if not np.isfinite(err):
        err = math.inf
    return complex(limit), err


def golden_section_max(func, a: float, b: float, tol: float = 1e-10, max_iter: int = 200):
    """Maximize a unimodal scalar function on ``[a, b]``; returns ``(x, f(x))``.

    Plateaus are fine: ties shrink the bracket from the left.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = func(d)
    if fc >= fd:
        return c, fc
    return d, fd
