"""The four model domains: unit disc, bidisc, Euclidean ball and symmetrized bidisc.

Points of the two-dimensional domains are complex arrays whose last axis has
length 2; for the symmetrized bidisc the coordinates are ``(s, p)``.  All
functions broadcast over leading axes.
"""
from __future__ import annotations

import csv
import enum
import io

import numpy as np

from ._numerics import unit_roots
from .errors import DimensionMismatch, OutsideDomain


class Domain(enum.Enum):
    DISC = "disc"
    BIDISC = "bidisc"
    BALL = "ball"
    G2 = "g2"

    @property
    def dim(self) -> int:
        return 1 if self is Domain.DISC else 2

    def contains(self, z):
        return contains(self, z)

    def margin(self, z):
        return margin(self, z)

    def sample(self, n, seed):
        return sample(self, n, seed)


def as_point(d: Domain, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if d.dim == 2 and (z.ndim == 0 or z.shape[-1] != 2):
        raise DimensionMismatch(f"{d.value} expects points with 2 coordinates, got shape {z.shape}")
    return z


def quadratic_roots(s, p):
    """Roots of ``x**2 - s*x + p``, computed without cancellation.

    The larger root is formed as ``(s + sign * sqrt(s**2 - 4p)) / 2`` with the
    sign chosen so that the two terms do not cancel; the smaller root then
    follows from the product ``p``.
    """
    s = np.asarray(s, dtype=complex)
    p = np.asarray(p, dtype=complex)
    sq = np.sqrt(s * s - 4 * p)
    # Re(conj(s) * sq) >= 0 means s and sq point the same way
    sq = np.where((np.conj(s) * sq).real >= 0, sq, -sq)
    big = (s + sq) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(big == 0, 0, p / np.where(big == 0, 1, big))
    return big, small


def margin(d: Domain, z):
    """Signed slack of membership: positive strictly inside, zero on the boundary."""
    z = as_point(d, z)
    if d is Domain.DISC:
        return 1 - np.abs(z)
    if d is Domain.BIDISC:
        return 1 - np.max(np.abs(z), axis=-1)
    if d is Domain.BALL:
        return 1 - np.linalg.norm(z, axis=-1)
    r1, r2 = quadratic_roots(z[..., 0], z[..., 1])
    return 1 - np.maximum(np.abs(r1), np.abs(r2))


def contains(d: Domain, z):
    out = margin(d, z) > 0
    return bool(out) if np.ndim(out) == 0 else out


def symmetrize(lam1, lam2) -> np.ndarray:
    """``(lam1 + lam2, lam1 * lam2)``."""
    lam1 = np.asarray(lam1, dtype=complex)
    lam2 = np.asarray(lam2, dtype=complex)
    return np.stack([lam1 + lam2, lam1 * lam2], axis=-1)


def pair_from_point(z):
    """Unordered pair ``(lam1, lam2)`` with ``symmetrize(lam1, lam2) == z``."""
    z = as_point(Domain.G2, z)
    r1, r2 = quadratic_roots(z[..., 0], z[..., 1])
    if np.any(np.maximum(np.abs(r1), np.abs(r2)) >= 1):
        raise OutsideDomain("a root of x^2 - s x + p lies outside the open disc")
    if r1.ndim == 0:
        return complex(r1), complex(r2)
    return r1, r2


def _uniform_square(rng, shape):
    return rng.uniform(-1, 1, shape) + 1j * rng.uniform(-1, 1, shape)


def _uniform_disc(rng, n):
    out = np.empty(0, dtype=complex)
    while out.size < n:
        cand = _uniform_square(rng, 2 * (n - out.size) + 8)
        out = np.concatenate([out, cand[np.abs(cand) < 1]])
    return out[:n]


def sample(d: Domain, n: int, seed: int) -> np.ndarray:
    """``n`` points strictly inside ``d``; deterministic in ``seed``.

    Disc, bidisc and ball are sampled by rejection from the bounding
    polydisc square; the symmetrized bidisc is the push-forward of uniform
    pairs from the disc.  Uniformity in the target domain is not a goal.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    if d is Domain.DISC:
        return _uniform_disc(rng, n)
    if d is Domain.G2:
        return symmetrize(_uniform_disc(rng, n), _uniform_disc(rng, n))
    chunks, total = [], 0
    while total < n:
        cand = _uniform_square(rng, (2 * (n - total) + 8, 2))
        cand = cand[margin(d, cand) > 0]
        chunks.append(cand)
        total += len(cand)
    return np.concatenate(chunks)[:n]


def boundary_distance_estimate(d: Domain, z, nodes: int = 64, shrink: float = 0.9):
    """Radius ``r`` such that the polydisc of radius ``r`` about ``z`` stays in ``d``.

    Closed form for disc, bidisc and ball.  For the symmetrized bidisc the
    radius is bisected against membership of the two coordinate circles and
    of a sampled distinguished boundary torus, then shrunk by ``shrink``.
    """
    z = as_point(d, z)
    m = margin(d, z)
    if np.any(m <= 0):
        raise OutsideDomain("point is not inside the domain")
    if d in (Domain.DISC, Domain.BIDISC):
        return m
    if d is Domain.BALL:
        return m / np.sqrt(2)
    return shrink * _g2_radius(z, nodes)


def _g2_probe_offsets(nodes: int) -> np.ndarray:
    w = unit_roots(nodes)
    zeros = np.zeros(nodes, dtype=complex)
    torus_side = max(4, int(np.sqrt(nodes)))
    t = unit_roots(torus_side)
    torus = np.stack(np.broadcast_arrays(t[:, None], t[None, :]), axis=-1).reshape(-1, 2)
    return np.concatenate([np.stack([w, zeros], -1), np.stack([zeros, w], -1), torus])


def _g2_radius(z, nodes, iterations: int = 40):
    offsets = _g2_probe_offsets(nodes)
    lo = np.zeros(z.shape[:-1])
    hi = np.full(z.shape[:-1], 2.0)

    def ok(r):
        pts = z[..., None, :] + r[..., None, None] * offsets
        return np.all(margin(Domain.G2, pts) > 0, axis=-1)

    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        good = ok(mid)
        lo = np.where(good, mid, lo)
        hi = np.where(good, hi, mid)
    return lo


def beta_map(z):
    """``s / (1 + p)``; sends the symmetrized bidisc onto the slit plane."""
    z = np.asarray(z, dtype=complex)
    return z[..., 0] / (1 + z[..., 1])


def alpha_map(w):
    """``w / (1 + sqrt(1 - w**2))`` with the principal root; maps the slit plane onto the disc."""
    w = np.asarray(w, dtype=complex)
    return w / (1 + np.sqrt(1 - w * w))


def region_A_contains(w, margin: float = 0.0):
    """Membership in the plane slit along ``(-inf, -1]`` and ``[1, inf)``.

    A point is rejected iff it lies within ``margin`` of the slits in the
    sense ``|Im w| <= margin`` and ``|Re w| >= 1 - margin``.
    """
    w = np.asarray(w, dtype=complex)
    out = ~((np.abs(w.imag) <= margin) & (np.abs(w.real) >= 1 - margin))
    return bool(out) if out.ndim == 0 else out


def ray_margin(w):
    """Euclidean distance from ``w`` to the slits ``(-inf, -1] U [1, inf)``."""
    w = np.asarray(w, dtype=complex)
    x, y = np.abs(w.real), np.abs(w.imag)
    return np.where(x >= 1, y, np.hypot(1 - x, y))


def samples_to_csv(d: Domain, points, fh=None) -> str | None:
    """Write samples as CSV with columns ``domain, re(z1), im(z1), re(z2), im(z2)``."""
    points = np.asarray(points, dtype=complex)
    out = fh if fh is not None else io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["domain", "re(z1)", "im(z1)", "re(z2)", "im(z2)"])
    for pt in points.reshape(len(points), -1):
        row = [d.value, repr(float(pt[0].real)), repr(float(pt[0].imag))]
        row += [repr(float(pt[1].real)), repr(float(pt[1].imag))] if pt.size > 1 else ["", ""]
        writer.writerow(row)
    return out.getvalue() if fh is None else None
