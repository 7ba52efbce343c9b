"""Catalogue of left inverses ``G: D -> disc`` with closed-form gradients.

``G(z)`` is evaluated by calling the entry; ``gradient`` returns the
holomorphic gradient ``(dG/dz1, dG/dz2)`` stacked on a trailing axis.
:func:`numeric_gradient` provides the same quantity by Cauchy integrals for
anything without a closed form, and doubles as the cross-check for the
closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numerics import is_power_of_two, unit_roots
from ._serial import describe_spec
from .domains import Domain, as_point, boundary_distance_estimate, margin
from .errors import BranchFailure, DenominatorUnderflow, RadiusTooLarge

DEN_TOL = 1e-14
BRANCH_TOL = 1e-12


def _fail(strict, mask, exc, msg):
    if strict and np.any(mask):
        raise exc(msg)


def _div(num, den, strict, name):
    bad = np.abs(den) < DEN_TOL
    _fail(strict, bad, DenominatorUnderflow, f"denominator of {name} vanishes")
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(bad, np.nan, num / np.where(bad, 1, den))


def principal_sqrt(w, strict=True, name="sqrt"):
    """Principal square root, refusing arguments on the cut ``(-inf, 0]``."""
    w = np.asarray(w, dtype=complex)
    bad = (w.real <= 0) & (np.abs(w.imag) <= BRANCH_TOL * np.abs(w))
    _fail(strict, bad, BranchFailure, f"argument of {name} lies on (-inf, 0]")
    return np.where(bad, np.nan, np.sqrt(w))


def _stack(a, b):
    a, b = np.broadcast_arrays(a, b)
    return np.stack([a, b], axis=-1)


# -- holomorphic h: bidisc -> closed disc --------------------------------------

@dataclass(frozen=True)
class ConstantH:
    c: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        if abs(self.c) > 1:
            raise ValueError("|c| <= 1 required")

    def __call__(self, z):
        return np.full(z.shape[:-1], self.c)

    def gradient(self, z):
        return np.zeros(z.shape, dtype=complex)


@dataclass(frozen=True)
class CoordinateH:
    axis: int = 1

    def __post_init__(self):
        if self.axis not in (1, 2):
            raise ValueError("axis must be 1 or 2")

    def __call__(self, z):
        return z[..., self.axis - 1]

    def gradient(self, z):
        g = np.zeros(z.shape, dtype=complex)
        g[..., self.axis - 1] = 1
        return g


@dataclass(frozen=True)
class ProductH:
    def __call__(self, z):
        return z[..., 0] * z[..., 1]

    def gradient(self, z):
        return _stack(z[..., 1], z[..., 0])


# -- left inverses -----------------------------------------------------------------

class LeftInverse:
    """Base class.  Subclasses set ``domain`` and implement ``evaluate``."""

    domain: Domain

    def __call__(self, z):
        return self.evaluate(z)

    def evaluate(self, z, strict: bool = True):
        """Values of the map; with ``strict=False`` failures become NaN instead of raising."""
        raise NotImplementedError

    def gradient(self, z):
        return numeric_gradient(self, z, domain=self.domain)

    def describe(self) -> dict:
        return describe_spec(self)

    def _point(self, z):
        return as_point(self.domain, z)


@dataclass(frozen=True)
class BidiscProjection(LeftInverse):
    axis: int = 1
    domain = Domain.BIDISC

    def __post_init__(self):
        if self.axis not in (1, 2):
            raise ValueError("axis must be 1 or 2")

    def evaluate(self, z, strict=True):
        return self._point(z)[..., self.axis - 1]

    def gradient(self, z):
        z = self._point(z)
        g = np.zeros(z.shape, dtype=complex)
        g[..., self.axis - 1] = 1
        return g


@dataclass(frozen=True)
class BidiscAffine(LeftInverse):
    """``t z1 + (1 - t) z2``."""

    t: float = 0.5
    domain = Domain.BIDISC

    def __post_init__(self):
        if not 0 <= self.t <= 1:
            raise ValueError("t must lie in [0, 1]")
        object.__setattr__(self, "t", float(self.t))

    def evaluate(self, z, strict=True):
        z = self._point(z)
        return self.t * z[..., 0] + (1 - self.t) * z[..., 1]

    def gradient(self, z):
        z = self._point(z)
        return _stack(np.full(z.shape[:-1], self.t, dtype=complex),
                      np.full(z.shape[:-1], 1 - self.t, dtype=complex))


@dataclass(frozen=True)
class BidiscFamily(LeftInverse):
    """General left inverse of the diagonal of the bidisc.

    ``(t z1 + (1-t) z2 - z1 z2 h) / (1 - ((1-t) z1 + t z2) h)``
    """

    t: float = 0.5
    h: object = ConstantH(0.0)
    domain = Domain.BIDISC

    def __post_init__(self):
        if not 0 <= self.t <= 1:
            raise ValueError("t must lie in [0, 1]")
        object.__setattr__(self, "t", float(self.t))

    def _parts(self, z):
        t = self.t
        z1, z2 = z[..., 0], z[..., 1]
        h = self.h(z)
        num = t * z1 + (1 - t) * z2 - z1 * z2 * h
        den = 1 - ((1 - t) * z1 + t * z2) * h
        return num, den

    def evaluate(self, z, strict=True):
        num, den = self._parts(self._point(z))
        return _div(num, den, strict, "BidiscFamily")

    def gradient(self, z):
        z = self._point(z)
        t = self.t
        z1, z2 = z[..., 0], z[..., 1]
        h = self.h(z)
        dh = self.h.gradient(z)
        num, den = self._parts(z)
        lin = (1 - t) * z1 + t * z2
        dnum = _stack(t - z2 * h, (1 - t) - z1 * h) - (z1 * z2)[..., None] * dh
        dden = -_stack((1 - t) * h, t * h) - lin[..., None] * dh
        den2 = _div(1.0, den * den, True, "BidiscFamily gradient")
        return (dnum * den[..., None] - num[..., None] * dden) * den2[..., None]


@dataclass(frozen=True)
class PsiOmega(LeftInverse):
    """``(2p - omega s) / (2 - conj(omega) s)`` on the symmetrized bidisc, ``|omega| <= 1``."""

    omega: complex = 1.0
    domain = Domain.G2

    def __post_init__(self):
        om = complex(self.omega)
        if abs(om) > 1 + 1e-14:
            raise ValueError("|omega| <= 1 required")
        object.__setattr__(self, "omega", om)

    def evaluate(self, z, strict=True):
        z = self._point(z)
        s, p = z[..., 0], z[..., 1]
        om = self.omega
        return _div(2 * p - om * s, 2 - np.conj(om) * s, strict, "Psi_omega")

    def gradient(self, z):
        z = self._point(z)
        s, p = z[..., 0], z[..., 1]
        om = self.omega
        den = 2 - np.conj(om) * s
        inv = _div(1.0, den, True, "Psi_omega gradient")
        return _stack((2 * np.conj(om) * p - 2 * om) * inv * inv, 2 * inv)


@dataclass(frozen=True)
class RoyalMinusPsi(LeftInverse):
    """``-conj(omega) Psi_omega`` with ``|omega| = 1``: a left inverse of the royal geodesic."""

    omega: complex = 1.0
    domain = Domain.G2

    def __post_init__(self):
        om = complex(self.omega)
        if abs(abs(om) - 1) > 1e-14:
            raise ValueError("|omega| = 1 required")
        object.__setattr__(self, "omega", om)

    def evaluate(self, z, strict=True):
        return -np.conj(self.omega) * PsiOmega(self.omega).evaluate(z, strict)

    def gradient(self, z):
        return -np.conj(self.omega) * PsiOmega(self.omega).gradient(z)


@dataclass(frozen=True)
class RoyalPhi(LeftInverse):
    """``s / (1 + p + sqrt((1 + p)^2 - s^2))``, principal root.

    The radicand equals ``(1 - lam1^2)(1 - lam2^2)`` for ``(s, p)`` the
    symmetrization of ``(lam1, lam2)``; both factors have positive real
    part, so it never meets the cut inside the domain.
    """

    domain = Domain.G2

    def _parts(self, z, strict):
        s, p = z[..., 0], z[..., 1]
        q = 1 + p
        # factored to avoid cancellation near the royal variety
        r = principal_sqrt((q - s) * (q + s), strict, "RoyalPhi")
        return s, q, r, q + r

    def evaluate(self, z, strict=True):
        s, q, r, den = self._parts(self._point(z), strict)
        return _div(s, den, strict, "RoyalPhi")

    def gradient(self, z):
        # d/ds = (1 + p) / (r D), d/dp = -s / (r D) with D = 1 + p + r
        s, q, r, den = self._parts(self._point(z), True)
        inv = _div(1.0, r * den, True, "RoyalPhi gradient")
        return _stack(q * inv, -s * inv)


@dataclass(frozen=True)
class BallSimple(LeftInverse):
    """``z1 / sqrt(1 - z2^2)``: left inverse of the axis disc, not Lempert."""

    domain = Domain.BALL

    def evaluate(self, z, strict=True):
        z = self._point(z)
        r = principal_sqrt(1 - z[..., 1] ** 2, strict, "BallSimple")
        return _div(z[..., 0], r, strict, "BallSimple")

    def gradient(self, z):
        z = self._point(z)
        w = 1 - z[..., 1] ** 2
        r = principal_sqrt(w, True, "BallSimple")
        inv = _div(1.0, r, True, "BallSimple gradient")
        return _stack(inv, z[..., 0] * z[..., 1] * inv / w)


@dataclass(frozen=True)
class BallRefined(LeftInverse):
    """``(2 z1 (1 - z1) - z2^2) / (2 (1 - z1) - z2^2)``."""

    domain = Domain.BALL

    def evaluate(self, z, strict=True):
        z = self._point(z)
        z1, z2 = z[..., 0], z[..., 1]
        return _div(2 * z1 * (1 - z1) - z2 * z2, 2 * (1 - z1) - z2 * z2, strict, "BallRefined")

    def gradient(self, z):
        z = self._point(z)
        z1, z2 = z[..., 0], z[..., 1]
        num = 2 * z1 * (1 - z1) - z2 * z2
        den = 2 * (1 - z1) - z2 * z2
        inv = _div(1.0, den, True, "BallRefined gradient")
        return _stack(((2 - 4 * z1) * den + 2 * num) * inv * inv,
                      -4 * z2 * (1 - z1) ** 2 * inv * inv)


def numeric_gradient(evaluator, z, radius=None, nodes: int = 64, domain: Domain | None = None):
    """Gradient of a holomorphic function of two variables by Cauchy integrals.

    For each coordinate ``j`` the derivative is the trapezoid approximation of
    ``(1 / 2 pi i) \\oint f(z + zeta e_j) / zeta^2 d zeta`` over ``|zeta| = radius``,
    which converges geometrically in ``nodes`` for holomorphic ``f``.

    Parameters
    ----------
    evaluator : callable
        Vectorized map from points ``(..., 2)`` to complex values.
    radius : float or array, optional
        Defaults to half the polydisc radius from
        :func:`~lempertkit.domains.boundary_distance_estimate`.
    nodes : int
        Power of two, at least 16.
    domain : Domain, optional
        If given, every contour point is checked for membership.

    Raises
    ------
    RadiusTooLarge
        If a contour point leaves ``domain``.
    """
    if not (is_power_of_two(nodes) and nodes >= 16):
        raise ValueError("nodes must be a power of two >= 16")
    z = np.asarray(z, dtype=complex)
    if radius is None:
        if domain is None:
            raise ValueError("radius or domain required")
        radius = 0.5 * boundary_distance_estimate(domain, z)
    radius = np.broadcast_to(np.asarray(radius, dtype=float), z.shape[:-1])
    w = unit_roots(nodes)
    out = np.empty(z.shape, dtype=complex)
    for j in range(z.shape[-1]):
        offs = np.zeros((nodes, z.shape[-1]), dtype=complex)
        offs[:, j] = w
        pts = z[..., None, :] + radius[..., None, None] * offs
        if domain is not None and np.any(margin(domain, pts) <= 0):
            raise RadiusTooLarge("differentiation circle leaves the domain")
        vals = np.asarray(evaluator(pts))
        out[..., j] = np.mean(vals / w, axis=-1) / radius
    return out


def evaluate(G: LeftInverse, z):
    return G(z)


def gradient(G: LeftInverse, z):
    return G.gradient(z)
