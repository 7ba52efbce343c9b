"""Catalogue of complex geodesics as evaluable maps from the unit disc.

Every geodesic is a frozen dataclass with ``__call__`` (the map),
``derivative`` (closed form) and ``codomain``.  Values have a trailing axis
of length 2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import Domain
from ._serial import describe_spec
from .hyperbolic import DiscPoint


def _lam(lam):
    return np.asarray(lam, dtype=complex)


def _pair(a, b):
    a, b = np.broadcast_arrays(a, b)
    return np.stack([a, b], axis=-1)


# -- multipliers psi for the bidisc graphs ------------------------------------

@dataclass(frozen=True)
class ConstantMultiplier:
    c: complex = 0.0

    def __post_init__(self):
        if abs(self.c) > 1:
            raise ValueError("constant multiplier must satisfy |c| <= 1")

    def __call__(self, lam):
        return np.full(np.shape(lam), complex(self.c))

    def derivative(self, lam):
        return np.zeros(np.shape(lam), dtype=complex)


@dataclass(frozen=True)
class IdentityMultiplier:
    def __call__(self, lam):
        return _lam(lam)

    def derivative(self, lam):
        return np.ones(np.shape(lam), dtype=complex)


@dataclass(frozen=True)
class BlaschkeMultiplier:
    """``psi(lam) = (lam - a) / (1 - conj(a) lam)``; unimodular on the circle."""

    center: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(DiscPoint(self.center)))

    def __call__(self, lam):
        a = self.center
        lam = _lam(lam)
        return (lam - a) / (1 - np.conj(a) * lam)

    def derivative(self, lam):
        a = self.center
        return (1 - abs(a) ** 2) / (1 - np.conj(a) * _lam(lam)) ** 2


# -- geodesics -------------------------------------------------------------------

class Geodesic:
    codomain: Domain

    def __call__(self, lam):
        raise NotImplementedError

    def derivative(self, lam):
        raise NotImplementedError

    def describe(self) -> dict:
        return describe_spec(self)


@dataclass(frozen=True)
class Diagonal(Geodesic):
    codomain = Domain.BIDISC

    def __call__(self, lam):
        lam = _lam(lam)
        return _pair(lam, lam)

    def derivative(self, lam):
        one = np.ones(np.shape(lam), dtype=complex)
        return _pair(one, one)


@dataclass(frozen=True)
class BidiscGraph(Geodesic):
    """``lam -> (lam, lam * psi(lam))``."""

    psi: object = ConstantMultiplier(0.0)
    codomain = Domain.BIDISC

    def __call__(self, lam):
        lam = _lam(lam)
        return _pair(lam, lam * self.psi(lam))

    def derivative(self, lam):
        lam = _lam(lam)
        return _pair(np.ones_like(lam), self.psi(lam) + lam * self.psi.derivative(lam))


@dataclass(frozen=True)
class Royal(Geodesic):
    """``lam -> (2 lam, lam**2)`` in the symmetrized bidisc."""

    codomain = Domain.G2

    def __call__(self, lam):
        lam = _lam(lam)
        return _pair(2 * lam, lam * lam)

    def derivative(self, lam):
        lam = _lam(lam)
        return _pair(np.full_like(lam, 2), 2 * lam)


@dataclass(frozen=True)
class Flat(Geodesic):
    """``lam -> (beta + conj(beta) lam, lam)`` in the symmetrized bidisc."""

    beta: complex = 0.0
    codomain = Domain.G2

    def __post_init__(self):
        object.__setattr__(self, "beta", complex(DiscPoint(self.beta)))

    def __call__(self, lam):
        lam = _lam(lam)
        return _pair(self.beta + np.conj(self.beta) * lam, lam)

    def derivative(self, lam):
        lam = _lam(lam)
        return _pair(np.full_like(lam, np.conj(self.beta)), np.ones_like(lam))


@dataclass(frozen=True)
class BallFamily(Geodesic):
    """``lam -> ((t^2 + lam) / (1 + t^2), t (lam - 1) / (1 + t^2))`` in the ball."""

    t: float = 1.0
    codomain = Domain.BALL

    def __post_init__(self):
        t = float(self.t)
        if abs(t) > 10:
            raise ValueError("|t| <= 10 required")
        object.__setattr__(self, "t", t)

    def __call__(self, lam):
        lam = _lam(lam)
        t = self.t
        q = 1 + t * t
        return _pair((t * t + lam) / q, t * (lam - 1) / q)

    def derivative(self, lam):
        q = 1 + self.t ** 2
        one = np.ones(np.shape(lam), dtype=complex)
        return _pair(one / q, self.t * one / q)


@dataclass(frozen=True)
class BallAxis(Geodesic):
    codomain = Domain.BALL

    def __call__(self, lam):
        lam = _lam(lam)
        return _pair(lam, np.zeros_like(lam))

    def derivative(self, lam):
        one = np.ones(np.shape(lam), dtype=complex)
        return _pair(one, 0 * one)


def codomain(g: Geodesic) -> Domain:
    return g.codomain
