"""Lempert left inverses from covector fields along a geodesic.

Given a geodesic ``f`` and a covector field ``v(lam)`` (typically the
gradient of some left inverse pulled back along ``f``), the fiber equation

    Phi(z, lam) = (z - f(lam)) . v(lam) = 0

is solved for the unique ``lam`` in the unit disc.  The solution map
``z -> lam`` is the constructed inverse.  Roots are first counted by the
argument principle on circles ``|lam| = r``, located by the first moment of
the logarithmic derivative, and polished by Newton's method; a count other
than one is reported as an error rather than resolved silently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from ._numerics import contour_derivative, radial_angular_grid, richardson, unit_roots
from ._serial import describe_spec, jsonable
from .domains import Domain, as_point, margin
from .errors import (
    DegeneratePairing,
    MixedGeodesics,
    MultipleRoots,
    NewtonDivergence,
    NoRootInDisc,
    OutsideDomain,
    ZeroOnContour,
)
from .geodesics import Geodesic
from .inverses import LeftInverse, numeric_gradient

PAIRING_GRID = 64
NORMALIZED_TOL = 1e-10
DEGENERATE_PAIRING = 1e-8
ZERO_ON_CONTOUR = 1e-12
# complex entries per vectorized contour evaluation
_CHUNK = 1 << 19


# -- covector fields -----------------------------------------------------------

class CovectorField:
    """``lam -> v(lam)`` in C^2; values carry a trailing axis of length 2."""

    geodesic: Geodesic | None
    normalized: bool

    def __call__(self, lam):
        raise NotImplementedError

    def describe(self) -> dict:
        return describe_spec(self)


@dataclass(frozen=True)
class AnalyticField(CovectorField):
    func: Callable = field(compare=False)
    geodesic: Geodesic | None = None
    normalized: bool = False
    label: str = "analytic"

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=complex)
        out = np.asarray(self.func(lam), dtype=complex)
        return np.broadcast_to(out, lam.shape + (2,))

    def describe(self) -> dict:
        return {"kind": "AnalyticField", "label": self.label,
                "geodesic": jsonable(self.geodesic), "normalized": self.normalized}


@dataclass(frozen=True)
class PulledBackField(CovectorField):
    """``lam -> G'(f(lam))``; ``numeric=True`` forces contour differentiation."""

    inverse: LeftInverse
    geodesic: Geodesic
    normalized: bool = False
    numeric: bool = False

    def __call__(self, lam):
        z = self.geodesic(lam)
        if self.numeric:
            return numeric_gradient(self.inverse, z, domain=self.inverse.domain)
        return self.inverse.gradient(z)


@dataclass(frozen=True)
class NormalizedField(CovectorField):
    """``v / (v . f')`` pointwise; fibers are unchanged, the pairing becomes 1."""

    base: CovectorField
    geodesic: Geodesic
    normalized: bool = field(default=True, init=False)

    def __call__(self, lam):
        v = self.base(lam)
        return v / pairing(v, self.geodesic.derivative(lam))[..., None]


@dataclass(frozen=True)
class CombinationField(CovectorField):
    """``(1 - t) v0 + t v1`` of two fields normalized against the same geodesic."""

    v0: CovectorField
    v1: CovectorField
    t: float
    normalized: bool = field(default=True, init=False)

    @property
    def geodesic(self):
        return self.v0.geodesic

    def __call__(self, lam):
        return (1 - self.t) * self.v0(lam) + self.t * self.v1(lam)


def pairing(v, fprime):
    """Bilinear (not Hermitian) pairing ``sum_j v_j f'_j``."""
    return np.sum(np.asarray(v) * np.asarray(fprime), axis=-1)


def _pairing_on_grid(v: CovectorField, f: Geodesic):
    lam = radial_angular_grid(PAIRING_GRID)
    return pairing(v(lam), f.derivative(lam))


def field_from_inverse(G: LeftInverse, f: Geodesic, numeric: bool = False) -> PulledBackField:
    """The covector field ``G'(f(lam))``.

    Marked normalized when the pairing with ``f'`` is 1 on the working grid,
    which holds whenever ``G`` is a genuine left inverse of ``f``.
    """
    if G.domain is not f.codomain:
        raise ValueError(f"{type(G).__name__} lives on {G.domain.value}, "
                         f"{type(f).__name__} maps into {f.codomain.value}")
    v = PulledBackField(G, f, numeric=numeric)
    ok = np.max(np.abs(_pairing_on_grid(v, f) - 1)) < NORMALIZED_TOL
    return replace(v, normalized=bool(ok))


def normalize_field(v: CovectorField, f: Geodesic) -> CovectorField:
    """Rescale ``v`` pointwise so that ``v . f' == 1``.

    Returns ``v`` itself (flagged normalized) if it already pairs to 1.

    Raises
    ------
    DegeneratePairing
        If ``|v . f'| < 1e-8`` somewhere on the working grid.
    """
    if v.geodesic is not None and v.geodesic != f:
        raise MixedGeodesics("field belongs to a different geodesic")
    pair = _pairing_on_grid(v, f)
    if np.min(np.abs(pair)) < DEGENERATE_PAIRING:
        raise DegeneratePairing("field is (nearly) annihilated by f'")
    if np.max(np.abs(pair - 1)) < NORMALIZED_TOL:
        if v.normalized and v.geodesic == f:
            return v
        if isinstance(v, (AnalyticField, PulledBackField)):
            return replace(v, geodesic=f, normalized=True)
    if isinstance(v, NormalizedField):
        v = v.base
    return NormalizedField(v, f)


def combine(v0: CovectorField, v1: CovectorField, t: float) -> CombinationField:
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    if not (v0.normalized and v1.normalized):
        raise ValueError("combine requires normalized fields; see normalize_field")
    if v0.geodesic != v1.geodesic:
        raise MixedGeodesics("fields are normalized against different geodesics")
    return CombinationField(v0, v1, float(t))


# -- candidates and solving ------------------------------------------------------------

@dataclass(frozen=True)
class LempertCandidate:
    f: Geodesic
    v: CovectorField

    def __post_init__(self):
        if self.v.geodesic is not None and self.v.geodesic != self.f:
            raise MixedGeodesics("field is attached to another geodesic")

    @property
    def domain(self) -> Domain:
        return self.f.codomain

    def phi(self, z, lam):
        """Fiber function; ``z`` is ``(..., 2)``, ``lam`` is ``(..., m)`` -> ``(..., m)``."""
        z = np.asarray(z, dtype=complex)
        lam = np.asarray(lam, dtype=complex)
        return pairing(z[..., None, :] - self.f(lam), self.v(lam))

    def describe(self) -> dict:
        return {"geodesic": self.f.describe(), "field": self.v.describe()}


@dataclass(frozen=True)
class RootSolveConfig:
    contour_nodes: int = 256
    contour_radii: tuple = (0.9, 0.99, 0.999)
    newton_tolerance: float = 1e-14
    newton_max_iterations: int = 60
    # tried only for points whose root lies beyond every regular radius
    extension_radii: tuple = (1 - 1e-4, 1 - 1e-5, 1 - 1e-6)
    max_nodes: int = 1 << 22

    def __post_init__(self):
        radii = tuple(self.contour_radii) + tuple(self.extension_radii)
        if any(b <= a for a, b in zip(radii, radii[1:])) or radii[-1] >= 1 or radii[0] <= 0:
            raise ValueError("radii must increase strictly inside (0, 1)")
        if self.contour_nodes < 16:
            raise ValueError("at least 16 contour nodes required")


DEFAULT_CONFIG = RootSolveConfig()


def _phi_chunked(c: LempertCandidate, z, lam):
    step = max(1, _CHUNK // lam.shape[-1])
    return np.concatenate([c.phi(z[i:i + step], lam[i:i + step])
                           for i in range(0, len(z), step)]) if len(z) else lam.copy()


def _winding(c: LempertCandidate, z, radius, nodes, max_depth: int = 48):
    """Winding number of ``Phi(z, .)`` on ``|lam| = radius`` and its sampled minimum.

    Arcs on which the phase moves by more than pi/4 are bisected locally
    until resolved, so poles or zeros just off the circle cost only a few
    extra evaluations.
    """
    n = len(z)
    radius = np.broadcast_to(np.asarray(radius, dtype=float), (n,))
    theta = 2 * np.pi * np.arange(nodes + 1) / nodes
    vals = _phi_chunked(c, z, radius[:, None] * np.exp(1j * theta[:-1]))
    minabs = np.min(np.abs(vals), axis=-1)
    ends = np.concatenate([vals, vals[:, :1]], axis=-1)
    inc = np.angle(ends[:, 1:] / ends[:, :-1])
    good = np.abs(inc) <= np.pi / 4
    total = np.where(good, inc, 0).sum(axis=-1)
    row, k = np.nonzero(~good)
    ta, tb = theta[k], theta[k + 1]
    fa, fb = ends[row, k], ends[row, k + 1]
    for _ in range(max_depth):
        if row.size == 0:
            break
        tm = 0.5 * (ta + tb)
        fm = c.phi(z[row], (radius[row] * np.exp(1j * tm))[:, None])[:, 0]
        np.minimum.at(minabs, row, np.abs(fm))
        inc1, inc2 = np.angle(fm / fa), np.angle(fb / fm)
        ok1, ok2 = np.abs(inc1) <= np.pi / 4, np.abs(inc2) <= np.pi / 4
        np.add.at(total, row[ok1], inc1[ok1])
        np.add.at(total, row[ok2], inc2[ok2])
        row = np.concatenate([row[~ok1], row[~ok2]])
        ta, tb = np.concatenate([ta[~ok1], tm[~ok2]]), np.concatenate([tm[~ok1], tb[~ok2]])
        fa, fb = np.concatenate([fa[~ok1], fm[~ok2]]), np.concatenate([fm[~ok1], fb[~ok2]])
    if row.size:
        np.add.at(total, row, np.angle(fb / fa))
    return np.rint(total / (2 * np.pi)).astype(int), minabs


def _root_sum(c: LempertCandidate, z, radius, nodes, max_nodes):
    """Sum of the zeros inside ``|lam| = radius`` from the first log-moment.

    ``log Phi`` minus its winding part is periodic on the circle, so the
    trapezoid rule on uniform nodes converges spectrally; nodes are doubled
    until the phase is resolved everywhere.
    """
    n = len(z)
    radius = np.broadcast_to(np.asarray(radius, dtype=float), (n,))
    est = np.full(n, np.nan, dtype=complex)
    todo = np.arange(n)
    m = nodes
    while todo.size:
        lam = radius[todo, None] * unit_roots(m)
        vals = _phi_chunked(c, z[todo], lam)
        inc = np.angle(np.roll(vals, -1, axis=-1) / vals)
        done = (np.max(np.abs(inc), axis=-1) <= np.pi / 4) | (m >= max_nodes)
        cnt = np.rint(inc.sum(axis=-1) / (2 * np.pi))
        arg = np.angle(vals[:, :1]) + np.concatenate(
            [np.zeros((len(todo), 1)), np.cumsum(inc[:, :-1], axis=-1)], axis=-1)
        theta = 2 * np.pi * np.arange(m) / m
        logp = np.log(np.abs(vals)) + 1j * (arg - cnt[:, None] * theta)
        est[todo[done]] = -np.mean(logp * lam, axis=-1)[done]
        todo = todo[~done]
        m *= 2
    return est


def zero_count(c: LempertCandidate, z, radius, nodes: int = 256):
    """Number of zeros of ``Phi(z, .)`` in ``|lam| < radius`` (argument principle).

    Arcs are refined until the phase moves by less than pi/4 between
    consecutive samples.

    Raises
    ------
    ZeroOnContour
        If ``min |Phi|`` on the circle is below 1e-12.
    """
    z = np.asarray(z, dtype=complex)
    flat = z.reshape(-1, 2)
    rad = np.broadcast_to(np.asarray(radius, dtype=float), z.shape[:-1]).reshape(-1)
    count, minabs = _winding(c, flat, rad, nodes)
    if np.any(minabs < ZERO_ON_CONTOUR):
        raise ZeroOnContour("fiber function vanishes on the counting circle")
    count = count.reshape(z.shape[:-1])
    return int(count) if count.ndim == 0 else count


def _newton(c: LempertCandidate, z, lam, cfg: RootSolveConfig):
    lam = lam.copy()
    active = np.ones(len(lam), dtype=bool)
    iters = np.zeros(len(lam), dtype=int)
    for _ in range(cfg.newton_max_iterations):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        zi, li = z[idx], lam[idx]
        val = c.phi(zi, li[:, None])[:, 0]
        rho = 0.5 * (1 - np.abs(li))
        der = contour_derivative(lambda pts: c.phi(zi, pts), li, rho, 32)
        stepv = val / der
        new = li - stepv
        # damp steps that would leave the disc
        for _ in range(30):
            out = np.abs(new) >= 1
            if not out.any():
                break
            stepv = np.where(out, stepv / 2, stepv)
            new = li - stepv
        lam[idx] = new
        iters[idx] += 1
        tol = cfg.newton_tolerance * np.maximum(1, np.abs(new))
        conv = np.abs(stepv) <= np.maximum(tol, 4 * np.finfo(float).eps * np.abs(new))
        active[idx[conv | ~np.isfinite(new)]] = False
        if not np.all(np.isfinite(new)):
            raise NewtonDivergence("Newton iterate is not finite")
    if active.any():
        # accept rows stalled at rounding level: residual cannot improve further
        idx = np.flatnonzero(active)
        val = np.abs(c.phi(z[idx], lam[idx, None])[:, 0])
        scale = np.abs(c.v(lam[idx])).sum(axis=-1)
        stalled = val <= 1e3 * np.finfo(float).eps * np.maximum(scale, 1)
        if not np.all(stalled):
            raise NewtonDivergence(f"Newton did not converge for {int((~stalled).sum())} point(s)")
    return lam, iters


def solve_point(c: LempertCandidate, z, cfg: RootSolveConfig = DEFAULT_CONFIG,
                full_output: bool = False):
    """The unique ``lam`` in the disc with ``(z - f(lam)) . v(lam) = 0``.

    Vectorized over leading axes of ``z``.  Zeros are counted on every
    configured radius; extension radii are tried only for points whose root
    lies beyond all of them.

    Raises
    ------
    NoRootInDisc
        No zero was found on any circle.
    MultipleRoots
        Some circle encloses two or more zeros.
    NewtonDivergence
        The polishing iteration failed.
    """
    z = as_point(c.domain, z)
    shape = z.shape[:-1]
    flat = z.reshape(-1, 2)
    n = len(flat)
    if np.any(margin(c.domain, flat) <= 0):
        raise OutsideDomain("solve_point requires points inside the domain")
    radii = tuple(cfg.contour_radii) + tuple(cfg.extension_radii)
    n_regular = len(cfg.contour_radii)
    counts = np.full((n, len(radii)), -1, dtype=int)
    found = np.full(n, -1, dtype=int)
    est = np.full(n, np.nan, dtype=complex)
    for i, r in enumerate(radii):
        rows = np.arange(n) if i < n_regular else np.flatnonzero(found < 0)
        if rows.size == 0:
            break
        cnt, mn = _winding(c, flat[rows], r, cfg.contour_nodes)
        admissible = mn >= ZERO_ON_CONTOUR
        counts[rows[admissible], i] = cnt[admissible]
        first = rows[admissible & (cnt == 1) & (found[rows] < 0)]
        found[first] = i
        if first.size:
            est[first] = _root_sum(c, flat[first], r, cfg.contour_nodes, cfg.max_nodes)
    multi = np.flatnonzero(np.any(counts >= 2, axis=1))
    if multi.size:
        k = multi[0]
        raise MultipleRoots(f"{multi.size} point(s) with several zeros, e.g. z={flat[k].tolist()} "
                            f"counts={counts[k].tolist()} on radii {list(radii)}")
    missing = np.flatnonzero(found < 0)
    if missing.size:
        raise NoRootInDisc(f"{missing.size} point(s) without a zero in the disc, "
                           f"e.g. z={flat[missing[0]].tolist()}")
    lam, iters = _newton(c, flat, est, cfg)
    enclosing = np.asarray(radii)[found]
    if np.any(np.abs(lam) >= enclosing):
        raise NewtonDivergence("Newton left the circle that isolates the root")
    lam = lam.reshape(shape)
    out = lam if lam.ndim else complex(lam)
    if full_output:
        return out, {"radii": radii, "counts": counts.reshape(shape + (len(radii),)),
                     "enclosing_radius": enclosing.reshape(shape),
                     "iterations": iters.reshape(shape)}
    return out


@dataclass(frozen=True)
class ConstructedInverse(LeftInverse):
    """Left inverse defined pointwise by :func:`solve_point`."""

    candidate: LempertCandidate
    config: RootSolveConfig = DEFAULT_CONFIG

    @property
    def domain(self):
        return self.candidate.domain

    def evaluate(self, z, strict=True):
        return solve_point(self.candidate, z, self.config)

    def describe(self) -> dict:
        return {"kind": "Constructed", "candidate": self.candidate.describe()}


def build_inverse(c: LempertCandidate, cfg: RootSolveConfig = DEFAULT_CONFIG) -> ConstructedInverse:
    return ConstructedInverse(c, cfg)


# -- boundary extension -------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionCertificate:
    f_extends: bool
    v_finite: bool
    pairing_bound: float
    v_limit: tuple
    v_error: float
    extends: bool

    @property
    def status(self) -> str:
        return "extends" if self.extends else "inconclusive"

    def describe(self) -> dict:
        return {**describe_spec(self), "status": self.status}


def extension_certificate(c: LempertCandidate, lam0, levels: int = 12,
                          finite_tol: float = 1e-6) -> ExtensionCertificate:
    """Numerical evidence that the constructed inverse extends through ``f(lam0)``.

    The field is sampled at ``(1 - 2**-k) lam0`` and Richardson-extrapolated.
    The field counts as finite when the last extrapolants agree to
    ``finite_tol`` (relative); the certificate holds when, in addition, the
    extrapolated pairing ``|v . f'|`` stays above 1e-6.  Inconclusive
    outcomes are reported, not raised.
    """
    lam0 = complex(lam0)
    if abs(abs(lam0) - 1) > 1e-12:
        raise ValueError("lam0 must be unimodular")
    lam = (1 - 2.0 ** -np.arange(1, levels + 1)) * lam0
    v = c.v(lam)
    pair = pairing(v, c.f.derivative(lam))
    limits, errs = [], []
    for j in range(v.shape[-1]):
        lim, err = richardson(v[:, j])
        limits.append(lim)
        errs.append(err)
    v_err = max(errs)
    scale = 1 + max(abs(x) for x in limits)
    v_finite = bool(np.all(np.isfinite(v)) and math.isfinite(v_err) and v_err <= finite_tol * scale)
    pair_lim, pair_err = richardson(pair)
    bound = float(abs(pair_lim)) if math.isfinite(pair_err) else float("nan")
    return ExtensionCertificate(
        f_extends=True,
        v_finite=v_finite,
        pairing_bound=bound,
        v_limit=tuple(complex(x) for x in limits),
        v_error=float(v_err),
        extends=bool(v_finite and bound > 1e-6),
    )
