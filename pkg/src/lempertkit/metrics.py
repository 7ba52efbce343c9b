"""Carathéodory and Lempert distances on the model domains (tanh-normalized)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._numerics import golden_section_max
from .domains import Domain, as_point, contains, sample
from .errors import OutsideDomain
from .geodesics import Flat, Royal
from .hyperbolic import pseudo_distance
from .verify import VerificationReport


@dataclass
class DistanceResult:
    value_star: float
    witness: dict
    method: str
    # an analytic disc f with f(params[0]) = w, f(params[1]) = z, when available
    disc: Callable | None = field(default=None, repr=False)
    params: tuple | None = None

    def recheck(self, w, z) -> float:
        """Largest discrepancy when the witness is re-evaluated (0 if none)."""
        if self.disc is None:
            return 0.0
        l1, l2 = self.params
        devs = [np.max(np.abs(np.asarray(self.disc(l1)) - np.asarray(w))),
                np.max(np.abs(np.asarray(self.disc(l2)) - np.asarray(z))),
                abs(pseudo_distance(l1, l2) - self.value_star)]
        return float(max(devs))


def _check(d: Domain, *pts):
    out = []
    for z in pts:
        z = as_point(d, z)
        if not contains(d, z):
            raise OutsideDomain(f"{np.asarray(z).tolist()} is not in {d.value}")
        out.append(z)
    return out


def ball_automorphism(a, z):
    """The involutive automorphism of the unit ball exchanging ``a`` and 0."""
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    aa = np.vdot(a, a).real
    if aa == 0:
        return -z
    za = np.sum(z * np.conj(a), axis=-1)
    proj = (za / aa)[..., None] * a
    s = np.sqrt(1 - aa)
    return (a - proj - s * (z - proj)) / (1 - za)[..., None]


def _psi(z, om):
    s, p = z[..., 0], z[..., 1]
    return (2 * p - om * s) / (2 - np.conj(om) * s)


def g2_caratheodory(w, z, grid: int = 256, tol: float = 1e-10):
    """``max_{|omega|=1} m(Psi_omega(w), Psi_omega(z))``: grid scan, then golden section."""
    theta = 2 * np.pi * np.arange(grid) / grid
    om = np.exp(1j * theta)
    vals = pseudo_distance(_psi(w[None, :], om), _psi(z[None, :], om))
    k = int(np.argmax(vals))
    h = 2 * np.pi / grid

    def obj(t):
        o = np.exp(1j * t)
        return pseudo_distance(complex(_psi(w, o)), complex(_psi(z, o)))

    t_best, v_best = golden_section_max(obj, theta[k] - h, theta[k] + h, tol)
    if vals[k] > v_best:
        t_best, v_best = theta[k], vals[k]
    return float(v_best), float(np.mod(t_best, 2 * np.pi))


def caratheodory_star(d: Domain, w, z, grid: int = 256) -> DistanceResult:
    w, z = _check(d, w, z)
    if d is Domain.DISC:
        return DistanceResult(float(pseudo_distance(w, z)), {}, "disc")
    if d is Domain.BIDISC:
        m = pseudo_distance(w, z)
        j = int(np.argmax(m))
        return DistanceResult(float(m[j]), {"coordinate": j + 1}, "coordinate-projection")
    if d is Domain.BALL:
        return DistanceResult(float(np.linalg.norm(ball_automorphism(w, z))), {}, "ball-automorphism")
    value, theta = g2_caratheodory(w, z, grid)
    om = np.exp(1j * theta)
    return DistanceResult(value, {"omega": [om.real, om.imag], "angle_turns": theta / (2 * np.pi)},
                          "psi-omega-optimization")


def _disc_witness(w, z):
    lam2 = complex((z - w) / (1 - np.conj(w) * z))
    return (lambda lam: (np.asarray(lam) + w) / (1 + np.conj(w) * np.asarray(lam))), (0.0, lam2)


def _bidisc_witness(w, z):
    u = (z - w) / (1 - np.conj(w) * z)
    k = int(np.argmax(np.abs(u)))
    mu = u[k]

    def disc(lam):
        lam = np.asarray(lam, dtype=complex)
        ratio = u / mu if mu != 0 else np.zeros(2)
        x = lam[..., None] * ratio
        return (x + w) / (1 + np.conj(w) * x)

    return disc, (0.0, complex(mu)), k


def _ball_witness(w, z):
    phi = ball_automorphism(w, z)
    r = float(np.linalg.norm(phi))
    u = phi / r if r > 0 else np.array([1, 0], dtype=complex)

    def disc(lam):
        lam = np.asarray(lam, dtype=complex)
        return ball_automorphism(w, lam[..., None] * u)

    return disc, (0.0, r)


def _g2_catalogue_witness(w, z, tol: float = 1e-10):
    """Royal or flat geodesic through both points, if one exists."""
    (s1, p1), (s2, p2) = w, z
    if abs(s1 * s1 - 4 * p1) < tol and abs(s2 * s2 - 4 * p2) < tol:
        return Royal(), (s1 / 2, s2 / 2)
    if abs(p1 - p2) > tol:
        beta = np.conj((s1 - s2) / (p1 - p2))
        if abs(beta) < 1 and abs(beta + np.conj(beta) * p1 - s1) < tol \
                and abs(beta + np.conj(beta) * p2 - s2) < tol:
            return Flat(beta), (p1, p2)
    return None, None


def lempert_star(d: Domain, w, z, grid: int = 256) -> DistanceResult:
    """Lempert function with an explicit extremal disc where one is available.

    On the symmetrized bidisc the value is taken from the Carathéodory side
    (the two coincide); a disc witness is attached when both points lie on a
    royal or flat geodesic.
    """
    w, z = _check(d, w, z)
    if d is Domain.DISC:
        disc, params = _disc_witness(w, z)
        return DistanceResult(float(pseudo_distance(w, z)), {"disc": "automorphism"},
                              "explicit-disc", disc, params)
    if d is Domain.BIDISC:
        disc, params, k = _bidisc_witness(w, z)
        return DistanceResult(float(abs(params[1])), {"disc": "bidisc-graph", "dominant": k + 1,
                                                      "lambda": [params[1].real, params[1].imag]},
                              "explicit-disc", disc, params)
    if d is Domain.BALL:
        disc, params = _ball_witness(w, z)
        return DistanceResult(params[1], {"disc": "complex-line"}, "explicit-disc", disc, params)
    geo, params = _g2_catalogue_witness(w, z)
    if geo is not None:
        value = float(pseudo_distance(*params))
        return DistanceResult(value, {"geodesic": geo.describe(),
                                      "lambda": [[complex(x).real, complex(x).imag] for x in params]},
                              "catalogue-geodesic", geo, tuple(complex(x) for x in params))
    c = caratheodory_star(d, w, z, grid)
    return DistanceResult(c.value_star, c.witness, "lempert-equality")


def _pairs(d: Domain, n: int, seed: int, family: str):
    rng_seed = seed
    if d is Domain.G2 and family in ("royal", "flat"):
        l1, l2 = sample(Domain.DISC, n, rng_seed), sample(Domain.DISC, n, rng_seed + 1)
        if family == "royal":
            return Royal()(l1), Royal()(l2), (l1, l2)
        betas = 0.9 * sample(Domain.DISC, n, rng_seed + 2)
        w = np.stack([betas + np.conj(betas) * l1, l1], -1)
        z = np.stack([betas + np.conj(betas) * l2, l2], -1)
        return w, z, (l1, l2)
    if family != "random":
        raise ValueError(f"unknown pair family {family!r}")
    return sample(d, n, rng_seed), sample(d, n, rng_seed + 1), None


def distance_consistency(d: Domain, n_pairs: int = 1000, seed: int = 42, family: str = "random",
                         tolerance: float = 1e-8):
    """Check ``c* <= l*`` and, where a disc witness exists, ``|c* - l*| < tolerance``.

    For royal or flat pairs on the symmetrized bidisc the optimized ``c*`` is
    also compared with the pseudo-distance of the geodesic parameters (1e-6).
    """
    w, z, params = _pairs(d, n_pairs, seed, family)
    excess, gap, param_gap, recheck = 0.0, 0.0, 0.0, 0.0
    n_witness = 0
    for i in range(n_pairs):
        c = caratheodory_star(d, w[i], z[i])
        l = lempert_star(d, w[i], z[i])
        excess = max(excess, c.value_star - l.value_star)
        if l.disc is not None:
            n_witness += 1
            gap = max(gap, abs(c.value_star - l.value_star))
            recheck = max(recheck, l.recheck(w[i], z[i]))
        if params is not None:
            param_gap = max(param_gap, abs(c.value_star - pseudo_distance(params[0][i], params[1][i])))
    metrics = {"max_excess": excess, "max_witness_gap": gap, "n_witness": n_witness,
               "max_witness_recheck": recheck}
    criteria = {"max_excess": ("<=", 1e-9), "max_witness_gap": ("<", tolerance),
                "max_witness_recheck": ("<", 1e-9)}
    if params is not None:
        metrics["max_param_gap"] = param_gap
        criteria["max_param_gap"] = ("<", 1e-6)
    return VerificationReport("distance_consistency", {"domain": d, "family": family},
                              metrics, criteria, tolerance, seed, n_pairs)
