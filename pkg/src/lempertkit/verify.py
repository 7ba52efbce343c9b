"""Quantified checks of left-inverse identities, ranges, fibers and boundary behaviour.

Every check returns a :class:`VerificationReport` whose ``passed`` flag is
derived from declared comparisons on named metrics, so a report can never
claim success that its numbers do not support.
"""
from __future__ import annotations

import csv
import io
import itertools
import operator
from dataclasses import dataclass, field

import numpy as np

from ._numerics import radial_angular_grid, richardson
from ._serial import describe_spec, jsonable
from .domains import (
    Domain,
    alpha_map,
    beta_map,
    margin,
    ray_margin,
    region_A_contains,
    sample,
)
from .errors import AllSamplesDegenerate, DegenerateGradient, MultipleRoots, NotALeftInverse
from .geodesics import Geodesic, Royal
from .hyperbolic import MobiusMap, mobius_fit, pseudo_distance
from .inverses import LeftInverse
from .lempertize import LempertCandidate, RootSolveConfig, DEFAULT_CONFIG, solve_point, zero_count

_OPS = {"<": operator.lt, "<=": operator.le, ">": operator.gt, ">=": operator.ge, "==": operator.eq}


@dataclass
class VerificationReport:
    check_name: str
    inputs: dict
    metrics: dict
    criteria: dict = field(default_factory=dict)
    tolerance: float | None = None
    seed: int | None = None
    grid_size: int | None = None
    per_point: list = field(default_factory=list, repr=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.metrics = {k: float(v) for k, v in self.metrics.items()}
        self.passed = all(self.criterion_holds(name) for name in self.criteria)

    def criterion_holds(self, name: str) -> bool:
        op, threshold = self.criteria[name]
        value = self.metrics.get(name, float("nan"))
        return bool(np.isfinite(value) and _OPS[op](value, threshold))

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "inputs": jsonable(self.inputs),
            "metrics": self.metrics,
            "criteria": {k: [op, thr] for k, (op, thr) in self.criteria.items()},
            "tolerance": self.tolerance,
            "pass": self.passed,
            "seed": self.seed,
            "grid_size": self.grid_size,
        }

    def per_point_csv(self) -> str:
        out = io.StringIO()
        if self.per_point:
            writer = csv.DictWriter(out, fieldnames=list(self.per_point[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(self.per_point)
        return out.getvalue()

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        shown = ", ".join(f"{k}={v:.3e}" for k, v in self.metrics.items())
        return f"[{status}] {self.check_name}: {shown}"


def _cplx_rows(name, values):
    values = np.asarray(values, dtype=complex)
    return [{f"re_{name}": v.real, f"im_{name}": v.imag} for v in values]


# -- left-inverse identity ---------------------------------------------------------

def _fit_pairs(lam, mu, n_radii=8):
    """Three well-separated grid pairs ``(G(f(lam)), lam)`` on the middle ring."""
    per_ring = len(lam) // n_radii
    ring = 2 * per_ring
    idx = [ring, ring + per_ring // 3, ring + (2 * per_ring) // 3]
    return [(mu[i], lam[i]) for i in idx]


def left_inverse_residual(f: Geodesic, G: LeftInverse, grid: int = 64,
                          fit_automorphism: bool = False, tolerance: float | None = None,
                          expected_center_abs: float | None = None, center_tolerance: float = 1e-9):
    """``max |a(G(f(lam))) - lam|`` over a radial-angular grid.

    ``a`` is the identity, or with ``fit_automorphism`` the disc automorphism
    fitted through three grid pairs.  ``expected_center_abs`` adds a check on
    the modulus of the fitted center.
    """
    if G.domain is not f.codomain:
        raise ValueError("geodesic and inverse live on different domains")
    if tolerance is None:
        tolerance = 1e-10 if fit_automorphism else 1e-12
    lam = radial_angular_grid(grid)
    mu = G(f(lam))
    a = mobius_fit(_fit_pairs(lam, mu)) if fit_automorphism else MobiusMap()
    res = np.abs(a(mu) - lam)
    metrics = {"max_residual": res.max()}
    if fit_automorphism:
        metrics.update(center_re=a.center.real, center_im=a.center.imag,
                       center_abs=abs(a.center), rotation_arg=np.angle(a.rotation))
    criteria = {"max_residual": ("<", tolerance)}
    if fit_automorphism and expected_center_abs is not None:
        metrics["center_deviation"] = abs(abs(a.center) - expected_center_abs)
        criteria["center_deviation"] = ("<", center_tolerance)
    rows = [{"re_lambda": l.real, "im_lambda": l.imag, "residual": r} for l, r in zip(lam, res)]
    return VerificationReport(
        "left_inverse_residual",
        {"geodesic": f, "inverse": G, "fit_automorphism": fit_automorphism},
        metrics, criteria, tolerance, None, len(lam), rows)


def inverse_agreement(G: LeftInverse, H: LeftInverse, n: int = 1000, seed: int = 42,
                      tolerance: float = 1e-8, d: Domain | None = None):
    """``max |G(z) - H(z)|`` over seeded samples of the common domain."""
    d = d or G.domain
    z = sample(d, n, seed)
    g, h = np.asarray(G(z)), np.asarray(H(z))
    dev = np.abs(g - h)
    rows = [{"re_z1": a.real, "im_z1": a.imag, "re_z2": b.real, "im_z2": b.imag,
             "re_G": x.real, "im_G": x.imag, "re_H": y.real, "im_H": y.imag}
            for (a, b), x, y in zip(z, g, h)]
    return VerificationReport(
        "inverse_agreement", {"inverse": G, "reference": H, "domain": d},
        {"max_deviation": dev.max()}, {"max_deviation": ("<", tolerance)}, tolerance, seed, n, rows)


def audit_radius(lam):
    """Counting radius for the uniqueness audit: 0.9, widened to enclose roots beyond it."""
    r = np.abs(np.asarray(lam))
    return np.maximum(0.9, np.minimum(r + 0.05, 0.5 * (1 + r)))


def uniqueness_audit(candidates, z, cfg: RootSolveConfig = DEFAULT_CONFIG):
    """Solve every candidate on the points ``z`` and recount zeros around each root.

    The count must be exactly one on the audit circle, and no circle of the
    solver schedule may contain two or more zeros.
    """
    z = np.asarray(z, dtype=complex)
    worst, multiple, n_pts = 0, 0, 0
    for c in candidates:
        try:
            lam, info = solve_point(c, z, cfg, full_output=True)
        except MultipleRoots:
            multiple += 1
            continue
        multiple += int(np.any(info["counts"] >= 2, axis=-1).sum())
        counts = zero_count(c, z, audit_radius(lam), cfg.contour_nodes)
        worst = max(worst, int(np.max(np.abs(counts - 1))))
        n_pts += len(z)
    return VerificationReport(
        "uniqueness_audit", {"candidates": list(candidates)},
        {"max_count_deviation": worst, "multiple_root_points": multiple, "n_solves": n_pts},
        {"max_count_deviation": ("==", 0), "multiple_root_points": ("==", 0)}, None, None, len(z))


def aggregate_report(name: str, inputs: dict, metrics: dict, criteria: dict):
    """A report over quantities derived from other reports."""
    return VerificationReport(name, inputs, metrics, criteria)


def range_supremum(G: LeftInverse, d: Domain | None = None, n: int = 100_000, seed: int = 42):
    """Sup of ``|G|`` over seeded samples; evaluation failures are counted, not raised."""
    d = d or G.domain
    z = sample(d, n, seed)
    vals = np.asarray(G.evaluate(z, strict=False))
    bad = ~np.isfinite(vals)
    sup = float(np.max(np.abs(vals[~bad]))) if (~bad).any() else float("nan")
    return VerificationReport(
        "range_supremum", {"inverse": G, "domain": d},
        {"sup_abs": sup, "margin": 1 - sup, "n_errors": int(bad.sum())},
        {"sup_abs": ("<", 1.0), "n_errors": ("==", 0)}, 1.0, seed, n)


# -- fibers ------------------------------------------------------------------------------

def _unit_kernel(v):
    norm = np.linalg.norm(v, axis=-1)
    if np.any(norm < 1e-12):
        raise DegenerateGradient("gradient vanishes on the grid")
    kernel = np.stack([-v[..., 1], v[..., 0]], axis=-1) / norm[..., None]
    transverse = np.conj(v) / norm[..., None]
    return kernel, transverse


def fiber_affinity(f: Geodesic, G: LeftInverse, grid: int = 32, steps=(1e-3, 1e-2, 1e-1),
                   tolerance: float = 1e-9, offkernel_min: float = 1e-6):
    """Do the fibers of ``G`` through ``f(lam0)`` follow the kernel line of ``G'``?

    Along ``f(lam0) + tau e^{i k pi/2} d`` (``d`` spanning the kernel) a
    Lempert inverse keeps its value ``G(f(lam0))``; along the transverse
    direction ``conj(G')`` it must move.  Points that leave the domain are
    skipped and counted.
    """
    d = f.codomain
    lam0 = radial_angular_grid(grid)
    z0 = f(lam0)
    mu0 = G(z0)
    kern, trans = _unit_kernel(G.gradient(z0))
    phases = np.exp(0.5j * np.pi * np.arange(4))
    metrics, skipped = {}, 0
    worst = 0.0
    kernel_pts, kernel_mu = [], []
    for tau in steps:
        pts = z0[:, None, :] + (tau * phases)[None, :, None] * kern[:, None, :]
        inside = margin(d, pts) > 0
        skipped += int((~inside).sum())
        dev = np.abs(G(pts[inside]) - np.broadcast_to(mu0[:, None], inside.shape)[inside])
        step_max = float(dev.max()) if dev.size else float("nan")
        metrics[f"kernel_dev_tau_{tau:g}"] = step_max
        worst = max(worst, step_max) if np.isfinite(step_max) else worst
        kernel_pts.append(pts[inside])
        kernel_mu.append(np.broadcast_to(mu0[:, None], inside.shape)[inside])
    tau = max(steps)
    pts = z0 + tau * trans
    inside = margin(d, pts) > 0
    growth = np.abs(G(pts[inside]) - mu0[inside])
    metrics["metric_kernel"] = worst
    metrics["kernel_deviation_at_max_step"] = metrics[f"kernel_dev_tau_{tau:g}"]
    metrics["metric_offkernel"] = float(growth.min()) if growth.size else float("nan")
    metrics["skipped_points"] = skipped + int((~inside).sum())
    report = VerificationReport(
        "fiber_affinity", {"geodesic": f, "inverse": G, "steps": list(steps)}, metrics,
        {"metric_kernel": ("<", tolerance), "metric_offkernel": (">", offkernel_min)},
        tolerance, None, len(lam0))
    report.kernel_points = np.concatenate(kernel_pts)
    report.kernel_values = np.concatenate(kernel_mu)
    return report


def royal_fiber_relation(points, lam):
    """Residual of ``-s lam^2 + 2 lam (1 + p) - s`` at points ``(s, p)``."""
    points = np.asarray(points, dtype=complex)
    lam = np.asarray(lam, dtype=complex)
    s, p = points[..., 0], points[..., 1]
    return np.abs(-s * lam ** 2 + 2 * lam * (1 + p) - s)


def kernel_constancy(v, grid: int = 64, tolerance: float = 1e-9):
    """Largest projective distance between kernel lines ``ker v(lam)`` over grid pairs.

    The distance is ``|a1 b2 - a2 b1| / (|a| |b|)``, the sine of the angle
    between the complex lines spanned by ``a`` and ``b``.
    """
    if not getattr(v, "normalized", False):
        raise ValueError("kernel_constancy expects a normalized field")
    lam = radial_angular_grid(grid)
    vals = v(lam)
    norm = np.linalg.norm(vals, axis=-1)
    if np.any(norm < 1e-12):
        raise DegenerateGradient("field vanishes on the grid")
    a = vals / norm[:, None]
    wedge = np.abs(a[:, None, 0] * a[None, :, 1] - a[:, None, 1] * a[None, :, 0])
    return VerificationReport(
        "kernel_constancy", {"field": v}, {"max_deviation": wedge.max()},
        {"max_deviation": ("<", tolerance)}, tolerance, None, len(lam))


def duality_residual(f: Geodesic, v, G: LeftInverse, n: int = 1000, seed: int = 42,
                     tolerance: float = 1e-10):
    """``max |(z - f(G(z))) . v(G(z))|`` over seeded samples of the codomain."""
    z = sample(f.codomain, n, seed)
    lam = np.asarray(G(z))
    res = np.abs(np.sum((z - f(lam)) * v(lam), axis=-1))
    return VerificationReport(
        "duality_residual", {"geodesic": f, "field": v, "inverse": G},
        {"max_residual": res.max()}, {"max_residual": ("<", tolerance)}, tolerance, seed, n)


# -- boundary behaviour --------------------------------------------------------------------

@dataclass(frozen=True)
class RoyalApproach:
    """``f_r((1 - delta) lam0)`` towards the boundary point ``(2 lam0, lam0^2)``."""

    lam0: complex = 1.0
    domain = Domain.G2

    def points(self, delta):
        lam = (1 - np.asarray(delta)) * complex(self.lam0)
        return Royal()(lam)

    def describe(self):
        return describe_spec(self)


@dataclass(frozen=True)
class LinearG2:
    """``(2 - delta, 1 - c delta)``, approaching ``(2, 1)`` for ``0 < c < 1``."""

    c: float = 0.5
    domain = Domain.G2

    def __post_init__(self):
        if not 0 < self.c < 1:
            raise ValueError("c must lie in (0, 1)")

    def points(self, delta):
        delta = np.asarray(delta, dtype=float)
        return np.stack([2 - delta, 1 - self.c * delta], axis=-1).astype(complex)

    def describe(self):
        return describe_spec(self)


@dataclass(frozen=True)
class BallVertical:
    """``(a sqrt(1 - r^2), r)`` with ``r = 1 - delta``, approaching ``(0, 1)``."""

    a: complex = 0.0
    domain = Domain.BALL

    def points(self, delta):
        r = 1 - np.asarray(delta, dtype=float)
        return np.stack([complex(self.a) * np.sqrt(1 - r * r), r + 0j], axis=-1)

    def describe(self):
        return describe_spec(self)


def boundary_probe(G: LeftInverse, path, schedule_len: int = 12, expected=None,
                   tolerance: float = 1e-6):
    """Values of ``G`` along a path with ``delta_k = 2**-k`` and their extrapolated limit.

    With ``expected`` the report passes iff the limit is within ``tolerance``;
    without it the report only records values (no criteria).
    """
    delta = 2.0 ** -np.arange(1, schedule_len + 1)
    pts = path.points(delta)
    inside = margin(path.domain, pts) > 0
    # keep the leading run of admissible points
    n_ok = int(np.argmin(inside)) if not inside.all() else len(inside)
    vals = np.asarray(G.evaluate(pts[:n_ok], strict=False))
    finite = np.isfinite(vals)
    n_ok = int(np.argmin(finite)) if not finite.all() else n_ok
    vals = vals[:n_ok]
    limit, err = richardson(vals)
    metrics = {"limit_re": limit.real, "limit_im": limit.imag, "error_estimate": err,
               "n_points": n_ok, "truncated": int(n_ok < schedule_len)}
    criteria = {}
    if expected is not None:
        metrics["deviation"] = abs(limit - complex(expected))
        criteria["deviation"] = ("<", tolerance)
    report = VerificationReport(
        "boundary_probe", {"inverse": G, "path": path, "expected": expected}, metrics,
        criteria, tolerance, None, schedule_len,
        [{"delta": dl, **row} for dl, row in zip(delta, _cplx_rows("value", vals))])
    report.values = vals
    report.limit = limit
    return report


def cluster_discrepancy(reports) -> float:
    limits = [complex(r.metrics["limit_re"], r.metrics["limit_im"]) for r in reports]
    return max((abs(a - b) for a, b in itertools.combinations(limits, 2)), default=0.0)


def beta_alpha_checks(n: int = 100_000, seed: int = 42, box: float = 3.0,
                      slit_margin: float = 1e-6):
    """Sampled image checks: ``s/(1+p)`` avoids the slits, ``alpha`` maps the slit plane into the disc."""
    beta = beta_map(sample(Domain.G2, n, seed))
    rng = np.random.default_rng(seed + 1)
    pts = np.empty(0, dtype=complex)
    while pts.size < n:
        cand = rng.uniform(-box, box, 2 * n) + 1j * rng.uniform(-box, box, 2 * n)
        pts = np.concatenate([pts, cand[region_A_contains(cand, slit_margin)]])
    alpha = np.abs(alpha_map(pts[:n]))
    return VerificationReport(
        "beta_alpha_checks", {"box": box, "slit_margin": slit_margin},
        {"beta_min_ray_margin": ray_margin(beta).min(),
         "beta_outside_A": int((~region_A_contains(beta)).sum()),
         "alpha_sup": alpha.max()},
        {"beta_min_ray_margin": (">", 0.0), "beta_outside_A": ("==", 0), "alpha_sup": ("<", 1.0)},
        None, seed, n)


def royal_h(Psi: LeftInverse, z):
    """``h`` in ``Psi = (s - 2p h) / (2 - s h)``, i.e. ``h = (s - 2 Psi) / (2p - s Psi)``."""
    z = np.asarray(z, dtype=complex)
    s, p = z[..., 0], z[..., 1]
    psi = Psi(z)
    return (s - 2 * psi) / (2 * p - s * psi)


def royal_h_extract(Psi: LeftInverse, n: int = 10_000, seed: int = 42,
                    degenerate: float = 1e-6, tolerance: float = 1e-8):
    """Recover ``h`` from a left inverse of the royal geodesic and bound ``sup |h|``.

    Raises
    ------
    NotALeftInverse
        If ``Psi`` fails the royal left-inverse identity to 1e-10.
    AllSamplesDegenerate
        If every sample lies within ``degenerate`` of the royal variety.
    """
    pre = left_inverse_residual(Royal(), Psi, 64, tolerance=1e-10)
    if not pre.passed:
        raise NotALeftInverse(f"residual {pre.metrics['max_residual']:.3e} on the royal geodesic")
    z = sample(Domain.G2, n, seed)
    s, p = z[:, 0], z[:, 1]
    psi = Psi(z)
    den = 2 * p - s * psi
    keep = np.abs(den) > degenerate
    if not keep.any():
        raise AllSamplesDegenerate("all samples sit on the royal variety")
    h = (s[keep] - 2 * psi[keep]) / den[keep]
    return VerificationReport(
        "royal_h_extract", {"inverse": Psi, "degenerate_threshold": degenerate},
        {"sup_abs_h": np.abs(h).max(), "n_used": int(keep.sum()), "n_filtered": int((~keep).sum())},
        {"sup_abs_h": ("<=", 1 + tolerance)}, tolerance, seed, n)


def _disc_image(p, R):
    """Euclidean center and radius of ``{z : |z - p| / |1 - conj(p) z| < R}``."""
    a2 = np.abs(p) ** 2
    den = 1 - R * R * a2
    return p * (1 - R * R) / den, R * (1 - a2) / den


def kobayashi_ball_identity(p_center, R: float, rho: float, n: int = 10_000, seed: int = 42,
                            margin_filter: float = 1e-9):
    """Compare the ball of radius ``rho R`` about ``p`` with the ``rho``-ball inside the ``R``-ball.

    In the bidisc ``k*(p, z) = max_j m(p_j, z_j)``.  The ``R``-ball is a product
    of Euclidean discs; the right-hand side measures distances in it after
    rescaling each disc affinely onto the unit disc.  Samples within
    ``margin_filter`` of either sphere are dropped.
    """
    if not (0 < R < 1 and 0 < rho < 1):
        raise ValueError("0 < R < 1 and 0 < rho < 1 required")
    p = np.asarray(p_center, dtype=complex)
    if margin(Domain.BIDISC, p) <= 0:
        raise ValueError("center must lie in the bidisc")
    rng = np.random.default_rng(seed)
    half = n // 2
    uniform = sample(Domain.BIDISC, n - half, seed)
    # concentrate the rest near the sphere of radius rho*R
    u = rng.uniform(0, 1, (half, 2)) ** 0.5 * np.exp(2j * np.pi * rng.uniform(0, 1, (half, 2)))
    u *= min(1.5 * rho * R, 0.999)
    near = (u + p) / (1 + np.conj(p) * u)
    z = np.concatenate([uniform, near])

    left_metric = np.max(pseudo_distance(p, z), axis=-1)
    center, radius = _disc_image(p, R)
    scaled = (z - center) / radius
    a = (p - center) / radius
    in_sub = np.all(np.abs(scaled) < 1, axis=-1)
    right_metric = np.where(in_sub, np.max(pseudo_distance(a, np.where(in_sub[:, None], scaled, 0)), axis=-1), np.inf)
    keep = (np.abs(left_metric - rho * R) > margin_filter) & (np.abs(right_metric - rho) > margin_filter)
    left, right = left_metric[keep] < rho * R, right_metric[keep] < rho
    return VerificationReport(
        "kobayashi_ball_identity", {"center": p, "R": R, "rho": rho},
        {"agreement_rate": float(np.mean(left == right)), "n_used": int(keep.sum()),
         "n_inside": int(left.sum())},
        {"agreement_rate": ("==", 1.0)}, margin_filter, seed, n)


def ball_boundary_values(G: LeftInverse, n: int = 1000, seed: int = 42, exclusion: float = 1e-3,
                         violation: float = 0.1, tolerance: float = 1e-8):
    """Boundary values of a ball inverse against the criterion ``Im(z2 (1 - conj z1)) = 0``.

    Sphere points satisfying the criterion (away from ``(1, 0)``) should map
    to the unit circle; points violating it by more than ``violation`` should
    map strictly inside.
    """
    rng = np.random.default_rng(seed)

    def z1_samples(k):
        r = rng.uniform(0, 1, k) ** 0.5
        z1 = r * np.exp(2j * np.pi * rng.uniform(0, 1, k))
        return z1[np.abs(1 - z1) > exclusion]

    z1 = z1_samples(2 * n)[:n]
    unit = (1 - z1) / np.abs(1 - z1)
    height = np.sqrt(1 - np.abs(z1) ** 2)
    sign = np.where(rng.uniform(size=len(z1)) < 0.5, -1, 1)
    on = np.stack([z1, sign * height * unit], axis=-1)
    vals_on = np.abs(G.evaluate(on, strict=False))

    off = []
    while sum(len(o) for o in off) < n:
        z1b = z1_samples(4 * n)
        psi = np.exp(2j * np.pi * rng.uniform(0, 1, len(z1b)))
        z2b = psi * np.sqrt(1 - np.abs(z1b) ** 2) * (1 - z1b) / np.abs(1 - z1b)
        crit = np.abs((z2b * (1 - np.conj(z1b))).imag)
        pts = np.stack([z1b, z2b], axis=-1)[crit > violation]
        off.append(pts)
    off = np.concatenate(off)[:n]
    vals_off = np.abs(G.evaluate(off, strict=False))
    return VerificationReport(
        "ball_boundary_values", {"inverse": G, "exclusion": exclusion, "violation": violation},
        {"on_criterion_max_dev": np.max(np.abs(vals_on - 1)), "off_criterion_sup": vals_off.max()},
        {"on_criterion_max_dev": ("<", tolerance), "off_criterion_sup": ("<", 1 - 1e-6)},
        tolerance, seed, n)
