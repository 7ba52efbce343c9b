"""The acceptance suite: fifteen quantified criteria, each a list of reports."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .domains import Domain, sample
from .errors import LempertError
from .geodesics import BallAxis, BallFamily, Diagonal, Flat, Royal
from .inverses import (
    BallRefined,
    BallSimple,
    BidiscAffine,
    BidiscFamily,
    BidiscProjection,
    ConstantH,
    CoordinateH,
    ProductH,
    PsiOmega,
    RoyalMinusPsi,
    RoyalPhi,
)
from .lempertize import LempertCandidate, build_inverse, combine, field_from_inverse
from .metrics import distance_consistency
from .verify import (
    BallVertical,
    LinearG2,
    RoyalApproach,
    VerificationReport,
    aggregate_report,
    beta_alpha_checks,
    boundary_probe,
    cluster_discrepancy,
    fiber_affinity,
    inverse_agreement,
    kernel_constancy,
    kobayashi_ball_identity,
    left_inverse_residual,
    range_supremum,
    royal_fiber_relation,
    uniqueness_audit,
)

H_VARIANTS = (ConstantH(0.3), CoordinateH(1), ProductH())
FLAT_CASES = ((1, -1, 0.5), (1, 1j, 0.3))


@dataclass
class CriterionResult:
    key: str
    title: str
    reports: list = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.reports) and all(r.passed for r in self.reports)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.error})" if self.error else ""
        return f"{self.key:<4} {status}  {self.title}{tail}"

    def to_dict(self) -> dict:
        return {"key": self.key, "title": self.title, "pass": self.passed, "error": self.error,
                "reports": [r.to_dict() for r in self.reports]}


# -- candidates shared by A5-A7 and the audit ---------------------------------------------

def bidisc_candidates():
    """``(t, h, candidate)`` for every diagonal field of the bidisc family."""
    out = []
    for t in (0.3, 0.5):
        for h in H_VARIANTS:
            v = field_from_inverse(BidiscFamily(t, h), Diagonal())
            out.append((t, h, LempertCandidate(Diagonal(), v)))
    return out


def homotopy_candidates():
    f = Diagonal()
    v0 = field_from_inverse(BidiscProjection(1), f)
    v1 = field_from_inverse(BidiscProjection(2), f)
    return [(t, LempertCandidate(f, combine(v0, v1, t))) for t in (0.0, 0.25, 0.5, 1.0)]


def flat_candidates():
    f = Flat(0)
    out = []
    for w1, w2, t in FLAT_CASES:
        v = combine(field_from_inverse(PsiOmega(w2), f), field_from_inverse(PsiOmega(w1), f), t)
        out.append((w1, w2, t, LempertCandidate(f, v)))
    return out


# -- criteria --------------------------------------------------------------------------------

def a1(seed):
    return [left_inverse_residual(Royal(), RoyalPhi(), 64, tolerance=1e-12)]


def a2(seed):
    return [range_supremum(RoyalPhi(), Domain.G2, 100_000, seed)]


def a3(seed):
    fib = fiber_affinity(Royal(), RoyalPhi(), tolerance=1e-9)
    rel = royal_fiber_relation(fib.kernel_points, fib.kernel_values)
    return [fib, aggregate_report("royal_fiber_relation", {"points": len(rel)},
                                  {"max_residual": rel.max()}, {"max_residual": ("<", 1e-10)})]


def a4(seed):
    out = []
    for f, G in ((BallAxis(), BallSimple()), (BallFamily(1), BallRefined())):
        fib = fiber_affinity(f, G)
        out.append(aggregate_report(
            "non_lempert_detection", {"geodesic": f, "inverse": G},
            {"kernel_deviation_at_max_step": fib.metrics["kernel_deviation_at_max_step"],
             "fiber_check_passed": int(fib.passed)},
            {"kernel_deviation_at_max_step": (">", 1e-6), "fiber_check_passed": ("==", 0)}))
    return out


def a5(seed):
    out = []
    for t, h, c in bidisc_candidates():
        t_hat = float(np.real(c.v(0.0)[0]))
        out.append(inverse_agreement(build_inverse(c), BidiscAffine(t_hat), 1000, seed, 1e-8))
        out[-1].inputs["extracted_t"] = t_hat
        out.append(kernel_constancy(c.v, tolerance=1e-9))
    return out


def a6(seed):
    return [inverse_agreement(build_inverse(c), BidiscAffine(1 - t), 1000, seed, 1e-10)
            for t, c in homotopy_candidates()]


def a7(seed):
    return [inverse_agreement(build_inverse(c), PsiOmega(t * w1 + (1 - t) * w2), 1000, seed, 1e-9)
            for w1, w2, t, c in flat_candidates()]


def a8(seed):
    omegas = np.exp(2j * np.pi * np.arange(8) / 8)
    return [left_inverse_residual(Royal(), RoyalMinusPsi(w), 64, tolerance=1e-12) for w in omegas]


def a9(seed):
    return [beta_alpha_checks(100_000, seed)]


def a10(seed):
    probes = [boundary_probe(PsiOmega(1), LinearG2(c), 12, 1 - 2 * c, 1e-6) for c in (0.25, 0.5, 0.75)]
    royal = boundary_probe(PsiOmega(1), RoyalApproach(1), 12)
    disc = cluster_discrepancy(probes + [royal])
    return probes + [royal, aggregate_report("cluster_discrepancy", {"paths": 4},
                                             {"discrepancy": disc}, {"discrepancy": (">=", 0.5)})]


def a11(seed):
    return [left_inverse_residual(BallFamily(t), BallRefined(), 64, True, 1e-10,
                                  expected_center_abs=t * t / (2 + t * t), center_tolerance=1e-9)
            for t in (0.5, 1.0, 2.0)]


def a12(seed):
    return [distance_consistency(Domain.BIDISC, 1000, seed, "random", 1e-8),
            distance_consistency(Domain.G2, 1000, seed, "royal", 1e-8)]


def a13(seed):
    probes = [boundary_probe(BallSimple(), BallVertical(a), 12, a, 1e-8) for a in (0.0, 0.5)]
    disc = cluster_discrepancy(probes)
    return probes + [aggregate_report("cluster_discrepancy", {"paths": 2},
                                      {"discrepancy_error": abs(disc - 0.5)},
                                      {"discrepancy_error": ("<", 1e-8)})]


def a14(seed):
    bidisc = [c for *_, c in bidisc_candidates()] + [c for _, c in homotopy_candidates()]
    flat = [c for *_, c in flat_candidates()]
    return [uniqueness_audit(bidisc, sample(Domain.BIDISC, 1000, seed)),
            uniqueness_audit(flat, sample(Domain.G2, 1000, seed))]


def a15(seed):
    cases = (((0, 0), 0.5, 0.5), ((0.3, 0), 0.5, 0.5), ((0.3, 0.2j), 0.7, 0.4))
    return [kobayashi_ball_identity(p, R, rho, 10_000, seed) for p, R, rho in cases]


CRITERIA = {
    "A1": ("royal identity", ("identity", "royal"), a1),
    "A2": ("range of the royal inverse", ("range", "royal"), a2),
    "A3": ("royal fiber affinity", ("fiber", "royal"), a3),
    "A4": ("non-Lempert detection", ("fiber", "ball"), a4),
    "A5": ("bidisc lempertization", ("lempertize", "bidisc"), a5),
    "A6": ("homotopy endpoints", ("lempertize", "bidisc"), a6),
    "A7": ("flat recovery", ("lempertize", "g2"), a7),
    "A8": ("royal psi identities", ("identity", "royal"), a8),
    "A9": ("image computations", ("images", "g2"), a9),
    "A10": ("cluster-set discrepancy", ("boundary", "g2"), a10),
    "A11": ("ball family reduction", ("identity", "ball"), a11),
    "A12": ("distance consistency", ("distance",), a12),
    "A13": ("ball cluster values", ("boundary", "ball"), a13),
    "A14": ("uniqueness audit", ("lempertize", "uniqueness"), a14),
    "A15": ("kobayashi ball identity", ("distance", "bidisc"), a15),
}


def select(only=None) -> list[str]:
    """Criterion keys matching ``only`` (a key like ``A3`` or a tag like ``fiber``)."""
    if not only:
        return list(CRITERIA)
    wanted = [w.strip().lower() for w in only.split(",") if w.strip()]
    keys = [k for k, (_, tags, _) in CRITERIA.items()
            if any(w == k.lower() or w in tags for w in wanted)]
    if not keys:
        raise ValueError(f"no acceptance criterion matches {only!r}")
    return keys


def run_criterion(key: str, seed: int = 42) -> CriterionResult:
    title, _, func = CRITERIA[key]
    result = CriterionResult(key, title)
    try:
        result.reports = func(seed)
    except (LempertError, ArithmeticError) as exc:
        result.error = f"{type(exc).__name__}: {exc}"
    return result


def run_suite(seed: int = 42, only=None, jobs: int = 1) -> list[CriterionResult]:
    keys = select(only)
    if jobs <= 1:
        return [run_criterion(k, seed) for k in keys]
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(run_criterion, keys, [seed] * len(keys)))
