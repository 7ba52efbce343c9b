"""Boundary cluster values and invariant distances.

Run: python3 demos/04_boundary_and_distances.py
"""
from __future__ import annotations

from lempertkit import BallSimple, Domain, PsiOmega, Royal, caratheodory_star, lempert_star
from lempertkit.verify import (
    BallVertical,
    LinearG2,
    RoyalApproach,
    boundary_probe,
    kobayashi_ball_identity,
)

# Psi_1 has different limits at (2, 1) depending on the approach
for c in (0.25, 0.5, 0.75):
    rep = boundary_probe(PsiOmega(1), LinearG2(c))
    print(f"along (2 - d, 1 - {c} d): limit {rep.limit.real:+.6f} (error {rep.metrics['error_estimate']:.0e})")
print(f"along the royal geodesic:   limit {boundary_probe(PsiOmega(1), RoyalApproach(1)).limit.real:+.6f}")

# z1 / sqrt(1 - z2^2) on the ball near (0, 1)
for a in (0, 0.5):
    print(f"ball, vertical path with a={a}: limit {boundary_probe(BallSimple(), BallVertical(a)).limit.real:.6f}")

# distances: Caratheodory via Psi_w optimization, Lempert via explicit discs
for w, z in (((0, 0), (0.5, 0.3)), (Royal()(0), Royal()(0.5))):
    c, l = caratheodory_star(Domain.G2, w, z), lempert_star(Domain.G2, w, z)
    print(f"G2 {w} -> {tuple(complex(x) for x in z)}: c*={c.value_star:.6f} l*={l.value_star:.6f} [{l.method}]")
r = lempert_star(Domain.BIDISC, (0, 0), (0.2, 0.6))
print("bidisc witness disc at lambda=0.6:", r.disc(r.params[1]))

rep = kobayashi_ball_identity((0.3, 0.2j), 0.7, 0.4)
print(f"Kobayashi ball rescaling: agreement {rep.metrics['agreement_rate']:.3f} on {int(rep.metrics['n_used'])} points")
