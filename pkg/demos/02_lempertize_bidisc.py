"""Turning a left inverse of the bidisc diagonal into an affine one.

Any left inverse of lam -> (lam, lam) pulls back to the covector field
G'(f(lam)).  Solving (z - f(lam)) . v(lam) = 0 gives a new inverse whose
fibers are complex lines.  For the diagonal the result is always
t z1 + (1 - t) z2.

Run: python3 demos/02_lempertize_bidisc.py
"""
from __future__ import annotations

import numpy as np

from lempertkit import (
    BidiscAffine,
    BidiscFamily,
    BidiscProjection,
    CoordinateH,
    Diagonal,
    Domain,
    LempertCandidate,
    ProductH,
    build_inverse,
    combine,
    field_from_inverse,
    sample,
)
from lempertkit.verify import fiber_affinity, kernel_constancy

f = Diagonal()
z = sample(Domain.BIDISC, 1000, seed=42)

for h in (CoordinateH(1), ProductH()):
    G = BidiscFamily(0.3, h)
    v = field_from_inverse(G, f)
    H = build_inverse(LempertCandidate(f, v))
    dev = np.max(np.abs(H(z) - BidiscAffine(0.3)(z)))
    print(f"h={type(h).__name__:12s} field at 0.7i: {np.round(v(0.7j), 12)}  |H - affine| = {dev:.1e}")
    print("   original fibers affine?", fiber_affinity(f, G).passed,
          "| kernel constant?", kernel_constancy(v).passed)

# homotopy between the two coordinate projections
v0 = field_from_inverse(BidiscProjection(1), f)
v1 = field_from_inverse(BidiscProjection(2), f)
for t in (0.0, 0.25, 0.5, 1.0):
    H = build_inverse(LempertCandidate(f, combine(v0, v1, t)))
    print(f"t={t:.2f}: H(0.2, 0.6) = {H(np.array([0.2, 0.6])):.4f}  "
          f"(expected {(1 - t) * 0.2 + t * 0.6:.4f})")
