"""The construction offered on the symmetrized bidisc.

The domain is not convex, so existence and uniqueness of the root are not
guaranteed in advance.  The solver counts zeros first and reports what it
finds; the results are then compared with closed forms.

Run: python3 demos/03_symmetrized_construction.py
"""
from __future__ import annotations

import numpy as np

from lempertkit import (
    Domain,
    Flat,
    LempertCandidate,
    PsiOmega,
    Royal,
    RoyalMinusPsi,
    RoyalPhi,
    build_inverse,
    combine,
    extension_certificate,
    field_from_inverse,
    sample,
    solve_point,
    zero_count,
)

z = sample(Domain.G2, 1000, seed=42)

# royal geodesic: average the fields of -Psi_1 and +Psi_{-1}
f = Royal()
v = combine(field_from_inverse(RoyalMinusPsi(1), f), field_from_inverse(RoyalMinusPsi(-1), f), 0.5)
c = LempertCandidate(f, v)
print("zeros in |lam|<0.9 at (1, 0.25):", zero_count(c, (1, 0.25), 0.9),
      "| in |lam|<0.4:", zero_count(c, (1, 0.25), 0.4))
print("root:", solve_point(c, (1, 0.25)))
H = build_inverse(c)
print(f"constructed vs Phi: {np.max(np.abs(H(z) - RoyalPhi()(z))):.1e}")

# flat geodesic through 0: mixing two Psi fields gives Psi of the mixed parameter
g = Flat(0)
w1, w2, t = 1, 1j, 0.3
v = combine(field_from_inverse(PsiOmega(w2), g), field_from_inverse(PsiOmega(w1), g), t)
H = build_inverse(LempertCandidate(g, v))
print(f"constructed vs Psi_(t w1 + (1-t) w2): {np.max(np.abs(H(z) - PsiOmega(t * w1 + (1 - t) * w2)(z))):.1e}")

# does the inverse extend through the boundary?
for name, cand in (("flat / Psi_0", LempertCandidate(g, field_from_inverse(PsiOmega(0), g))),
                   ("royal / Phi", LempertCandidate(f, field_from_inverse(RoyalPhi(), f)))):
    cert = extension_certificate(cand, 1)
    print(f"{name:13s} at lam0=1: {cert.status:12s} field finite={cert.v_finite} "
          f"pairing={cert.pairing_bound:.3f}")
