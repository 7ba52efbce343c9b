"""The royal geodesic of the symmetrized bidisc and its left inverses.

Run: python3 demos/01_royal_inverse.py
"""
from __future__ import annotations

import numpy as np

from lempertkit import Domain, PsiOmega, Royal, RoyalMinusPsi, RoyalPhi, sample
from lempertkit.verify import fiber_affinity, left_inverse_residual, range_supremum

f = Royal()
Phi = RoyalPhi()

# f(lam) = (2 lam, lam^2); both Phi and -conj(w) Psi_w undo it
print("f(0.5) =", f(0.5), " Phi(f(0.5)) =", Phi(f(0.5)))
for w in (1, 1j, np.exp(2j)):
    rep = left_inverse_residual(f, RoyalMinusPsi(w))
    print(f"-conj(w) Psi_w with w={complex(w):.3f}: residual {rep.metrics['max_residual']:.2e}")
print("Phi residual:", left_inverse_residual(f, Phi).metrics["max_residual"])

# Phi maps the whole domain into the disc, not just the geodesic
rep = range_supremum(Phi, Domain.G2, 100_000, seed=42)
print(f"sup |Phi| over 1e5 samples = {rep.metrics['sup_abs']:.6f}")

# fibers of Phi are complex lines: moving along ker Phi' keeps the value
rep = fiber_affinity(f, Phi)
print(f"kernel drift {rep.metrics['metric_kernel']:.1e}, transverse growth {rep.metrics['metric_offkernel']:.3f}")

# off the geodesic Phi differs from every -conj(w) Psi_w
z = sample(Domain.G2, 5, seed=1)
print("Phi at samples:    ", np.round(Phi(z), 4))
print("-Psi_1 at samples: ", np.round(RoyalMinusPsi(1)(z), 4))
print("Psi_0 passes the royal identity:", left_inverse_residual(f, PsiOmega(0)).passed)
