"""Complex geodesics, their left inverses and the lempertization construction.

Numerical toolkit for the unit disc, the bidisc, the unit ball in C^2 and the
symmetrized bidisc.
"""
from __future__ import annotations

from .domains import Domain, boundary_distance_estimate, contains, margin, sample
from .errors import LempertError, NumericalFailure
from .geodesics import (
    BallAxis,
    BallFamily,
    BidiscGraph,
    BlaschkeMultiplier,
    ConstantMultiplier,
    Diagonal,
    Flat,
    IdentityMultiplier,
    Royal,
)
from .hyperbolic import DiscPoint, MobiusMap, mobius_fit, poincare_distance, pseudo_distance
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
    numeric_gradient,
)
from .lempertize import (
    LempertCandidate,
    RootSolveConfig,
    build_inverse,
    combine,
    extension_certificate,
    field_from_inverse,
    normalize_field,
    solve_point,
    zero_count,
)
from .metrics import caratheodory_star, distance_consistency, lempert_star
from .verify import VerificationReport

__version__ = "0.1.0"
