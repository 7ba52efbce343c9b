from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

from conftest import disc_points
from lempertkit._numerics import radial_angular_grid
from lempertkit.domains import Domain, sample, symmetrize
from lempertkit.errors import OutsideDomain
from lempertkit.geodesics import BallAxis, Diagonal, Flat, Royal
from lempertkit.hyperbolic import pseudo_distance
from lempertkit.inverses import BidiscAffine, BidiscProjection, PsiOmega, RoyalMinusPsi, RoyalPhi
from lempertkit.metrics import (
    ball_automorphism,
    caratheodory_star,
    distance_consistency,
    g2_caratheodory,
    lempert_star,
)


def test_caratheodory_examples():
    r = caratheodory_star(Domain.BIDISC, (0, 0), (0.2, 0.6))
    assert r.value_star == pytest.approx(0.6) and r.witness["coordinate"] == 2
    assert caratheodory_star(Domain.G2, (0, 0), (1, 0.25)).value_star == pytest.approx(0.5, abs=1e-12)
    r = caratheodory_star(Domain.G2, (0, 0), (0.5, 0.3))
    assert r.value_star == pytest.approx(0.44, abs=1e-12)
    assert r.witness["omega"] == pytest.approx([-1, 0], abs=1e-8)


def test_lempert_examples():
    r = lempert_star(Domain.BIDISC, (0, 0), (0.2, 0.6))
    assert r.value_star == pytest.approx(0.6)
    assert np.allclose(r.disc(r.params[1]), (0.2, 0.6)) and np.allclose(r.disc(r.params[0]), (0, 0))
    assert r.recheck((0, 0), (0.2, 0.6)) < 1e-12
    r = lempert_star(Domain.G2, Royal()(0), Royal()(0.5))
    assert r.value_star == pytest.approx(0.5) and r.witness["geodesic"]["kind"] == "Royal"
    assert lempert_star(Domain.DISC, 0, 0.5).value_star == pytest.approx(0.5)
    r = lempert_star(Domain.G2, (0, 0), (0.5, 0.3))
    assert r.method == "lempert-equality" and r.disc is None


def test_flat_witness_detected():
    f = Flat(0.3 - 0.4j)
    r = lempert_star(Domain.G2, f(0.1), f(-0.5j))
    assert r.witness["geodesic"]["kind"] == "Flat"
    assert r.recheck(f(0.1), f(-0.5j)) < 1e-12


def test_outside_domain():
    with pytest.raises(OutsideDomain):
        caratheodory_star(Domain.G2, (0, 0), (2, 1))
    with pytest.raises(OutsideDomain):
        lempert_star(Domain.BALL, (0.8, 0.8), (0, 0))


def test_ball_automorphism_involution():
    a = np.array([0.3, -0.4j])
    z = sample(Domain.BALL, 200, 1)
    assert np.max(np.abs(ball_automorphism(a, ball_automorphism(a, z)) - z)) < 1e-12
    assert np.allclose(ball_automorphism(a, a), 0)


@pytest.mark.parametrize("d", list(Domain))
def test_symmetry(d):
    w, z = sample(d, 30, 1), sample(d, 30, 2)
    for a, b in zip(w, z):
        assert caratheodory_star(d, a, b).value_star == pytest.approx(
            caratheodory_star(d, b, a).value_star, abs=1e-12)


@given(disc_points(0.95), disc_points(0.95), disc_points(0.95), disc_points(0.95))
def test_symmetrization_contracts(a, b, c, e):
    lhs = caratheodory_star(Domain.G2, symmetrize(a, b), symmetrize(c, e)).value_star
    rhs = caratheodory_star(Domain.BIDISC, (a, b), (c, e)).value_star
    assert lhs <= rhs + 1e-9


def test_grid_doubling_stable():
    w, z = sample(Domain.G2, 100, 5), sample(Domain.G2, 100, 6)
    for a, b in zip(w, z):
        assert abs(g2_caratheodory(a, b, 256)[0] - g2_caratheodory(a, b, 512)[0]) < 1e-9


@pytest.mark.parametrize("f, G, exact", [
    (Diagonal(), BidiscAffine(0.3), True), (Diagonal(), BidiscProjection(2), True),
    (Royal(), RoyalPhi(), True), (Royal(), RoyalMinusPsi(-1), True), (Flat(0.2j), PsiOmega(0), True),
    (BallAxis(), None, True),
], ids=repr)
def test_left_inverse_lower_bound(f, G, exact):
    lam = radial_angular_grid(32)[::3]
    for i in range(0, len(lam), 2):
        for j in range(1, len(lam), 5):
            c = caratheodory_star(f.codomain, f(lam[i]), f(lam[j])).value_star
            m = pseudo_distance(lam[i], lam[j])
            if G is not None:
                g = pseudo_distance(G(f(lam[i])), G(f(lam[j])))
                assert g <= c + 1e-10
                if exact:
                    assert g == pytest.approx(c, abs=1e-10)
            else:
                assert m == pytest.approx(c, abs=1e-10)


def test_distance_consistency_examples():
    r = distance_consistency(Domain.BIDISC, 1000, 42)
    assert r.passed and r.metrics["max_witness_gap"] < 1e-10
    r = distance_consistency(Domain.G2, 300, 42, "royal")
    assert r.passed and r.metrics["max_param_gap"] < 1e-6
    r = distance_consistency(Domain.DISC, 200, 42)
    assert r.passed and r.metrics["max_witness_gap"] == 0
    assert distance_consistency(Domain.G2, 200, 1, "flat").passed
    assert distance_consistency(Domain.BALL, 300, 3).passed
    with pytest.raises(ValueError):
        distance_consistency(Domain.BIDISC, 10, 1, "spiral")
