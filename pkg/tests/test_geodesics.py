from __future__ import annotations

import numpy as np
import pytest

from lempertkit._numerics import contour_derivative, radial_angular_grid
from lempertkit.domains import Domain, contains
from lempertkit.geodesics import (
    BallAxis,
    BallFamily,
    BidiscGraph,
    BlaschkeMultiplier,
    ConstantMultiplier,
    Diagonal,
    Flat,
    IdentityMultiplier,
    Royal,
    codomain,
)

CATALOGUE = [
    Diagonal(),
    BidiscGraph(ConstantMultiplier(0.4j)),
    BidiscGraph(IdentityMultiplier()),
    BidiscGraph(BlaschkeMultiplier(0.3 - 0.2j)),
    Royal(),
    Flat(0),
    Flat(0.4 + 0.3j),
    BallFamily(0.5),
    BallFamily(1),
    BallFamily(-3),
    BallAxis(),
]


def test_eval_examples():
    assert np.allclose(Royal()(0.5), (1, 0.25))
    assert np.allclose(Flat(0)(0.3), (0, 0.3))
    assert np.allclose(BallFamily(1)(0), (0.5, -0.5))


def test_derivative_examples():
    assert np.allclose(Diagonal().derivative(0.7j), (1, 1))
    assert np.allclose(Royal().derivative(0.5), (2, 1))
    b = 0.2 + 0.5j
    assert np.allclose(Flat(b).derivative(-0.3), (np.conj(b), 1))


def test_codomains():
    assert codomain(Royal()) is Domain.G2
    assert codomain(Diagonal()) is Domain.BIDISC
    assert codomain(BallFamily(2)) is Domain.BALL


@pytest.mark.parametrize("g", CATALOGUE, ids=lambda g: repr(g))
def test_image_in_codomain(g):
    lam = radial_angular_grid(256)
    assert contains(g.codomain, g(lam)).all()


@pytest.mark.parametrize("g", CATALOGUE, ids=lambda g: repr(g))
def test_derivative_matches_contour(g):
    lam = radial_angular_grid(64)
    rho = 0.5 * (1 - np.abs(lam))
    for j in range(2):
        num = contour_derivative(lambda x: g(x)[..., j], lam, rho, 64)
        assert np.max(np.abs(num - g.derivative(lam)[..., j])) < 1e-10


@pytest.mark.parametrize("psi", [ConstantMultiplier(-1), IdentityMultiplier(), BlaschkeMultiplier(0.6j)])
def test_multipliers_bounded(psi):
    lam = radial_angular_grid(256)
    assert np.all(np.abs(psi(lam)) <= 1 + 1e-15)


def test_parameter_validation():
    with pytest.raises(ValueError):
        BallFamily(11)
    with pytest.raises(ValueError):
        Flat(1.0)
    with pytest.raises(ValueError):
        ConstantMultiplier(1.5)
