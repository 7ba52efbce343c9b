from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given

from conftest import disc_points, unimodular
from lempertkit.errors import NoAutomorphism
from lempertkit.hyperbolic import (
    DiscPoint,
    MobiusMap,
    mobius_apply,
    mobius_fit,
    mobius_inverse,
    poincare_distance,
    pseudo_distance,
)


@pytest.mark.parametrize("w, z, expected", [(0, 0.5, 0.5), (0.5, 0.5, 0.0), (0.5, -0.5, 0.8)])
def test_pseudo_distance_examples(w, z, expected):
    assert pseudo_distance(w, z) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("w, z, expected", [(0, 0, 0.0), (0, math.tanh(1), 1.0),
                                            (0.5, -0.5, math.atanh(0.8))])
def test_poincare_distance_examples(w, z, expected):
    assert poincare_distance(w, z) == pytest.approx(expected, abs=1e-12)


def test_disc_point_rejects_boundary():
    with pytest.raises(ValueError):
        DiscPoint(1.0)
    with pytest.raises(ValueError):
        DiscPoint(1 - 1e-16)
    assert DiscPoint(0.3j) == 0.3j


def test_mobius_examples():
    assert mobius_apply(MobiusMap(), 0.3) == pytest.approx(0.3)
    a = MobiusMap(1, 0.5)
    assert abs(mobius_apply(a, 0.5)) < 1e-15
    assert mobius_apply(mobius_inverse(a), 0) == pytest.approx(0.5)


def test_mobius_rejects_non_unimodular_rotation():
    with pytest.raises(ValueError):
        MobiusMap(1.1, 0.0)


def test_mobius_fit_examples():
    ident = mobius_fit([(0, 0), (0.5, 0.5), (-0.5, -0.5)])
    assert abs(ident.center) < 1e-12 and abs(ident.rotation - 1) < 1e-12
    with pytest.raises(NoAutomorphism):
        mobius_fit([(0, 0), (0.5, 0.5), (-0.5, 0.4)])


def test_mobius_fit_boundary_pairs():
    # lam -> (lam + 1/3) / (1 + lam/3) fixes both 1 and -1
    a = mobius_fit([(0, 1 / 3), (1, 1), (-1, -1)])
    lam = np.linspace(-0.9, 0.9, 7) + 0.2j
    assert np.max(np.abs(a(lam) - (lam + 1 / 3) / (1 + lam / 3))) < 1e-10


def test_mobius_fit_rejects_inconsistent_boundary_pairs():
    # the same map sends -1 to -1, not to -1/2
    with pytest.raises(NoAutomorphism):
        mobius_fit([(0, 1 / 3), (1, 1), (-1, -0.5)])


@given(disc_points(), disc_points(), disc_points(0.9), unimodular())
def test_invariance_and_symmetry(w, z, c, rot):
    a = MobiusMap(rot, c)
    assert pseudo_distance(w, z) == pytest.approx(pseudo_distance(z, w), abs=1e-15)
    assert pseudo_distance(a(w), a(z)) == pytest.approx(pseudo_distance(w, z), abs=1e-12)


@given(disc_points(0.9), unimodular())
def test_unit_circle_preserved_and_round_trip(c, rot):
    a = MobiusMap(rot, c)
    circle = np.exp(2j * np.pi * np.arange(64) / 64)
    assert np.max(np.abs(np.abs(a(circle)) - 1)) < 1e-12
    lam = 0.7 * circle
    assert np.max(np.abs(a.inverse()(a(lam)) - lam)) < 1e-13
    assert np.max(np.abs(a.compose(a.inverse())(lam) - lam)) < 1e-12


@given(disc_points(0.9), unimodular(), disc_points(0.8), disc_points(0.8), disc_points(0.8))
def test_fit_recovers_known_map(c, rot, x1, x2, x3):
    xs = [x1, x2, x3]
    if min(abs(a - b) for a, b in [(x1, x2), (x1, x3), (x2, x3)]) < 1e-2:
        return
    a = MobiusMap(rot, c)
    fitted = mobius_fit([(x, a(x)) for x in xs])
    grid = 0.9 * np.exp(2j * np.pi * np.arange(32) / 32)
    assert np.max(np.abs(fitted(grid) - a(grid))) < 1e-10
