from __future__ import annotations

import io
import math

import numpy as np
import pytest
from hypothesis import given

from conftest import disc_points
from lempertkit.domains import (
    Domain,
    alpha_map,
    beta_map,
    boundary_distance_estimate,
    contains,
    pair_from_point,
    quadratic_roots,
    region_A_contains,
    sample,
    samples_to_csv,
    symmetrize,
)
from lempertkit.errors import DimensionMismatch, OutsideDomain


@pytest.mark.parametrize("z, inside", [((0, 0), True), ((1, 0.25), True), ((2, 1), False)])
def test_g2_membership_examples(z, inside):
    assert bool(contains(Domain.G2, z)) is inside


def test_g2_membership_independent_oracle():
    rng = np.random.default_rng(3)
    z = rng.uniform(-2.2, 2.2, (20000, 2)) + 1j * rng.uniform(-1.2, 1.2, (20000, 2))
    s, p = z[:, 0], z[:, 1]
    oracle = np.abs(s - np.conj(s) * p) + np.abs(p) ** 2 < 1
    got = contains(Domain.G2, z)
    clear = np.abs(np.abs(s - np.conj(s) * p) + np.abs(p) ** 2 - 1) > 1e-9
    assert np.array_equal(got[clear], oracle[clear])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        contains(Domain.BIDISC, 0.3)


@pytest.mark.parametrize("l1, l2, expected", [(0, 0, (0, 0)), (0.5, 0.5, (1, 0.25)),
                                              (0.5, 0.6j, (0.5 + 0.6j, 0.3j))])
def test_symmetrize_examples(l1, l2, expected):
    assert np.allclose(symmetrize(l1, l2), expected, atol=1e-15)


def test_pair_from_point_examples():
    assert np.allclose(sorted(pair_from_point((0, 0)), key=abs), [0, 0])
    assert np.allclose(pair_from_point((1, 0.25)), [0.5, 0.5], atol=1e-7)
    a, b = pair_from_point((0.5, 0.3))
    assert a == pytest.approx(np.conj(b))
    assert abs(a) ** 2 == pytest.approx(0.3)
    with pytest.raises(OutsideDomain):
        pair_from_point((2, 1))


def test_sample_examples():
    z = sample(Domain.DISC, 1, 42)
    assert z.shape == (1,) and abs(z[0]) < 1
    g = sample(Domain.G2, 1000, 42)
    assert g.shape == (1000, 2) and contains(Domain.G2, g).all()
    b = sample(Domain.BALL, 1000, 7)
    assert np.all(np.sum(np.abs(b) ** 2, axis=-1) < 1)
    assert np.array_equal(sample(Domain.G2, 1000, 42), g)


def test_sampled_g2_roots_inside():
    z = sample(Domain.G2, 100_000, 42)
    r1, r2 = quadratic_roots(z[:, 0], z[:, 1])
    assert np.all(np.abs(r1) < 1) and np.all(np.abs(r2) < 1)


def test_symmetrize_round_trip():
    z = sample(Domain.G2, 10_000, 1)
    a, b = pair_from_point(z)
    assert np.max(np.abs(symmetrize(a, b) - z)) < 1e-12


@pytest.mark.parametrize("d, z, expected", [
    (Domain.BIDISC, (0, 0), 1.0),
    (Domain.BIDISC, (0.2, 0.6), 0.4),
    (Domain.BALL, (0.5, -0.5), (1 - math.sqrt(0.5)) / math.sqrt(2)),
])
def test_boundary_distance_examples(d, z, expected):
    assert boundary_distance_estimate(d, z) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("d", list(Domain))
def test_boundary_distance_polydisc_inside(d):
    z = sample(d, 1000, 5)
    r = boundary_distance_estimate(d, z)
    assert np.all(r > 0)
    dirs = np.exp(2j * np.pi * np.arange(64) / 64)
    if d.dim == 1:
        pts = z[:, None] + r[:, None] * dirs
        assert contains(d, pts).all()
        return
    for j in range(2):
        pts = np.repeat(z[:, None, :], 64, axis=1)
        pts[:, :, j] += r[:, None] * dirs
        assert contains(d, pts).all()


def test_boundary_distance_outside():
    with pytest.raises(OutsideDomain):
        boundary_distance_estimate(Domain.G2, (2, 1))


@pytest.mark.parametrize("w, inside", [(0, True), (1.5, False), (0.99 + 0.1j, True), (-1.0, False)])
def test_region_a_examples(w, inside):
    assert bool(region_A_contains(w, 1e-6)) is inside


def test_beta_alpha_examples():
    assert beta_map((0, 0)) == 0
    assert beta_map((1, 0.25)) == pytest.approx(0.8)
    assert alpha_map(0.8) == pytest.approx(0.5)


@given(disc_points(0.99), disc_points(0.99))
def test_beta_lands_in_region_a(l1, l2):
    assert region_A_contains(beta_map(symmetrize(l1, l2)))


def test_csv_columns():
    text = samples_to_csv(Domain.BIDISC, sample(Domain.BIDISC, 3, 0))
    rows = text.strip().splitlines()
    assert rows[0] == "domain,re(z1),im(z1),re(z2),im(z2)"
    assert len(rows) == 4 and rows[1].startswith("bidisc,")
    buf = io.StringIO()
    samples_to_csv(Domain.DISC, sample(Domain.DISC, 2, 0), buf)
    assert buf.getvalue().splitlines()[1].endswith(",,")
