from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lempertkit._numerics import (
    contour_derivative,
    golden_section_max,
    is_power_of_two,
    radial_angular_grid,
    richardson,
)


def test_grid_shape_and_radii():
    g = radial_angular_grid(64)
    assert g.shape == (64,)
    assert np.allclose(sorted(set(np.round(np.abs(g), 12))), [0.1, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.99])
    assert np.min(np.abs(g.imag)) > 0


def test_contour_derivative_exp():
    lam = np.array([0.1, -0.3j, 0.5 + 0.2j])
    d = contour_derivative(np.exp, lam, 0.2, 32)
    assert np.max(np.abs(d - np.exp(lam))) < 1e-14


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_richardson_exact_on_polynomials(L, a, b):
    delta = 2.0 ** -np.arange(1, 10)
    limit, err = richardson(L + a * delta + b * delta ** 2)
    assert abs(limit - L) < 1e-9
    assert err < 1e-8


def test_richardson_short_input():
    limit, err = richardson([1.0, 1.5])
    assert math.isinf(err)
    assert math.isnan(richardson([])[0].real)


def test_richardson_sqrt_asymptotics_reports_error():
    delta = 2.0 ** -np.arange(1, 13)
    limit, err = richardson(1 + np.sqrt(delta))
    assert abs(limit - 1) < 1e-2 and err > 0


def test_golden_section():
    x, fx = golden_section_max(lambda t: -(t - 0.3) ** 2, -1, 2)
    assert x == pytest.approx(0.3, abs=1e-6) and fx == pytest.approx(0, abs=1e-12)
    x, fx = golden_section_max(lambda t: 1.0, 0, 1)
    assert fx == 1.0 and 0 <= x <= 1


def test_power_of_two():
    assert [n for n in range(1, 70) if is_power_of_two(n)] == [1, 2, 4, 8, 16, 32, 64]
    assert not is_power_of_two(0)
