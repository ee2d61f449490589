"""Exterior algebra and calculus on flat charts."""

import numpy as np
import pytest

from mapforms import catalog as cat
from mapforms.charts import affine_field, constant_field, identity_map, compose
from mapforms.forms import (DegreeError, antisymmetry_defect, coefficient_form,
                            coordinate_form, exterior_derivative, form_scale,
                            form_sum, integrate, interior, lie_derivative,
                            lie_derivative_flow, multilinearity_defect,
                            pullback, sample_difference, scalar_coordinate,
                            strip_analytic, trig_scalar, volume_form, wedge,
                            zero_form)
from mapforms.charts import ChartMap, DimensionMismatch
from mapforms.domains import circle, interval, torus2

EX, EY = np.eye(2)
E3 = np.eye(3)


def test_wedge_coordinate_forms():
    dx = coordinate_form((0,), 2)
    dy = coordinate_form((1,), 2)
    dxdy = wedge(dx, dy)
    assert dxdy(np.zeros(2), EX, EY) == pytest.approx(1.0)
    assert wedge(dx, dx)(np.zeros(2), EX, EY) == pytest.approx(0.0)
    assert dxdy(np.zeros(2), EY, EX) == pytest.approx(-1.0)


def test_wedge_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        wedge(coordinate_form((0,), 2), coordinate_form((0,), 3))


def test_wedge_graded_commutativity():
    rng = np.random.default_rng(1)
    for p, q in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        a = cat.random_form(4, p, rng)
        b = cat.random_form(4, q, rng)
        lhs = wedge(a, b)
        rhs = form_scale((-1.0) ** (p * q), wedge(b, a))
        assert sample_difference(lhs, rhs, rng, 10) < 1e-12


def test_wedge_associativity():
    rng = np.random.default_rng(2)
    a = cat.random_form(4, 1, rng)
    b = cat.random_form(4, 1, rng)
    c = cat.random_form(4, 2, rng)
    lhs = wedge(wedge(a, b), c)
    rhs = wedge(a, wedge(b, c))
    assert sample_difference(lhs, rhs, rng, 10) < 1e-12


def test_interior_coordinate_examples():
    dxdy = coordinate_form((0, 1), 2)
    dy = coordinate_form((1,), 2)
    dx = coordinate_form((0,), 2)
    rng = np.random.default_rng(3)
    assert sample_difference(interior(dxdy, EX), dy, rng, 8) < 1e-14
    assert sample_difference(interior(dxdy, EY), form_scale(-1.0, dx), rng, 8) < 1e-14


def test_interior_squares_to_zero():
    rng = np.random.default_rng(4)
    a = cat.random_form(3, 3, rng)
    X = cat.random_affine_field(3, rng)
    ii = interior(interior(a, X), X)
    assert sample_difference(ii, zero_form(3, 1), rng, 10) < 1e-13


def test_interior_degree_zero_rejected():
    with pytest.raises(DegreeError):
        interior(coordinate_form((), 2), EX)


def test_exterior_derivative_linear_coefficient():
    xdy = coefficient_form(2, 1, {(1,): scalar_coordinate(0, 2)})
    d_fd = exterior_derivative(strip_analytic(xdy), step=1e-4)
    # linear coefficients are exact under central differences
    assert d_fd(np.array([0.3, -0.7]), EX, EY) == pytest.approx(1.0, abs=1e-10)
    d_an = exterior_derivative(xdy)
    assert d_an(np.array([0.3, -0.7]), EX, EY) == pytest.approx(1.0)


def test_exterior_derivative_of_closed_form():
    dxdy = coordinate_form((0, 1), 2)
    d = exterior_derivative(strip_analytic(dxdy), step=1e-4)
    v = np.array([0.2, 0.5])
    assert abs(d(v, EX, EY, np.array([1.0, 2.0]))) < 1e-10


def test_exterior_derivative_sine_coefficient():
    sxdy = coefficient_form(2, 1, {(1,): trig_scalar(2, [[1.0, 0.0]], [1.0], [0.0])})
    d = exterior_derivative(strip_analytic(sxdy), step=1e-4)
    assert abs(d(np.zeros(2), EX, EY) - 1.0) < 1e-8


def test_exterior_derivative_richardson():
    rng = np.random.default_rng(5)
    a = cat.random_form(3, 1, rng)
    fd = exterior_derivative(strip_analytic(a), step=1e-3, richardson=True)
    assert sample_difference(fd, a.analytic_d, rng, 10) < 1e-9


def test_dd_vanishes_under_fd():
    rng = np.random.default_rng(6)
    a = strip_analytic(cat.random_form(3, 1, rng))
    step = 1e-4
    dd = exterior_derivative(exterior_derivative(a, step), step)
    x = rng.uniform(-1, 1, 3)
    vs = [rng.uniform(-1, 1, 3) for _ in range(3)]
    assert abs(dd.evaluator(x, vs)) < 10 * step


def test_pullback_circle_restriction():
    dy = coordinate_form((1,), 2)
    f = ChartMap(lambda t: np.array([np.cos(t[0]), np.sin(t[0])]), 1, 2,
                 jacobian_func=lambda t: np.array([[-np.sin(t[0])], [np.cos(t[0])]]))
    pb = pullback(dy, f)
    for theta in (0.0, 0.7, 2.1):
        assert pb(np.array([theta]), np.array([1.0])) == pytest.approx(np.cos(theta))


def test_pullback_identity_and_functoriality():
    rng = np.random.default_rng(7)
    a = cat.random_form(3, 2, rng)
    assert sample_difference(pullback(a, identity_map(3)), a, rng, 10) < 1e-14
    phi = cat.ChartMap(lambda x: x + 0.2 * np.sin(x[::-1]), 3, 3)
    psi = cat.ChartMap(lambda x: np.array([x[1], x[2], x[0] + 0.1 * x[1] ** 2]), 3, 3)
    lhs = pullback(a, compose(phi, psi))
    rhs = pullback(pullback(a, phi), psi)
    assert sample_difference(lhs, rhs, rng, 10) < 1e-7


def test_pullback_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        pullback(coordinate_form((0,), 2), identity_map(3))


def test_lie_derivative_translation():
    xdy = coefficient_form(2, 1, {(1,): scalar_coordinate(0, 2)})
    L = lie_derivative(xdy, constant_field(EX), step=1e-4)
    dy = coordinate_form((1,), 2)
    rng = np.random.default_rng(8)
    assert sample_difference(L, dy, rng, 10) < 1e-9


def test_lie_derivative_divergence_free_preserves_area():
    A = np.array([[0.3, 0.8], [0.5, -0.3]])  # trace zero
    L = lie_derivative(volume_form(2), affine_field(A), step=1e-4)
    rng = np.random.default_rng(9)
    assert sample_difference(L, zero_form(2, 2), rng, 10) < 1e-9


def test_lie_derivative_degree_zero():
    h = coefficient_form(2, 0, {(): trig_scalar(2, [[1.0, 0.5]], [1.0], [0.3])})
    X = constant_field(np.array([1.0, 2.0]))
    L = lie_derivative(h, X, step=1e-5)
    x = np.array([0.2, -0.4])
    grad = np.array([np.cos(x @ [1.0, 0.5] + 0.3), 0.5 * np.cos(x @ [1.0, 0.5] + 0.3)])
    assert L(x) == pytest.approx(grad @ [1.0, 2.0], abs=1e-9)


def test_lie_derivative_flow_oracle():
    rng = np.random.default_rng(10)
    a = cat.random_form(3, 2, rng)
    X = cat.random_affine_field(3, rng, amp=0.6)
    cartan = lie_derivative(a, X, step=1e-4)
    flow = lie_derivative_flow(a, X, t_step=1e-4)
    assert sample_difference(cartan, flow, rng, 10) < 1e-5


def test_integrate_volumes():
    assert integrate(coordinate_form((0,), 1), circle(64)) == pytest.approx(2 * np.pi)
    sin2 = coefficient_form(2, 2, {(0, 1): trig_scalar(
        2, [[2.0, 0.0], [0.0, 0.0]], [-0.5, 0.5], [np.pi / 2, np.pi / 2])})
    # sin^2(x) = (1 - cos 2x)/2 as a trig polynomial
    assert integrate(sin2, torus2(16)) == pytest.approx(2 * np.pi ** 2)
    assert integrate(coordinate_form((0,), 1), interval(33)) == pytest.approx(1.0)


def test_integrate_degree_mismatch():
    with pytest.raises(DegreeError):
        integrate(coordinate_form((0,), 2), torus2(8))


def test_named_form_catalog():
    vol = cat.named_form("vol3")
    assert vol(np.zeros(3), *E3) == pytest.approx(1.0)
    assert cat.named_form("sin_x_dy")(np.array([np.pi / 2, 0.0]), EY) == \
        pytest.approx(1.0)
    assert "dx^dy" in cat.form_ids()
    with pytest.raises(KeyError):
        cat.named_form("not-a-form")


def test_produced_forms_are_alternating_and_multilinear():
    rng = np.random.default_rng(11)
    a = cat.random_form(4, 2, rng)
    b = cat.random_form(4, 1, rng)
    X = cat.random_affine_field(4, rng)
    produced = [
        wedge(a, b),
        interior(a, X),
        exterior_derivative(strip_analytic(b), step=1e-4),
        pullback(a, cat.ChartMap(lambda x: x + 0.1 * np.sin(x), 4, 4)),
        lie_derivative(a, X, step=1e-4),
        form_sum(a, form_scale(2.0, a)),
    ]
    for form in produced:
        assert antisymmetry_defect(form, rng, 8) < 1e-7
        assert multilinearity_defect(form, rng, 8) < 1e-7
