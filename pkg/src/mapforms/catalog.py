"""Named test objects and seeded random generators.

The string-addressable catalog backs the command line; the random
generators produce trigonometric-polynomial data with bounded mode numbers
so that spectral quadrature and differentiation are exact on reasonable
grids and every suite is reproducible from a seed.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import mapspace as ms
from .charts import ChartMap, VectorField, affine_field, constant_field
from .domains import SourceDomain
from .forms import (Form, ScalarFunc, coefficient_form, coordinate_form,
                    scalar_coordinate, trig_scalar, volume_form)

Array = np.ndarray


# ---------------------------------------------------------------------------
# named forms

def _sin_x_dy() -> Form:
    return coefficient_form(2, 1, {(1,): trig_scalar(2, [[1.0, 0.0]], [1.0], [0.0])},
                            name="sin(x) dy")


def _x_dy() -> Form:
    return coefficient_form(2, 1, {(1,): scalar_coordinate(0, 2)}, name="x dy")


def _z_dx_dy() -> Form:
    return coefficient_form(3, 2, {(0, 1): scalar_coordinate(2, 3)}, name="z dx^dy")


_NAMED_FORMS = {
    "dx": lambda: coordinate_form((0,), 2, name="dx"),
    "dy": lambda: coordinate_form((1,), 2, name="dy"),
    "dx3": lambda: coordinate_form((0,), 3, name="dx"),
    "dy3": lambda: coordinate_form((1,), 3, name="dy"),
    "dz3": lambda: coordinate_form((2,), 3, name="dz"),
    "dx^dy": lambda: coordinate_form((0, 1), 2, name="dx^dy"),
    "dx^dy3": lambda: coordinate_form((0, 1), 3, name="dx^dy"),
    "dy^dz3": lambda: coordinate_form((1, 2), 3, name="dy^dz"),
    "dx^dy^dz": lambda: volume_form(3),
    "du1^du3": lambda: coordinate_form((0, 2), 4, name="du1^du3"),
    "x_dy": _x_dy,
    "sin_x_dy": _sin_x_dy,
    "z_dx^dy": _z_dx_dy,
    "area2": lambda: volume_form(2),
    "vol3": lambda: volume_form(3),
}


def named_form(name: str) -> Form:
    try:
        return _NAMED_FORMS[name]()
    except KeyError:
        raise KeyError(
            f"unknown form id {name!r}; available: {sorted(_NAMED_FORMS)}") from None


def form_ids() -> list:
    return sorted(_NAMED_FORMS)


# ---------------------------------------------------------------------------
# named vector fields and maps

def named_field(name: str, dim: int = 3) -> VectorField:
    if name == "e_x":
        return constant_field(np.eye(dim)[0], name="e_x")
    if name == "e_y":
        return constant_field(np.eye(dim)[1], name="e_y")
    if name == "e_z":
        return constant_field(np.eye(dim)[2], name="e_z")
    if name == "radial":
        return VectorField(lambda x: np.concatenate([x[:2], np.zeros(dim - 2)]),
                           dim, jacobian_func=lambda x: np.diag([1.0, 1.0] + [0.0] * (dim - 2)),
                           name="radial")
    if name == "rotation":
        A = np.zeros((dim, dim))
        A[0, 1], A[1, 0] = -1.0, 1.0
        return affine_field(A, name="rotation")
    raise KeyError(f"unknown field id {name!r}")


def unit_circle_map(dom: SourceDomain, target_dim: int = 3) -> ms.MapPoint:
    """The unit circle in the (x,y)-plane of R^m."""
    def f(s):
        out = np.zeros(target_dim)
        out[0], out[1] = np.cos(s[0]), np.sin(s[0])
        return out
    return ms.map_from_function(dom, f, target_dim)


def torus_graph_map(dom: SourceDomain) -> ms.MapPoint:
    """The standard flat embedding of the 2-torus into R^4."""
    def f(s):
        return np.array([np.cos(s[0]), np.sin(s[0]), np.cos(s[1]), np.sin(s[1])])
    return ms.map_from_function(dom, f, 4)


# ---------------------------------------------------------------------------
# random generators

def random_scalar(dim: int, rng: np.random.Generator, n_terms: int = 2,
                  max_mode: int = 2, amp: float = 1.0,
                  integer_modes: bool = True) -> ScalarFunc:
    """Random trigonometric scalar; integer modes make it 2pi-periodic."""
    if integer_modes:
        K = rng.integers(-max_mode, max_mode + 1, size=(n_terms, dim)).astype(float)
    else:
        K = rng.uniform(-1.0, 1.0, size=(n_terms, dim))
    A = amp * rng.uniform(-1.0, 1.0, size=n_terms)
    P = rng.uniform(0.0, 2.0 * np.pi, size=n_terms)
    return trig_scalar(dim, K, A, P)


def random_form(dim: int, degree: int, rng: np.random.Generator,
                amp: float = 1.0, integer_modes: bool = False) -> Form:
    """Random form with trigonometric coefficients and analytic derivative."""
    coeffs = {I: random_scalar(dim, rng, amp=amp, integer_modes=integer_modes)
              for I in itertools.combinations(range(dim), degree)}
    return coefficient_form(dim, degree, coeffs, name=f"rand{degree}")


def random_map(dom: SourceDomain, target_dim: int, rng: np.random.Generator,
               amp: float = 1.0, around=None) -> ms.MapPoint:
    funcs = [random_scalar(dom.chart_dim, rng, amp=amp) for _ in range(target_dim)]
    base = np.zeros(target_dim) if around is None else np.asarray(around, dtype=float)

    def f(s):
        return base + np.array([g.value(s) for g in funcs])

    return ms.map_from_function(dom, f, target_dim)


def random_loop(dom: SourceDomain, target_dim: int, rng: np.random.Generator,
                amp: float = 0.25) -> ms.MapPoint:
    """A perturbed unit circle; stays embedded for small amplitudes."""
    funcs = [random_scalar(1, rng, amp=amp) for _ in range(target_dim)]

    def f(s):
        out = np.zeros(target_dim)
        out[0], out[1] = np.cos(s[0]), np.sin(s[0])
        return out + np.array([g.value(s) for g in funcs])

    return ms.map_from_function(dom, f, target_dim)


def random_tangent(f: ms.MapPoint, rng: np.random.Generator,
                   amp: float = 1.0) -> ms.MapTangent:
    funcs = [random_scalar(f.dom.chart_dim, rng, amp=amp) for _ in range(f.target_dim)]
    return ms.tangent_from_function(f, lambda s: np.array([g.value(s) for g in funcs]))


def random_affine_field(dim: int, rng: np.random.Generator,
                        amp: float = 1.0) -> VectorField:
    A = amp * rng.uniform(-1.0, 1.0, size=(dim, dim))
    c = amp * rng.uniform(-1.0, 1.0, size=dim)
    return affine_field(A, c, name="rand-affine")


def random_stream(dom: SourceDomain, rng: np.random.Generator,
                  max_mode: int = 3, amp: float = 1.0):
    """Zero-mean random stream function on the 2-torus."""
    from .domains import ScalarField
    g = random_scalar(2, rng, n_terms=3, max_mode=max_mode, amp=amp)
    vals = np.array([g.value(s) for s in dom.nodes])
    return ScalarField(dom, vals - vals.mean())


def rigid_shift(shift: float) -> ChartMap:
    """Rigid rotation of the circle chart; trigonometric resampling is exact
    for band-limited data under this map."""
    return ChartMap(lambda s: s + shift, 1, 1,
                    jacobian_func=lambda s: np.eye(1),
                    inverse=lambda s: s - shift,
                    name=f"shift({shift:g})")


def rigid_shift_2d(shift_x: float, shift_y: float) -> ChartMap:
    d = np.array([shift_x, shift_y])
    return ChartMap(lambda s: s + d, 2, 2,
                    jacobian_func=lambda s: np.eye(2),
                    inverse=lambda s: s - d,
                    name=f"shift2({shift_x:g},{shift_y:g})")


def circle_warp(eps: float = 0.3) -> ChartMap:
    """Non-rigid orientation-preserving circle diffeomorphism
    s -> s + eps sin s (needs |eps| < 1)."""
    def inv(y):
        x = np.asarray(y, dtype=float).copy()
        for _ in range(60):
            x = y - eps * np.sin(x)
        return x

    return ChartMap(lambda s: s + eps * np.sin(s), 1, 1,
                    jacobian_func=lambda s: np.array([[1.0 + eps * np.cos(s[0])]]),
                    inverse=inv, name=f"warp({eps:g})")
