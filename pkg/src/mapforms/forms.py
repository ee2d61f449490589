"""Exterior algebra and calculus for differential forms on flat charts.

A form of degree p on an m-dimensional chart is an evaluator taking a point
and p tangent vectors to a real number, optionally bundled with an analytic
exterior derivative.  There is no symbolic layer: wedge products, interior
products, pullbacks and Lie derivatives all compose evaluators, and the
exterior derivative falls back to central differences when no analytic
derivative is attached.

Quadrature integration over a discretized source domain and fiber
integration over a product chart live here as well.

All types are immutable after construction and evaluators must be pure, so
every operation in this module is safe for concurrent evaluation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .charts import ChartMap, DimensionMismatch, VectorField, as_field, identity_map

Array = np.ndarray

DEFAULT_FD_STEP = 1e-4


class DegreeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutation helpers

def _perm_sign(perm) -> int:
    """Sign of a permutation given as a tuple of distinct integers."""
    sign = 1
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def shuffles(p: int, q: int):
    """All (p,q)-shuffle splits of range(p+q) as (left, right, sign) tuples."""
    idx = tuple(range(p + q))
    out = []
    for left in itertools.combinations(idx, p):
        right = tuple(i for i in idx if i not in left)
        out.append((left, right, _perm_sign(left + right)))
    return out


def _minor_det(vectors: Sequence[Array], index: tuple) -> float:
    """det of the submatrix picking rows `index` of the stacked vectors."""
    p = len(index)
    if p == 0:
        return 1.0
    if p == 1:
        return float(vectors[0][index[0]])
    if p == 2:
        (a, b) = index
        v0, v1 = vectors
        return float(v0[a] * v1[b] - v0[b] * v1[a])
    if p == 3:
        (a, b, c) = index
        v0, v1, v2 = vectors
        return float(
            v0[a] * (v1[b] * v2[c] - v1[c] * v2[b])
            - v0[b] * (v1[a] * v2[c] - v1[c] * v2[a])
            + v0[c] * (v1[a] * v2[b] - v1[b] * v2[a])
        )
    mat = np.array([[v[i] for i in index] for v in vectors], dtype=float)
    return float(np.linalg.det(mat))


# ---------------------------------------------------------------------------
# scalar coefficient functions with analytic derivatives

@dataclass(frozen=True)
class ScalarFunc:
    """A scalar function on a chart with optional analytic gradient/Hessian."""

    value: Callable[[Array], float]
    grad: Optional[Callable[[Array], Array]] = None
    hess: Optional[Callable[[Array], Array]] = None

    def __call__(self, x) -> float:
        return float(self.value(np.asarray(x, dtype=float)))


def scalar_const(c: float, dim: int) -> ScalarFunc:
    z = np.zeros(dim)
    zz = np.zeros((dim, dim))
    return ScalarFunc(lambda x: c, lambda x: z, lambda x: zz)


def scalar_coordinate(i: int, dim: int) -> ScalarFunc:
    e = np.zeros(dim)
    e[i] = 1.0
    zz = np.zeros((dim, dim))
    return ScalarFunc(lambda x: float(x[i]), lambda x: e, lambda x: zz)


def scalar_sum(funcs: Sequence[ScalarFunc]) -> ScalarFunc:
    funcs = list(funcs)

    def value(x):
        return sum(f.value(x) for f in funcs)

    grad = None
    if all(f.grad is not None for f in funcs):
        grad = lambda x: sum(f.grad(x) for f in funcs)  # noqa: E731
    hess = None
    if all(f.hess is not None for f in funcs):
        hess = lambda x: sum(f.hess(x) for f in funcs)  # noqa: E731
    return ScalarFunc(value, grad, hess)


def scalar_partial(f: ScalarFunc, j: int) -> ScalarFunc:
    """The j-th partial derivative of f as a ScalarFunc (needs f.grad)."""
    if f.grad is None:
        raise ValueError("scalar_partial needs an analytic gradient")
    grad = None
    if f.hess is not None:
        grad = lambda x: np.asarray(f.hess(x), dtype=float)[j]  # noqa: E731
    return ScalarFunc(lambda x: float(np.asarray(f.grad(x), dtype=float)[j]), grad)


def trig_scalar(dim: int, modes, amps, phases) -> ScalarFunc:
    """Sum of amps[r] * sin(modes[r] . x + phases[r]) with analytic
    gradient and Hessian; periodic on [0,2pi)^dim for integer modes."""
    K = np.asarray(modes, dtype=float).reshape(-1, dim)
    A = np.asarray(amps, dtype=float)
    P = np.asarray(phases, dtype=float)

    def value(x):
        return float(np.sum(A * np.sin(K @ x + P)))

    def grad(x):
        return (A * np.cos(K @ x + P)) @ K

    def hess(x):
        w = -A * np.sin(K @ x + P)
        return (K.T * w) @ K

    return ScalarFunc(value, grad, hess)


# ---------------------------------------------------------------------------
# the Form type and its calculus

@dataclass(frozen=True)
class Form:
    """A degree-p alternating multilinear field on an m-dimensional chart.

    evaluator(point, [v_1, ..., v_p]) -> float.  Antisymmetry and
    multilinearity in the tangent slots are the caller's obligation when
    constructing raw evaluators; every operation below preserves them.
    """

    degree: int
    ambient_dim: int
    evaluator: Callable[[Array, Sequence[Array]], float]
    analytic_d: Optional["Form"] = None
    name: str = ""

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeError("negative form degree")

    def __call__(self, point, *vectors) -> float:
        if len(vectors) != self.degree:
            raise DegreeError(
                f"form of degree {self.degree} evaluated on {len(vectors)} vectors"
            )
        vs = [np.asarray(v, dtype=float) for v in vectors]
        return float(self.evaluator(np.asarray(point, dtype=float), vs))


def zero_form(dim: int, degree: int) -> Form:
    return Form(degree, dim, lambda x, vs: 0.0, name="0")


def constant_form(dim: int, value: float) -> Form:
    return Form(0, dim, lambda x, vs: value, analytic_d=zero_form(dim, 1),
                name=f"{value:g}")


def form_sum(*forms: Form) -> Form:
    degs = {f.degree for f in forms}
    dims = {f.ambient_dim for f in forms}
    if len(degs) != 1 or len(dims) != 1:
        raise DimensionMismatch("form_sum needs forms of equal degree and chart dim")
    fs = list(forms)

    def ev(x, vs):
        return sum(f.evaluator(x, vs) for f in fs)

    analytic = None
    if all(f.analytic_d is not None for f in fs):
        analytic = form_sum(*[f.analytic_d for f in fs])
    return Form(fs[0].degree, fs[0].ambient_dim, ev, analytic_d=analytic)


def form_scale(c: float, a: Form) -> Form:
    analytic = form_scale(c, a.analytic_d) if a.analytic_d is not None else None
    return Form(a.degree, a.ambient_dim, lambda x, vs: c * a.evaluator(x, vs),
                analytic_d=analytic, name=f"{c:g}*{a.name}")


def strip_analytic(a: Form) -> Form:
    """Copy of a form without its analytic derivative (forces the
    finite-difference path in exterior_derivative)."""
    return Form(a.degree, a.ambient_dim, a.evaluator, analytic_d=None, name=a.name)


def _scalar_negate(f: ScalarFunc) -> ScalarFunc:
    grad = (lambda x: -np.asarray(f.grad(x), dtype=float)) if f.grad is not None else None
    hess = (lambda x: -np.asarray(f.hess(x), dtype=float)) if f.hess is not None else None
    return ScalarFunc(lambda x: -f.value(x), grad, hess)


def coefficient_form(dim: int, degree: int, coeffs: dict, name: str = "",
                     _exact: bool = False) -> Form:
    """Form sum_I c_I(x) dx^I from {increasing multi-index: ScalarFunc}.

    When every coefficient carries an analytic gradient, the exterior
    derivative is attached analytically; derivatives of derivatives are the
    exact zero form.
    """
    items = [(tuple(I), c) for I, c in sorted(coeffs.items())]
    for I, _ in items:
        if len(I) != degree or any(i >= dim for i in I) or list(I) != sorted(set(I)):
            raise DegreeError(f"bad multi-index {I} for degree {degree} on dim {dim}")

    def ev(x, vs):
        return sum(c.value(x) * _minor_det(vs, I) for I, c in items)

    if _exact:
        analytic = zero_form(dim, degree + 1)
    elif items and all(c.grad is not None for _, c in items):
        dcoeffs: dict = {}
        for I, c in items:
            for j in range(dim):
                if j in I:
                    continue
                J = tuple(sorted((j,) + I))
                term = scalar_partial(c, j)
                if (-1) ** J.index(j) < 0:
                    term = _scalar_negate(term)
                dcoeffs.setdefault(J, []).append(term)
        dsum = {J: scalar_sum(parts) for J, parts in dcoeffs.items()}
        if dsum:
            analytic = coefficient_form(dim, degree + 1, dsum,
                                        name=f"d({name})", _exact=True)
        else:
            analytic = zero_form(dim, degree + 1)
    else:
        analytic = None
    return Form(degree, dim, ev, analytic_d=analytic, name=name)


def coordinate_form(indices, dim: int, coeff: float = 1.0, name: str = "") -> Form:
    """c * dx^{i_1} ∧ ... ∧ dx^{i_p} for an increasing index tuple."""
    I = tuple(indices)
    return coefficient_form(dim, len(I), {I: scalar_const(coeff, dim)}, name=name)


def volume_form(dim: int, scale: float = 1.0) -> Form:
    return coordinate_form(tuple(range(dim)), dim, scale, name="vol")


def wedge(a: Form, b: Form) -> Form:
    """Exterior product by the signed shuffle sum; graded commutative."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"wedge on charts of dim {a.ambient_dim} and {b.ambient_dim}")
    p, q = a.degree, b.degree
    splits = shuffles(p, q)

    def ev(x, vs):
        total = 0.0
        for left, right, sign in splits:
            av = a.evaluator(x, [vs[i] for i in left])
            if av == 0.0:
                continue
            total += sign * av * b.evaluator(x, [vs[i] for i in right])
        return total

    analytic = None
    if a.analytic_d is not None and b.analytic_d is not None:
        analytic = form_sum(wedge(a.analytic_d, b),
                            form_scale((-1.0) ** p, wedge(a, b.analytic_d)))
    return Form(p + q, a.ambient_dim, ev, analytic_d=analytic,
                name=f"{a.name}^{b.name}")


def interior(a: Form, X) -> Form:
    """Interior product i_X a; the contracted vector fills the first slot."""
    if a.degree == 0:
        raise DegreeError(
            "interior product of a degree-0 form is undefined; callers that "
            "need the zero-form convention must special-case it")
    Xf = as_field(X, a.ambient_dim)

    def ev(x, vs):
        return a.evaluator(x, [Xf(x), *vs])

    return Form(a.degree - 1, a.ambient_dim, ev, name=f"i_{Xf.name}({a.name})")


def _directional(func: Callable[[Array], float], x: Array, v: Array,
                 step: float, richardson: bool) -> float:
    d1 = (func(x + step * v) - func(x - step * v)) / (2.0 * step)
    if not richardson:
        return d1
    h2 = 0.5 * step
    d2 = (func(x + h2 * v) - func(x - h2 * v)) / (2.0 * h2)
    return (4.0 * d2 - d1) / 3.0


def exterior_derivative(a: Form, step: float = DEFAULT_FD_STEP,
                        richardson: bool = False) -> Form:
    """d a.  Returns the attached analytic derivative when present, else the
    coordinate formula with constant-extension central differences:

        (da)(Y_0..Y_p) = sum_i (-1)^i D_{Y_i}[ a(Y_0..ŷ_i..Y_p) ].
    """
    if a.analytic_d is not None:
        return a.analytic_d
    p = a.degree

    def ev(x, vs):
        total = 0.0
        for i in range(p + 1):
            rest = list(vs[:i]) + list(vs[i + 1:])
            total += (-1.0) ** i * _directional(
                lambda y: a.evaluator(y, rest), x, vs[i], step, richardson)
        return total

    return Form(p + 1, a.ambient_dim, ev, name=f"d({a.name})")


def pullback(a: Form, phi: ChartMap) -> Form:
    """phi^* a: coefficients at phi(x), slots fed through the Jacobian."""
    if phi.target_dim != a.ambient_dim:
        raise DimensionMismatch(
            f"pullback: map into dim {phi.target_dim}, form on dim {a.ambient_dim}")

    def ev(x, vs):
        J = phi.jacobian(x)
        return a.evaluator(phi(x), [J @ v for v in vs])

    return Form(a.degree, phi.source_dim, ev, name=f"{phi.name}*({a.name})")


def lie_derivative(a: Form, X, step: float = DEFAULT_FD_STEP,
                   richardson: bool = False) -> Form:
    """Cartan formula L_X = i_X d + d i_X; for functions, L_X h = dh(X)."""
    Xf = as_field(X, a.ambient_dim)
    if a.degree == 0:
        def ev(x, vs):
            return _directional(lambda y: a.evaluator(y, []), x, Xf(x), step, richardson)
        return Form(0, a.ambient_dim, ev, name=f"L_{Xf.name}({a.name})")
    da = exterior_derivative(a, step, richardson)
    return form_sum(interior(da, Xf),
                    exterior_derivative(interior(a, Xf), step, richardson))


def lie_derivative_flow(a: Form, X: VectorField, t_step: float = 1e-5,
                        flow_steps: int = 64) -> Form:
    """Independent flow route: central difference of (phi_t^X)^* a in t."""
    fwd = pullback(a, X.flow(t_step, flow_steps))
    bwd = pullback(a, X.flow(-t_step, flow_steps))

    def ev(x, vs):
        return (fwd.evaluator(x, vs) - bwd.evaluator(x, vs)) / (2.0 * t_step)

    return Form(a.degree, a.ambient_dim, ev, name=f"Lflow_{X.name}({a.name})")


# ---------------------------------------------------------------------------
# quadrature and fiber integration

def integrate(a: Form, dom) -> float:
    """Quadrature of a k-form over a k-dimensional source domain: the form
    is evaluated on the oriented coordinate frame at each node and summed
    with the signed quadrature weights."""
    if a.degree != dom.dim:
        raise DegreeError(
            f"integrate: form degree {a.degree} != domain dim {dom.dim}")
    frame = [np.eye(dom.chart_dim)[:, i] for i in range(dom.dim)]
    sw = dom.signed_weights
    total = 0.0
    for i in range(dom.n_nodes):
        total += sw[i] * a.evaluator(dom.nodes[i], frame)
    return float(total)


@dataclass(frozen=True)
class ProductForm:
    """A form on a product chart S x V, with the split bookkeeping needed by
    fiber integration.  Mixed tangent vectors are (S-part, V-part) pairs."""

    s_dim: int
    v_dim: int
    degree: int
    chart_form: Form

    def evaluate(self, s, x, pairs) -> float:
        point = np.concatenate([np.atleast_1d(np.asarray(s, dtype=float)),
                                np.asarray(x, dtype=float)])
        vecs = [np.concatenate([np.asarray(zs, dtype=float), np.asarray(zx, dtype=float)])
                for zs, zx in pairs]
        return float(self.chart_form.evaluator(point, vecs))


def product_form(s_dim: int, v_dim: int, chart_form: Form) -> ProductForm:
    if chart_form.ambient_dim != s_dim + v_dim:
        raise DimensionMismatch("chart form dim != s_dim + v_dim")
    return ProductForm(s_dim, v_dim, chart_form.degree, chart_form)


def product_map(s_map: Optional[ChartMap], v_map: Optional[ChartMap],
                s_dim: int, v_dim: int) -> ChartMap:
    """(psi x phi) on a product chart, identity on whichever factor is None."""
    smap = s_map or identity_map(s_dim)
    vmap = v_map or identity_map(v_dim)

    def forward(z):
        return np.concatenate([smap(z[:s_dim]), vmap(z[s_dim:])])

    def jac(z):
        J = np.zeros((smap.target_dim + vmap.target_dim, s_dim + v_dim))
        J[:smap.target_dim, :s_dim] = smap.jacobian(z[:s_dim])
        J[smap.target_dim:, s_dim:] = vmap.jacobian(z[s_dim:])
        return J

    return ChartMap(forward, s_dim + v_dim, smap.target_dim + vmap.target_dim,
                    jacobian_func=jac, name=f"{smap.name}x{vmap.name}")


def vertical_field(X: VectorField, s_dim: int) -> VectorField:
    """The field 0_S x X on a product chart."""
    def func(z):
        return np.concatenate([np.zeros(s_dim), X(z[s_dim:])])
    return VectorField(func, s_dim + X.dim, name=f"0x{X.name}")


def horizontal_field(Z: VectorField, v_dim: int) -> VectorField:
    """The field Z x 0_V on a product chart."""
    def func(z):
        return np.concatenate([Z(z[:Z.dim]), np.zeros(v_dim)])
    return VectorField(func, Z.dim + v_dim, name=f"{Z.name}x0")


def fiber_integrate(w: ProductForm, dom) -> Form:
    """Integrate an n-form on S x V over the k-dimensional S factor,
    producing an (n-k)-form on V.

    The integrand at a node feeds the V-insertion slots first and the
    oriented S frame last; putting the frame last is what makes insertion of
    vector fields commute with the fiber integral on odd-dimensional S.
    Over a 0-dimensional domain (a boundary point pair) the frame is empty
    and the node signs weight the sum.
    """
    k = dom.dim
    n = w.degree
    if n < k:
        raise DegreeError(f"fiber integral of a degree-{n} form over a dim-{k} domain")
    cz = dom.chart_dim
    frame = [(np.eye(cz)[:, i], np.zeros(w.v_dim)) for i in range(k)]
    sw = dom.signed_weights
    zs = np.zeros(cz)

    def ev(x, vecs):
        pairs = [(zs, v) for v in vecs] + frame
        total = 0.0
        for i in range(dom.n_nodes):
            total += sw[i] * w.evaluate(dom.nodes[i], x, pairs)
        return total

    return Form(n - k, w.v_dim, ev, name=f"fib({w.chart_form.name})")


# ---------------------------------------------------------------------------
# sampling utilities for comparing evaluator-based forms

def sample_difference(a: Form, b: Form, rng: np.random.Generator,
                      n_samples: int = 20, radius: float = 1.0,
                      center=None) -> float:
    """Max |a - b| over random points and unit-scale tangent tuples."""
    if (a.degree, a.ambient_dim) != (b.degree, b.ambient_dim):
        raise DimensionMismatch("sample_difference needs matching degree and dim")
    m, p = a.ambient_dim, a.degree
    c = np.zeros(m) if center is None else np.asarray(center, dtype=float)
    worst = 0.0
    for _ in range(n_samples):
        x = c + radius * rng.uniform(-1.0, 1.0, size=m)
        vs = [rng.uniform(-1.0, 1.0, size=m) for _ in range(p)]
        worst = max(worst, abs(a.evaluator(x, vs) - b.evaluator(x, vs)))
    return worst


def antisymmetry_defect(a: Form, rng: np.random.Generator,
                        n_samples: int = 10, radius: float = 1.0) -> float:
    """Max violation of a swap sign flip over random slot pairs."""
    if a.degree < 2:
        return 0.0
    worst = 0.0
    m, p = a.ambient_dim, a.degree
    for _ in range(n_samples):
        x = radius * rng.uniform(-1.0, 1.0, size=m)
        vs = [rng.uniform(-1.0, 1.0, size=m) for _ in range(p)]
        i, j = rng.choice(p, size=2, replace=False)
        swapped = list(vs)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        worst = max(worst, abs(a.evaluator(x, vs) + a.evaluator(x, swapped)))
    return worst


def multilinearity_defect(a: Form, rng: np.random.Generator,
                          n_samples: int = 10, radius: float = 1.0) -> float:
    """Max violation of linearity in a random slot."""
    if a.degree == 0:
        return 0.0
    worst = 0.0
    m, p = a.ambient_dim, a.degree
    for _ in range(n_samples):
        x = radius * rng.uniform(-1.0, 1.0, size=m)
        vs = [rng.uniform(-1.0, 1.0, size=m) for _ in range(p)]
        i = int(rng.integers(p))
        u = rng.uniform(-1.0, 1.0, size=m)
        c = float(rng.uniform(-2.0, 2.0))
        combo = list(vs)
        combo[i] = vs[i] + c * u
        alt = list(vs)
        alt[i] = u
        lhs = a.evaluator(x, combo)
        rhs = a.evaluator(x, vs) + c * a.evaluator(x, alt)
        worst = max(worst, abs(lhs - rhs))
    return worst
