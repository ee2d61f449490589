"""Momentum maps and their non-equivariance cocycles on the map space.

Three hamiltonian actions are covered, all on F(S,M) with the symplectic
pairing induced by a symplectic form on M and a normalized volume form on S:

* a finite-dimensional group acting on M with a known momentum map, lifted
  by averaging along the map;
* hamiltonian diffeomorphisms of M, with Hamiltonians normalized to vanish
  at a fixed base point;
* exact volume preserving diffeomorphisms of S (stream functions on the
  2-torus), with potentials fixed by the zero-mean right inverse of d.

Sign conventions, fixed once and validated by the dual-route oracles below:
hamiltonian fields satisfy i_{X_h} ω = dh, and the Lie algebra bracket used
in every cocycle pairing is the opposite of the Jacobi-Lie bracket of the
infinitesimal generators (the usual left-action convention).

The chapter also holds the volume-integral cocycle on divergence-free
fields, the twist-closedness check for open-string boundary data, and the
commuting-action demonstration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .charts import ChartMap, VectorField, affine_map
from .domains import (ScalarField, SourceDomain, exact_divfree_field,
                      projection_P, right_inverse_b)
from .forms import (DEFAULT_FD_STEP, DegreeError, Form, ScalarFunc,
                    exterior_derivative, pullback, sample_difference,
                    volume_form)
from .mapspace import (MapPoint, MapSpaceForm, MapTangent, bar_map,
                       generator_M, generator_S, hat_pairing, hat_map,
                       map_space_d, pullback_action, pushforward_action)

Array = np.ndarray


# ---------------------------------------------------------------------------
# hamiltonian systems on a flat symplectic chart

@dataclass(frozen=True)
class HamiltonianPair:
    """A cataloged hamiltonian function (normalized at the base point) and
    its field, with analytic derivatives for trustworthy brackets."""

    name: str
    h: ScalarFunc
    field: VectorField


@dataclass(frozen=True)
class HamiltonianSystem:
    """A constant-coefficient symplectic chart R^{2n} with a base point and
    a catalog of hamiltonian pairs satisfying i_{X_h} omega = dh."""

    omega: Form
    omega_matrix: Array
    base_point: Array
    catalog: tuple

    @property
    def dim(self) -> int:
        return self.base_point.size

    def pair(self, name: str) -> HamiltonianPair:
        for p in self.catalog:
            if p.name == name:
                return p
        raise KeyError(f"no hamiltonian pair named {name!r}")

    def validate(self, rng: np.random.Generator, tol: float = 1e-8,
                 samples: int = 12) -> float:
        """Residual of i_{X_h} omega = dh over the catalog, plus a
        nondegeneracy check of the coefficient matrix."""
        if abs(np.linalg.det(self.omega_matrix)) < 1e-12:
            raise ValueError("symplectic coefficient matrix is singular")
        worst = 0.0
        for p in self.catalog:
            for _ in range(samples):
                x = rng.uniform(-1.0, 1.0, self.dim)
                v = rng.uniform(-1.0, 1.0, self.dim)
                lhs = self.omega.evaluator(x, [p.field(x), v])
                rhs = float(np.asarray(p.h.grad(x)) @ v)
                worst = max(worst, abs(lhs - rhs))
            worst = max(worst, abs(p.h(self.base_point)))
        if worst > tol:
            raise ValueError(f"catalog residual {worst:.3e} exceeds {tol:.1e}")
        return worst


def hamiltonian_field_r2(h: ScalarFunc, name: str = "") -> HamiltonianPair:
    """On (R^2, dx∧dy), i_{X_h}(dx∧dy) = dh gives X_h = (∂_y h, -∂_x h)."""

    def func(x):
        g = np.asarray(h.grad(x), dtype=float)
        return np.array([g[1], -g[0]])

    jac = None
    if h.hess is not None:
        def jac(x):
            H = np.asarray(h.hess(x), dtype=float)
            return np.array([H[1], -H[0]])

    return HamiltonianPair(name, h, VectorField(func, 2, jacobian_func=jac,
                                                name=f"X_{name}"))


def canonical_r2(extra_pairs: Sequence[HamiltonianPair] = ()) -> HamiltonianSystem:
    """(R^2, dx∧dy) with base point 0 and a polynomial/trig catalog."""
    omega = volume_form(2)
    zero2 = np.zeros((2, 2))
    pairs = [
        hamiltonian_field_r2(ScalarFunc(
            lambda x: x[0], lambda x: np.array([1.0, 0.0]), lambda x: zero2), "x"),
        hamiltonian_field_r2(ScalarFunc(
            lambda x: x[1], lambda x: np.array([0.0, 1.0]), lambda x: zero2), "y"),
        hamiltonian_field_r2(ScalarFunc(
            lambda x: x[0] * x[1],
            lambda x: np.array([x[1], x[0]]),
            lambda x: np.array([[0.0, 1.0], [1.0, 0.0]])), "xy"),
        hamiltonian_field_r2(ScalarFunc(
            lambda x: 0.5 * (x[0] ** 2 + x[1] ** 2),
            lambda x: np.array([x[0], x[1]]), lambda x: np.eye(2)), "r2/2"),
        hamiltonian_field_r2(ScalarFunc(
            lambda x: np.sin(x[0]),
            lambda x: np.array([np.cos(x[0]), 0.0]),
            lambda x: np.array([[-np.sin(x[0]), 0.0], [0.0, 0.0]])), "sin_x"),
    ]
    pairs.extend(extra_pairs)
    return HamiltonianSystem(omega, np.array([[0.0, 1.0], [-1.0, 0.0]]),
                             np.zeros(2), tuple(pairs))


def hamiltonian_of(sys: HamiltonianSystem, X: VectorField,
                   quad_points: int = 24) -> Callable[[Array], float]:
    """Normalized Hamiltonian of a field by line integration from the base
    point: h(x) = ∫_0^1 omega(X(γ(t)), γ'(t)) dt along the straight segment.
    Independent of the catalog; used as the bracket-side oracle."""
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    t = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    x0 = sys.base_point

    def h(x):
        x = np.asarray(x, dtype=float)
        seg = x - x0
        total = 0.0
        for ti, wi in zip(t, w):
            y = x0 + ti * seg
            total += wi * sys.omega.evaluator(y, [X(y), seg])
        return float(total)

    return h


def opposite_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """The Lie algebra bracket used in the cocycle pairings: the opposite of
    the Jacobi-Lie bracket of the generators."""
    b = X.bracket(Y)
    return VectorField(lambda x: -b(x), X.dim,
                       jacobian_func=(lambda x: -b.jacobian(x)),
                       name=f"op[{X.name},{Y.name}]")


# ---------------------------------------------------------------------------
# lifted action of a finite-dimensional group

@dataclass(frozen=True)
class LiftedGAction:
    """Generators of a hamiltonian G-action on M with momentum components
    and structure constants: bracket(i,j) = sum_k structure[i,j,k] e_k."""

    names: tuple
    generators: tuple          # VectorField per basis element
    momenta: tuple             # ScalarFunc per basis element
    structure: Array           # (g, g, g) structure constants

    @property
    def dim_g(self) -> int:
        return len(self.names)


def se2_action() -> LiftedGAction:
    """Rotations and translations of the plane with the standard momenta
    for dx∧dy; the translation pair carries the nonvanishing cocycle."""
    zero2 = np.zeros((2, 2))
    rot = VectorField(lambda x: np.array([-x[1], x[0]]), 2,
                      jacobian_func=lambda x: np.array([[0.0, -1.0], [1.0, 0.0]]),
                      name="rot")
    tx = VectorField(lambda x: np.array([1.0, 0.0]), 2,
                     jacobian_func=lambda x: zero2, name="tx")
    ty = VectorField(lambda x: np.array([0.0, 1.0]), 2,
                     jacobian_func=lambda x: zero2, name="ty")
    J_rot = ScalarFunc(lambda x: -0.5 * (x[0] ** 2 + x[1] ** 2),
                       lambda x: np.array([-x[0], -x[1]]),
                       lambda x: -np.eye(2))
    J_tx = ScalarFunc(lambda x: x[1], lambda x: np.array([0.0, 1.0]),
                      lambda x: zero2)
    J_ty = ScalarFunc(lambda x: -x[0], lambda x: np.array([-1.0, 0.0]),
                      lambda x: zero2)
    # [rot,tx] = ty, [rot,ty] = -tx, [tx,ty] = 0 (left-action convention)
    C = np.zeros((3, 3, 3))
    C[0, 1, 2], C[1, 0, 2] = 1.0, -1.0
    C[0, 2, 1], C[2, 0, 1] = -1.0, 1.0
    return LiftedGAction(("rot", "tx", "ty"), (rot, tx, ty),
                         (J_rot, J_tx, J_ty), C)


def momentum_lifted(action: LiftedGAction, dom: SourceDomain,
                    f: MapPoint) -> Array:
    """Componentwise average of the base momenta along the map, with the
    normalized volume: a constant map returns the base momentum exactly."""
    w = dom.signed_weights / dom.volume
    out = np.zeros(action.dim_g)
    for a, J in enumerate(action.momenta):
        out[a] = float(sum(w[i] * J.value(f.values[i]) for i in range(dom.n_nodes)))
    return out


def momentum_component_form(momentum_value: Callable[[MapPoint], float],
                            tag: str = "J") -> MapSpaceForm:
    return MapSpaceForm(0, lambda f, ts: momentum_value(f), tag=tag)


def hamiltonian_identity_residual(omega_bar: MapSpaceForm,
                                  generator: Callable[[MapPoint], MapTangent],
                                  momentum_value: Callable[[MapPoint], float],
                                  f: MapPoint, Y: MapTangent,
                                  step: float = DEFAULT_FD_STEP) -> float:
    """|omega_bar(gen(f), Y) - d<J>(Y)(f)|: the defining property of a
    momentum map component, with the differential taken on F(S,M)."""
    lhs = omega_bar(f, generator(f), Y)
    dJ = map_space_d(momentum_component_form(momentum_value), step)
    return abs(lhs - dJ(f, Y))


def cocycle_lifted(action: LiftedGAction, sys: HamiltonianSystem,
                   dom: SourceDomain, f: MapPoint, i: int, j: int) -> float:
    """Defining difference <Jbar(f), [e_i, e_j]> - omega_bar(gen_i, gen_j)(f);
    independent of f and equal to the base-action cocycle."""
    Jbar = momentum_lifted(action, dom, f)
    bracket_coeffs = action.structure[i, j]
    term1 = float(bracket_coeffs @ Jbar)
    ob = bar_map(sys.omega, dom)
    term2 = ob(f, generator_M(action.generators[i], f),
               generator_M(action.generators[j], f))
    return term1 - term2


def cocycle_lifted_base(action: LiftedGAction, sys: HamiltonianSystem,
                        i: int, j: int, at: Optional[Array] = None) -> float:
    """The base cocycle sigma(e_i,e_j) evaluated at a point of M."""
    x = sys.base_point if at is None else np.asarray(at, dtype=float)
    term1 = float(sum(action.structure[i, j, k] * action.momenta[k].value(x)
                      for k in range(action.dim_g)))
    term2 = sys.omega.evaluator(x, [action.generators[i](x),
                                    action.generators[j](x)])
    return term1 - term2


# ---------------------------------------------------------------------------
# hamiltonian diffeomorphisms of M

def momentum_diffham(sys: HamiltonianSystem, dom: SourceDomain, f: MapPoint,
                     pair: HamiltonianPair) -> float:
    """<J(f), X_h> = ∫_S (h∘f) μ with normalized μ and h(base point) = 0."""
    if abs(pair.h(sys.base_point)) > 1e-10:
        raise ValueError(f"hamiltonian {pair.name!r} not normalized at the base point")
    w = dom.signed_weights / dom.volume
    return float(sum(w[i] * pair.h.value(f.values[i]) for i in range(dom.n_nodes)))


def cocycle_diffham(sys: HamiltonianSystem, X: HamiltonianPair,
                    Y: HamiltonianPair) -> float:
    """sigma(X,Y) = -omega(X,Y)(base point)."""
    x0 = sys.base_point
    return -sys.omega.evaluator(x0, [X.field(x0), Y.field(x0)])


def cocycle_diffham_defining(sys: HamiltonianSystem, dom: SourceDomain,
                             f: MapPoint, X: HamiltonianPair,
                             Y: HamiltonianPair) -> float:
    """Dual route: <J(f), [X,Y]> - omega_bar(X_F, Y_F)(f) with the bracket
    Hamiltonian recovered by line integration (independent of the catalog)."""
    b = opposite_bracket(X.field, Y.field)
    hb = hamiltonian_of(sys, b)
    w = dom.signed_weights / dom.volume
    term1 = float(sum(w[i] * hb(f.values[i]) for i in range(dom.n_nodes)))
    ob = bar_map(sys.omega, dom)
    term2 = ob(f, generator_M(X.field, f), generator_M(Y.field, f))
    return term1 - term2


# ---------------------------------------------------------------------------
# exact volume preserving diffeomorphisms of S (2-torus stream functions)

@dataclass(frozen=True)
class ExactTwoForm:
    """An exact 2-form on R^m carried together with its primitive; building
    it from the primitive is the exactness gate."""

    potential: Form
    form: Form


def exact_two_form(potential: Form) -> ExactTwoForm:
    if potential.degree != 1:
        raise DegreeError("the primitive of an exact 2-form must be a 1-form")
    if potential.analytic_d is None:
        raise ValueError("the primitive needs an analytic differential")
    return ExactTwoForm(potential, potential.analytic_d)


def stream_generator(dom: SourceDomain, alpha: ScalarField):
    """The infinitesimal reparameterization generator of the divergence-free
    field of a stream function, for the normalized volume on S."""
    Z = dom.volume * exact_divfree_field(dom, alpha)

    def gen(f: MapPoint) -> MapTangent:
        return generator_S(Z, f)

    return gen, Z


def pullback_coefficient(f: MapPoint, omega: Form) -> Array:
    """Nodal coefficient of f*omega on the 2-torus (against dx∧dy)."""
    Tf = f.jacobian()
    return np.array([
        omega.evaluator(f.values[i], [Tf[i, :, 0], Tf[i, :, 1]])
        for i in range(f.dom.n_nodes)
    ])


def momentum_diffex(omega: ExactTwoForm, dom: SourceDomain, f: MapPoint,
                    alpha: ScalarField, return_routes: bool = False):
    """<J(f), X_alpha> = ∫_S f*omega ∧ b(d alpha), with the zero-mean
    potential.  Two routes are computed: the generic pairing machinery and
    the direct nodal quadrature; they must agree."""
    potential = right_inverse_b(dom, alpha.d_components())
    route1 = hat_pairing(omega.form, potential, dom)(f)
    coeff = pullback_coefficient(f, omega.form)
    route2 = float(np.sum(dom.signed_weights * coeff * potential.values))
    if return_routes:
        return route1, route2
    if abs(route1 - route2) > 1e-8 * max(1.0, abs(route1)):
        raise AssertionError(
            f"momentum routes disagree: {route1!r} vs {route2!r}")
    return route1


def diffex_identity_residual(omega: ExactTwoForm, dom: SourceDomain,
                             f: MapPoint, alpha: ScalarField, Y: MapTangent,
                             step: float = DEFAULT_FD_STEP) -> float:
    """Residual of d<J, X_alpha> = i_{gen} omega_bar on F(S,M)."""
    gen, _ = stream_generator(dom, alpha)
    ob = bar_map(omega.form, dom)
    lhs = ob(f, gen(f), Y)
    dJ = map_space_d(momentum_component_form(
        lambda g: momentum_diffex(omega, dom, g, alpha)), step)
    return abs(lhs - dJ(f, Y))


def stream_poisson(dom: SourceDomain, a1: ScalarField, a2: ScalarField) -> ScalarField:
    """Coordinate Poisson bracket {a1,a2} = ∂_x a1 ∂_y a2 - ∂_y a1 ∂_x a2."""
    d1, d2 = a1.d_components(), a2.d_components()
    return ScalarField(dom, d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])


def stream_bracket(dom: SourceDomain, a1: ScalarField, a2: ScalarField) -> ScalarField:
    """Stream function of the algebra bracket of the two generators (the
    opposite Jacobi-Lie convention, matching the cocycle pairing)."""
    return dom.volume * stream_poisson(dom, a1, a2)


def cocycle_diffex(omega: ExactTwoForm, dom: SourceDomain, f: MapPoint,
                   a1: ScalarField, a2: ScalarField) -> float:
    """sigma(X_{a1}, X_{a2}) = ∫_S f*omega ∧ P(i_{X_1} i_{X_2} mu), the
    projection P picking out the constant part of the doubly contracted
    volume; depends only on the homotopy class of f."""
    gamma = _double_contraction(dom, a1, a2)
    Pg = projection_P(dom, gamma)
    coeff = pullback_coefficient(f, omega.form)
    return float(np.sum(dom.signed_weights * coeff * Pg.values))


def _double_contraction(dom: SourceDomain, a1: ScalarField,
                        a2: ScalarField) -> ScalarField:
    """i_{X_1} i_{X_2} mu = mu(X_2, X_1) for the normalized volume."""
    V = dom.volume
    Z1 = V * exact_divfree_field(dom, a1)
    Z2 = V * exact_divfree_field(dom, a2)
    vals = (Z2[:, 0] * Z1[:, 1] - Z2[:, 1] * Z1[:, 0]) / V
    return ScalarField(dom, vals)


def cocycle_diffex_defining(omega: ExactTwoForm, dom: SourceDomain,
                            f: MapPoint, a1: ScalarField,
                            a2: ScalarField) -> float:
    """Dual route: <J(f), [X_1, X_2]> - omega_bar(gen_1, gen_2)(f)."""
    gb = stream_bracket(dom, a1, a2)
    term1 = momentum_diffex(omega, dom, f, gb)
    ob = bar_map(omega.form, dom)
    g1, _ = stream_generator(dom, a1)
    g2, _ = stream_generator(dom, a2)
    term2 = ob(f, g1(f), g2(f))
    return term1 - term2


# ---------------------------------------------------------------------------
# volume-integral cocycle on divergence-free fields of a closed surface

def lichnerowicz(dom_M: SourceDomain, eta: Form, X: VectorField,
                 Y: VectorField, nu: Form) -> float:
    """∫_M eta(X,Y) nu over a meshed closed surface; bilinear and
    antisymmetric in the fields."""
    if eta.degree != 2 or nu.degree != dom_M.dim:
        raise DegreeError("need a 2-form and a volume form on the meshed surface")
    frame = [np.eye(dom_M.chart_dim)[:, a] for a in range(dom_M.dim)]
    sw = dom_M.signed_weights
    total = 0.0
    for i in range(dom_M.n_nodes):
        x = dom_M.nodes[i]
        total += sw[i] * eta.evaluator(x, [X(x), Y(x)]) * nu.evaluator(x, frame)
    return float(total)


# ---------------------------------------------------------------------------
# open-string boundary data: twist closedness

@dataclass(frozen=True)
class AffineSubspace:
    """An affine subspace of R^m with an orthonormal direction basis."""

    origin: Array
    basis: Array  # (m, d), orthonormal columns

    @property
    def ambient_dim(self) -> int:
        return self.origin.size

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def inclusion(self) -> ChartMap:
        o, B = self.origin, self.basis
        return ChartMap(lambda u: o + B @ u, self.dim, self.ambient_dim,
                        jacobian_func=lambda u: B, name="incl")

    def coordinates(self, x: Array) -> Array:
        return self.basis.T @ (np.asarray(x, dtype=float) - self.origin)

    def project_vector(self, v: Array) -> Array:
        return self.basis @ (self.basis.T @ np.asarray(v, dtype=float))

    def distance(self, x: Array) -> float:
        x = np.asarray(x, dtype=float)
        return float(np.linalg.norm(x - self.origin - self.project_vector(x - self.origin)))


def affine_subspace(origin, basis) -> AffineSubspace:
    origin = np.asarray(origin, dtype=float)
    B = np.asarray(basis, dtype=float)
    Q, _ = np.linalg.qr(B)
    return AffineSubspace(origin, Q)


@dataclass(frozen=True)
class BraneReport:
    applicable: bool
    reason: str
    gate_residual: float
    boundary_defect: float
    closedness_residual: float
    passed: bool


def twist_two_form(H: Form, B: Form, D: AffineSubspace,
                   dom: SourceDomain) -> MapSpaceForm:
    """The closed 2-form candidate: the transgressed closed (p+2)-form minus
    the boundary-restricted transgression of the potential on D."""
    hat_H = hat_map(H, dom)
    bdom = dom.boundary()
    sw = bdom.signed_weights

    def bd_ev(f: MapPoint, tangents) -> float:
        # transgression of B over the signed endpoint pair, in D-coordinates
        fb = f.values[bdom.parent_indices]
        tb = [t.vectors[bdom.parent_indices] for t in tangents]
        total = 0.0
        for e in range(2):
            u = D.coordinates(fb[e])
            vs = [D.basis.T @ t[e] for t in tb]
            total += sw[e] * B.evaluator(u, vs)
        return total

    boundary_term = MapSpaceForm(B.degree, bd_ev, tag="bd-pot")

    def ev(f, ts):
        return hat_H.evaluator(f, ts) - boundary_term.evaluator(f, ts)

    return MapSpaceForm(hat_H.degree, ev, tag="twist")


def constrained_random_data(dom: SourceDomain, D: AffineSubspace,
                            rng: np.random.Generator, n_tangents: int,
                            amp: float = 0.6):
    """A map with endpoints in D and tangents tangent to D at the endpoints."""
    from .catalog import random_map, random_tangent
    m = D.ambient_dim
    f0 = random_map(dom, m, rng, amp=amp)
    vals = f0.values.copy()
    ends = [0, dom.n_nodes - 1]
    x = dom.nodes[:, 0]
    for e, i in enumerate(ends):
        target = D.origin + D.project_vector(vals[i] - D.origin)
        shift = target - vals[i]
        bump = (1.0 - x) if i == 0 else x
        vals += np.outer(bump, shift)
    f = MapPoint(dom, vals)
    tangents = []
    for _ in range(n_tangents):
        t0 = random_tangent(f, rng, amp=amp)
        tv = t0.vectors.copy()
        # blend the endpoint projections in linearly so the field stays smooth
        for e, i in enumerate(ends):
            delta = D.project_vector(tv[i]) - tv[i]
            bump = (1.0 - x) if i == 0 else x
            tv += np.outer(bump, delta)
        tangents.append(MapTangent(f, tv))
    return f, tangents


def brane_twist_check(H: Form, B: Form, D: AffineSubspace, dom: SourceDomain,
                      rng: np.random.Generator, n_trials: int = 3,
                      fd_step: float = DEFAULT_FD_STEP,
                      gate_tol: float = 1e-8, tol: float = 1e-5,
                      f=None, tangent_sets=None) -> BraneReport:
    """Closedness of the twist candidate on maps sending the boundary into D.

    Gates first: the potential must match the restricted closed form
    (i*H = dB on D), and the supplied or generated data must respect the
    boundary constraints.  A violated gate makes the check inapplicable, not
    passed."""
    if dom.kind != "interval":
        raise ValueError("the open-string check runs on the interval source")
    # gate 1: i*H = dB on the subspace
    iH = pullback(H, D.inclusion())
    dB = B.analytic_d
    if dB is None:
        dB = exterior_derivative(B, step=1e-5)
    gate = sample_difference(iH, dB, rng, n_samples=20)
    if gate > gate_tol:
        return BraneReport(False, f"i*H - dB residual {gate:.3e} exceeds "
                           f"{gate_tol:.1e}", gate, 0.0, 0.0, False)
    W = twist_two_form(H, B, D, dom)
    dW = map_space_d(W, fd_step)
    worst = 0.0
    defect = 0.0
    ends = [0, dom.n_nodes - 1]
    if f is not None:
        n_trials = min(n_trials, len(tangent_sets))
    for trial in range(n_trials):
        if f is None:
            g, ts = constrained_random_data(dom, D, rng, 3)
        else:
            g, ts = f, tangent_sets[trial]
        for i in ends:
            defect = max(defect, D.distance(g.values[i]))
            for t in ts:
                defect = max(defect, float(np.linalg.norm(
                    t.vectors[i] - D.project_vector(t.vectors[i]))))
        if defect > gate_tol:
            return BraneReport(False, f"boundary data leaves the subspace by "
                               f"{defect:.3e}", gate, defect, 0.0, False)
        worst = max(worst, abs(dW(g, *ts[:3])))
    return BraneReport(True, "", gate, defect, worst, worst < tol)


# ---------------------------------------------------------------------------
# the two commuting actions

def dual_pair_report(sys: HamiltonianSystem, omega_exact: ExactTwoForm,
                     dom: SourceDomain, rng: np.random.Generator,
                     n_trials: int = 3, fd_step: float = DEFAULT_FD_STEP) -> dict:
    """Momentum samples and residuals for the two commuting hamiltonian
    actions on F(T^2, R^2), plus the nodewise commutation check."""
    from .catalog import random_map, random_stream, random_tangent, rigid_shift_2d
    report: dict = {}
    ob = bar_map(sys.omega, dom)

    # commuting actions: rigid reparameterization vs affine target map
    f = random_map(dom, 2, rng, amp=0.8)
    nx, ny = dom.shape
    psi = rigid_shift_2d(2.0 * np.pi * 3 / nx, 2.0 * np.pi * 5 / ny)
    A = rng.uniform(-1.0, 1.0, (2, 2)) + np.eye(2)
    phi = affine_map(A, rng.uniform(-1.0, 1.0, 2))
    one = pushforward_action(phi, pullback_action(psi, f))
    two = pullback_action(psi, pushforward_action(phi, f))
    report["commutation_error"] = float(np.max(np.abs(one.values - two.values)))

    # hamiltonian identity residuals on both legs
    worst_ham = 0.0
    worst_ex = 0.0
    for _ in range(n_trials):
        g = random_map(dom, 2, rng, amp=0.8)
        Y = random_tangent(g, rng)
        pair = sys.catalog[int(rng.integers(len(sys.catalog)))]
        worst_ham = max(worst_ham, hamiltonian_identity_residual(
            ob, lambda m: generator_M(pair.field, m),
            lambda m: momentum_diffham(sys, dom, m, pair), g, Y, fd_step))
        alpha = random_stream(dom, rng, max_mode=2)
        worst_ex = max(worst_ex, diffex_identity_residual(
            omega_exact, dom, g, alpha, Y, fd_step))
    report["diffham_residual"] = worst_ham
    report["diffex_residual"] = worst_ex

    # along an explicit homotopy the momenta move but the cocycle does not
    a1 = random_stream(dom, rng, max_mode=2)
    a2 = random_stream(dom, rng, max_mode=2)
    base = random_map(dom, 2, rng, amp=0.8)
    bump = random_map(dom, 2, rng, amp=0.5)
    path = []
    cvals = []
    for t in np.linspace(0.0, 1.0, 5):
        ft = MapPoint(dom, base.values + t * bump.values)
        cvals.append(cocycle_diffex(omega_exact, dom, ft, a1, a2))
        path.append({
            "t": float(t),
            "momentum_diffham": [momentum_diffham(sys, dom, ft, p)
                                 for p in sys.catalog],
            "momentum_diffex": momentum_diffex(omega_exact, dom, ft, a1),
            "cocycle_diffex": cvals[-1],
        })
    report["diffex_cocycle_spread"] = float(np.max(cvals) - np.min(cvals))
    report["homotopy_path"] = path
    report["momentum_samples"] = {
        "diffham": [momentum_diffham(sys, dom, base, p) for p in sys.catalog],
        "diffex": momentum_diffex(omega_exact, dom, base, a1),
    }
    return report
