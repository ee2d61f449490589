"""Discretized compact oriented source manifolds.

Three domains are provided: the circle [0,2pi) with periodic spectral
differentiation, the flat 2-torus [0,2pi)^2, and the unit interval [0,1]
with 4th-order finite differences and end-corrected (Gregory) quadrature
weights.  The interval carries a 0-dimensional boundary domain whose two
nodes are signed (-1 at 0, +1 at 1), which is what makes the boundary
integration rules come out with the documented signs.

The spectral right inverse of d on the torus (zero-mean gauge) and the
induced projection onto closed forms live here, together with the
stream-function construction of exact divergence-free fields.

Domains are immutable after construction; the only cached table (the
interval differentiation matrix) sits behind a thread-safe memoizer, so
differentiation and resampling are safe for concurrent use.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .forms import Form, DegreeError

Array = np.ndarray

TWO_PI = 2.0 * np.pi


class SmoothnessWarning(UserWarning):
    """Sampled data keeps significant energy at the Nyquist band."""


class NotExactError(ValueError):
    """A form failed the closedness / zero-period test required of exact data."""


@dataclass(frozen=True)
class SourceDomain:
    """A discretized compact oriented manifold with quadrature and
    differentiation.

    nodes holds parameter-chart coordinates, shape (n_nodes, chart_dim);
    weights are positive and sum to the coordinate volume.  A 0-dimensional
    domain (a boundary point pair) has per-node signs instead of a frame.
    """

    kind: str
    dim: int
    shape: tuple
    nodes: Array
    weights: Array
    orientation: int = 1
    periods: Optional[tuple] = None
    node_signs: Optional[Array] = None
    parent_indices: Optional[Array] = None

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    @property
    def chart_dim(self) -> int:
        return self.nodes.shape[1]

    @property
    def volume(self) -> float:
        return float(np.sum(self.weights))

    @property
    def spacing(self) -> tuple:
        if self.kind == "circle":
            return (TWO_PI / self.shape[0],)
        if self.kind == "torus2":
            return (TWO_PI / self.shape[0], TWO_PI / self.shape[1])
        if self.kind == "interval":
            return (1.0 / (self.shape[0] - 1),)
        return ()

    @property
    def signed_weights(self) -> Array:
        w = self.weights * self.orientation
        if self.node_signs is not None:
            w = w * self.node_signs
        return w

    def with_orientation(self, sign: int) -> "SourceDomain":
        return replace(self, orientation=int(sign))

    # -- node bookkeeping ---------------------------------------------------

    def node_index(self, s) -> int:
        """Index of the node at parameter point s (uniform-grid arithmetic);
        raises if s is off the grid."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        if self.kind == "circle":
            h = self.spacing[0]
            j = int(np.rint(s[0] / h)) % self.shape[0]
            ref = self.nodes[j, 0]
            if not np.isclose((s[0] - ref + np.pi) % TWO_PI - np.pi, 0.0, atol=1e-9):
                raise KeyError(f"off-node parameter {s}")
            return j
        if self.kind == "torus2":
            hx, hy = self.spacing
            jx = int(np.rint(s[0] / hx)) % self.shape[0]
            jy = int(np.rint(s[1] / hy)) % self.shape[1]
            idx = jx * self.shape[1] + jy
            d = (s - self.nodes[idx] + np.pi) % TWO_PI - np.pi
            if not np.allclose(d, 0.0, atol=1e-9):
                raise KeyError(f"off-node parameter {s}")
            return idx
        if self.kind == "interval":
            h = self.spacing[0]
            j = int(np.rint(s[0] / h))
            if j < 0 or j >= self.shape[0] or not np.isclose(s[0], self.nodes[j, 0], atol=1e-9):
                raise KeyError(f"off-node parameter {s}")
            return j
        if self.kind == "points":
            for j in range(self.n_nodes):
                if np.allclose(s, self.nodes[j], atol=1e-9):
                    return j
            raise KeyError(f"off-node parameter {s}")
        raise KeyError(self.kind)

    # -- differentiation ----------------------------------------------------

    def differentiate(self, values: Array, axis: int = 0) -> Array:
        """Derivative of node-sampled data along a parameter axis: spectral
        on periodic domains, 4th-order finite differences (one-sided at the
        ends) on the interval.  values may be (n_nodes,) or (n_nodes, m)."""
        values = np.asarray(values, dtype=float)
        if axis < 0 or axis >= max(self.dim, 1) or self.dim == 0:
            raise IndexError(f"axis {axis} out of range for dim-{self.dim} domain")
        if self.kind == "circle":
            return _spectral_derivative(values, axis=0, length=TWO_PI)
        if self.kind == "torus2":
            nx, ny = self.shape
            grid = values.reshape((nx, ny) + values.shape[1:])
            out = _spectral_derivative(grid, axis=axis, length=TWO_PI)
            return out.reshape(values.shape)
        if self.kind == "interval":
            D = _fd4_matrix(self.shape[0], self.spacing[0])
            return D @ values
        raise IndexError(self.kind)

    def map_jacobian(self, values: Array) -> Array:
        """Tangent map of node-sampled values (n_nodes, m) -> (n_nodes, m, k)."""
        if self.dim == 0:
            return np.zeros((self.n_nodes, values.shape[1], 0))
        cols = [self.differentiate(values, axis=a) for a in range(self.dim)]
        return np.stack(cols, axis=-1)

    # -- interpolation ------------------------------------------------------

    def resample(self, values: Array, points: Array) -> Array:
        """Evaluate the interpolant of node-sampled data at parameter points:
        trigonometric interpolation on periodic domains (exact for data below
        the Nyquist band), cubic splines on the interval."""
        values = np.asarray(values, dtype=float)
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        flat = values.reshape(self.n_nodes, -1)
        if self.kind == "circle":
            out = _trig_interp_1d(flat, pts[:, 0])
        elif self.kind == "torus2":
            out = _trig_interp_2d(flat, self.shape, pts)
        elif self.kind == "interval":
            if np.any(pts < -1e-12) or np.any(pts > 1.0 + 1e-12):
                raise ValueError("interval resampling outside [0,1]")
            x = self.nodes[:, 0]
            out = np.column_stack([
                CubicSpline(x, flat[:, j])(np.clip(pts[:, 0], 0.0, 1.0))
                for j in range(flat.shape[1])
            ])
        else:
            raise ValueError(f"no interpolation on domain kind {self.kind!r}")
        return out.reshape((pts.shape[0],) + values.shape[1:])

    # -- boundary -----------------------------------------------------------

    def boundary(self) -> Optional["SourceDomain"]:
        """The induced boundary domain, or None when S is closed.  For the
        interval this is the signed point pair {0-, 1+}."""
        if self.kind != "interval":
            return None
        n = self.shape[0]
        return SourceDomain(
            kind="points",
            dim=0,
            shape=(2,),
            nodes=np.array([[0.0], [1.0]]),
            weights=np.array([1.0, 1.0]),
            orientation=self.orientation,
            node_signs=np.array([-1.0, 1.0]),
            parent_indices=np.array([0, n - 1]),
        )

    def smoothness_defect(self, values: Array) -> float:
        """Relative magnitude of the Nyquist-band spectral coefficients;
        a proxy for how well the grid resolves the sampled data."""
        if self.kind not in ("circle", "torus2"):
            return 0.0
        flat = np.asarray(values, dtype=float).reshape(self.n_nodes, -1)
        worst = 0.0
        for j in range(flat.shape[1]):
            if self.kind == "circle":
                c = np.abs(np.fft.fft(flat[:, j]))
                band = c[self.shape[0] // 2]
            else:
                grid = flat[:, j].reshape(self.shape)
                c = np.abs(np.fft.fft2(grid))
                band = max(c[self.shape[0] // 2, :].max(), c[:, self.shape[1] // 2].max())
            scale = max(np.max(c), 1e-30)
            worst = max(worst, band / scale)
        return float(worst)


def circle(n: int) -> SourceDomain:
    """Unit circle as the periodic chart [0,2pi) with n uniform nodes."""
    theta = np.arange(n) * (TWO_PI / n)
    return SourceDomain(
        kind="circle", dim=1, shape=(n,),
        nodes=theta[:, None],
        weights=np.full(n, TWO_PI / n),
        periods=(TWO_PI,),
    )


def torus2(nx: int, ny: Optional[int] = None) -> SourceDomain:
    """Flat 2-torus [0,2pi)^2 on an nx-by-ny tensor grid."""
    ny = nx if ny is None else ny
    x = np.arange(nx) * (TWO_PI / nx)
    y = np.arange(ny) * (TWO_PI / ny)
    X, Y = np.meshgrid(x, y, indexing="ij")
    nodes = np.column_stack([X.ravel(), Y.ravel()])
    w = np.full(nx * ny, (TWO_PI / nx) * (TWO_PI / ny))
    return SourceDomain(kind="torus2", dim=2, shape=(nx, ny), nodes=nodes,
                        weights=w, periods=(TWO_PI, TWO_PI))


# 4th-order end-corrected trapezoid (Gregory) weights
_GREGORY_EDGE = np.array([3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0])


def interval(n: int) -> SourceDomain:
    """Unit interval [0,1] with n uniform nodes (n >= 8), 4th-order
    differentiation and quadrature."""
    if n < 8:
        raise ValueError("interval domain needs at least 8 nodes")
    h = 1.0 / (n - 1)
    x = np.linspace(0.0, 1.0, n)
    w = np.full(n, h)
    w[:3] = _GREGORY_EDGE * h
    w[-3:] = _GREGORY_EDGE[::-1] * h
    return SourceDomain(kind="interval", dim=1, shape=(n,), nodes=x[:, None],
                        weights=w)


def make_domain(kind: str, nodes: int) -> SourceDomain:
    """Build a domain from CLI/config parameters."""
    if kind == "circle":
        return circle(nodes)
    if kind == "torus2":
        side = int(round(np.sqrt(nodes)))
        return torus2(max(side, 4))
    if kind == "interval":
        return interval(nodes)
    raise ValueError(f"unknown domain kind {kind!r}")


# ---------------------------------------------------------------------------
# spectral helpers

def _wavenumbers(n: int, length: float) -> Array:
    k = np.fft.fftfreq(n, d=1.0 / n) * (TWO_PI / length)
    if n % 2 == 0:
        k[n // 2] = 0.0  # odd-symmetric derivative: drop the Nyquist mode
    return k


def _spectral_derivative(values: Array, axis: int, length: float) -> Array:
    n = values.shape[axis]
    k = _wavenumbers(n, length)
    shape = [1] * values.ndim
    shape[axis] = n
    vhat = np.fft.fft(values, axis=axis)
    vhat *= (1j * k).reshape(shape)
    return np.real(np.fft.ifft(vhat, axis=axis))


@functools.lru_cache(maxsize=16)
def _fd4_matrix(n: int, h: float) -> Array:
    """Dense 4th-order differentiation matrix with one-sided closures."""
    D = np.zeros((n, n))
    c = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
    for i in range(2, n - 2):
        D[i, i - 2:i + 3] = c
    D[0, :5] = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
    D[1, :5] = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0
    D[n - 2, -5:] = -np.array([-3.0, -10.0, 18.0, -6.0, 1.0])[::-1] / 12.0
    D[n - 1, -5:] = -np.array([-25.0, 48.0, -36.0, 16.0, -3.0])[::-1] / 12.0
    return D / h


def _nyquist_basis(n: int, pts: Array) -> Array:
    """Evaluation matrix of the real trigonometric interpolant."""
    k = np.fft.fftfreq(n, d=1.0 / n)
    E = np.exp(1j * np.outer(pts, k))
    if n % 2 == 0:
        E[:, n // 2] = np.cos((n / 2.0) * pts)  # symmetric Nyquist mode
    return E


def _trig_interp_1d(flat: Array, pts: Array) -> Array:
    n = flat.shape[0]
    c = np.fft.fft(flat, axis=0) / n
    E = _nyquist_basis(n, pts)
    return np.real(E @ c)


def _trig_interp_2d(flat: Array, shape: tuple, pts: Array) -> Array:
    nx, ny = shape
    out = np.empty((pts.shape[0], flat.shape[1]))
    for j in range(flat.shape[1]):
        c = np.fft.fft2(flat[:, j].reshape(nx, ny)) / (nx * ny)
        Ex = _nyquist_basis(nx, pts[:, 0])
        Ey = _nyquist_basis(ny, pts[:, 1])
        out[:, j] = np.real(np.einsum("qa,ab,qb->q", Ex, c, Ey))
    return out


# ---------------------------------------------------------------------------
# node-sampled scalar fields

@dataclass(frozen=True)
class ScalarField:
    """A scalar field sampled on the nodes of a source domain."""

    dom: SourceDomain
    values: Array

    def __post_init__(self):
        if self.values.shape != (self.dom.n_nodes,):
            raise ValueError("ScalarField values must be one value per node")

    def mean(self) -> float:
        return float(np.mean(self.values))

    def d_components(self) -> Array:
        """Nodal components of the differential, shape (n_nodes, k)."""
        return np.column_stack([
            self.dom.differentiate(self.values, axis=a) for a in range(self.dom.dim)
        ])

    def as_zero_form(self) -> Form:
        """Wrap as a degree-0 form; evaluation is restricted to grid nodes."""
        dom, vals = self.dom, self.values

        def ev(s, vs):
            return float(vals[dom.node_index(s)])

        return Form(0, dom.chart_dim, ev, name="nodal")

    def __add__(self, other):
        if isinstance(other, ScalarField):
            return ScalarField(self.dom, self.values + other.values)
        return ScalarField(self.dom, self.values + float(other))

    def __sub__(self, other):
        if isinstance(other, ScalarField):
            return ScalarField(self.dom, self.values - other.values)
        return ScalarField(self.dom, self.values - float(other))

    def __mul__(self, c):
        return ScalarField(self.dom, self.values * float(c))

    __rmul__ = __mul__


def field_from_function(dom: SourceDomain, func) -> ScalarField:
    return ScalarField(dom, np.array([float(func(s)) for s in dom.nodes]))


def nodal_vector_field(dom: SourceDomain, vectors: Array):
    """Node-sampled vector field on S as a callable usable in interior
    products; evaluation is restricted to grid nodes."""
    vectors = np.asarray(vectors, dtype=float)

    def func(s):
        return vectors[dom.node_index(s)]

    from .charts import VectorField
    return VectorField(func, dom.chart_dim, name="nodal")


# ---------------------------------------------------------------------------
# the right inverse of d on the torus, and friends

def sample_one_form(dom: SourceDomain, beta) -> Array:
    """Nodal components (n_nodes, k) of a 1-form given as a Form or as a
    ready-made component array."""
    if isinstance(beta, np.ndarray):
        b = np.asarray(beta, dtype=float)
        if b.shape != (dom.n_nodes, dom.dim):
            raise ValueError("component array must be (n_nodes, dim)")
        return b
    if beta.degree != 1:
        raise DegreeError("expected a 1-form")
    basis = np.eye(dom.chart_dim)
    return np.array([[beta.evaluator(s, [basis[:, a]]) for a in range(dom.dim)]
                     for s in dom.nodes])


def exactness_residuals(dom: SourceDomain, comps: Array) -> tuple:
    """(curl residual, period residual) of nodal 1-form components."""
    if dom.kind != "torus2":
        raise ValueError("exactness test implemented on the 2-torus")
    b1, b2 = comps[:, 0], comps[:, 1]
    curl = dom.differentiate(b2, axis=0) - dom.differentiate(b1, axis=1)
    periods = max(abs(float(np.mean(b1))), abs(float(np.mean(b2))))
    return float(np.max(np.abs(curl))), periods


def right_inverse_b(dom: SourceDomain, beta, tol: float = 1e-8) -> ScalarField:
    """The zero-mean potential of a numerically exact 1-form on the 2-torus,
    via the spectral Poisson solve Δα = div(beta#).

    Raises NotExactError when the closedness or zero-period residual exceeds
    tol; the zero-mean gauge is the fixed choice of right inverse and is part
    of the reported conventions, because momentum values depend on it.
    """
    comps = sample_one_form(dom, beta)
    curl, periods = exactness_residuals(dom, comps)
    if curl > tol or periods > tol:
        raise NotExactError(
            f"1-form is not exact: curl residual {curl:.3e}, period residual "
            f"{periods:.3e} (tol {tol:.1e})")
    nx, ny = dom.shape
    b1 = comps[:, 0].reshape(nx, ny)
    b2 = comps[:, 1].reshape(nx, ny)
    kx = _wavenumbers(nx, TWO_PI)[:, None]
    ky = _wavenumbers(ny, TWO_PI)[None, :]
    div_hat = 1j * kx * np.fft.fft2(b1) + 1j * ky * np.fft.fft2(b2)
    k2 = kx ** 2 + ky ** 2
    dead = k2 == 0.0  # mean mode plus the zeroed Nyquist lines
    k2 = np.where(dead, 1.0, k2)
    alpha_hat = -div_hat / k2
    alpha_hat[dead] = 0.0
    alpha = np.real(np.fft.ifft2(alpha_hat)).ravel()
    return ScalarField(dom, alpha)


def projection_P(dom: SourceDomain, alpha) -> ScalarField:
    """P = 1 - b∘d on scalar fields of the 2-torus: subtracting the zero-mean
    potential of d(alpha) leaves the constant mean-value field."""
    if dom.kind != "torus2":
        raise ValueError("projection_P is defined on the 2-torus")
    f = alpha if isinstance(alpha, ScalarField) else ScalarField(dom, np.asarray(alpha, dtype=float))
    pot = right_inverse_b(dom, f.d_components())
    return f - pot


def exact_divfree_field(dom: SourceDomain, alpha) -> Array:
    """Nodal vector field Z with i_Z(dx∧dy) = d(alpha) on the 2-torus:
    Z = (∂_y alpha, -∂_x alpha).  The residual of the defining equation is
    checked against independently differentiated data."""
    if dom.kind != "torus2":
        raise ValueError("exact_divfree_field is defined on the 2-torus")
    f = alpha if isinstance(alpha, ScalarField) else ScalarField(dom, np.asarray(alpha, dtype=float))
    da = f.d_components()
    Z = np.column_stack([da[:, 1], -da[:, 0]])
    # i_Z(dx∧dy) = Z_x dy - Z_y dx must reproduce (∂_x a, ∂_y a)
    residual = max(float(np.max(np.abs(-Z[:, 1] - da[:, 0]))),
                   float(np.max(np.abs(Z[:, 0] - da[:, 1]))))
    if residual > 1e-8:
        raise AssertionError(f"stream-function residual {residual:.3e}")
    return Z


def warn_if_rough(dom: SourceDomain, values: Array, threshold: float = 1e-8) -> float:
    defect = dom.smoothness_defect(values)
    if defect > threshold:
        warnings.warn(
            f"sampled data keeps {defect:.2e} relative energy at the Nyquist "
            f"band; the grid may be too coarse", SmoothnessWarning)
    return defect
