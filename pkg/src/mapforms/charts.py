"""Smooth maps, diffeomorphisms and vector fields on flat charts.

Everything is an explicit callable plus optional analytic derivative data;
finite differences fill in whatever is missing.  Instances are immutable and
their callables must be pure, so evaluation is safe to run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import expm

Array = np.ndarray

DEFAULT_FD_STEP = 1e-4


class DimensionMismatch(ValueError):
    pass


def _fd_jacobian(func: Callable, x: Array, step: float) -> Array:
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = step
        fp = np.asarray(func(x + e), dtype=float)
        fm = np.asarray(func(x - e), dtype=float)
        cols.append((fp - fm) / (2.0 * step))
    return np.column_stack(cols)


@dataclass(frozen=True)
class ChartMap:
    """A smooth map between flat charts: forward map, optional inverse,
    optional analytic Jacobian (central differences otherwise)."""

    forward: Callable[[Array], Array]
    source_dim: int
    target_dim: int
    jacobian_func: Optional[Callable[[Array], Array]] = None
    inverse: Optional[Callable[[Array], Array]] = None
    fd_step: float = DEFAULT_FD_STEP
    name: str = ""

    def __call__(self, x) -> Array:
        return np.asarray(self.forward(np.asarray(x, dtype=float)), dtype=float)

    def jacobian(self, x) -> Array:
        if self.jacobian_func is not None:
            return np.asarray(self.jacobian_func(np.asarray(x, dtype=float)), dtype=float)
        return _fd_jacobian(self.forward, x, self.fd_step)

    def inverse_point(self, y) -> Array:
        if self.inverse is None:
            raise ValueError(f"map {self.name!r} has no inverse")
        return np.asarray(self.inverse(np.asarray(y, dtype=float)), dtype=float)


def identity_map(dim: int) -> ChartMap:
    eye = np.eye(dim)
    return ChartMap(
        forward=lambda x: x,
        source_dim=dim,
        target_dim=dim,
        jacobian_func=lambda x: eye,
        inverse=lambda y: y,
        name="id",
    )


def affine_map(A, b=None, name: str = "affine") -> ChartMap:
    """x -> A x + b, with exact Jacobian and exact inverse when A is square
    and invertible."""
    A = np.asarray(A, dtype=float)
    tdim, sdim = A.shape
    b = np.zeros(tdim) if b is None else np.asarray(b, dtype=float)
    inverse = None
    if tdim == sdim:
        try:
            Ainv = np.linalg.inv(A)
            inverse = lambda y: Ainv @ (y - b)  # noqa: E731
        except np.linalg.LinAlgError:
            inverse = None
    return ChartMap(
        forward=lambda x: A @ x + b,
        source_dim=sdim,
        target_dim=tdim,
        jacobian_func=lambda x: A,
        inverse=inverse,
        name=name,
    )


def rotation2(angle: float) -> ChartMap:
    c, s = np.cos(angle), np.sin(angle)
    return affine_map(np.array([[c, -s], [s, c]]), name=f"rot2({angle:g})")


def rotation3(axis, angle: float) -> ChartMap:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    K = np.array([
        [0.0, -axis[2], axis[1]],
        [axis[2], 0.0, -axis[0]],
        [-axis[1], axis[0], 0.0],
    ])
    R = np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * (K @ K)
    return affine_map(R, name=f"rot3({angle:g})")


def compose(outer: ChartMap, inner: ChartMap, name: str = "") -> ChartMap:
    if inner.target_dim != outer.source_dim:
        raise DimensionMismatch(
            f"cannot compose: inner target dim {inner.target_dim} != outer source dim {outer.source_dim}"
        )
    inverse = None
    if outer.inverse is not None and inner.inverse is not None:
        inverse = lambda y: inner.inverse(outer.inverse(np.asarray(y, dtype=float)))  # noqa: E731
    return ChartMap(
        forward=lambda x: outer(inner(x)),
        source_dim=inner.source_dim,
        target_dim=outer.target_dim,
        jacobian_func=lambda x: outer.jacobian(inner(x)) @ inner.jacobian(x),
        inverse=inverse,
        name=name or f"{outer.name}∘{inner.name}",
    )


@dataclass(frozen=True)
class VectorField:
    """A vector field on a flat chart, with optional analytic Jacobian
    (for brackets) and optional exact flow."""

    func: Callable[[Array], Array]
    dim: int
    jacobian_func: Optional[Callable[[Array], Array]] = None
    flow_func: Optional[Callable[[float], ChartMap]] = None
    fd_step: float = DEFAULT_FD_STEP
    name: str = ""

    def __call__(self, x) -> Array:
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)

    def jacobian(self, x) -> Array:
        if self.jacobian_func is not None:
            return np.asarray(self.jacobian_func(np.asarray(x, dtype=float)), dtype=float)
        return _fd_jacobian(self.func, x, self.fd_step)

    def bracket(self, other: "VectorField") -> "VectorField":
        """Jacobi-Lie bracket [X,Y](x) = DY(x) X(x) - DX(x) Y(x)."""
        if other.dim != self.dim:
            raise DimensionMismatch("bracket of fields on different charts")
        X, Y = self, other

        def func(x):
            return Y.jacobian(x) @ X(x) - X.jacobian(x) @ Y(x)

        jac = None
        if X.jacobian_func is not None and Y.jacobian_func is not None:
            # second derivatives by differencing the analytic Jacobians
            def jac(x, _X=X, _Y=Y, h=self.fd_step):  # noqa: E731
                return _fd_jacobian(func, x, h)

        return VectorField(func, self.dim, jacobian_func=jac, name=f"[{X.name},{Y.name}]")

    def flow(self, t: float, steps: int = 64) -> ChartMap:
        """Time-t flow map; exact when flow_func is provided, RK4 otherwise."""
        if self.flow_func is not None:
            return self.flow_func(t)
        return _rk4_flow(self, t, steps)


def _rk4_flow(X: VectorField, t: float, steps: int) -> ChartMap:
    h = t / steps

    def forward(x0):
        x = np.array(x0, dtype=float)
        for _ in range(steps):
            k1 = X(x)
            k2 = X(x + 0.5 * h * k1)
            k3 = X(x + 0.5 * h * k2)
            k4 = X(x + h * k3)
            x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        return x

    return ChartMap(forward, X.dim, X.dim, name=f"flow({X.name},{t:g})")


def constant_field(vec, name: str = "") -> VectorField:
    vec = np.asarray(vec, dtype=float)
    m = vec.size
    zero = np.zeros((m, m))

    def flow(t):
        return affine_map(np.eye(m), t * vec, name=f"shift({t:g})")

    return VectorField(
        func=lambda x: vec,
        dim=m,
        jacobian_func=lambda x: zero,
        flow_func=flow,
        name=name or "const",
    )


def affine_field(A, c=None, name: str = "") -> VectorField:
    """X(x) = A x + c, with the exact flow computed from the matrix
    exponential of the augmented generator."""
    A = np.asarray(A, dtype=float)
    m = A.shape[0]
    c = np.zeros(m) if c is None else np.asarray(c, dtype=float)

    def flow(t):
        aug = np.zeros((m + 1, m + 1))
        aug[:m, :m] = A
        aug[:m, m] = c
        E = expm(t * aug)
        return affine_map(E[:m, :m], E[:m, m], name=f"affine-flow({t:g})")

    return VectorField(
        func=lambda x: A @ x + c,
        dim=m,
        jacobian_func=lambda x: A,
        flow_func=flow,
        name=name or "affine",
    )


def field_from_callable(func, dim: int, jacobian=None, name: str = "") -> VectorField:
    return VectorField(func=func, dim=dim, jacobian_func=jacobian, name=name)


def as_field(X, dim: int) -> VectorField:
    """Coerce a VectorField, callable, or constant vector to a VectorField."""
    if isinstance(X, VectorField):
        if X.dim != dim:
            raise DimensionMismatch(f"field dim {X.dim} != chart dim {dim}")
        return X
    if callable(X):
        return VectorField(func=X, dim=dim)
    return constant_field(np.asarray(X, dtype=float))
