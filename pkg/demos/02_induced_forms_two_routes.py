"""Forms on the space of maps, computed two independent ways.

A p-form on the target paired with a q-form on the source gives a
(p+q-k)-form on the map space.  The pointwise route contracts the tangents
into the target form and integrates the restricted pull-back; the
definitional route pulls the form back to the product of the source with a
slice of tangent directions and fiber-integrates.  They must agree to
roundoff, and the classic loop example gives exactly 2*pi.
"""

import numpy as np

import mapforms as mf
from mapforms import catalog as cat

dom = mf.circle(64)
area = mf.volume_form(2)

# the unit circle as a map point, and the radial field along it
f = cat.unit_circle_map(dom, 2)
radial = mf.MapTangent(f, f.values.copy())

route_pointwise = mf.hat_pairing(area, 1.0, dom)
route_fiber = mf.hat_pairing_fiber(area, 1.0, dom)
print("area paired with 1 on the unit circle, radial slot:")
print("  pointwise route:", route_pointwise(f, radial))
print("  fiber route:    ", route_fiber(f, radial))
print("  2*pi:           ", 2 * np.pi)

# random data, both routes, three source manifolds
rng = np.random.default_rng(1)
for dom_k, m, p, q in [(mf.circle(48), 3, 2, 1),
                       (mf.torus2(12), 4, 2, 2),
                       (mf.interval(33), 3, 2, 0)]:
    om = cat.random_form(m, p, rng)
    al = cat.random_form(dom_k.chart_dim, q, rng, integer_modes=True)
    g = cat.random_map(dom_k, m, rng, amp=0.8)
    ts = [cat.random_tangent(g, rng) for _ in range(p + q - dom_k.dim)]
    v1 = mf.hat_pairing(om, al, dom_k)(g, *ts)
    v2 = mf.hat_pairing_fiber(om, al, dom_k)(g, *ts)
    print(f"{dom_k.kind:9s} p={p} q={q}: routes differ by {abs(v1 - v2):.2e}")

# the derivation rule on a closed source: d commutes with the pairing
om = cat.random_form(3, 2, rng)
al = cat.random_form(1, 0, rng, integer_modes=True)
dom = mf.circle(48)
W = mf.hat_pairing(om, al, dom)
lhs = mf.map_space_d(W, 1e-4)
rhs_terms = (mf.hat_pairing(mf.exterior_derivative(om), al, dom),
             mf.hat_pairing(om, mf.exterior_derivative(al), dom))
g = cat.random_map(dom, 3, rng, amp=0.8)
ts = [cat.random_tangent(g, rng) for _ in range(2)]
residual = lhs(g, *ts) - rhs_terms[0](g, *ts) - rhs_terms[1](g, *ts)
print("derivation identity residual on the circle:", abs(residual))

# both diffeomorphism actions are compatible with the pairing
phi = mf.rotation3([0.3, 1.0, 0.2], 0.7)
print("push-forward action identity residual:",
      abs(mf.action_pullback_M(W, phi)(g, *ts[:1])
          - mf.hat_pairing(mf.pullback(om, phi), al, dom)(g, *ts[:1])))
psi = cat.rigid_shift(0.41)
print("reparameterization action identity residual:",
      abs(mf.action_pullback_S(W, psi)(g, *ts[:1])
          - mf.hat_pairing(om, mf.pullback(al, psi), dom)(g, *ts[:1])))
