"""Tour of the algebra layer: multiplication tables, functionals, inversion.

Run:  python demos/algebra_tour.py
"""

import numpy as np

from monalg import (
    AlgebraSpec,
    basis_element,
    check_propositions,
    functional_f,
    invert_direct,
    load_fixture,
    make_frame,
    make_zeta,
    multiply,
    norm_euclid,
    unit_element,
    validate_algebra,
    xi_values,
    zeta_inverse_closed,
)

# ---------------------------------------------------------------------------
# The bundled A5 algebra: basis 1, rho, rho^2, rho^3, rho^4 with rho^5 = 0.
# Structure constants say gamma(r, s, k) = coefficient of I_k in I_r * I_s.
# ---------------------------------------------------------------------------
a5 = load_fixture("A5")
spec = a5.algebra
print("A5:", f"n={spec.n}, m={spec.m}, validation:", validate_algebra(spec).violations)

rho = basis_element(spec, 2)
print("rho * rho^2 =", multiply(rho, basis_element(spec, 3)).coeffs.real)
print("rho^3 * rho^2 =", multiply(basis_element(spec, 4), basis_element(spec, 3)).coeffs.real)

# the unit is the sum of the idempotents, never a special token
one = unit_element(spec)
print("unit coeffs:", one.coeffs.real)

# ---------------------------------------------------------------------------
# A custom two-idempotent algebra with one nilpotent attached to each part.
# ---------------------------------------------------------------------------
custom = AlgebraSpec(
    n=4, m=2,
    gamma={},                   # zero radical multiplication
    u_map={3: 1, 4: 2},
    name="demo",
)
print("\ncustom algebra valid:", validate_algebra(custom).ok)
props = check_propositions(custom)
print("single absorbing idempotent:", props.prop1_applies,
      "| all u_s distinct:", props.prop2_applies)

# ---------------------------------------------------------------------------
# Points of E3 and the functionals xi_u = f_u(zeta).
# ---------------------------------------------------------------------------
frame = a5.frames["harmonic"]   # e2 = i + rho^2 + rho^4, e3 = (1-i)rho + (1/4-3i/4)rho^3
print("\ne1^2 + e2^2 + e3^2 =", (one + multiply(frame.e2, frame.e2)
                                 + multiply(frame.e3, frame.e3)).coeffs)

p = (0.8, -0.6, 1.1)
zeta = make_zeta(frame, p)
print("zeta coeffs:", np.round(zeta.coeffs, 6))
print("xi = f_1(zeta):", functional_f(1, zeta), "==", complex(xi_values(frame, p)[0]))

# ---------------------------------------------------------------------------
# Inversion: dense linear solve (the oracle) vs the closed recurrence form.
# ---------------------------------------------------------------------------
inv_oracle = invert_direct(zeta)
inv_closed = zeta_inverse_closed(frame, p)
print("\n|closed - oracle| =", norm_euclid(inv_closed - inv_oracle))
print("|zeta * inverse - 1| =", norm_euclid(multiply(zeta, inv_closed) - one))
