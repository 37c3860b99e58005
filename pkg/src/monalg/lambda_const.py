"""The algebra-valued constant lambda: the loop integral of zeta^{-1} d zeta
around a curve embracing the non-invertibility lines once.

Its semisimple coefficients are always 2 pi i; the nilpotent coefficients are
loop integrals of the sigma forms, which vanish exactly when those forms are
total differentials.  This module computes lambda numerically, evaluates the
sigma forms in closed differential-representation form, checks the structural
exactness criteria, and measures the Cauchy theorem/formula residuals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraSpec,
    AlgElement,
    NonInvertibleError,
    multiply,
    norm_euclid,
    unit_element,
)
from .geometry import E3Frame, _xi_batch
from .integration import Curve3, curvilinear_integral, zeta_inverse_field
from .monogenic import MonogenicSpec, representation_field
from .resolvent import _t_batch, _zeta_inverse_batch

__all__ = [
    "EmbraceError",
    "LambdaResult",
    "SigmaForms",
    "ExactnessReport",
    "winding_number",
    "lambda_numeric",
    "atilde_closed",
    "sigma_closed",
    "sigma_direct",
    "exactness_conditions",
    "theorem8_products",
    "cauchy_theorem_residual",
    "cauchy_formula_residual",
]


class EmbraceError(Exception):
    """The curve does not embrace the non-invertibility set exactly once."""


def winding_number(frame: E3Frame, curve: Curve3, u: int, around: complex = 0.0) -> int:
    """Discrete winding of t -> xi_u(curve(t)) - around about zero."""
    w = _xi_batch(frame, curve.points)[:, u - 1] - around
    if np.min(np.abs(w)) < 1e-10 * (1 + abs(around)):
        raise EmbraceError(f"xi_{u} passes within 1e-10 of the winding point")
    total = float(np.sum(np.angle(w[1:] / w[:-1])))
    return int(np.rint(total / (2 * np.pi)))


def _sigma_node_values(frame: E3Frame, pts: np.ndarray, d: np.ndarray) -> np.ndarray:
    """sigma_k of the integrand decomposition, per node, applied to tangent data d."""
    spec = frame.spec
    n, m = spec.n, spec.m
    atil = _zeta_inverse_batch(frame, pts)  # (N, n)
    dxi = d[:, 0, None] + d[:, 1, None] * frame.a[:m] + d[:, 2, None] * frame.b[:m]
    dT = d[:, 1, None] * frame.a[m:] + d[:, 2, None] * frame.b[m:]
    xi = _xi_batch(frame, pts)
    out = np.zeros((len(pts), n), dtype=complex)
    out[:, :m] = dxi / xi
    for k in range(m + 1, n + 1):
        uk = spec.u_map[k]
        acc = dT[:, k - m - 1] / xi[:, uk - 1] + atil[:, k - 1] * dxi[:, uk - 1]
        for r in range(m + 1, k):
            for s in range(m + 1, k):
                g = spec.gamma_coeff(r, s, k)
                if g != 0:
                    acc = acc + atil[:, r - 1] * dT[:, s - m - 1] * g
        out[:, k - 1] = acc
    return out


def _sigma_integrals(frame: E3Frame, curve: Curve3) -> dict[int, complex]:
    """Loop integrals of each sigma_k, quadratured consistently with the curve."""
    if curve.tangents is not None:
        w = np.full(len(curve.points), curve.dt)
        w[0] *= 0.5
        w[-1] *= 0.5
        vals = _sigma_node_values(frame, curve.points, curve.tangents)
        total = np.einsum("i,ij->j", w, vals)
    else:
        # same trapezoid average as curvilinear_integral, so the nilpotent
        # lambda coefficients and these integrals agree to rounding
        dp = np.diff(curve.points, axis=0)
        v0 = _sigma_node_values(frame, curve.points[:-1], dp)
        v1 = _sigma_node_values(frame, curve.points[1:], dp)
        total = 0.5 * (v0 + v1).sum(axis=0)
    m = frame.spec.m
    return {k: complex(total[k - 1]) for k in range(m + 1, frame.spec.n + 1)}


@dataclass(frozen=True)
class LambdaResult:
    lambda_: AlgElement
    sigma_integrals: dict[int, complex]
    radius: float
    node_count: int
    is_2pi_i: bool
    tol: float
    winding: dict[int, int]


def lambda_numeric(frame: E3Frame, circle: Curve3, spec: AlgebraSpec | None = None,
                   tol: float | None = None) -> LambdaResult:
    """Loop integral of zeta^{-1} d zeta with embrace and invertibility preconditions."""
    spec = spec or frame.spec
    if not circle.closed:
        raise EmbraceError("lambda requires a closed curve")
    xi = _xi_batch(frame, circle.points)
    margin = float(np.min(np.abs(xi)))
    if margin < 1e-12 * (1 + float(np.max(np.abs(circle.points)))):
        u = int(np.argmin(np.min(np.abs(xi), axis=0))) + 1
        raise NonInvertibleError(f"curve node on or near line L_{u}", u=u)
    winding = {}
    for u in range(1, spec.m + 1):
        wu = winding_number(frame, circle, u)
        winding[u] = wu
        if wu != 1:
            raise EmbraceError(f"curve does not embrace once: winding of xi_{u} is {wu}")
    lam = curvilinear_integral(zeta_inverse_field(frame), circle, frame)
    sig = _sigma_integrals(frame, circle)
    centroid = circle.points[:-1].mean(axis=0)
    radius = float(np.mean(np.linalg.norm(circle.points[:-1] - centroid, axis=1)))
    tol = tol if tol is not None else 1e-6 * (1 + norm_euclid(lam))
    dev = norm_euclid(lam - (2j * np.pi) * unit_element(spec))
    return LambdaResult(
        lambda_=lam,
        sigma_integrals=sig,
        radius=radius,
        node_count=len(circle.points) - 1,
        is_2pi_i=bool(dev <= tol),
        tol=tol,
        winding=winding,
    )


# ---------------------------------------------------------------------------
# closed forms for the first four nilpotent coefficients and sigma forms
# ---------------------------------------------------------------------------

def _gamma_shorthands(spec: AlgebraSpec):
    """The ten structure constants entering the m+1..m+4 closed forms."""
    m = spec.m
    p, q, r, w = m + 1, m + 2, m + 3, m + 4
    g = spec.gamma_coeff

    def safe(i, j, k):
        return g(i, j, k) if k <= spec.n else 0.0

    return {
        "A": safe(p, p, q) if q <= spec.n else 0.0,
        "B2": safe(p, p, r) if r <= spec.n else 0.0,
        "C": safe(p, q, r) if r <= spec.n else 0.0,
        "D": safe(q, q, r) if r <= spec.n else 0.0,
        "E": safe(p, p, w) if w <= spec.n else 0.0,
        "F": safe(p, q, w) if w <= spec.n else 0.0,
        "G": safe(p, r, w) if w <= spec.n else 0.0,
        "H": safe(q, q, w) if w <= spec.n else 0.0,
        "J": safe(q, r, w) if w <= spec.n else 0.0,
        "K": safe(r, r, w) if w <= spec.n else 0.0,
    }


def atilde_closed(frame: E3Frame, p, spec: AlgebraSpec | None = None) -> dict[int, complex]:
    """The displayed closed forms for the zeta^{-1} coefficients at indices m+1..m+4.

    Implemented independently of the Qtilde recurrence as a cross-check of it.
    The final T-degree-4 term of the m+4 coefficient follows the recurrence
    (the printed sources carry a degree typo there).
    """
    spec = spec or frame.spec
    n, m = spec.n, spec.m
    if n - m < 1:
        return {}
    pt = np.asarray(p, dtype=float)
    xi = _xi_batch(frame, pt)
    T = _t_batch(frame, pt)
    c = _gamma_shorthands(spec)
    A, B2, C, D = c["A"], c["B2"], c["C"], c["D"]
    E, F, G, H, J, K = c["E"], c["F"], c["G"], c["H"], c["J"], c["K"]

    def t(i):  # T_{m+i}
        return complex(T[i - 1])

    def x(s):  # xi_{u_s}
        return complex(xi[spec.u_map[s] - 1])

    out: dict[int, complex] = {}
    s = m + 1
    out[s] = -t(1) / x(s) ** 2
    if n - m >= 2:
        s = m + 2
        out[s] = -t(2) / x(s) ** 2 + A * t(1) ** 2 / x(s) ** 3
    if n - m >= 3:
        s = m + 3
        out[s] = (
            -t(3) / x(s) ** 2
            + (B2 * t(1) ** 2 + 2 * C * t(1) * t(2) + D * t(2) ** 2) / x(s) ** 3
            - (A * C * t(1) ** 3 + A * D * t(1) ** 2 * t(2)) / x(s) ** 4
        )
    if n - m >= 4:
        s = m + 4
        t1, t2, t3, t4 = t(1), t(2), t(3), t(4)
        out[s] = (
            -t4 / x(s) ** 2
            + (E * t1 ** 2 + 2 * F * t1 * t2 + 2 * G * t1 * t3
               + H * t2 ** 2 + 2 * J * t2 * t3 + K * t3 ** 2) / x(s) ** 3
            - (A * F * t1 ** 3 + A * H * t1 ** 2 * t2 + A * J * t1 ** 2 * t3
               + B2 * G * t1 ** 3 + B2 * J * t1 ** 2 * t2 + B2 * K * t1 ** 2 * t3
               + 2 * C * G * t1 ** 2 * t2 + 2 * C * J * t1 * t2 ** 2
               + 2 * C * K * t1 * t2 * t3 + D * G * t1 * t2 ** 2
               + D * J * t2 ** 3 + D * K * t2 ** 2 * t3) / x(s) ** 4
            + (A * C * G * t1 ** 4 + A * C * J * t1 ** 3 * t2 + A * C * K * t1 ** 3 * t3
               + A * D * G * t1 ** 3 * t2 + A * D * J * t1 ** 2 * t2 ** 2
               + A * D * K * t1 ** 2 * t2 * t3) / x(s) ** 5
        )
    return out


@dataclass(frozen=True)
class SigmaForms:
    """sigma_k evaluated on a tangent, split into exact differential and remainder."""

    total: dict[int, complex]
    exact: dict[int, complex]
    remainder: dict[int, complex]


def _diff_monomial(coeff, powers, xi_pow, T, dT, xi, dxi):
    """Differential of coeff * prod_i T_{m+i}^{e_i} / xi^j applied to a tangent."""
    mono = coeff
    for i, e in powers.items():
        mono = mono * T[i - 1] ** e
    dmono = 0.0
    for i, e in powers.items():
        partial = coeff * e * T[i - 1] ** (e - 1)
        for i2, e2 in powers.items():
            if i2 != i:
                partial = partial * T[i2 - 1] ** e2
        dmono = dmono + partial * dT[i - 1]
    return dmono / xi ** xi_pow - xi_pow * mono * dxi / xi ** (xi_pow + 1)


def _antiderivative_terms(c) -> dict[int, list]:
    """Term lists (coeff, {T-offset: power}, xi-power) of the exact parts."""
    A, B2, C, D = c["A"], c["B2"], c["C"], c["D"]
    E, F, G, H, J, K = c["E"], c["F"], c["G"], c["H"], c["J"], c["K"]
    return {
        1: [(1.0, {1: 1}, 1)],
        2: [(1.0, {2: 1}, 1), (-A / 2, {1: 2}, 2)],
        3: [
            (1.0, {3: 1}, 1),
            (-B2 / 2, {1: 2}, 2),
            (-C, {1: 1, 2: 1}, 2),
            (-D / 2, {2: 2}, 2),
            (A * C / 3, {1: 3}, 3),
        ],
        4: [
            (1.0, {4: 1}, 1),
            (-E / 2, {1: 2}, 2),
            (-G, {1: 1, 3: 1}, 2),
            (-F, {1: 1, 2: 1}, 2),
            (-H / 2, {2: 2}, 2),
            (-J, {2: 1, 3: 1}, 2),
            (-K / 2, {3: 2}, 2),
            ((A * F + B2 * G) / 3, {1: 3}, 3),
            (D * J / 3, {2: 3}, 3),
            (-A * C * G / 4, {1: 4}, 4),
        ],
    }


def _remainder_terms(c) -> dict[int, list]:
    """Remainder pieces (coeff, {T-offset: power}, xi-power, g-index); each g(r)
    stands for dT_{m+r} - (T_{m+r}/xi) dxi."""
    A, B2, C, D = c["A"], c["B2"], c["C"], c["D"]
    G, H, J, K = c["G"], c["H"], c["J"], c["K"]
    return {
        3: [(A * D, {1: 2}, 3, 2)],
        4: [
            (A * H, {1: 2}, 3, 2),
            (A * J, {1: 2}, 3, 3),  # pairs with g(3); printed label (2,2) is a typo
            (B2 * J, {1: 2}, 3, 2),
            (B2 * K, {1: 2}, 3, 3),
            (2 * C * G, {1: 1, 2: 1}, 3, 1),
            (2 * C * J, {1: 1, 2: 1}, 3, 2),
            (2 * C * K, {1: 1, 2: 1}, 3, 3),
            (-A * C * J, {1: 3}, 4, 2),
            (-A * C * K, {1: 3}, 4, 3),
            (D * G, {2: 2}, 3, 1),
            (D * K, {2: 2}, 3, 3),
            (-A * D * G, {1: 2, 2: 1}, 4, 1),
            (-A * D * J, {1: 2, 2: 1}, 4, 2),
            (-A * D * K, {1: 2, 2: 1}, 4, 3),
        ],
    }


def sigma_closed(frame: E3Frame, p, dp, spec: AlgebraSpec | None = None) -> SigmaForms:
    """sigma_{m+1}..sigma_{m+4} on the tangent dp, via the split differential
    representation: d(antiderivative) plus structure-constant-weighted remainders."""
    spec = spec or frame.spec
    n, m = spec.n, spec.m
    pt = np.asarray(p, dtype=float)
    d = np.asarray(dp, dtype=float)
    xi_all = _xi_batch(frame, pt)
    T = _t_batch(frame, pt)
    dT = d[1] * frame.a[m:] + d[2] * frame.b[m:]
    c = _gamma_shorthands(spec)
    anti = _antiderivative_terms(c)
    rem = _remainder_terms(c)

    total: dict[int, complex] = {}
    exact: dict[int, complex] = {}
    remainder: dict[int, complex] = {}
    for off in range(1, min(4, n - m) + 1):
        k = m + off
        uk = spec.u_map[k]
        xi = complex(xi_all[uk - 1])
        dxi = complex(d[0] + d[1] * frame.a[uk - 1] + d[2] * frame.b[uk - 1])
        if xi == 0:
            raise NonInvertibleError(f"xi_{uk} = 0 at the evaluation point", u=uk)
        ex = 0.0
        for coeff, powers, xi_pow in anti[off]:
            if coeff != 0:
                ex = ex + _diff_monomial(coeff, powers, xi_pow, T, dT, xi, dxi)
        rm = 0.0
        for coeff, powers, xi_pow, gidx in rem.get(off, []):
            if coeff == 0:
                continue
            mono = coeff
            for i, e in powers.items():
                mono = mono * T[i - 1] ** e
            g = dT[gidx - 1] - T[gidx - 1] * dxi / xi
            rm = rm + mono / xi ** xi_pow * g
        exact[k] = complex(ex)
        remainder[k] = complex(rm)
        total[k] = complex(ex + rm)
    return SigmaForms(total=total, exact=exact, remainder=remainder)


def sigma_direct(frame: E3Frame, p, dp, spec: AlgebraSpec | None = None,
                 atilde: dict[int, complex] | None = None) -> dict[int, complex]:
    """sigma_k assembled directly from the integrand decomposition, for every k.

    With atilde given (e.g. from atilde_closed) the nilpotent coefficients come
    from it; otherwise from the recurrence inverse.
    """
    spec = spec or frame.spec
    n, m = spec.n, spec.m
    pt = np.asarray(p, dtype=float)
    d = np.asarray(dp, dtype=float)
    coeffs = _zeta_inverse_batch(frame, pt)
    at = {k: complex(coeffs[k - 1]) for k in range(m + 1, n + 1)}
    if atilde:
        at.update(atilde)
    xi = _xi_batch(frame, pt)
    dT = d[1] * frame.a[m:] + d[2] * frame.b[m:]

    out: dict[int, complex] = {}
    for u in range(1, m + 1):
        dxi = complex(d[0] + d[1] * frame.a[u - 1] + d[2] * frame.b[u - 1])
        out[u] = dxi / complex(xi[u - 1])
    for k in range(m + 1, n + 1):
        uk = spec.u_map[k]
        dxi = complex(d[0] + d[1] * frame.a[uk - 1] + d[2] * frame.b[uk - 1])
        acc = complex(dT[k - m - 1]) / complex(xi[uk - 1]) + at[k] * dxi
        for r in range(m + 1, k):
            for s in range(m + 1, k):
                g = spec.gamma_coeff(r, s, k)
                if g != 0:
                    acc += at[r] * complex(dT[s - m - 1]) * g
        out[k] = acc
    return out


# ---------------------------------------------------------------------------
# exactness criteria
# ---------------------------------------------------------------------------

@dataclass
class ExactnessReport:
    theorem5: bool
    theorem6: bool
    theorem7: bool
    theorem8: bool
    theorem8_violations: list[tuple[str, complex]]
    theorem9: bool
    theorem10: bool
    theorem10_condition1: bool
    theorem10_condition2: str | None
    predicted_2pi_i: bool = field(init=False)

    def __post_init__(self):
        self.predicted_2pi_i = (
            self.theorem5 or self.theorem6 or self.theorem7
            or self.theorem8 or self.theorem9 or self.theorem10
        )


_PRODUCT_DEFS = [
    # factors as (i-offset, j-offset, k-offset) triples of gamma arguments
    (("A", "D"),),
    (("A", "H"),),
    (("B2", "J"),),
    (("B2", "K"),),
    (("C", "G"),),
    (("C", "J"),),
    (("C", "K"),),
    (("A", "C", "J"),),
    (("A", "C", "K"),),
    (("D", "G"),),
    (("D", "K"),),
    (("D", "A", "G"),),
    (("D", "A", "J"),),
    (("D", "A", "K"),),
]

_GAMMA_ARGS = {
    "A": (1, 1, 2), "B2": (1, 1, 3), "C": (1, 2, 3), "D": (2, 2, 3),
    "E": (1, 1, 4), "F": (1, 2, 4), "G": (1, 3, 4), "H": (2, 2, 4),
    "J": (2, 3, 4), "K": (3, 3, 4),
}


def theorem8_products(spec: AlgebraSpec) -> list[tuple[str, complex]]:
    """The fourteen structure-constant products whose vanishing guarantees
    exactness of the sigma forms when the radical has dimension four."""
    c = _gamma_shorthands(spec)
    m = spec.m
    out = []
    for (factors,) in _PRODUCT_DEFS:
        value = 1.0 + 0j
        names = []
        for fac in factors:
            value *= c[fac]
            i, j, k = _GAMMA_ARGS[fac]
            names.append(f"gamma({m + i},{m + j},{m + k})")
        out.append(("*".join(names), complex(value)))
    return out


def exactness_conditions(frame: E3Frame, spec: AlgebraSpec | None = None) -> ExactnessReport:
    """Structural predicates guaranteeing lambda = 2 pi i (each sufficient)."""
    spec = spec or frame.spec
    n, m = spec.n, spec.m
    dim_n = n - m

    t5 = dim_n == 0
    nil_block = spec.table[m:, m:, :]
    t6 = bool(np.all(nil_block == 0))
    t7 = dim_n <= 3

    t8 = False
    violations: list[tuple[str, complex]] = []
    if dim_n == 4:
        for name, value in theorem8_products(spec):
            if abs(value) > 1e-14:
                violations.append((name, value))
        t8 = not violations

    t9 = bool(np.all(frame.a[m:] == 0) and np.all(frame.b[m:] == 0))

    cond1 = False
    cond2 = None
    t10 = False
    if dim_n == 4:
        cond1 = frame.a[m] == 0 and frame.b[m] == 0
        if frame.a[m + 1] == 0 and frame.b[m + 1] == 0:
            cond2 = "m+2"
        elif frame.a[m + 2] == 0 and frame.b[m + 2] == 0:
            cond2 = "m+3"
        t10 = bool(cond1 and cond2 is not None)

    return ExactnessReport(
        theorem5=t5, theorem6=t6, theorem7=t7,
        theorem8=t8, theorem8_violations=violations,
        theorem9=t9, theorem10=t10,
        theorem10_condition1=bool(cond1), theorem10_condition2=cond2,
    )


# ---------------------------------------------------------------------------
# Cauchy theorem and formula residuals
# ---------------------------------------------------------------------------

def _as_field(phi, frame: E3Frame, nodes: int):
    if isinstance(phi, MonogenicSpec):
        return representation_field(phi, frame, nodes)
    return phi


def cauchy_theorem_residual(phi, frame: E3Frame, curve: Curve3,
                            spec: AlgebraSpec | None = None, nodes: int = 1024) -> float:
    """norm of the loop integral of a monogenic function (zero in exact arithmetic)."""
    field_fn = _as_field(phi, frame, nodes)
    return norm_euclid(curvilinear_integral(field_fn, curve, frame))


def cauchy_formula_residual(phi, frame: E3Frame, p0, curve: Curve3,
                            spec: AlgebraSpec | None = None, nodes: int = 1024) -> float:
    """norm(lambda * Phi(zeta_0) - loop integral of Phi(zeta)(zeta - zeta_0)^{-1} d zeta)."""
    spec = spec or frame.spec
    p0 = np.asarray(p0, dtype=float)
    field_fn = _as_field(phi, frame, nodes)

    translated = Curve3(curve.points - p0, curve.closed, curve.tangents, curve.dt)
    lam = lambda_numeric(frame, translated, spec).lambda_

    phi0 = AlgElement(spec, np.asarray(field_fn(p0[None, :]), dtype=complex)[0])

    from .algebra import _mul_coeffs

    def integrand(pts):
        return _mul_coeffs(spec, np.asarray(field_fn(pts), dtype=complex),
                           _zeta_inverse_batch(frame, pts - p0))

    rhs = curvilinear_integral(integrand, curve, frame)
    return norm_euclid(multiply(lam, phi0) - rhs)
