"""Monogenic functions built from per-idempotent holomorphic data.

A monogenic function is assembled as
    Phi(zeta) = sum_u I_u (2 pi i)^{-1} contour-int F_u(t) (t - zeta)^{-1} dt
              + sum_s I_s (2 pi i)^{-1} contour-int G_s(t) (t - zeta)^{-1} dt,
with each contour a circle around xi_u enclosing no other xi_l.  Contour
integrals use the periodic trapezoid rule; since the resolvent's t-dependence
is explicit, only the scalar moments int F(t) (t - xi)^{-k} dt are quadratured.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraSpec, AlgElement, _mul_coeffs, norm_euclid
from .geometry import E3Frame, _xi_batch, _zeta_coeffs
from .resolvent import SingularityError, _recurrences

__all__ = [
    "ContourError",
    "HoloFunction",
    "MonogenicSpec",
    "eval_representation",
    "representation_field",
    "gateaux_derivative_fd",
    "cauchy_riemann_residual",
    "mspec_from_json",
    "mspec_to_json",
]


class ContourError(Exception):
    """A contour fails the enclosure requirement or passes through a pole."""


@dataclass(frozen=True)
class HoloFunction:
    """Holomorphic integrand: polynomial/truncated series, rational, or callback.

    kind "polynomial" / "series": coeffs are Taylor coefficients about center.
    kind "rational": num/den are polynomial coefficients about center; poles
    must stay off every contour the function is integrated over (checked at
    quadrature nodes).
    kind "callable": fn is evaluated as given; holomorphy on the contours
    cannot be verified, which is flagged with a warning at construction.
    Domain hypotheses (holomorphy on and inside every contour used) are the
    caller's responsibility for all kinds.
    """

    kind: str = "polynomial"
    coeffs: tuple = ()
    num: tuple = ()
    den: tuple = ()
    center: complex = 0.0
    fn: object = None

    def __post_init__(self):
        if self.kind not in ("polynomial", "series", "rational", "callable"):
            raise ValueError(f"unknown holomorphic kind {self.kind!r}")
        if self.kind == "callable":
            if not callable(self.fn):
                raise ValueError("kind 'callable' needs a callable fn")
            warnings.warn("holomorphy of a callable integrand is unverified",
                          UserWarning, stacklevel=3)
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        object.__setattr__(self, "num", tuple(complex(c) for c in self.num))
        object.__setattr__(self, "den", tuple(complex(c) for c in self.den))

    def __call__(self, t: np.ndarray) -> np.ndarray:
        if self.kind == "callable":
            return np.asarray(self.fn(np.asarray(t, dtype=complex)), dtype=complex)
        w = np.asarray(t, dtype=complex) - self.center
        if self.kind == "rational":
            den = _horner(self.den, w)
            small = np.abs(den) < 1e-12 * (1 + np.abs(w))
            if np.any(small):
                raise ContourError("rational integrand has a pole on or near the contour")
            return _horner(self.num, w) / den
        return _horner(self.coeffs, w)

    @staticmethod
    def exp_series(degree: int = 14, scale: complex = 1.0) -> "HoloFunction":
        """Truncated Taylor series of exp(scale * t)."""
        fact = np.cumprod(np.concatenate([[1.0], np.arange(1, degree + 1)]))
        return HoloFunction("series", tuple((scale ** k) / fact[k] for k in range(degree + 1)))


def _horner(coeffs, w):
    out = np.zeros_like(w)
    for c in reversed(coeffs or (0.0,)):
        out = out * w + c
    return out


@dataclass(frozen=True)
class MonogenicSpec:
    """Holomorphic data of one monogenic function: F_u per idempotent, G_s per
    nilpotent index, and optional explicit contour overrides per u."""

    F: tuple
    G: dict = field(default_factory=dict)
    contours: dict = field(default_factory=dict)  # u -> (center, radius)

    def __post_init__(self):
        object.__setattr__(self, "F", tuple(self.F))


def _auto_contours(xi: np.ndarray, m: int, overrides: dict):
    """Per-point circle (center, radius) for each u: centered at xi_u with radius
    0.4 times the gap to the nearest other xi (1.0 when there is a single u)."""
    centers = []
    radii = []
    for u in range(1, m + 1):
        if u in overrides:
            c, r = overrides[u]
            centers.append(np.broadcast_to(complex(c), xi.shape[:-1]).copy())
            radii.append(np.broadcast_to(float(r), xi.shape[:-1]).copy())
            continue
        c = xi[..., u - 1]
        if m == 1:
            r = np.ones_like(c, dtype=float)
        else:
            others = np.abs(np.delete(xi, u - 1, axis=-1) - c[..., None])
            gap = np.min(others, axis=-1)
            if np.min(gap) < 1e-10 * (1 + np.max(np.abs(xi))):
                raise ContourError(
                    f"xi_{u} coincides with another functional value at some "
                    "evaluation point; no separating contour exists there"
                )
            r = 0.4 * gap
        centers.append(c)
        radii.append(r)
    return centers, radii


def _check_enclosure(xi, u, center, radius):
    m = xi.shape[-1]
    inside = np.abs(xi[..., u - 1] - center) < radius
    if not np.all(inside):
        raise ContourError(f"contour for u={u} fails to enclose xi_{u} at some point")
    for ell in range(1, m + 1):
        if ell == u:
            continue
        stray = np.abs(xi[..., ell - 1] - center) <= radius
        if np.any(stray):
            raise ContourError(f"contour for u={u} also encloses xi_{ell}")


def _moments(func, center, radius, xi_u, kmax: int, nodes: int, chunk: int = 256):
    """W_k = (2 pi i)^{-1} contour-int func(t) (t - xi_u)^{-k} dt for k = 1..kmax.

    Node axis is processed in chunks to bound memory on large point batches.
    """
    out = [np.zeros(np.shape(center), dtype=complex) for _ in range(kmax)]
    for j0 in range(0, nodes, chunk):
        theta = 2 * np.pi * np.arange(j0, min(j0 + chunk, nodes)) / nodes
        rot = np.exp(1j * theta)
        t = center[..., None] + radius[..., None] * rot  # (..., chunk)
        d = t - xi_u[..., None]
        if np.min(np.abs(d)) < 1e-12 * (1 + np.max(np.abs(t))):
            raise SingularityError("resolvent pole sits on a quadrature node of the contour")
        base = func(t) * (radius[..., None] * rot / nodes)  # contains dt/(2 pi i)
        dinv = 1.0 / d
        cur = dinv
        for k in range(kmax):
            out[k] += np.sum(base * cur, axis=-1)
            cur = cur * dinv
    return out


def _rep_batch(mspec: MonogenicSpec, frame: E3Frame, pts: np.ndarray,
               nodes: int = 1024) -> np.ndarray:
    spec = frame.spec
    n, m = spec.n, spec.m
    if len(mspec.F) != m:
        raise ValueError(f"need one F_u per idempotent ({m}), got {len(mspec.F)}")
    xi, _, _, Q, _ = _recurrences(frame, pts)
    centers, radii = _auto_contours(xi, m, mspec.contours)
    for u in range(1, m + 1):
        _check_enclosure(xi, u, centers[u - 1], radii[u - 1])

    kmax_for_u = {u: 1 for u in range(1, m + 1)}
    for s in range(m + 1, n + 1):
        u = spec.u_map[s]
        kmax_for_u[u] = max(kmax_for_u[u], s - m + 1)

    out = np.zeros(pts.shape[:-1] + (n,), dtype=complex)

    # idempotent terms: I_u * (moment expansion) only touches I_u and its nilpotents
    for u in range(1, m + 1):
        W = _moments(mspec.F[u - 1], centers[u - 1], radii[u - 1],
                     xi[..., u - 1], kmax_for_u[u], nodes)
        out[..., u - 1] += W[0]
        for s in range(m + 1, n + 1):
            if spec.u_map[s] != u:
                continue
            for k in range(2, s - m + 2):
                out[..., s - 1] += Q[(k, s)] * W[k - 1]

    # nilpotent terms: full resolvent integral over Gamma_{u_s}, then times I_s
    for s, g in sorted(mspec.G.items()):
        us = spec.u_map[s]
        c, r = centers[us - 1], radii[us - 1]
        kmax = max(kmax_for_u.values())
        vec = np.zeros(pts.shape[:-1] + (n,), dtype=complex)
        Wij = {}
        for u in range(1, m + 1):
            Wij[u] = _moments(g, c, r, xi[..., u - 1], kmax, nodes)
            vec[..., u - 1] = Wij[u][0]
        for sp in range(m + 1, n + 1):
            usp = spec.u_map[sp]
            for k in range(2, sp - m + 2):
                vec[..., sp - 1] += Q[(k, sp)] * Wij[usp][k - 1]
        basis = np.zeros(n, dtype=complex)
        basis[s - 1] = 1.0
        out += _mul_coeffs(spec, basis, vec)
    return out


def eval_representation(mspec: MonogenicSpec, frame: E3Frame, p,
                        spec: AlgebraSpec | None = None, nodes: int = 1024) -> AlgElement:
    """Evaluate the represented monogenic function at one point."""
    spec = spec or frame.spec
    return AlgElement(spec, _rep_batch(mspec, frame, np.asarray(p, dtype=float), nodes))


def representation_field(mspec: MonogenicSpec, frame: E3Frame, nodes: int = 1024):
    """Field callable (pts (N,3) -> (N,n)) for use with the integration module."""
    return lambda pts: _rep_batch(mspec, frame, pts, nodes)


def gateaux_derivative_fd(phi, frame: E3Frame, p, h_direction, eps: float,
                          recover: bool = False) -> AlgElement:
    """One-sided difference quotient (Phi(zeta + eps h) - Phi(zeta)) / eps.

    For monogenic phi this approximates h * Phi'(zeta); with recover=True the
    quotient is divided by the (invertible) direction h to estimate Phi'.
    """
    from .algebra import invert_direct, multiply

    p = np.asarray(p, dtype=float)
    d = np.asarray(h_direction, dtype=float)
    pts = np.stack([p + eps * d, p])
    vals = np.asarray(phi(pts), dtype=complex)
    quot = AlgElement(frame.spec, (vals[0] - vals[1]) / eps)
    if not recover:
        return quot
    h_alg = AlgElement(frame.spec, _zeta_coeffs(frame, d))
    return multiply(quot, invert_direct(h_alg))


def cauchy_riemann_residual(phi, frame: E3Frame, p, h: float) -> tuple[float, float]:
    """Central-difference residuals of dPhi/dy = dPhi/dx e2 and dPhi/dz = dPhi/dx e3."""
    spec = frame.spec
    p = np.asarray(p, dtype=float)
    steps = np.array([
        [h, 0, 0], [-h, 0, 0], [0, h, 0], [0, -h, 0], [0, 0, h], [0, 0, -h],
    ])
    vals = np.asarray(phi(p + steps), dtype=complex)
    dx = (vals[0] - vals[1]) / (2 * h)
    dy = (vals[2] - vals[3]) / (2 * h)
    dz = (vals[4] - vals[5]) / (2 * h)
    r2 = np.linalg.norm(dy - _mul_coeffs(spec, dx, frame.a))
    r3 = np.linalg.norm(dz - _mul_coeffs(spec, dx, frame.b))
    return float(r2), float(r3)


def _holo_from_json(d: dict) -> HoloFunction:
    return HoloFunction(
        kind=d.get("kind", "polynomial"),
        coeffs=tuple(complex(re, im) for re, im in d.get("coeffs", [])),
        num=tuple(complex(re, im) for re, im in d.get("num", [])),
        den=tuple(complex(re, im) for re, im in d.get("den", [])),
        center=complex(*d.get("center", [0.0, 0.0])),
    )


def _holo_to_json(h: HoloFunction) -> dict:
    if h.kind == "callable":
        raise ValueError("callable integrands cannot be serialized")
    return {
        "kind": h.kind,
        "coeffs": [[c.real, c.imag] for c in h.coeffs],
        "num": [[c.real, c.imag] for c in h.num],
        "den": [[c.real, c.imag] for c in h.den],
        "center": [h.center.real, h.center.imag],
    }


def mspec_from_json(data: dict) -> MonogenicSpec:
    contours = {
        int(u): (complex(*cr["center"]), float(cr["radius"]))
        for u, cr in data.get("contours", {}).items()
    }
    return MonogenicSpec(
        F=tuple(_holo_from_json(d) for d in data["F"]),
        G={int(s): _holo_from_json(d) for s, d in data.get("G", {}).items()},
        contours=contours,
    )


def mspec_to_json(mspec: MonogenicSpec) -> dict:
    return {
        "F": [_holo_to_json(h) for h in mspec.F],
        "G": {str(s): _holo_to_json(h) for s, h in mspec.G.items()},
        "contours": {
            str(u): {"center": [c.real, c.imag], "radius": r}
            for u, (c, r) in mspec.contours.items()
        },
    }
