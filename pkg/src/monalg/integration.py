"""Curvilinear and surface integrals of algebra-valued fields along E3 geometry.

A field is any callable mapping an (N, 3) array of points to an (N, n) array
of coefficient vectors.  Curves are polylines; closed analytic curves
produced by the generators additionally carry exact tangents, in which case
the integral uses the parameter trapezoid rule (spectrally accurate for
smooth closed loops).  Plain polylines fall back to the per-segment
trapezoid (polygon) rule.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import AlgebraSpec, AlgElement, _mul_coeffs, norm_euclid
from .geometry import E3Frame, _zeta_coeffs
from .resolvent import _zeta_inverse_batch

__all__ = [
    "Curve3",
    "Surface3",
    "FieldEvaluationError",
    "circle_curve",
    "triangle_curve",
    "polyline_curve",
    "rectangle_surface",
    "validate_surface",
    "curve_from_json",
    "curve_to_json",
    "constant_field",
    "zeta_field",
    "zeta_power_field",
    "zeta_inverse_field",
    "shifted_zeta_inverse_field",
    "curvilinear_integral",
    "surface_integral",
    "stokes_residual",
    "morera_functional",
    "morera_scan",
    "norm_inequality_check",
    "certified_lemma_constant",
]

Field = Callable[[np.ndarray], np.ndarray]

_CLOSE_TOL = 1e-14


class FieldEvaluationError(Exception):
    """Field evaluation failed somewhere on the given geometry."""


@dataclass(frozen=True)
class Curve3:
    """Sampled path in R^3.

    points: (N, 3) polyline vertices; closed curves duplicate the first point
    at the end.  When tangents (dp/dt at each sample, same shape) and the
    uniform parameter step dt are present, integrals use the parameter
    trapezoid rule instead of the polygon rule.
    """

    points: np.ndarray
    closed: bool
    tangents: np.ndarray | None = None
    dt: float | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 2:
            raise ValueError("curve needs an (N, 3) array with N >= 2")
        object.__setattr__(self, "points", pts)
        if self.closed and np.max(np.abs(pts[0] - pts[-1])) > _CLOSE_TOL:
            raise ValueError("closed curve must end where it starts")
        seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        if np.any(seg == 0.0):
            raise ValueError("consecutive samples must be distinct")
        if self.tangents is not None:
            tg = np.asarray(self.tangents, dtype=float)
            if tg.shape != pts.shape:
                raise ValueError("tangents must match points in shape")
            if self.dt is None:
                raise ValueError("tangent-carrying curves need the parameter step dt")
            object.__setattr__(self, "tangents", tg)

    def reversed(self) -> "Curve3":
        tg = None if self.tangents is None else -self.tangents[::-1]
        return Curve3(self.points[::-1].copy(), self.closed, tg, self.dt)


_PLANE_AXES = {"xy": (0, 1), "yz": (1, 2), "zx": (2, 0), "xz": (0, 2), "yx": (1, 0), "zy": (2, 1)}


def circle_curve(center=(0.0, 0.0, 0.0), radius: float = 1.0, nodes: int = 4096,
                 plane: str = "xy") -> Curve3:
    """Uniform circle in a parameter-coordinate plane, with exact tangents."""
    i, j = _PLANE_AXES[plane]
    t = np.linspace(0.0, 2 * np.pi, nodes + 1)
    pts = np.tile(np.asarray(center, dtype=float), (nodes + 1, 1))
    pts[:, i] += radius * np.cos(t)
    pts[:, j] += radius * np.sin(t)
    tg = np.zeros_like(pts)
    tg[:, i] = -radius * np.sin(t)
    tg[:, j] = radius * np.cos(t)
    return Curve3(pts, closed=True, tangents=tg, dt=2 * np.pi / nodes)


def _edge_points(p, q, k):
    lam = np.linspace(0.0, 1.0, k + 1)[:-1, None]
    return (1 - lam) * np.asarray(p, float) + lam * np.asarray(q, float)


def triangle_curve(p1, p2, p3, per_edge: int = 1024) -> Curve3:
    """Closed triangle boundary as a refined polyline (positive orientation as given)."""
    pts = np.vstack([
        _edge_points(p1, p2, per_edge),
        _edge_points(p2, p3, per_edge),
        _edge_points(p3, p1, per_edge),
        np.asarray(p1, float)[None],
    ])
    return Curve3(pts, closed=True)


def polyline_curve(points, closed: bool = False) -> Curve3:
    return Curve3(np.asarray(points, dtype=float), closed=closed)


def curve_from_json(data: dict) -> Curve3:
    return Curve3(np.asarray(data["points"], dtype=float), closed=bool(data["closed"]))


def curve_to_json(curve: Curve3) -> dict:
    return {"points": curve.points.tolist(), "closed": curve.closed}


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

def constant_field(value: AlgElement) -> Field:
    def f(pts):
        return np.broadcast_to(value.coeffs, pts.shape[:-1] + value.coeffs.shape).copy()
    return f


def zeta_field(frame: E3Frame) -> Field:
    return lambda pts: _zeta_coeffs(frame, pts)


def zeta_power_field(frame: E3Frame, k: int) -> Field:
    def f(pts):
        z = _zeta_coeffs(frame, pts)
        out = z
        for _ in range(k - 1):
            out = _mul_coeffs(frame.spec, out, z)
        return out
    return f


def zeta_inverse_field(frame: E3Frame) -> Field:
    return lambda pts: _zeta_inverse_batch(frame, pts)


def shifted_zeta_inverse_field(frame: E3Frame, p0) -> Field:
    """(zeta - zeta_0)^{-1}; zeta - zeta_0 is zeta evaluated at p - p0."""
    p0 = np.asarray(p0, dtype=float)
    return lambda pts: _zeta_inverse_batch(frame, pts - p0)


def _eval_field(psi: Field, pts: np.ndarray, where: str) -> np.ndarray:
    try:
        vals = np.asarray(psi(pts), dtype=complex)
    except Exception as exc:
        raise FieldEvaluationError(f"field evaluation failed on {where}: {exc}") from exc
    if vals.shape[:-1] != pts.shape[:-1]:
        raise FieldEvaluationError(f"field returned shape {vals.shape} for {pts.shape[0]} points")
    return vals


# ---------------------------------------------------------------------------
# integrals
# ---------------------------------------------------------------------------

def _assemble(frame: E3Frame, ix: np.ndarray, iy: np.ndarray, iz: np.ndarray) -> AlgElement:
    # integral = Ix + e2 * Iy + e3 * Iz  (left multiplication per the definition)
    spec = frame.spec
    coeffs = ix + _mul_coeffs(spec, frame.a, iy) + _mul_coeffs(spec, frame.b, iz)
    return AlgElement(spec, coeffs)


def curvilinear_integral(psi: Field, curve: Curve3, frame: E3Frame) -> AlgElement:
    """Integral of Psi d(zeta) with d(zeta) = dx + e2 dy + e3 dz along the curve."""
    vals = _eval_field(psi, curve.points, "curve")
    if curve.tangents is not None:
        w = np.full(len(curve.points), curve.dt)
        w[0] *= 0.5
        w[-1] *= 0.5
        wx = w * curve.tangents[:, 0]
        wy = w * curve.tangents[:, 1]
        wz = w * curve.tangents[:, 2]
        ix = np.einsum("i,ij->j", wx, vals)
        iy = np.einsum("i,ij->j", wy, vals)
        iz = np.einsum("i,ij->j", wz, vals)
    else:
        avg = 0.5 * (vals[:-1] + vals[1:])
        dp = np.diff(curve.points, axis=0)
        ix = np.einsum("i,ij->j", dp[:, 0], avg)
        iy = np.einsum("i,ij->j", dp[:, 1], avg)
        iz = np.einsum("i,ij->j", dp[:, 2], avg)
    return _assemble(frame, ix, iy, iz)


@dataclass(frozen=True)
class Surface3:
    """Triangulated surface with its oriented boundary polyline."""

    triangles: np.ndarray  # (K, 3, 3)
    boundary: Curve3

    def __post_init__(self):
        tri = np.asarray(self.triangles, dtype=float)
        if tri.ndim != 3 or tri.shape[1:] != (3, 3):
            raise ValueError("triangles must be a (K, 3, 3) array")
        object.__setattr__(self, "triangles", tri)


def rectangle_surface(origin, v1, v2, nx: int = 8, ny: int = 8,
                      boundary_per_edge: int = 1024) -> Surface3:
    """Flat parallelogram origin + s*v1 + t*v2 (s, t in [0,1]), split into triangles."""
    origin, v1, v2 = (np.asarray(v, dtype=float) for v in (origin, v1, v2))
    tris = []
    for i in range(nx):
        for j in range(ny):
            p00 = origin + v1 * (i / nx) + v2 * (j / ny)
            p10 = origin + v1 * ((i + 1) / nx) + v2 * (j / ny)
            p01 = origin + v1 * (i / nx) + v2 * ((j + 1) / ny)
            p11 = origin + v1 * ((i + 1) / nx) + v2 * ((j + 1) / ny)
            tris.append([p00, p10, p11])
            tris.append([p00, p11, p01])
    corners = [origin, origin + v1, origin + v1 + v2, origin + v2]
    k = boundary_per_edge
    pts = np.vstack([
        _edge_points(corners[0], corners[1], k),
        _edge_points(corners[1], corners[2], k),
        _edge_points(corners[2], corners[3], k),
        _edge_points(corners[3], corners[0], k),
        corners[0][None],
    ])
    return Surface3(np.array(tris), Curve3(pts, closed=True))


def validate_surface(surf: Surface3, tol: float = 1e-12) -> list[str]:
    """Directed-edge parity check: interior edges pair up in opposite directions,
    the unpaired ones must lie on the boundary polyline with matching orientation."""
    problems = []
    edges: dict[tuple, int] = {}
    for tri in surf.triangles:
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            key = (tuple(np.round(a, 12)), tuple(np.round(b, 12)))
            rev = (key[1], key[0])
            if edges.get(rev, 0) > 0:
                edges[rev] -= 1
            else:
                edges[key] = edges.get(key, 0) + 1
    free = [k for k, c in edges.items() if c > 0]
    bpts = surf.boundary.points
    seg = np.diff(bpts, axis=0)
    for (a, b) in free:
        a, b = np.array(a), np.array(b)
        mid = 0.5 * (a + b)
        d = bpts[:-1] - mid
        t = np.einsum("ij,ij->i", -d, seg) / np.maximum(np.einsum("ij,ij->i", seg, seg), 1e-300)
        t = np.clip(t, 0.0, 1.0)
        dist = np.linalg.norm(d + t[:, None] * seg, axis=1)
        i = int(np.argmin(dist))
        if dist[i] > 1e-9:
            problems.append(f"boundary edge {a}->{b} not on the boundary polyline")
        elif np.dot(seg[i], b - a) <= 0:
            problems.append(f"boundary edge {a}->{b} traversed against the boundary orientation")
    return problems


_FORMS = {"dxdy": (0, 1), "dydz": (1, 2), "dzdx": (2, 0)}


def surface_integral(psi: Field, surf: Surface3, form: str, spec: AlgebraSpec) -> AlgElement:
    """Midpoint-rule surface integral of Psi against one projected area form."""
    i, j = _FORMS[form]
    tri = surf.triangles
    e1 = tri[:, 1] - tri[:, 0]
    e2 = tri[:, 2] - tri[:, 0]
    area3d = 0.5 * np.linalg.norm(np.cross(e1, e2), axis=1)
    good = area3d > 0
    if not np.all(good):
        warnings.warn(f"skipping {np.count_nonzero(~good)} degenerate (zero-area) triangles")
    signed = 0.5 * (e1[:, i] * e2[:, j] - e1[:, j] * e2[:, i])
    centroids = tri.mean(axis=1)
    vals = _eval_field(psi, centroids[good], "surface")
    return AlgElement(spec, np.einsum("k,kj->j", signed[good], vals))


def _central_diff(psi: Field, pts: np.ndarray, axis: int, h: np.ndarray) -> np.ndarray:
    step = np.zeros_like(pts)
    step[:, axis] = h
    return (_eval_field(psi, pts + step, "difference stencil")
            - _eval_field(psi, pts - step, "difference stencil")) / (2 * h[:, None])


def stokes_residual(phi: Field, surf: Surface3, frame: E3Frame,
                    fd_step: float | None = None) -> float:
    """norm(LHS - RHS) of the Stokes analogue: boundary integral vs. the surface
    integral of the three curl-like brackets, derivatives by central differences."""
    spec = frame.spec
    lhs = curvilinear_integral(phi, surf.boundary, frame).coeffs

    centroids = surf.triangles.mean(axis=1)
    h = fd_step if fd_step is not None else 1e-5 * (1 + np.linalg.norm(centroids, axis=1))
    h = np.broadcast_to(np.asarray(h, dtype=float), (len(centroids),)).copy()
    dx = _central_diff(phi, centroids, 0, h)
    dy = _central_diff(phi, centroids, 1, h)
    dz = _central_diff(phi, centroids, 2, h)

    bxy = _mul_coeffs(spec, dx, frame.a[None, :]) - dy
    byz = _mul_coeffs(spec, dy, frame.b[None, :]) - _mul_coeffs(spec, dz, frame.a[None, :])
    bzx = dz - _mul_coeffs(spec, dx, frame.b[None, :])

    tri = surf.triangles
    e1 = tri[:, 1] - tri[:, 0]
    e2 = tri[:, 2] - tri[:, 0]

    def signed(i, j):
        return 0.5 * (e1[:, i] * e2[:, j] - e1[:, j] * e2[:, i])

    rhs = (np.einsum("k,kj->j", signed(0, 1), bxy)
           + np.einsum("k,kj->j", signed(1, 2), byz)
           + np.einsum("k,kj->j", signed(2, 0), bzx))
    return float(np.linalg.norm(lhs - rhs))


def morera_functional(phi: Field, triangle, frame: E3Frame, per_edge: int = 2048) -> AlgElement:
    """Boundary integral of phi over one oriented triangle edge polyline."""
    p1, p2, p3 = triangle
    a = np.asarray(p1, float)
    b = np.asarray(p2, float)
    c = np.asarray(p3, float)
    if np.linalg.norm(np.cross(b - a, c - a)) == 0.0:
        # collinear triangle: the loop retraces itself, integral is exactly zero
        return AlgElement(frame.spec, np.zeros(frame.spec.n, dtype=complex))
    return curvilinear_integral(phi, triangle_curve(p1, p2, p3, per_edge), frame)


def morera_scan(phi: Field, triangles, frame: E3Frame, per_edge: int = 512) -> float:
    """Max norm of the Morera functional over a mesh of triangles."""
    return max(norm_euclid(morera_functional(phi, tri, frame, per_edge)) for tri in triangles)


# ---------------------------------------------------------------------------
# the norm inequality (Lemma 1)
# ---------------------------------------------------------------------------

def _op_norm(spec: AlgebraSpec, coeffs: np.ndarray) -> float:
    mat = np.einsum("j,jkl->lk", coeffs, spec.table)
    return float(np.linalg.norm(mat, 2))


def certified_lemma_constant(frame: E3Frame) -> float:
    """A concrete valid constant for the norm inequality, certified node-for-node:
    sqrt(3) * max(1, ||M_e2||, ||M_e3||) / sigma_min(real coords of (1, e2, e3))."""
    spec = frame.spec
    m2 = _op_norm(spec, frame.a)
    m3 = _op_norm(spec, frame.b)
    mat = np.stack([
        np.concatenate([spec.unit_coeffs.real, spec.unit_coeffs.imag]),
        np.concatenate([frame.a.real, frame.a.imag]),
        np.concatenate([frame.b.real, frame.b.imag]),
    ], axis=1)
    smin = np.linalg.svd(mat, compute_uv=False)[-1]
    return float(np.sqrt(3.0) * max(1.0, m2, m3) / smin)


def norm_inequality_check(psi: Field, curve: Curve3, frame: E3Frame) -> tuple[float, float, float]:
    """(lhs, rhs, c): norm of the integral vs c * integral of ||Psi|| ||d zeta||."""
    c = certified_lemma_constant(frame)
    lhs = norm_euclid(curvilinear_integral(psi, curve, frame))
    vals = _eval_field(psi, curve.points, "curve")
    if curve.tangents is not None:
        w = np.full(len(curve.points), curve.dt)
        w[0] *= 0.5
        w[-1] *= 0.5
        dz = _zeta_tangent_norm(frame, curve.tangents)
        rhs = c * float(np.sum(w * np.linalg.norm(vals, axis=1) * dz))
    else:
        avg = 0.5 * (vals[:-1] + vals[1:])
        dz = _zeta_tangent_norm(frame, np.diff(curve.points, axis=0))
        rhs = c * float(np.sum(np.linalg.norm(avg, axis=1) * dz))
    return lhs, rhs, c


def _zeta_tangent_norm(frame: E3Frame, d: np.ndarray) -> np.ndarray:
    alg = (d[:, 0, None] * frame.spec.unit_coeffs
           + d[:, 1, None] * frame.a + d[:, 2, None] * frame.b)
    return np.linalg.norm(alg, axis=1)
