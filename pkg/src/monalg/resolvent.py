"""Closed-form inversion on E3: the resolvent expansion and the zeta inverse.

Everything reduces to scalar data at a point: xi_u = x + y a_u + z b_u,
T_s = y a_s + z b_s, the couplings B_{r,s} = sum_k T_k * (coeff of I_s in
I_r I_k), and their recurrences Q (resolvent) and Qtilde (inverse).  These
are cross-checked against the dense linear-solve oracle in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec, AlgElement, NonInvertibleError
from .geometry import E3Frame, _xi_batch

__all__ = [
    "SingularityError",
    "ResolventCoeffs",
    "compute_coeffs",
    "resolvent_at",
    "zeta_inverse_closed",
]

_POLE_TOL = 1e-13


class SingularityError(Exception):
    """Evaluation at (or too near) a pole; carries the functional index."""

    def __init__(self, message: str, u: int | None = None):
        super().__init__(message)
        self.u = u


def _t_batch(frame: E3Frame, pts: np.ndarray) -> np.ndarray:
    """T_s = y a_s + z b_s for nilpotent s: pts (..., 3) -> (..., n-m)."""
    pts = np.asarray(pts, dtype=float)
    m = frame.spec.m
    y, z = pts[..., 1], pts[..., 2]
    return y[..., None] * frame.a[m:] + z[..., None] * frame.b[m:]


def _recurrences(frame: E3Frame, pts: np.ndarray):
    """xi, T, B, Q, Qtilde at a batch of points.

    B[(r, s)], Q[(k, s)], Qtilde[(k, s)] hold arrays of the batch shape,
    with Q, Qtilde defined for k in 2..s-m+1 only.
    """
    spec = frame.spec
    n, m = spec.n, spec.m
    xi = _xi_batch(frame, pts)
    T = _t_batch(frame, pts)

    def t_of(s: int):
        return T[..., s - m - 1]

    B: dict[tuple[int, int], np.ndarray] = {}
    for s in range(m + 2, n + 1):
        for r in range(m + 1, s):
            acc = 0.0
            for k in range(m + 1, s):
                g = spec.gamma_coeff(r, k, s)
                if g != 0:
                    acc = acc + t_of(k) * g
            B[(r, s)] = acc + np.zeros_like(xi[..., 0])

    Q: dict[tuple[int, int], np.ndarray] = {}
    Qt: dict[tuple[int, int], np.ndarray] = {}
    for s in range(m + 1, n + 1):
        Q[(2, s)] = t_of(s)
        Qt[(2, s)] = -t_of(s)
        for k in range(3, s - m + 2):
            acc = 0.0
            acct = 0.0
            for r in range(k + m - 2, s):
                acc = acc + Q[(k - 1, r)] * B[(r, s)]
                acct = acct + Qt[(k - 1, r)] * B[(r, s)]
            Q[(k, s)] = acc + np.zeros_like(xi[..., 0])
            Qt[(k, s)] = -acct + np.zeros_like(xi[..., 0])
    return xi, T, B, Q, Qt


@dataclass(frozen=True)
class ResolventCoeffs:
    """Scalar resolvent data at one point: xi_u, T_s, B_{r,s}, Q_{k,s}, Qtilde_{k,s}."""

    xi: np.ndarray
    T: dict[int, complex]
    B: dict[tuple[int, int], complex]
    Q: dict[tuple[int, int], complex]
    Qtilde: dict[tuple[int, int], complex]


def compute_coeffs(frame: E3Frame, p, spec: AlgebraSpec | None = None) -> ResolventCoeffs:
    """All recurrence data at a single point p."""
    spec = spec or frame.spec
    pts = np.asarray(p, dtype=float)
    xi, T, B, Q, Qt = _recurrences(frame, pts)
    m = spec.m
    return ResolventCoeffs(
        xi=xi,
        T={m + 1 + i: complex(T[i]) for i in range(spec.n - m)},
        B={k: complex(v) for k, v in B.items()},
        Q={k: complex(v) for k, v in Q.items()},
        Qtilde={k: complex(v) for k, v in Qt.items()},
    )


def _resolvent_batch(frame: E3Frame, pts: np.ndarray, t: complex) -> np.ndarray:
    spec = frame.spec
    n, m = spec.n, spec.m
    xi, _, _, Q, _ = _recurrences(frame, pts)
    bad = np.abs(t - xi) < _POLE_TOL * (1 + abs(t))
    if np.any(bad):
        u = int(np.argwhere(bad)[0][-1]) + 1
        raise SingularityError(f"t = {t} hits the pole xi_{u}", u=u)
    out = np.zeros(pts.shape[:-1] + (n,), dtype=complex)
    for u in range(1, m + 1):
        out[..., u - 1] = 1.0 / (t - xi[..., u - 1])
    for s in range(m + 1, n + 1):
        us = spec.u_map[s]
        d = t - xi[..., us - 1]
        acc = 0.0
        for k in range(2, s - m + 2):
            acc = acc + Q[(k, s)] * d ** (-k)
        out[..., s - 1] = acc
    return out


def resolvent_at(t: complex, frame: E3Frame, p, spec: AlgebraSpec | None = None) -> AlgElement:
    """(t e1 - zeta)^{-1} via the expansion in powers of (t - xi_{u_s})."""
    spec = spec or frame.spec
    return AlgElement(spec, _resolvent_batch(frame, np.asarray(p, dtype=float), complex(t)))


def _zeta_inverse_batch(frame: E3Frame, pts: np.ndarray) -> np.ndarray:
    spec = frame.spec
    n, m = spec.n, spec.m
    pts = np.asarray(pts, dtype=float)
    xi, _, _, _, Qt = _recurrences(frame, pts)
    scale = 1 + np.linalg.norm(np.atleast_2d(pts), axis=-1).max()
    bad = np.abs(xi) < _POLE_TOL * scale
    if np.any(bad):
        u = int(np.argwhere(bad)[0][-1]) + 1
        raise NonInvertibleError(f"point lies on line L_{u} (xi_{u} = 0)", u=u)
    out = np.zeros(pts.shape[:-1] + (n,), dtype=complex)
    for u in range(1, m + 1):
        out[..., u - 1] = 1.0 / xi[..., u - 1]
    for s in range(m + 1, n + 1):
        xs = xi[..., spec.u_map[s] - 1]
        acc = 0.0
        for k in range(2, s - m + 2):
            acc = acc + Qt[(k, s)] * xs ** (-k)
        out[..., s - 1] = acc
    return out


def zeta_inverse_closed(frame: E3Frame, p, spec: AlgebraSpec | None = None) -> AlgElement:
    """zeta^{-1} from the Qtilde recurrence (the production inverse on E3)."""
    spec = spec or frame.spec
    return AlgElement(spec, _zeta_inverse_batch(frame, np.asarray(p, dtype=float)))
