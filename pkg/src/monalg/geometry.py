"""The three-dimensional real subspace E3 = span_R(1, e2, e3) and its geometry.

Points of E3 are zeta = x + y e2 + z e3 with real (x, y, z).  The functional
images xi_u = f_u(zeta) = x + y a_u + z b_u control invertibility: zeta fails
to be invertible exactly on the straight lines L_u where xi_u = 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraSpec, AlgElement

__all__ = [
    "E3Frame",
    "Line3",
    "FrameWarning",
    "make_frame",
    "make_zeta",
    "xi_values",
    "check_surjectivity",
    "noninvertibility_lines",
    "point_invertible",
    "frame_from_json",
    "frame_to_json",
]

_SV_TOL = 1e-12


class FrameWarning(UserWarning):
    """Independence or surjectivity hypothesis violated by a frame."""


@dataclass(frozen=True)
class E3Frame:
    """Coefficients of e2 (a) and e3 (b) over the basis {I_k}; e1 = 1 is implicit."""

    spec: AlgebraSpec
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex)
        b = np.asarray(self.b, dtype=complex)
        if a.shape != (self.spec.n,) or b.shape != (self.spec.n,):
            raise ValueError(f"frame vectors must have length n = {self.spec.n}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def e2(self) -> AlgElement:
        return AlgElement(self.spec, self.a)

    @property
    def e3(self) -> AlgElement:
        return AlgElement(self.spec, self.b)


def _real_coords(v: np.ndarray) -> np.ndarray:
    return np.concatenate([v.real, v.imag])


def independence_ok(frame: E3Frame) -> bool:
    """True iff {1, e2, e3} are linearly independent over R (rank-3 real matrix)."""
    mat = np.stack(
        [_real_coords(frame.spec.unit_coeffs), _real_coords(frame.a), _real_coords(frame.b)],
        axis=1,
    )
    sv = np.linalg.svd(mat, compute_uv=False)
    return bool(sv[-1] > _SV_TOL * sv[0])


def make_frame(spec: AlgebraSpec, a, b, check: bool = True) -> E3Frame:
    """Construct a frame; independence and surjectivity violations warn, not raise.

    (Theorem-9-style frames inside the semisimple part deliberately violate
    independence, so these are diagnostics rather than hard errors.)
    """
    frame = E3Frame(spec, np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    if check:
        if not independence_ok(frame):
            warnings.warn("1, e2, e3 are linearly dependent over R", FrameWarning, stacklevel=2)
        flags = check_surjectivity(frame)
        if not np.all(flags):
            bad = [u + 1 for u in range(spec.m) if not flags[u]]
            warnings.warn(
                f"f_u(E3) != C for u in {bad} (a_u and b_u both real)", FrameWarning, stacklevel=2
            )
    return frame


def _zeta_coeffs(frame: E3Frame, pts: np.ndarray) -> np.ndarray:
    """Batch zeta: pts (..., 3) -> coefficient arrays (..., n)."""
    pts = np.asarray(pts, dtype=float)
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    return (
        x[..., None] * frame.spec.unit_coeffs
        + y[..., None] * frame.a
        + z[..., None] * frame.b
    )


def make_zeta(frame: E3Frame, p) -> AlgElement:
    """zeta = x e1 + y e2 + z e3 at a single point p = (x, y, z)."""
    return AlgElement(frame.spec, _zeta_coeffs(frame, np.asarray(p, dtype=float)))


def _xi_batch(frame: E3Frame, pts: np.ndarray) -> np.ndarray:
    """Batch xi_u = x + y a_u + z b_u: pts (..., 3) -> (..., m)."""
    pts = np.asarray(pts, dtype=float)
    m = frame.spec.m
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    return x[..., None] + y[..., None] * frame.a[:m] + z[..., None] * frame.b[:m]


def xi_values(frame: E3Frame, p) -> np.ndarray:
    """The m functional images xi_u at point p."""
    return _xi_batch(frame, np.asarray(p, dtype=float))


def check_surjectivity(frame: E3Frame) -> np.ndarray:
    """Per-u flags: f_u(E3) = C iff a_u or b_u has nonzero imaginary part."""
    m = frame.spec.m
    return (frame.a[:m].imag != 0.0) | (frame.b[:m].imag != 0.0)


@dataclass(frozen=True)
class Line3:
    """Line L_u of non-invertible points (through the origin); degenerate means
    the defining equations are dependent and the solution set is a plane."""

    u: int
    direction: np.ndarray | None
    degenerate: bool = False


def noninvertibility_lines(frame: E3Frame) -> list[Line3]:
    """Null spaces of the 2x3 real systems Re xi_u = Im xi_u = 0."""
    lines = []
    for u in range(1, frame.spec.m + 1):
        au, bu = frame.a[u - 1], frame.b[u - 1]
        sys = np.array([[1.0, au.real, bu.real], [0.0, au.imag, bu.imag]])
        _, sv, vt = np.linalg.svd(sys)
        if sv[-1] > _SV_TOL * max(1.0, sv[0]):
            d = vt[-1]
            lines.append(Line3(u, d / np.linalg.norm(d)))
        else:
            lines.append(Line3(u, None, degenerate=True))
    return lines


def point_invertible(frame: E3Frame, p) -> tuple[bool, float]:
    """Whether zeta(p) is invertible, plus min_u |xi_u| as a safety margin."""
    dist = float(np.min(np.abs(xi_values(frame, p))))
    return dist > 0.0, dist


def frame_from_json(data: dict, spec: AlgebraSpec) -> E3Frame:
    """Load a frame file ({"a": [[re, im], ...], "b": [...], "algebra": name})."""
    if data.get("algebra") and spec.name and data["algebra"] != spec.name:
        raise ValueError(f"frame is for algebra {data['algebra']!r}, not {spec.name!r}")
    a = np.array([complex(re, im) for re, im in data["a"]])
    b = np.array([complex(re, im) for re, im in data["b"]])
    return make_frame(spec, a, b)


def frame_to_json(frame: E3Frame) -> dict:
    return {
        "algebra": frame.spec.name,
        "a": [[v.real, v.imag] for v in frame.a],
        "b": [[v.real, v.imag] for v in frame.b],
    }
