"""Finite-dimensional commutative associative algebras over C in a Cartan basis.

The basis I_1..I_n splits into m idempotents (I_u^2 = I_u, I_u I_v = 0) and
n-m nilpotents.  Each nilpotent I_s is absorbed by exactly one idempotent
I_{u_s}, and nilpotent products are encoded by structure constants
gamma(r, s, k) = coefficient of I_k in I_r * I_s, defined for k > max(r, s).
All structure indices are 1-based; coefficient arrays store the I_k
coefficient at slot k-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

__all__ = [
    "AlgebraError",
    "StructuralError",
    "NonInvertibleError",
    "AlgebraSpec",
    "AlgElement",
    "ValidationReport",
    "PropositionReport",
    "validate_algebra",
    "check_propositions",
    "multiply",
    "functional_f",
    "norm_euclid",
    "invert_direct",
    "unit_element",
    "basis_element",
    "mult_matrix",
    "algebra_from_json",
    "algebra_to_json",
]


class AlgebraError(Exception):
    """Base class for algebra-level failures."""


class StructuralError(AlgebraError):
    """Malformed spec: indices outside their admissible ranges."""


class NonInvertibleError(AlgebraError):
    """Element is not invertible; carries the functional index that vanished."""

    def __init__(self, message: str, u: int | None = None):
        super().__init__(message)
        self.u = u


@dataclass(frozen=True)
class AlgebraSpec:
    """Multiplication data for an algebra A_n^m.

    gamma maps (r, s, k) -> complex with r, s, k in m+1..n and k > max(r, s);
    it is the coefficient of I_k in I_r * I_s.  Only one of (r, s, k) /
    (s, r, k) needs to be present; storing both with different values is
    allowed so that validate_algebra can report the asymmetry.
    u_map maps each nilpotent index s in m+1..n to its idempotent u_s in 1..m.
    """

    n: int
    m: int
    gamma: Mapping[tuple[int, int, int], complex] = field(default_factory=dict)
    u_map: Mapping[int, int] = field(default_factory=dict)
    name: str = ""
    _table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise StructuralError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.m <= self.n:
            raise StructuralError(f"m must satisfy 1 <= m <= n, got m={self.m}, n={self.n}")
        if set(self.u_map) != set(range(self.m + 1, self.n + 1)):
            raise StructuralError("u_map must have exactly the keys m+1..n")
        for s, u in self.u_map.items():
            if not 1 <= u <= self.m:
                raise StructuralError(f"u_map[{s}] = {u} outside 1..{self.m}")
        for (r, s, k) in self.gamma:
            for idx in (r, s, k):
                if not 1 <= idx <= self.n:
                    raise StructuralError(f"gamma index {idx} outside 1..{self.n}")
            if r <= self.m or s <= self.m or k <= self.m:
                raise StructuralError(f"gamma key ({r},{s},{k}) must use nilpotent indices only")
        object.__setattr__(self, "_table", self._build_table())

    def _build_table(self) -> np.ndarray:
        n, m = self.n, self.m
        tab = np.zeros((n, n, n), dtype=complex)
        for u in range(1, m + 1):
            tab[u - 1, u - 1, u - 1] = 1.0
        for s in range(m + 1, n + 1):
            u = self.u_map[s]
            tab[u - 1, s - 1, s - 1] = 1.0
            tab[s - 1, u - 1, s - 1] = 1.0
        for r in range(m + 1, n + 1):
            for s in range(m + 1, n + 1):
                for k in range(m + 1, n + 1):
                    v = self.gamma.get((r, s, k))
                    if v is None:
                        v = self.gamma.get((s, r, k), 0.0)
                    tab[r - 1, s - 1, k - 1] = v
        return tab

    def gamma_coeff(self, r: int, s: int, k: int) -> complex:
        """Coefficient of I_k in I_r * I_s (0 outside the stored table)."""
        return complex(self._table[r - 1, s - 1, k - 1])

    @property
    def table(self) -> np.ndarray:
        """(n, n, n) tensor: table[j, k, l] = coefficient of I_{l+1} in I_{j+1}·I_{k+1}."""
        return self._table

    @property
    def unit_coeffs(self) -> np.ndarray:
        c = np.zeros(self.n, dtype=complex)
        c[: self.m] = 1.0
        return c

    def u_of(self, s: int) -> int:
        """Idempotent index attached to basis index s (s itself when s <= m)."""
        return s if s <= self.m else self.u_map[s]


@dataclass(frozen=True)
class AlgElement:
    """Element of an algebra: a length-n complex coefficient vector over {I_k}."""

    spec: AlgebraSpec
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.spec.n,):
            raise AlgebraError(f"coefficient vector has shape {c.shape}, expected ({self.spec.n},)")
        object.__setattr__(self, "coeffs", c)

    def __add__(self, other: "AlgElement") -> "AlgElement":
        return AlgElement(self.spec, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return AlgElement(self.spec, self.coeffs - other.coeffs)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.spec, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return multiply(self, other)
        return AlgElement(self.spec, self.coeffs * complex(other))

    __rmul__ = __mul__

    def coeff(self, k: int) -> complex:
        """Coefficient of I_k (1-based)."""
        return complex(self.coeffs[k - 1])

    def norm(self) -> float:
        return norm_euclid(self)


def unit_element(spec: AlgebraSpec) -> AlgElement:
    """The unit, represented explicitly as sum of all idempotents."""
    return AlgElement(spec, spec.unit_coeffs)


def basis_element(spec: AlgebraSpec, k: int) -> AlgElement:
    c = np.zeros(spec.n, dtype=complex)
    c[k - 1] = 1.0
    return AlgElement(spec, c)


def _mul_coeffs(spec: AlgebraSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("...j,...k,jkl->...l", a, b, spec.table)


def multiply(a: AlgElement, b: AlgElement, spec: AlgebraSpec | None = None) -> AlgElement:
    """Bilinear extension of the basis multiplication table."""
    if spec is None:
        spec = a.spec
        if b.spec is not spec and b.spec != spec:
            raise AlgebraError("factors belong to different algebras")
    if a.coeffs.shape != b.coeffs.shape:
        raise AlgebraError("dimension mismatch between factors")
    return AlgElement(spec, _mul_coeffs(spec, a.coeffs, b.coeffs))


def functional_f(u: int, a: AlgElement) -> complex:
    """The multiplicative functional f_u: coefficient of I_u."""
    if not 1 <= u <= a.spec.m:
        raise AlgebraError(f"functional index {u} outside 1..{a.spec.m}")
    return complex(a.coeffs[u - 1])


def norm_euclid(a: AlgElement) -> float:
    """Euclidean norm over the 2n real coordinates (Re and Im of each coefficient)."""
    return float(np.linalg.norm(a.coeffs))


def mult_matrix(a: AlgElement) -> np.ndarray:
    """n x n complex matrix of multiplication by a: column k is a * I_{k+1}."""
    return np.einsum("j,jkl->lk", a.coeffs, a.spec.table)


def invert_direct(a: AlgElement, spec: AlgebraSpec | None = None) -> AlgElement:
    """Inverse by dense linear solve; the oracle all closed forms are tested against."""
    spec = spec or a.spec
    for u in range(1, spec.m + 1):
        if a.coeffs[u - 1] == 0:
            raise NonInvertibleError(f"f_{u}(a) = 0: element not invertible", u=u)
    mat = mult_matrix(a)
    try:
        x = np.linalg.solve(mat, spec.unit_coeffs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - guarded by f_u check
        raise NonInvertibleError(str(exc)) from exc
    return AlgElement(spec, x)


@dataclass
class ValidationReport:
    """All violated constraints of a spec; empty list means the spec is valid."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:  # truthy iff valid
        return self.ok


def validate_algebra(spec: AlgebraSpec, tol: float = 1e-12) -> ValidationReport:
    """Check every rule of the multiplication table; lists all violations, never fail-fast."""
    n, m = spec.n, spec.m
    tab = spec.table
    report = ValidationReport()

    for (r, s, k), v in spec.gamma.items():
        if k <= max(r, s):
            report.violations.append(
                f"gamma-k-range: gamma({r},{s},{k}) = {v} has k <= max(r, s)"
            )
        w = spec.gamma.get((s, r, k))
        if w is not None and r != s and w != v:
            report.violations.append(
                f"gamma-symmetry: gamma({r},{s},{k}) = {v} but gamma({s},{r},{k}) = {w}"
            )

    nil = range(m + 1, n + 1)
    for r in nil:
        for s in nil:
            if np.max(np.abs(tab[r - 1, s - 1] - tab[s - 1, r - 1])) > tol:
                report.violations.append(f"commutativity: I_{r} I_{s} != I_{s} I_{r}")

    def prod3_left(i, j, k):
        return _mul_coeffs(spec, tab[i - 1, j - 1], np.eye(n, dtype=complex)[k - 1])

    def prod3_right(i, j, k):
        return _mul_coeffs(spec, np.eye(n, dtype=complex)[i - 1], tab[j - 1, k - 1])

    for r in nil:
        for s in nil:
            for p in nil:
                lhs, rhs = prod3_left(r, s, p), prod3_right(r, s, p)
                if np.max(np.abs(lhs - rhs)) > tol * (1 + np.max(np.abs(lhs))):
                    report.violations.append(f"assoc-A1: (I_{r} I_{s}) I_{p} != I_{r} (I_{s} I_{p})")
    for u in range(1, m + 1):
        for s in nil:
            for p in nil:
                lhs, rhs = prod3_left(u, s, p), prod3_right(u, s, p)
                if np.max(np.abs(lhs - rhs)) > tol * (1 + np.max(np.abs(lhs))):
                    report.violations.append(f"assoc-A2: (I_{u} I_{s}) I_{p} != I_{u} (I_{s} I_{p})")

    one = spec.unit_coeffs
    for k in range(1, n + 1):
        ek = np.eye(n, dtype=complex)[k - 1]
        if np.max(np.abs(_mul_coeffs(spec, one, ek) - ek)) > tol:
            report.violations.append(f"unit: (sum I_u) I_{k} != I_{k}")

    # nilpotency: span of (n-m+1)-fold products of nilpotent basis vectors must be 0
    if n > m:
        span = np.eye(n, dtype=complex)[m:]
        for _ in range(n - m):
            prods = [
                _mul_coeffs(spec, v, np.eye(n, dtype=complex)[s - 1]) for v in span for s in nil
            ]
            span = np.array([p for p in prods if np.max(np.abs(p)) > tol])
            if span.size == 0:
                break
        if span.size != 0:
            report.violations.append(
                f"nilpotency: some product of {n - m + 1} nilpotent basis vectors is nonzero"
            )
    return report


@dataclass
class PropositionReport:
    """Applicability of the two structural propositions for a spec."""

    prop1_applies: bool
    prop2_applies: bool
    prop2_contradictions: list[str] = field(default_factory=list)


def check_propositions(spec: AlgebraSpec) -> PropositionReport:
    """Proposition 1: constant u_map (a single absorbing idempotent) makes (A2) automatic.

    Proposition 2: injective u_map forces all nilpotent products to vanish;
    any nonzero product under an injective u_map is reported as a contradiction.
    """
    values = [spec.u_map[s] for s in sorted(spec.u_map)]
    prop1 = len(set(values)) <= 1
    prop2 = len(set(values)) == len(values)
    contradictions: list[str] = []
    if prop2:
        for r in range(spec.m + 1, spec.n + 1):
            for s in range(spec.m + 1, spec.n + 1):
                prod = spec.table[r - 1, s - 1]
                if np.max(np.abs(prod)) > 0:
                    contradictions.append(f"I_{r} I_{s} != 0 despite all u_s distinct")
    return PropositionReport(prop1, prop2, contradictions)


def algebra_from_json(data: dict) -> AlgebraSpec:
    """Build a spec from the JSON object format (complex numbers as [re, im] pairs)."""
    n, m = int(data["n"]), int(data["m"])
    u_list = data.get("u_map", [])
    u_map = {m + 1 + i: int(u) for i, u in enumerate(u_list)}
    gamma = {}
    for r, s, k, re, im in data.get("gamma", []):
        gamma[(int(r), int(s), int(k))] = complex(re, im)
    return AlgebraSpec(n=n, m=m, gamma=gamma, u_map=u_map, name=data.get("name", ""))


def algebra_to_json(spec: AlgebraSpec) -> dict:
    return {
        "n": spec.n,
        "m": spec.m,
        "u_map": [spec.u_map[s] for s in range(spec.m + 1, spec.n + 1)],
        "gamma": [
            [r, s, k, v.real, v.imag] for (r, s, k), v in sorted(spec.gamma.items())
        ],
        "name": spec.name,
    }
