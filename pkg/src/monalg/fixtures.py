"""Bundled validated algebra and frame fixtures.

Catalog: C2 (semisimple plane), A2_radical (two idempotents, one square-zero
nilpotent on the second), A3 (one idempotent, two-dimensional radical of
rho-power type), A5 (rho-powers, rho^5 = 0), and the four five-dimensional
one-idempotent algebras J69, A12_plus_A01sq, A12_plus_A12, J71 whose radical
multiplication tables come from the four-dimensional nilpotent classification.
A5 additionally ships the special frames "harmonic" (satisfies
e1^2 + e2^2 + e3^2 = 0), "in_S" (no nilpotent components; deliberately
violates R-independence, which only warns), and "t10" (vanishing first
nilpotent components).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from importlib import resources

from .algebra import AlgebraSpec, algebra_from_json
from .geometry import E3Frame, frame_from_json

__all__ = ["FixtureBundle", "load_fixture", "list_fixtures"]

_DATA = resources.files("monalg") / "fixtures_data" / "v1"

CATALOG = (
    "C2",
    "A2_radical",
    "A3",
    "A5",
    "J69",
    "A12_plus_A01sq",
    "A12_plus_A12",
    "J71",
)


@dataclass(frozen=True)
class FixtureBundle:
    algebra: AlgebraSpec
    frames: dict[str, E3Frame]

    @property
    def default_frame(self) -> E3Frame:
        return self.frames["default"]


def list_fixtures() -> list[str]:
    return list(CATALOG)


def load_fixture(name: str) -> FixtureBundle:
    """Load one catalog entry; unknown names raise KeyError."""
    if name not in CATALOG:
        raise KeyError(f"unknown fixture {name!r}; catalog: {', '.join(CATALOG)}")
    spec = algebra_from_json(json.loads((_DATA / "algebras" / f"{name}.json").read_text()))
    frames = {}
    for label, data in json.loads((_DATA / "frames" / f"{name}.json").read_text()).items():
        with warnings.catch_warnings():
            # the catalogued special frames (e.g. A5 "in_S") warn by design
            warnings.simplefilter("ignore")
            frames[label] = frame_from_json(data, spec)
    return FixtureBundle(algebra=spec, frames=frames)
