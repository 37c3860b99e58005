import numpy as np
import pytest

from monalg import (
    FrameWarning,
    exactness_conditions,
    list_fixtures,
    load_fixture,
    make_frame,
    multiply,
    norm_euclid,
    unit_element,
    validate_algebra,
)


def test_catalog_contents():
    names = list_fixtures()
    for required in ("C2", "A2_radical", "A3", "A5", "J69",
                     "A12_plus_A01sq", "A12_plus_A12", "J71"):
        assert required in names


def test_unknown_fixture_raises():
    with pytest.raises(KeyError):
        load_fixture("nope")


def test_all_fixtures_validate(bundles):
    for name, bundle in bundles.items():
        assert validate_algebra(bundle.algebra).violations == [], name
        assert "default" in bundle.frames


def test_fixture_shapes(bundles):
    a5 = bundles["A5"].algebra
    assert a5.n == 5 and a5.m == 1
    j69 = bundles["J69"].algebra
    assert set(j69.gamma) == {(2, 2, 3), (2, 4, 5)}
    c2 = bundles["C2"].algebra
    assert c2.gamma == {} and c2.n == c2.m == 2
    a2 = bundles["A2_radical"].algebra
    assert a2.n == 3 and a2.m == 2 and a2.u_map == {3: 2} and a2.gamma == {}
    a3 = bundles["A3"].algebra
    assert a3.n == 3 and a3.m == 1 and set(a3.gamma) == {(2, 2, 3)}


def test_harmonic_frame_identity(bundles):
    frame = bundles["A5"].frames["harmonic"]
    spec = frame.spec
    total = (unit_element(spec) + multiply(frame.e2, frame.e2)
             + multiply(frame.e3, frame.e3))
    assert norm_euclid(total) <= 1e-14


def test_five_dim_examples_pass_theorem8(bundles):
    for name in ("J69", "A12_plus_A01sq", "A12_plus_A12", "J71"):
        rep = exactness_conditions(bundles[name].default_frame)
        assert rep.theorem8, name


def test_in_s_frame_warns_when_built_directly(bundles):
    spec = bundles["A5"].algebra
    frame = bundles["A5"].frames["in_S"]
    with pytest.warns(FrameWarning):
        make_frame(spec, frame.a, frame.b)
