import numpy as np
import pytest

from monalg import (
    FrameWarning,
    frame_from_json,
    frame_to_json,
    functional_f,
    make_frame,
    make_zeta,
    noninvertibility_lines,
    point_invertible,
    check_surjectivity,
    unit_element,
    xi_values,
)


def test_make_zeta_unit_direction(bundles):
    for bundle in bundles.values():
        frame = bundle.default_frame
        z = make_zeta(frame, (1.0, 0.0, 0.0))
        np.testing.assert_allclose(z.coeffs, unit_element(bundle.algebra).coeffs)


def test_make_zeta_recovers_frame_vectors(bundles):
    frame = bundles["A5"].frames["harmonic"]
    np.testing.assert_allclose(make_zeta(frame, (0, 1, 0)).coeffs, [1j, 0, 1, 0, 1])
    np.testing.assert_allclose(
        make_zeta(frame, (0, 0, 1)).coeffs, [0, 1 - 1j, 0, 0.25 - 0.75j, 0]
    )


def test_xi_values_basics(bundles):
    frame = bundles["C2"].default_frame
    np.testing.assert_allclose(xi_values(frame, (0, 0, 0)), [0, 0])
    np.testing.assert_allclose(xi_values(frame, (1, 1, 1)), [2 + 1j, 1j])

    a5 = bundles["A5"].frames["harmonic"]
    for z in (0.0, 0.7, -2.0):
        np.testing.assert_allclose(xi_values(a5, (0.3, -1.2, z)), [0.3 - 1.2j])


def test_xi_matches_functional(bundles):
    rng = np.random.default_rng(5)
    for bundle in bundles.values():
        frame = bundle.default_frame
        for _ in range(25):
            p = rng.uniform(-2, 2, size=3)
            xi = xi_values(frame, p)
            zeta = make_zeta(frame, p)
            for u in range(1, bundle.algebra.m + 1):
                assert xi[u - 1] == pytest.approx(functional_f(u, zeta), abs=1e-15)


def test_surjectivity_flags(bundles):
    assert np.all(check_surjectivity(bundles["A5"].frames["harmonic"]))
    assert np.all(check_surjectivity(bundles["C2"].default_frame))
    spec = bundles["C2"].algebra
    with pytest.warns(FrameWarning):
        frame = make_frame(spec, [1.0, 1j], [2.0, -1.0])
    np.testing.assert_array_equal(check_surjectivity(frame), [False, True])


def test_independence_rejection(bundles):
    spec = bundles["C2"].algebra
    # e3 = e1 + e2 as a real combination
    with pytest.warns(FrameWarning):
        make_frame(spec, [1j, 1j], [1 + 1j, 1 + 1j])


def test_lines_a5_is_z_axis(bundles):
    frame = bundles["A5"].frames["harmonic"]
    (line,) = noninvertibility_lines(frame)
    assert not line.degenerate
    np.testing.assert_allclose(np.abs(line.direction), [0, 0, 1], atol=1e-12)
    for t in np.linspace(-2, 2, 5):
        p = t * line.direction
        assert abs(functional_f(line.u, make_zeta(frame, p))) <= 1e-12 * (1 + abs(t))


def test_lines_c2(bundles):
    frame = bundles["C2"].default_frame
    lines = noninvertibility_lines(frame)
    # u=1: x + z = 0, y = 0
    d = lines[0].direction
    np.testing.assert_allclose(np.abs(d), np.abs(np.array([1, 0, -1]) / np.sqrt(2)), atol=1e-12)
    for line in lines:
        for t in (-1.5, 0.4, 2.0):
            p = t * line.direction
            assert abs(functional_f(line.u, make_zeta(frame, p))) <= 1e-12 * (1 + abs(t))


def test_degenerate_line_reported(bundles):
    spec = bundles["C2"].algebra
    with pytest.warns(FrameWarning):
        frame = make_frame(spec, [1.0, 1j], [2.0, -1.0])
    lines = noninvertibility_lines(frame)
    assert lines[0].degenerate and lines[0].direction is None
    assert not lines[1].degenerate


def test_point_invertible(bundles):
    frame = bundles["A5"].frames["harmonic"]
    ok, margin = point_invertible(frame, (0, 0, 0))
    assert not ok and margin == 0.0
    ok, margin = point_invertible(frame, (1, 0, 0))
    assert ok and margin == pytest.approx(1.0)
    ok, _ = point_invertible(frame, (0, 0, 0.8))  # on the z-axis line
    assert not ok


def test_frame_json_round_trip(bundles):
    for bundle in bundles.values():
        frame = bundle.default_frame
        back = frame_from_json(frame_to_json(frame), bundle.algebra)
        np.testing.assert_allclose(back.a, frame.a)
        np.testing.assert_allclose(back.b, frame.b)


def test_frame_json_cross_check(bundles):
    data = frame_to_json(bundles["A5"].default_frame)
    with pytest.raises(ValueError):
        frame_from_json(data, bundles["C2"].algebra)
