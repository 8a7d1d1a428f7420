import numpy as np
import pytest
from hypothesis import given, strategies as st

from bosonepr import kinematics as kin

finite = st.floats(-30, 30, allow_nan=False)
vec3 = st.tuples(finite, finite, finite).map(np.array)


def _nonzero(v):
    return np.linalg.norm(v) > 1e-3


@given(st.floats(0.1, 10), vec3.filter(_nonzero))
def test_standard_boost_is_lorentz_and_maps_rest(m, pv):
    p = kin.FourMomentum(m, pv)
    lam = kin.standard_boost(p)
    assert kin.is_lorentz(lam)
    np.testing.assert_allclose(lam @ kin.rest_momentum(m).vector, p.vector, rtol=1e-12, atol=1e-12 * m)


def test_on_shell_and_validation():
    p = kin.FourMomentum(2.0, [1.0, 2.0, 2.0])
    assert p.p0 == pytest.approx(np.sqrt(13.0))
    assert kin.minkowski_product(p, p) == pytest.approx(4.0)
    assert p.x == pytest.approx(9.0 / 4.0)
    q = kin.FourMomentum.from_components(p.p0, p.p_vec)
    assert q.m == pytest.approx(2.0)
    for bad in (0.0, -1.0, np.nan):
        with pytest.raises(ValueError):
            kin.FourMomentum(bad, [0, 0, 1])
    with pytest.raises(ValueError):
        kin.FourMomentum(1.0, [np.inf, 0, 0])
    with pytest.raises(ValueError):
        kin.rest_momentum(1.0).direction


def test_boost_and_rotation_helpers():
    lam = kin.boost(0.8, [0, 0, 1])
    assert lam[0, 0] == pytest.approx(np.cosh(0.8))
    assert lam[0, 3] == pytest.approx(np.sinh(0.8))
    np.testing.assert_allclose(kin.lorentz_inverse(lam) @ lam, np.eye(4), atol=1e-14)
    r = kin.axis_rotation(np.pi / 2, [0, 0, 1])
    np.testing.assert_allclose(r @ [1, 0, 0], [0, 1, 0], atol=1e-15)
    assert kin.is_rotation(r)
    assert not kin.is_rotation(np.diag([1.0, 1.0, -1.0]))
    assert not kin.is_lorentz(np.diag([1.0, 2.0, 1.0, 1.0]))


def test_wigner_rotation_of_pure_rotation_is_the_rotation(rng):
    # L_{Rp} = R L_p R^T, so the little-group element of a rotation is itself
    for _ in range(20):
        r = kin.axis_rotation(rng.uniform(0, 2 * np.pi), rng.normal(size=3))
        p = kin.FourMomentum(rng.uniform(0.1, 5), rng.normal(size=3) * 3)
        np.testing.assert_allclose(kin.wigner_rotation(kin.embed_rotation(r), p), r, atol=1e-12)


def test_collinear_boost_has_trivial_wigner_rotation():
    p = kin.FourMomentum(1.0, [0.3, -0.4, 1.2])
    lam = kin.boost(1.7, p.direction)
    np.testing.assert_allclose(kin.wigner_rotation(lam, p), np.eye(3), atol=1e-12)


@given(st.floats(0.1, 5), vec3.filter(_nonzero), st.floats(-3, 3), vec3.filter(_nonzero))
def test_wigner_rotation_matches_product_route(m, pv, eta, axis):
    p = kin.FourMomentum(m, pv)
    lam = kin.boost(eta, axis) @ kin.embed_rotation(kin.axis_rotation(0.4, [1, 2, 3]))
    w = kin.wigner_rotation(lam, p)
    full = kin.wigner_rotation_product(lam, p)
    assert kin.is_rotation(w, 1e-10)
    np.testing.assert_allclose(full[1:, 1:], w, atol=1e-8)
    assert abs(full[0, 0] - 1.0) < 1e-8


def test_wigner_rotation_rejects_non_lorentz():
    with pytest.raises(ValueError):
        kin.wigner_rotation(np.diag([1.0, 2.0, 1.0, 1.0]), kin.FourMomentum(1.0, [0, 0, 1]))


def test_spherical_gauge_frames():
    up = kin.FourMomentum(1.0, [0, 0, 2])
    np.testing.assert_allclose(kin.direction_rotation(up), np.eye(3), atol=1e-15)
    down = kin.FourMomentum(1.0, [0, 0, -2])
    np.testing.assert_allclose(kin.direction_rotation(down), np.diag([-1.0, 1.0, -1.0]), atol=1e-15)
    p = kin.FourMomentum(1.0, [1.0, 1.0, 0.0])
    r = kin.direction_rotation(p)
    np.testing.assert_allclose(r @ [0, 0, 1], p.direction, atol=1e-15)
    np.testing.assert_allclose(r[:, 0], [0, 0, -1], atol=1e-15)


def test_explicit_and_rotated_gauges():
    n = np.array([0.0, 0.0, 1.0])
    g = kin.ExplicitGauge([1.0, 0.0, 5.0])
    np.testing.assert_allclose(g.axis(n), [1, 0, 0], atol=1e-15)
    with pytest.raises(ValueError):
        kin.ExplicitGauge([0.0, 0.0, 2.0]).axis(n)
    rot = kin.RotatedGauge(g, np.pi / 2)
    np.testing.assert_allclose(rot.axis(n), [0, 1, 0], atol=1e-15)


def test_pair_common_gauge():
    k, p = np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])
    g = kin.PairCommonGauge.for_pair(k, p)
    a = g.axis(k / np.linalg.norm(k))
    assert abs(a @ k) < 1e-15 and abs(a @ p) < 1e-15
    # collinear momenta still produce a valid perpendicular axis
    g2 = kin.PairCommonGauge.for_pair(k, -2 * k)
    a2 = g2.axis(k)
    assert abs(a2 @ k) < 1e-15 and abs(np.linalg.norm(a2) - 1) < 1e-15
    with pytest.raises(ValueError):
        g.axis(np.array([0.0, 1.0, 0.0]))


@given(st.floats(1e-3, 100), st.floats(0.01, np.pi))
def test_equal_energy_pair_invariant(x, alpha):
    k, p = kin.equal_energy_pair(x, alpha)
    assert k.p0 == pytest.approx(p.p0)
    assert kin.minkowski_product(k, p) == pytest.approx(1 + x * (1 - np.cos(alpha)), rel=1e-12)


def test_cm_pair():
    k, p = kin.cm_pair(1.0)
    assert k.p0 == pytest.approx(np.sqrt(2))
    np.testing.assert_allclose(p.p_vec, -k.p_vec)
    assert kin.minkowski_product(k, p) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        kin.cm_pair(0.0)


def test_coincident():
    k = kin.FourMomentum(1.0, [0.1, 0.2, 0.3])
    assert kin.coincident(k, kin.FourMomentum(1.0, [0.1, 0.2, 0.3]))
    assert not kin.coincident(k, kin.FourMomentum(1.0, [0.1, 0.2, -0.3]))
