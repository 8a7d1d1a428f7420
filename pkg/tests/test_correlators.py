import numpy as np
import pytest
from hypothesis import given, strategies as st

from bosonepr import correlators as cor
from bosonepr import kinematics as kin
from bosonepr.correlators import StateSpec
from bosonepr.kinematics import FourMomentum

PSI, PHI, XI = StateSpec("psi"), StateSpec("phi"), StateSpec("xi")


def random_pair(rng):
    m = rng.uniform(0.1, 5)
    return (FourMomentum(m, rng.normal(size=3) * m * rng.uniform(0.1, 10)),
            FourMomentum(m, rng.normal(size=3) * m * rng.uniform(0.1, 10)))


@pytest.mark.parametrize("spec,expected", [(PSI, 2 / 11), (PHI, 0.0), (XI, 18 / 19)])
def test_cm_helicity_examples(spec, expected):
    k, p = kin.cm_pair(1.0)
    assert cor.helicity_correlation_closed(spec, k, p) == pytest.approx(expected, abs=1e-14)
    assert cor.helicity_correlation_oracle(spec, k, p) == pytest.approx(expected, abs=1e-14)


def test_phi_helicity_vanishes_everywhere(rng):
    for _ in range(50):
        k, p = random_pair(rng)
        assert abs(cor.helicity_correlation_oracle(PHI, k, p)) < 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_closed_forms_match_oracle(seed):
    rng = np.random.default_rng(seed)
    for _ in range(60):
        k, p = random_pair(rng)
        chi = StateSpec("chi", complex(*rng.normal(size=2)), complex(*rng.normal(size=2)))
        for spec in (PSI, PHI, XI, chi):
            assert cor.helicity_correlation_closed(spec, k, p) == pytest.approx(
                cor.helicity_correlation_oracle(spec, k, p), abs=1e-10)
            t, tt = rng.uniform(0, np.pi, size=2)
            assert cor.polarization_correlation_closed(spec, k, p, t, tt) == pytest.approx(
                cor.polarization_correlation_oracle(spec, k, p, t, tt), abs=1e-10)


def test_helicity_matrix_element_cross_term():
    # <phi|Λ_p Λ_k|psi> from the coefficient arrays directly
    from bosonepr.states import state_phi, state_psi
    k = FourMomentum(1.0, [0.2, 0.9, -0.4])
    p = FourMomentum(1.0, [-1.3, 0.1, 0.6])
    psi, phi = state_psi(k, p), state_phi(k, p)
    lam = np.diag([1.0, 0.0, -1.0])
    direct = 4 * k.p0 * p.p0 * np.sum(phi.coeffs.conj() * (lam @ psi.coeffs @ lam))
    _, _, cross = cor.helicity_matrix_elements(k, p)
    assert cross == pytest.approx(direct.real, rel=1e-12)
    c2 = np.sum(np.cross(k.p_vec, p.p_vec) ** 2)
    assert cross == pytest.approx(-4 * k.p0 * p.p0 * c2 / (k.abs_p * p.abs_p), rel=1e-12)


@pytest.mark.parametrize("x", [0.01, 0.5, 3.0, 50.0])
@pytest.mark.parametrize("theta,theta_tilde", [(0.0, 0.0), (np.pi / 8, 3 * np.pi / 8), (0.3, 2.2)])
def test_cm_polarization(x, theta, theta_tilde):
    k, p = kin.cm_pair(x)
    y = (2 * x + 1) ** 2
    c = np.cos(2 * (theta + theta_tilde))
    assert cor.polarization_correlation_closed(PSI, k, p, theta, theta_tilde) == pytest.approx(2 * c / (2 + y), abs=1e-11)
    assert cor.polarization_correlation_closed(PHI, k, p, theta, theta_tilde) == pytest.approx(0.0, abs=1e-11)
    assert cor.polarization_correlation_closed(XI, k, p, theta, theta_tilde) == pytest.approx(2 * y * c / (2 * y + 1), abs=1e-11)
    assert cor.cm_polarization_correlation("xi", x, theta, theta_tilde) == pytest.approx(2 * y * c / (2 * y + 1), abs=1e-14)


def test_equal_energy_formula():
    for x in (0.1, 1.0, 7.0):
        for alpha in (0.4, np.pi / 2, 2.5, np.pi):
            k, p = kin.equal_energy_pair(x, alpha)
            expect = cor.polarization_correlation_oracle(XI, k, p, 0.9, 2.0)
            assert cor.equal_energy_correlation(x, alpha, 0.9, 2.0) == pytest.approx(expect, abs=1e-11)
    # at rest only the longitudinal-free limit survives and the value is finite
    assert np.isfinite(cor.equal_energy_correlation(0.0, 1.0, 0.9, 2.0))
    grid = cor.equal_energy_correlation(np.array([0.5, 1.0]), np.array([1.0, 2.0]), 0.1, 0.2)
    assert grid.shape == (2,)
    with pytest.raises(ValueError):
        cor.equal_energy_correlation(1.0, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        cor.equal_energy_correlation(-1.0, 1.0, 0.0, 0.0)


def test_spin_correlation_at_momentum_axes(rng):
    for _ in range(50):
        k, p = random_pair(rng)
        spin = cor.spin_correlation_psi(k, p, k.direction, p.direction)
        assert spin == pytest.approx(cor.helicity_correlation_closed(PSI, k, p), abs=1e-12)


def test_gauge_laws(rng):
    for _ in range(30):
        k, p = random_pair(rng)
        gk = kin.ExplicitGauge(rng.normal(size=3))
        gp = kin.ExplicitGauge(rng.normal(size=3))
        chi = StateSpec("chi", 0.4 - 1j, 2.0)
        h0 = cor.helicity_correlation_oracle(chi, k, p)
        assert cor.helicity_correlation_oracle(chi, k, p, (gk, gp)) == pytest.approx(h0, abs=1e-12)
        t, tt = 0.7, 1.9
        assert cor.polarization_correlation_oracle(XI, k, p, t, tt, (gk, gp)) == pytest.approx(
            cor.polarization_correlation_closed(XI, k, p, t, tt, (gk, gp)), abs=1e-11)


@given(st.floats(-10, 10), st.floats(-10, 10))
def test_angle_periodicity(t, tt):
    k = FourMomentum(1.0, [0.5, 0.1, 0.3])
    p = FourMomentum(1.0, [-0.2, 0.8, 0.0])
    base = cor.polarization_correlation_closed(XI, k, p, t, tt)
    assert cor.polarization_correlation_closed(XI, k, p, t + np.pi, tt - np.pi) == pytest.approx(base, abs=1e-12)
    assert -1 - 1e-12 <= base <= 1 + 1e-12


def test_cm_coefficient_monotone():
    xs = np.linspace(0, 20, 500)
    vals = [cor.cm_coefficient("xi", x) for x in xs]
    assert np.all(np.diff(vals) > 0)
    vals = [cor.cm_coefficient("psi", x) for x in xs]
    assert np.all(np.diff(vals) < 0)


def test_correlate_api():
    k, p = kin.cm_pair(1.0)
    res = cor.correlate(cor.CorrelationRequest(XI, k, p), "both")
    assert res.value == pytest.approx(18 / 19) and abs(res.residual) < 1e-14
    assert isinstance(res.value, float)
    pol = cor.correlate(cor.CorrelationRequest(XI, k, p, cor.Polarization(0.1, 0.2)), "oracle")
    assert pol.method == "oracle"
    spin = cor.correlate(cor.CorrelationRequest(PSI, k, p, cor.Spin([0, 0, 1], [0, 0, -1])))
    assert spin.value == pytest.approx(2 / 11)
    with pytest.raises(ValueError):
        cor.correlate(cor.CorrelationRequest(PSI, k, p, cor.Spin([0, 0, 1], [0, 0, 1])), "oracle")
    with pytest.raises(ValueError):
        cor.correlate(cor.CorrelationRequest(XI, k, p, cor.Spin([0, 0, 1], [0, 0, 1])))
    with pytest.raises(ValueError):
        cor.correlate(cor.CorrelationRequest(XI, k, p), "guess")
    with pytest.raises(ArithmeticError):
        cor.CorrelationResult(1.5, "closed")


def test_state_spec_validation():
    assert StateSpec("xi").coefficients() == (-1, 1)
    with pytest.raises(ValueError):
        StateSpec("omega")
    with pytest.raises(ValueError):
        StateSpec("chi", 0, 0)
