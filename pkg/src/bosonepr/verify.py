"""Seeded invariant suites behind ``bosonepr verify``.

Each suite draws its own generator from (seed, suite index), so a suite's
outcome does not depend on which other suites ran. A suite returns the
worst residual it saw; it passes when that residual is within its tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bell, correlators as corr, kinematics as kin, observables as obs, spin1rep as rep, states as st

StateSpec = corr.StateSpec


def random_direction(rng) -> np.ndarray:
    d = rng.normal(size=3)
    return d / np.linalg.norm(d)


def random_momentum(rng, m=None, max_ratio=50.0, min_ratio=1e-3) -> kin.FourMomentum:
    m = rng.uniform(0.1, 10.0) if m is None else m
    return kin.FourMomentum(m, random_direction(rng) * rng.uniform(min_ratio, max_ratio) * m)


def random_pair(rng, max_ratio=20.0):
    m = rng.uniform(0.1, 10.0)
    return random_momentum(rng, m, max_ratio, 0.05), random_momentum(rng, m, max_ratio, 0.05)


def random_rotation(rng) -> np.ndarray:
    return kin.axis_rotation(rng.uniform(0, 2 * np.pi), random_direction(rng))


def random_lorentz(rng, max_rapidity=4.0) -> np.ndarray:
    return kin.boost(rng.uniform(0, max_rapidity), random_direction(rng)) @ kin.embed_rotation(random_rotation(rng))


def random_chi(rng) -> StateSpec:
    return StateSpec("chi", complex(*rng.normal(size=2)), complex(*rng.normal(size=2)))


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# -- kinematics ----------------------------------------------------------------


def suite_lorentz_membership(rng, trials):
    worst = 0.0
    for _ in range(trials):
        p = random_momentum(rng)
        worst = max(worst, kin.lorentz_residual(kin.standard_boost(p)))
    return worst


def suite_boost_maps_rest(rng, trials):
    worst = 0.0
    for _ in range(trials):
        p = random_momentum(rng)
        image = kin.standard_boost(p) @ kin.rest_momentum(p.m).vector
        worst = max(worst, float(np.max(np.abs(image - p.vector))) / max(1.0, p.p0))
    return worst


def suite_wigner_so3(rng, trials):
    worst = 0.0
    for _ in range(trials):
        p = random_momentum(rng, max_ratio=10.0)
        lam = random_lorentz(rng)
        r = kin.wigner_rotation(lam, p)
        lhs = kin.standard_boost(p.transformed(lam)) @ kin.embed_rotation(r)
        rhs = lam @ kin.standard_boost(p)
        scale = max(1.0, float(np.max(np.abs(rhs))))
        worst = max(worst, float(np.max(np.abs(r.T @ r - np.eye(3)))), abs(np.linalg.det(r) - 1.0),
                    float(np.max(np.abs(lhs - rhs))) / scale)
    return worst


def suite_direction_frame(rng, trials):
    worst = 0.0
    gauges = (kin.SphericalGauge(), kin.ExplicitGauge([0.3, -0.2, 0.9]))
    for i in range(trials):
        if i % 4 == 0:
            n = np.array([rng.normal() * 1e-9, rng.normal() * 1e-9, rng.choice([-1.0, 1.0])])
        else:
            n = random_direction(rng)
        p = kin.FourMomentum(1.0, n * rng.uniform(0.1, 10))
        for g in gauges:
            try:
                r = kin.direction_rotation(p, g)
            except ValueError:
                continue
            worst = max(worst, float(np.max(np.abs(r.T @ r - np.eye(3)))), abs(np.linalg.det(r) - 1.0),
                        float(np.max(np.abs(r[:, 2] - p.direction))))
    return worst


# -- spin-1 representation ---------------------------------------------------------------


def suite_intertwiner(rng, trials):
    return max(float(np.max(np.abs(rep.V @ rep.V.conj().T - np.eye(3)))),
               float(np.max(np.abs(rep.V @ rep.V.T - rep.VVT))))


def suite_amplitude_identities(rng, trials):
    worst = 0.0
    for _ in range(trials):
        p = random_momentum(rng)
        for amp in (rep.amplitude_spin(p), rep.amplitude_helicity(p, kin.ExplicitGauge(random_direction(rng)))):
            worst = max(worst, *amp.residuals().values(), amp.conjugation_residual())
    return worst


def suite_rotation_rep(rng, trials):
    worst = 0.0
    for _ in range(trials):
        r1, r2 = random_rotation(rng), random_rotation(rng)
        d1, d2 = rep.rotation_rep(r1), rep.rotation_rep(r2)
        worst = max(worst, float(np.max(np.abs(rep.rotation_rep(r1 @ r2) - d1 @ d2))),
                    float(np.max(np.abs(d1 @ rep.rotation_rep(r1.T) - np.eye(3)))),
                    float(np.max(np.abs(d1 @ d1.conj().T - np.eye(3)))))
    return worst


def suite_weinberg(rng, trials):
    worst = 0.0
    for _ in range(trials):
        worst = max(worst, rep.check_weinberg(random_lorentz(rng), random_momentum(rng, max_ratio=10.0)))
    return worst


def suite_gauge_covariance(rng, trials):
    worst = 0.0
    for _ in range(trials):
        p = random_momentum(rng)
        delta = rng.uniform(-np.pi, np.pi)
        base = kin.ExplicitGauge(random_direction(rng))
        e0 = rep.amplitude_helicity(p, base).entries
        e1 = rep.amplitude_helicity(p, kin.RotatedGauge(base, delta)).entries
        phases = np.array([np.exp(1j * delta), 1.0, np.exp(-1j * delta)])
        worst = max(worst, float(np.max(np.abs(e1 - e0 * phases))) / max(1.0, p.p0 / p.m))
    return worst


# -- states -------------------------------------------------------------------------------


def suite_norm_formulas(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        spec = random_chi(rng)
        psi, phi = st.state_psi(k, p), st.state_phi(k, p)
        chi = st.state_chi(k, p, spec.alpha, spec.beta)
        xi = st.state_xi(k, p)
        worst = max(worst,
                    _rel(psi.norm_sq, st.norm_sq_psi(k, p)),
                    _rel(phi.norm_sq, st.norm_sq_phi(k, p)),
                    _rel(phi.inner(psi).real, st.overlap_phi_psi(k, p)),
                    abs(phi.inner(psi).imag) / abs(st.overlap_phi_psi(k, p)),
                    _rel(chi.norm_sq, st.norm_sq_chi(k, p, spec.alpha, spec.beta)),
                    _rel(xi.norm_sq, st.norm_sq_xi(k, p)))
    return worst


def suite_xi_two_routes(rng, trials):
    worst = 0.0
    for _ in range(trials):
        m = 1.0
        k = kin.FourMomentum(m, random_direction(rng) * np.sqrt(rng.uniform(0.01, 10.0)))
        p = kin.FourMomentum(m, random_direction(rng) * np.sqrt(rng.uniform(0.01, 10.0)))
        direct = st.state_xi(k, p).coeffs
        combo = st.state_chi(k, p, -1.0, 1.0).coeffs
        worst = max(worst, float(np.max(np.abs(direct - combo)) / np.max(np.abs(combo))))
    return worst


# -- observables --------------------------------------------------------------------


def suite_observable_spectra(rng, trials):
    worst = 0.0
    for _ in range(trials):
        p = random_momentum(rng)
        theta = rng.uniform(0, 2 * np.pi)
        s = obs.polarization_observable("k", theta, p).matrix
        ev = np.sort(np.linalg.eigvalsh(s))
        worst = max(worst, float(np.max(np.abs(ev - [-1.0, 0.0, 1.0]))), abs(np.trace(s)),
                    float(np.max(np.abs(s - s.conj().T))),
                    float(np.max(np.abs(obs.polarization_observable("k", theta + np.pi, p).matrix - s))),
                    float(np.max(np.abs(obs.polarization_observable("k", theta + np.pi / 2, p).matrix + s))))
    return worst


def suite_observable_commute(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        state = st.state_chi(k, p, *random_chi(rng).coefficients())
        a = obs.polarization_observable("k", rng.uniform(0, np.pi), k, state.gauges[0])
        b = obs.polarization_observable("p", rng.uniform(0, np.pi), p, state.gauges[1])
        worst = max(worst, obs.commutator_on_state(a, b, state) / np.max(np.abs(state.coeffs)))
    return worst


def suite_observable_gauge_shift(rng, trials):
    worst = 0.0
    for _ in range(trials):
        p = random_momentum(rng)
        theta, delta = rng.uniform(0, np.pi), rng.uniform(-np.pi, np.pi)
        u = np.diag([np.exp(1j * delta), 1.0, np.exp(-1j * delta)])
        s = obs.polarization_observable("k", theta, p).matrix
        shifted = obs.polarization_observable("k", theta - delta, p).matrix
        worst = max(worst, float(np.max(np.abs(u.conj().T @ s @ u - shifted))))
    return worst


# -- correlators --------------------------------------------------------------------


def suite_helicity_oracle(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        for spec in (StateSpec("psi"), StateSpec("phi"), StateSpec("xi"), random_chi(rng)):
            worst = max(worst, abs(corr.helicity_correlation_closed(spec, k, p)
                                   - corr.helicity_correlation_oracle(spec, k, p)))
    return worst


def suite_polarization_oracle(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        t, tt = rng.uniform(0, np.pi, 2)
        for kind in ("psi", "phi", "xi"):
            spec = StateSpec(kind)
            worst = max(worst, abs(corr.polarization_correlation_closed(spec, k, p, t, tt)
                                   - corr.polarization_correlation_oracle(spec, k, p, t, tt)))
    return worst


def suite_spin_helicity(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        worst = max(worst, abs(corr.spin_correlation_psi(k, p, k.direction, p.direction)
                               - corr.helicity_correlation_closed(StateSpec("psi"), k, p)))
    return worst


def suite_helicity_gauge(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        spec = random_chi(rng)
        ref = corr.helicity_correlation_oracle(spec, k, p)
        gauges = (kin.ExplicitGauge(random_direction(rng)), kin.ExplicitGauge(random_direction(rng)))
        worst = max(worst, abs(corr.helicity_correlation_oracle(spec, k, p, gauges) - ref))
    return worst


def suite_polarization_gauge_shift(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        spec = random_chi(rng)
        base = kin.PairCommonGauge.for_pair(k.p_vec, p.p_vec)
        dk, dp = rng.uniform(-np.pi, np.pi, 2)
        t, tt = rng.uniform(0, np.pi, 2)
        rotated = (kin.RotatedGauge(base, dk), kin.RotatedGauge(base, dp))
        lhs = corr.polarization_correlation_oracle(spec, k, p, t, tt, rotated)
        rhs = corr.polarization_correlation_oracle(spec, k, p, t - dk, tt - dp, base)
        worst = max(worst, abs(lhs - rhs))
    return worst


def suite_correlation_bounds(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        t, tt = rng.uniform(0, np.pi, 2)
        for spec in (StateSpec("psi"), StateSpec("phi"), StateSpec("xi"), random_chi(rng)):
            for v in (corr.helicity_correlation_oracle(spec, k, p),
                      corr.polarization_correlation_oracle(spec, k, p, t, tt)):
                worst = max(worst, abs(v) - 1.0)
    return max(worst, 0.0)


def suite_cm_monotonic(rng, trials):
    xs = np.arange(0, 101) * 0.1
    xi = np.array([corr.cm_coefficient("xi", x) for x in xs])
    psi = np.array([corr.cm_coefficient("psi", x) for x in xs])
    ok = bool(np.all(np.diff(xi) > 0) and np.all(np.diff(psi) < 0))
    return 0.0 if ok else 1.0


def suite_angle_periodicity(rng, trials):
    worst = 0.0
    for _ in range(trials):
        k, p = random_pair(rng)
        t, tt = rng.uniform(0, np.pi, 2)
        for kind in ("psi", "phi", "xi"):
            spec = StateSpec(kind)
            ref = corr.polarization_correlation_oracle(spec, k, p, t, tt)
            worst = max(worst, abs(corr.polarization_correlation_oracle(spec, k, p, t + np.pi, tt) - ref),
                        abs(corr.polarization_correlation_oracle(spec, k, p, t, tt + np.pi) - ref))
    return worst


# -- bell -----------------------------------------------------------------------------


def suite_chsh_monotone(rng, trials):
    xs = np.linspace(0.0, 100.0, 2001)
    values = bell.cm_left_side(xs)
    return 0.0 if bool(np.all(np.diff(values) >= 0)) else 1.0


def suite_chsh_cap(rng, trials):
    worst = 0.0
    for _ in range(trials):
        x = rng.uniform(0, 20)
        angles = tuple(rng.uniform(0, np.pi, 4))
        value = bell.chsh_left_side(bell.ChshSetting(angles=angles, x=x))
        worst = max(worst, value - bell.TSIRELSON * corr.cm_coefficient("xi", x))
    return max(worst, 0.0)


def suite_chsh_threshold(rng, trials):
    return abs(bell.chsh_threshold() - bell.X0_CLOSED)


def suite_chsh_psi_family(rng, trials):
    worst = 0.0
    for _ in range(trials):
        x = rng.uniform(0, 20)
        value = bell.chsh_left_side(bell.ChshSetting(state=StateSpec("psi"), x=x))
        worst = max(worst, abs(value - bell.TSIRELSON * 2.0 / (2.0 + (2 * x + 1) ** 2)))
    return worst


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable
    tol: float


SUITES = (
    Suite("kinematics.lorentz_membership", suite_lorentz_membership, 1e-12),
    Suite("kinematics.boost_maps_rest", suite_boost_maps_rest, 1e-12),
    Suite("kinematics.wigner_so3", suite_wigner_so3, 1e-10),
    Suite("kinematics.direction_frame", suite_direction_frame, 1e-12),
    Suite("spin1rep.intertwiner", suite_intertwiner, 1e-14),
    Suite("spin1rep.amplitude_identities", suite_amplitude_identities, 1e-10),
    Suite("spin1rep.rotation_rep", suite_rotation_rep, 1e-12),
    Suite("spin1rep.weinberg", suite_weinberg, 1e-9),
    Suite("spin1rep.gauge_covariance", suite_gauge_covariance, 1e-12),
    Suite("states.norm_formulas", suite_norm_formulas, 1e-10),
    Suite("states.xi_two_routes", suite_xi_two_routes, 1e-9),
    Suite("observables.spectra", suite_observable_spectra, 1e-12),
    Suite("observables.commute", suite_observable_commute, 1e-13),
    Suite("observables.gauge_shift", suite_observable_gauge_shift, 1e-12),
    Suite("correlators.helicity_oracle", suite_helicity_oracle, 1e-10),
    Suite("correlators.polarization_oracle", suite_polarization_oracle, 1e-10),
    Suite("correlators.spin_helicity", suite_spin_helicity, 1e-12),
    Suite("correlators.helicity_gauge", suite_helicity_gauge, 1e-12),
    Suite("correlators.polarization_gauge_shift", suite_polarization_gauge_shift, 1e-11),
    Suite("correlators.bounds", suite_correlation_bounds, 1e-12),
    Suite("correlators.cm_monotonic", suite_cm_monotonic, 0.0),
    Suite("correlators.angle_periodicity", suite_angle_periodicity, 1e-12),
    Suite("bell.monotone_in_x", suite_chsh_monotone, 0.0),
    Suite("bell.tsirelson_cap", suite_chsh_cap, 1e-12),
    Suite("bell.threshold", suite_chsh_threshold, 1e-9),
    Suite("bell.psi_family", suite_chsh_psi_family, 1e-12),
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual)) and self.residual <= self.tol

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<42s} max_residual={self.residual:.3e}  tol={self.tol:.0e}"


def run_suites(seed: int = 0, trials: int = 1000, suites=SUITES) -> list[SuiteResult]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    results = []
    for index, suite in enumerate(suites):
        rng = np.random.default_rng([seed, index])
        try:
            residual = float(suite.run(rng, trials))
        except (ValueError, ArithmeticError):
            residual = float("inf")
        results.append(SuiteResult(suite.name, residual, suite.tol))
    return results
