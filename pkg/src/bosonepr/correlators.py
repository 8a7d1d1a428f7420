"""Helicity, spin and linear-polarization correlation functions.

Every correlator has two independent routes: the closed-form expression and
``oracle_expectation``, which evaluates <χ|B A|χ>/<χ|χ> directly on the
helicity coefficient array of an explicitly constructed state.

Closed-form polarization formulas hold in the pair-common gauge
(a_k = a_p along k x p). In any other gauge they are evaluated through the
gauge-shift law: turning a_k by δ about n_k is the same as θ -> θ - δ.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kinematics import FourMomentum, PairCommonGauge, coincident, cross3, minkowski_product
from .observables import (
    OneSidedObservable,
    helicity_observable,
    polarization_observable,
)
from .states import (
    TwoBosonState,
    linear,
    norm_sq_chi,
    resolve_gauges,
    state_chi,
    state_phi,
    state_psi,
    state_xi,
)

STATE_KINDS = ("psi", "phi", "xi", "chi")
IMAG_TOL = 1e-13


@dataclass(frozen=True)
class StateSpec:
    kind: str
    alpha: complex = 1.0
    beta: complex = 0.0

    def __post_init__(self):
        if self.kind not in STATE_KINDS:
            raise ValueError(f"unknown state {self.kind!r}; expected one of {STATE_KINDS}")
        if self.kind == "chi" and self.alpha == 0 and self.beta == 0:
            raise ValueError("alpha = beta = 0 gives the zero state")

    def coefficients(self) -> tuple[complex, complex]:
        """(alpha, beta) of this state in the family alpha (k.p) psi + beta phi."""
        if self.kind == "psi":
            return 1.0, 0.0
        if self.kind == "phi":
            return 0.0, 1.0
        if self.kind == "xi":
            return -1.0, 1.0
        return self.alpha, self.beta


def build_state(spec: StateSpec, k: FourMomentum, p: FourMomentum, gauge=None) -> TwoBosonState:
    if spec.kind == "psi":
        return state_psi(k, p, gauge)
    if spec.kind == "phi":
        return state_phi(k, p, gauge)
    if spec.kind == "xi":
        return state_xi(k, p, gauge)
    return state_chi(k, p, spec.alpha, spec.beta, gauge)


# -- oracle --------------------------------------------------------------------


def oracle_expectation(state: TwoBosonState, a: OneSidedObservable, b: OneSidedObservable) -> float:
    """sum c*[λ,λ'] A[λ,μ] B[λ',ν] c[μ,ν] / sum |c|^2."""
    if a.side == b.side:
        raise ValueError("correlation needs observables on opposite sides")
    if a.side == "p":
        a, b = b, a
    c = state.coeffs
    weight = state.weight
    if weight == 0.0:
        raise ValueError("zero-norm state")
    value = complex(np.sum(c.conj() * (a.matrix @ c @ b.matrix.T))) / weight
    if abs(value.imag) > IMAG_TOL:
        raise ArithmeticError(f"expectation has imaginary part {value.imag:.3g}; observable not Hermitian?")
    return value.real


def helicity_correlation_oracle(spec: StateSpec, k, p, gauge=None) -> float:
    state = build_state(spec, k, p, gauge)
    return oracle_expectation(state, helicity_observable("k"), helicity_observable("p"))


def polarization_correlation_oracle(spec: StateSpec, k, p, theta, theta_tilde, gauge=None) -> float:
    state = build_state(spec, k, p, gauge)
    gk, gp = state.gauges
    return oracle_expectation(
        state,
        polarization_observable("k", theta, k, gk),
        polarization_observable("p", theta_tilde, p, gp),
    )


# -- helicity closed forms ----------------------------------------------------------


def _geometry(k: FourMomentum, p: FourMomentum):
    if coincident(k, p):
        raise ValueError("coincident momenta unsupported (paper assumes k≠p)")
    kn, pn = k.abs_p, p.abs_p
    if kn == 0.0 or pn == 0.0:
        raise ValueError("helicity is undefined for a particle at rest")
    kp = minkowski_product(k, p)
    dot = float(k.p_vec @ p.p_vec)
    cross2 = float(np.sum(cross3(k.p_vec, p.p_vec) ** 2))
    return kp, dot, cross2, kn, pn, k.m


def helicity_matrix_elements(k: FourMomentum, p: FourMomentum) -> tuple[float, float, float]:
    """(<psi|ΛΛ|psi>, <phi|ΛΛ|phi>, <phi|ΛΛ|psi>) with the regulator set to 1.

    The mixed element carries the factor 4 k0 p0 like the other two, which
    is what makes the xi correlator below consistent with the chi assembly.
    """
    kp, dot, cross2, kn, pn, m = _geometry(k, p)
    f = 4.0 * k.p0 * p.p0
    return -2.0 * f * dot / (kn * pn), 0.0, -f * cross2 / (kn * pn)


def helicity_correlation_closed(spec: StateSpec, k: FourMomentum, p: FourMomentum) -> float:
    kp, dot, cross2, kn, pn, m = _geometry(k, p)
    if spec.kind == "psi":
        return -2.0 / (2.0 + kp**2 / m**4) * dot / (kn * pn)
    if spec.kind == "phi":
        return 0.0
    if spec.kind == "xi":
        return -2.0 * kp / (2.0 * kp**2 + m**4) * (kp * dot - cross2) / (kn * pn)
    alpha, beta = spec.coefficients()
    m_pp, m_ff, m_fp = helicity_matrix_elements(k, p)
    num = (
        abs(alpha) ** 2 * kp**2 * m_pp
        + abs(beta) ** 2 * m_ff
        + 2.0 * (np.conj(alpha) * beta).real * kp * m_fp
    )
    return num / norm_sq_chi(k, p, alpha, beta)


def spin_correlation_psi(k: FourMomentum, p: FourMomentum, a, b) -> float:
    """Spin correlation in psi for spin projections along unit vectors a, b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if abs(np.linalg.norm(a) - 1.0) > 1e-12 or abs(np.linalg.norm(b) - 1.0) > 1e-12:
        raise ValueError("spin measurement directions must be unit vectors")
    kp, *_ = _geometry(k, p)
    m, k0, p0 = k.m, k.p0, p.p0
    kv, pv = k.p_vec, p.p_vec
    bracket = (
        -(a @ b) * kp
        - (a @ pv) * (b @ kv)
        - (a @ kv) * (b @ pv) * (kv @ pv) / ((m + k0) * (m + p0))
        + k0 * (a @ pv) * (b @ pv) / (m + p0)
        + p0 * (a @ kv) * (b @ kv) / (m + k0)
    )
    return 2.0 / (m**2 * (2.0 + kp**2 / m**4)) * bracket


# -- polarization closed forms -------------------------------------------------------


def gauge_angle(n, a_ref, a) -> float:
    """Angle δ turning a_ref into a about the unit axis n (right-handed)."""
    return float(np.arctan2(cross3(n, a_ref) @ a, a_ref @ a))


def _pair_common_shift(k, p, gauge) -> tuple[float, float]:
    """(δ_k, δ_p) of the given gauges relative to the pair-common gauge."""
    if gauge is None:
        return 0.0, 0.0
    ref = PairCommonGauge.for_pair(k.p_vec, p.p_vec)
    gk, gp = resolve_gauges(k, p, gauge)
    shifts = []
    for q, g in ((k, gk), (p, gp)):
        n = q.direction
        shifts.append(gauge_angle(n, ref.axis(n), g.axis(n)))
    return shifts[0], shifts[1]


def _pol_pair_common(kind: str, k, p, theta, theta_tilde) -> float:
    kp, dot, cross2, kn, pn, m = _geometry(k, p)
    c2, ct = np.cos(2 * theta), np.cos(2 * theta_tilde)
    s2, st = np.sin(2 * theta), np.sin(2 * theta_tilde)
    kappa = dot / (kn * pn)
    if kind == "psi":
        return ((1.0 + kappa**2) * c2 * ct + 2.0 * kappa * s2 * st) / (2.0 + kp**2 / m**4)
    if kind == "phi":
        return cross2**2 * c2 * ct / (m**4 * kn**2 * pn**2 * (kp**2 / m**4 - 1.0) ** 2)
    if kind == "xi":
        k0, p0 = k.p0, p.p0
        q = m**2 * (m**2 + kn**2 + pn**2)
        head = 2.0 * kp**2 * (c2 * ct - k0 * p0 / (kn * pn) * s2 * st)
        tail = q * ((kp**2 - 2.0 * k0 * p0 * kp + q) / (kn**2 * pn**2) * c2 * ct + 2.0 * kp / (kn * pn) * s2 * st)
        return (head + tail) / (2.0 * kp**2 + m**4)
    raise ValueError("the general chi polarization correlator has no compact closed form; use the assembled route")


def polarization_correlation_closed(spec: StateSpec, k, p, theta, theta_tilde, gauge=None) -> float:
    """Closed form in the pair-common gauge, moved to other gauges by the angle shift.

    General chi has no compact formula; it goes through the assembled
    projector matrix elements instead.
    """
    dk, dp = _pair_common_shift(k, p, gauge)
    if spec.kind == "chi":
        return polarization_correlation_assembled(spec, k, p, theta - dk, theta_tilde - dp)
    return _pol_pair_common(spec.kind, k, p, theta - dk, theta_tilde - dp)


def _projector_scalars(k, p, theta, theta_tilde):
    _geometry(k, p)
    g = PairCommonGauge.for_pair(k.p_vec, p.p_vec)
    e = linear(k, theta, g).spatial
    et = linear(p, theta_tilde, g).spatial
    return e @ et, p.p_vec @ e, k.p_vec @ et, 4.0 * k.p0 * p.p0


def projector_elements(k, p, theta, theta_tilde) -> tuple[float, float, float]:
    """(<psi|ΠΠ|psi>, <phi|ΠΠ|phi>, <phi|ΠΠ|psi>) from explicit polarization
    vectors in the pair-common gauge, regulator 1."""
    ee, pe, ke, f = _projector_scalars(k, p, theta, theta_tilde)
    return (
        (f * ee**2).real,
        (f * pe**2 * ke**2).real,
        (-f * pe * ke * ee).real,
    )


def projector_element_xi(k, p, theta, theta_tilde) -> float:
    """<xi|ΠΠ|xi> as a single square; avoids cancelling the psi and phi parts."""
    ee, pe, ke, f = _projector_scalars(k, p, theta, theta_tilde)
    return (f * (minkowski_product(k, p) * ee + ke * pe) ** 2).real


def polarization_numerator(spec: StateSpec, k, p, theta, theta_tilde) -> float:
    """<χ|S_p S_k|χ> from the four projector terms."""
    alpha, beta = spec.coefficients()
    kp = minkowski_product(k, p)

    def term(t, tt):
        if spec.kind == "xi":
            return projector_element_xi(k, p, t, tt)
        m_pp, m_ff, m_fp = projector_elements(k, p, t, tt)
        return (
            abs(alpha) ** 2 * kp**2 * m_pp
            + abs(beta) ** 2 * m_ff
            + 2.0 * (np.conj(alpha) * beta).real * kp * m_fp
        )

    perp, perp_t = theta + np.pi / 2, theta_tilde + np.pi / 2
    return term(theta, theta_tilde) + term(perp, perp_t) - term(theta, perp_t) - term(perp, theta_tilde)


def polarization_correlation_assembled(spec: StateSpec, k, p, theta, theta_tilde) -> float:
    """Pair-common-gauge correlator from projector matrix elements; any chi."""
    alpha, beta = spec.coefficients()
    return polarization_numerator(spec, k, p, theta, theta_tilde) / norm_sq_chi(k, p, alpha, beta)


def cm_coefficient(kind: str, x: float) -> float:
    """Coefficient of cos 2(θ+θ~) for the centre-of-mass pair (k, k^pi)."""
    y = (2.0 * x + 1.0) ** 2
    if kind == "psi":
        return 2.0 / (2.0 + y)
    if kind == "phi":
        return 0.0
    if kind == "xi":
        return 2.0 * y / (2.0 * y + 1.0)
    raise ValueError(f"no centre-of-mass reduction for state {kind!r}")


def cm_polarization_correlation(kind: str, x: float, theta, theta_tilde):
    return cm_coefficient(kind, x) * np.cos(2.0 * (np.asarray(theta) + np.asarray(theta_tilde)))


def equal_energy_correlation(x, alpha, theta, theta_tilde):
    """xi correlator for |k| = |p|, k.p = |k|^2 cos(alpha); vectorizes over x, alpha."""
    x = np.asarray(x, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be non-negative")
    if np.any(alpha <= 0) or np.any(alpha > np.pi):
        raise ValueError("alpha must lie in (0, pi]; alpha = 0 means coincident momenta")
    ca = np.cos(alpha)
    u = x + 1.0 - x * ca
    cc = np.cos(2 * theta) * np.cos(2 * theta_tilde)
    ss = np.sin(2 * theta) * np.sin(2 * theta_tilde)
    out = (
        (2.0 * x * (x + 1.0) * (ca - 1.0) ** 2 + ca**2 + 1.0) * cc
        + 2.0 * u * (-x + x * ca + ca) * ss
    ) / (2.0 * u**2 + 1.0)
    return out if out.ndim else float(out)


# -- request / result plumbing --------------------------------------------------------


@dataclass(frozen=True)
class Helicity:
    pass


@dataclass(frozen=True)
class Polarization:
    theta: float
    theta_tilde: float


@dataclass(frozen=True, eq=False)
class Spin:
    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True, eq=False)
class CorrelationRequest:
    state: StateSpec
    k: FourMomentum
    p: FourMomentum
    measurement: object = field(default_factory=Helicity)
    gauge: object = None


@dataclass(frozen=True)
class CorrelationResult:
    value: float
    method: str
    residual: float | None = None
    oracle_value: float | None = None

    def __post_init__(self):
        for name in ("value", "residual", "oracle_value"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, float(v))
        if not abs(self.value) <= 1.0 + 1e-12:
            raise ArithmeticError(f"correlation {self.value!r} outside [-1, 1]")


def _closed(req: CorrelationRequest) -> float:
    meas = req.measurement
    if isinstance(meas, Helicity):
        return helicity_correlation_closed(req.state, req.k, req.p)
    if isinstance(meas, Polarization):
        return polarization_correlation_closed(req.state, req.k, req.p, meas.theta, meas.theta_tilde, req.gauge)
    if isinstance(meas, Spin):
        if req.state.kind != "psi":
            raise ValueError("the spin correlation is only available for the psi state")
        return spin_correlation_psi(req.k, req.p, meas.a, meas.b)
    raise TypeError(f"unknown measurement {meas!r}")


def _oracle(req: CorrelationRequest) -> float:
    meas = req.measurement
    if isinstance(meas, Helicity):
        return helicity_correlation_oracle(req.state, req.k, req.p, req.gauge)
    if isinstance(meas, Polarization):
        return polarization_correlation_oracle(req.state, req.k, req.p, meas.theta, meas.theta_tilde, req.gauge)
    raise ValueError("no oracle route for spin measurements (the spin operator is not modelled)")


def correlate(req: CorrelationRequest, method: str = "closed") -> CorrelationResult:
    """Evaluate a correlation request with ``method`` in {closed, oracle, both}."""
    if method == "closed":
        return CorrelationResult(_closed(req), "closed")
    if method == "oracle":
        return CorrelationResult(_oracle(req), "oracle")
    if method == "both":
        closed, oracle = _closed(req), _oracle(req)
        return CorrelationResult(closed, "both", closed - oracle, oracle)
    raise ValueError(f"unknown method {method!r}")
