"""Polarization vectors and two-boson scalar states in the helicity basis.

A two-boson state with momenta k != p is stored as the 3x3 array
``c[λ, λ']`` of coefficients over the symmetrized kets |(k,λ);(p,λ')>.
Those kets are orthogonal with squared norm 4 k0 p0 [δ³(0)]²; the
regulator [δ³(0)]² is set to 1 everywhere, so the squared norm of a state
is ``4 k0 p0 * sum(|c|**2)``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .kinematics import (
    ETA,
    FourMomentum,
    Gauge,
    PairCommonGauge,
    SphericalGauge,
    coincident,
    cross3,
    minkowski_product,
)
from .spin1rep import SQRT2, amplitude_helicity

POLARIZATION_KINDS = ("longitudinal", "transversal", "circular+", "circular-", "linear")


@dataclass(frozen=True, eq=False)
class PolarizationVector:
    """Contravariant polarization four-vector ε^μ(p) with its kind tag."""

    momentum: FourMomentum
    components: np.ndarray
    kind: str
    gauge: Gauge
    params: tuple = ()

    @property
    def spatial(self) -> np.ndarray:
        return self.components[1:]

    def transversality(self) -> float:
        return abs(self.momentum.lowered @ self.components)


def longitudinal(p: FourMomentum, gauge: Gauge | None = None) -> PolarizationVector:
    n = p.direction
    eps = -np.concatenate([[p.abs_p / p.m], p.p0 * n / p.m]).astype(complex)
    return PolarizationVector(p, eps, "longitudinal", gauge or SphericalGauge())


def transversal(p: FourMomentum, alpha: complex, beta: complex, gauge: Gauge | None = None) -> PolarizationVector:
    """Transverse state alpha|p,+1> + beta|p,-1>; needs |alpha|^2 + |beta|^2 = 1."""
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-12:
        raise ValueError("transverse coefficients must satisfy |alpha|^2 + |beta|^2 = 1")
    gauge = gauge or SphericalGauge()
    n = p.direction
    a = gauge.axis(n)
    b = cross3(n, a)
    eps = np.zeros(4, dtype=complex)
    eps[1:] = ((alpha - beta) * a + 1j * (alpha + beta) * b) / SQRT2
    return PolarizationVector(p, eps, "transversal", gauge, (complex(alpha), complex(beta)))


def circular(p: FourMomentum, sign: int, gauge: Gauge | None = None) -> PolarizationVector:
    if sign not in (1, -1):
        raise ValueError("circular polarization sign must be +1 or -1")
    eps = transversal(p, 1.0 if sign == 1 else 0.0, 0.0 if sign == 1 else 1.0, gauge)
    return replace(eps, kind="circular+" if sign == 1 else "circular-")


def linear(p: FourMomentum, theta: float, gauge: Gauge | None = None) -> PolarizationVector:
    """ε_θ with ε^0 = 0 and spatial part i[sin θ a_p + cos θ (n_p x a_p)]."""
    gauge = gauge or SphericalGauge()
    n = p.direction
    a = gauge.axis(n)
    eps = np.zeros(4, dtype=complex)
    eps[1:] = 1j * (np.sin(theta) * a + np.cos(theta) * cross3(n, a))
    return PolarizationVector(p, eps, "linear", gauge, (float(theta),))


def make_polarization(p: FourMomentum, kind: str, gauge: Gauge | None = None, **params) -> PolarizationVector:
    if kind == "longitudinal":
        return longitudinal(p, gauge)
    if kind == "transversal":
        return transversal(p, params["alpha"], params["beta"], gauge)
    if kind in ("circular+", "circular-"):
        return circular(p, 1 if kind.endswith("+") else -1, gauge)
    if kind == "linear":
        return linear(p, params["theta"], gauge)
    raise ValueError(f"unknown polarization kind {kind!r}; expected one of {POLARIZATION_KINDS}")


def helicity_coeffs_of_polarization(eps: PolarizationVector) -> np.ndarray:
    """Helicity components f_λ = ε_μ E^μ_λ(p), ordered (+1, 0, -1)."""
    e = amplitude_helicity(eps.momentum, eps.gauge).entries
    return (ETA @ eps.components) @ e


# -- two-boson states -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwoBosonState:
    k: FourMomentum
    p: FourMomentum
    coeffs: np.ndarray
    gauges: tuple
    label: str = ""

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(3, 3)
        if not np.any(c):
            raise ValueError("zero two-boson state")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def weight(self) -> float:
        """sum |c|^2 (squared norm without the 4 k0 p0 factor)."""
        return float(np.sum(np.abs(self.coeffs) ** 2))

    @property
    def norm_sq(self) -> float:
        return 4.0 * self.k.p0 * self.p.p0 * self.weight

    def inner(self, other: "TwoBosonState") -> complex:
        """<self|other> with the regulator set to 1."""
        return 4.0 * self.k.p0 * self.p.p0 * complex(np.sum(self.coeffs.conj() * other.coeffs))

    def with_coeffs(self, coeffs, label: str = "") -> "TwoBosonState":
        return replace(self, coeffs=coeffs, label=label or self.label)


def resolve_gauges(k: FourMomentum, p: FourMomentum, gauge=None) -> tuple:
    """(gauge_k, gauge_p): pair-common by default, a shared gauge, or an explicit pair."""
    if gauge is None:
        g = PairCommonGauge.for_pair(k.p_vec, p.p_vec)
        return g, g
    if isinstance(gauge, tuple):
        gk, gp = gauge
        return gk, gp
    return gauge, gauge


def _check_pair(k: FourMomentum, p: FourMomentum) -> None:
    if coincident(k, p):
        raise ValueError("coincident momenta unsupported (paper assumes k≠p)")
    if abs(k.m - p.m) > 1e-12 * max(1.0, k.m):
        raise ValueError("both bosons must carry the same mass")
    if k.abs_p == 0.0 or p.abs_p == 0.0:
        raise ValueError("helicity is undefined for a particle at rest")


def _amplitudes(k, p, gauge):
    _check_pair(k, p)
    gk, gp = resolve_gauges(k, p, gauge)
    return amplitude_helicity(k, gk).entries, amplitude_helicity(p, gp).entries, (gk, gp)


def psi_coeffs(k, p, gauge=None):
    ek, ep, gauges = _amplitudes(k, p, gauge)
    return ek.T @ ETA @ ep, gauges


def phi_coeffs(k, p, gauge=None):
    ek, ep, gauges = _amplitudes(k, p, gauge)
    return np.outer(p.lowered @ ek, k.lowered @ ep), gauges


def state_psi(k: FourMomentum, p: FourMomentum, gauge=None) -> TwoBosonState:
    c, gauges = psi_coeffs(k, p, gauge)
    return TwoBosonState(k, p, c, gauges, "psi")


def state_phi(k: FourMomentum, p: FourMomentum, gauge=None) -> TwoBosonState:
    c, gauges = phi_coeffs(k, p, gauge)
    return TwoBosonState(k, p, c, gauges, "phi")


def state_chi(k: FourMomentum, p: FourMomentum, alpha: complex, beta: complex, gauge=None) -> TwoBosonState:
    """alpha (k.p) psi + beta phi."""
    if alpha == 0 and beta == 0:
        raise ValueError("alpha = beta = 0 gives the zero state")
    cpsi, gauges = psi_coeffs(k, p, gauge)
    cphi, _ = phi_coeffs(k, p, gauges)
    kp = minkowski_product(k, p)
    return TwoBosonState(k, p, alpha * kp * cpsi + beta * cphi, gauges, "chi")


def state_xi(k: FourMomentum, p: FourMomentum, gauge=None) -> TwoBosonState:
    """The scalar state -(k.p) psi + phi, assembled from its helicity expansion.

    Every helicity-0 entry carries an explicit power of m, so this stays
    finite and accurate as m -> 0 at fixed three-momenta, where the direct
    combination of psi and phi cancels catastrophically.
    """
    ek, ep, gauges = _amplitudes(k, p, gauge)
    m = k.m
    kp = minkowski_product(k, p)
    ks, ps = ek[1:], ep[1:]
    p_on_k = p.p_vec @ ks
    k_on_p = k.p_vec @ ps
    c = np.zeros((3, 3), dtype=complex)
    t = [0, 2]
    c[np.ix_(t, t)] = kp * (ks[:, t].T @ ps[:, t]) + np.outer(p_on_k[t], k_on_p[t])
    c[t, 1] = m * k.p0 / p.abs_p * p_on_k[t]
    c[1, t] = m * p.p0 / k.abs_p * k_on_p[t]
    c[1, 1] = m * m * (k.p_vec @ p.p_vec) / (k.abs_p * p.abs_p)
    return TwoBosonState(k, p, c, gauges, "xi")


def xi_transverse_photon(k: FourMomentum, p: FourMomentum, gauge=None) -> np.ndarray:
    """Transverse (λ, λ' = ±1) block of xi evaluated with massless kinematics."""
    gk, gp = resolve_gauges(k, p, gauge)
    out = np.zeros((2, 2), dtype=complex)
    kn, pn = k.direction, p.direction
    kp = np.linalg.norm(k.p_vec) * np.linalg.norm(p.p_vec) - k.p_vec @ p.p_vec
    cols = []
    for n, g in ((kn, gk), (pn, gp)):
        a = g.axis(n)
        b = cross3(n, a)
        cols.append([(-a + 1j * b) / SQRT2, (a + 1j * b) / SQRT2])
    for i, ek in enumerate(cols[0]):
        for j, ep in enumerate(cols[1]):
            out[i, j] = kp * (ek @ ep) + (p.p_vec @ ek) * (k.p_vec @ ep)
    return out


# -- closed-form norms (regulator 1) ------------------------------------------


def _kp_m(k, p):
    kp = minkowski_product(k, p)
    return kp, k.m, 4.0 * k.p0 * p.p0


def norm_sq_psi(k, p) -> float:
    kp, m, f = _kp_m(k, p)
    return f * (kp**2 / m**4 + 2.0)


def norm_sq_phi(k, p) -> float:
    kp, m, f = _kp_m(k, p)
    return f * m**4 * (kp**2 / m**4 - 1.0) ** 2


def overlap_phi_psi(k, p) -> float:
    kp, m, f = _kp_m(k, p)
    return f * kp * (kp**2 / m**4 - 1.0)


def norm_sq_chi(k, p, alpha: complex, beta: complex) -> float:
    kp, m, f = _kp_m(k, p)
    r = kp**2 / m**4
    return f * (
        abs(alpha) ** 2 * kp**2 * (r + 2.0)
        + abs(beta) ** 2 * m**4 * (r - 1.0) ** 2
        + 2.0 * (np.conj(alpha) * beta).real * kp**2 * (r - 1.0)
    )


def norm_sq_xi(k, p) -> float:
    kp, m, f = _kp_m(k, p)
    return f * (2.0 * kp**2 + m**4)
