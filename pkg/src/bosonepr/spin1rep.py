"""Spin-1 representation: the intertwiner V, D(R) = V R V^dagger, and the
covariant amplitudes e(p) (spin basis) and E(p) (helicity basis).

Helicity columns are ordered (+1, 0, -1) everywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import (
    ETA,
    FourMomentum,
    cross3,
    Gauge,
    SphericalGauge,
    direction_rotation,
    is_rotation,
    standard_boost,
    wigner_rotation,
)

SQRT2 = np.sqrt(2.0)

V = np.array([[-1.0, 1.0j, 0.0], [0.0, 0.0, SQRT2], [1.0, 1.0j, 0.0]]) / SQRT2
V.setflags(write=False)

VVT = np.array([[0.0, 0.0, -1.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]])
VVT.setflags(write=False)

HELICITIES = (1, 0, -1)


def rotation_rep(r: np.ndarray) -> np.ndarray:
    """Spin-1 matrix D(R) = V R V^dagger."""
    r = np.asarray(r, dtype=float)
    if not is_rotation(r, 1e-10):
        raise ValueError("rotation_rep needs a proper rotation")
    return V @ r @ V.conj().T


@dataclass(frozen=True, eq=False)
class AmplitudeMatrix:
    """4x3 amplitude array; columns are spin (``basis='spin'``) or helicity
    (``basis='helicity'``) labels."""

    momentum: FourMomentum
    entries: np.ndarray
    basis: str
    gauge: Gauge | None = None

    def residuals(self) -> dict[str, float]:
        """Max-abs residuals of the four amplitude identities."""
        e = self.entries
        p = self.momentum
        el = ETA @ e
        complete = (e.conj() @ e.T) + ETA - np.outer(p.vector, p.vector) / p.m**2
        return {
            "transversality": float(np.max(np.abs(p.lowered @ e))),
            "orthonormality": float(np.max(np.abs(e.conj().T @ el + np.eye(3)))),
            "bilinear": float(np.max(np.abs(e.T @ el + VVT))),
            "completeness": float(np.max(np.abs(complete))),
        }

    def conjugation_residual(self) -> float:
        """|e VV^T - e*|, valid for spin-basis and helicity-basis arrays alike."""
        return float(np.max(np.abs(self.entries @ VVT - self.entries.conj())))


def _boost_block(p: FourMomentum) -> np.ndarray:
    # spatial columns of L_p: rows [p^T/m ; 1 + p p^T/(m(m+p0))]
    return standard_boost(p)[:, 1:]


def amplitude_spin(p: FourMomentum) -> AmplitudeMatrix:
    return AmplitudeMatrix(p, _boost_block(p) @ V.T, "spin")


def amplitude_helicity(p: FourMomentum, gauge: Gauge | None = None) -> AmplitudeMatrix:
    """E(p) in explicit column form.

    Built column by column rather than as L_p R_p V^T: the explicit form
    avoids the p p^T/(m(m+p0)) term, which loses precision for small m.
    """
    gauge = gauge or SphericalGauge()
    n = p.direction
    a = gauge.axis(n)
    b = cross3(n, a)
    e = np.zeros((4, 3), dtype=complex)
    e[1:, 0] = (-a + 1j * b) / SQRT2
    e[0, 1] = p.abs_p / p.m
    e[1:, 1] = p.p0 * n / p.m
    e[1:, 2] = (a + 1j * b) / SQRT2
    return AmplitudeMatrix(p, e, "helicity", gauge)


def amplitude_helicity_product(p: FourMomentum, gauge: Gauge | None = None) -> np.ndarray:
    """E(p) as the matrix product (boost block) R_p V^T; cross-check only."""
    return _boost_block(p) @ direction_rotation(p, gauge) @ V.T


def check_weinberg(lam: np.ndarray, p: FourMomentum) -> float:
    """Max residual of e(Λp) = Λ e(p) D(R(Λ,p))^T."""
    lam = np.asarray(lam, dtype=float)
    d = rotation_rep(wigner_rotation(lam, p))
    lhs = amplitude_spin(p.transformed(lam)).entries
    rhs = lam @ amplitude_spin(p).entries @ d.T
    return float(np.max(np.abs(lhs - rhs)))
