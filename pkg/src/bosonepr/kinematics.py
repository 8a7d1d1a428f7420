"""Minkowski four-vectors, standard boosts, helicity frames and Wigner rotations.

Metric signature is (+, -, -, -) throughout. Lorentz matrices and rotations
are plain numpy arrays; the helpers ``is_lorentz`` and ``is_rotation`` check
group membership.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
ETA.setflags(write=False)

EXACT_TOL = 1e-12
COMPOSED_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FourMomentum:
    """On-shell four-momentum of a particle with rest mass ``m > 0``.

    The energy is derived from the mass shell, so the object is on-shell
    by construction.
    """

    m: float
    p_vec: np.ndarray

    def __post_init__(self):
        m = float(self.m)
        if not np.isfinite(m) or m <= 0.0:
            raise ValueError(f"mass must be positive, got {self.m!r}")
        vec = np.array(self.p_vec, dtype=float).reshape(3)
        if not np.all(np.isfinite(vec)):
            raise ValueError("three-momentum must be finite")
        vec.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "p_vec", vec)

    @classmethod
    def from_components(cls, p0: float, p_vec: Sequence[float]) -> "FourMomentum":
        """Build from (p0, p_vec); the mass is read off the shell."""
        vec = np.asarray(p_vec, dtype=float)
        m2 = p0 * p0 - vec @ vec
        if p0 <= 0 or m2 <= 0:
            raise ValueError("four-vector is not a massive, future-pointing momentum")
        return cls(np.sqrt(m2), vec)

    @property
    def p0(self) -> float:
        return float(np.sqrt(self.m * self.m + self.p_vec @ self.p_vec))

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([[self.p0], self.p_vec])

    @property
    def lowered(self) -> np.ndarray:
        """Covariant components p_mu."""
        return ETA @ self.vector

    @property
    def abs_p(self) -> float:
        return float(np.linalg.norm(self.p_vec))

    @property
    def direction(self) -> np.ndarray:
        n = self.abs_p
        if n == 0.0:
            raise ValueError("helicity is undefined for a particle at rest")
        return self.p_vec / n

    @property
    def x(self) -> float:
        """Reduced momentum (|p|/m)^2."""
        return float(self.p_vec @ self.p_vec) / self.m**2

    def transformed(self, lam: np.ndarray) -> "FourMomentum":
        """The momentum Λp (mass preserved, energy re-derived)."""
        return FourMomentum(self.m, (np.asarray(lam) @ self.vector)[1:])

    def __repr__(self):
        return f"FourMomentum(m={self.m!r}, p_vec={self.p_vec.tolist()!r})"


def cross3(a, b) -> np.ndarray:
    """3-vector cross product; np.cross carries heavy overhead at this size."""
    return np.array([a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]])


def rest_momentum(m: float) -> FourMomentum:
    return FourMomentum(m, np.zeros(3))


def minkowski_product(a, b) -> float:
    """a0*b0 - a_vec.b_vec for FourMomentum objects or raw 4-arrays."""
    av = a.vector if isinstance(a, FourMomentum) else np.asarray(a, dtype=float)
    bv = b.vector if isinstance(b, FourMomentum) else np.asarray(b, dtype=float)
    return float(av[0] * bv[0] - av[1:] @ bv[1:])


def coincident(k: FourMomentum, p: FourMomentum) -> bool:
    scale = 1e-12 * max(1.0, k.abs_p, p.abs_p)
    return abs(k.m - p.m) < scale and bool(np.all(np.abs(k.p_vec - p.p_vec) < scale))


def lorentz_residual(lam: np.ndarray) -> float:
    """max |Λ^T η Λ - η| scaled by max(1, max|Λ|)^2.

    The scaling absorbs the cancellation between entries of size ~cosh(rapidity).
    """
    lam = np.asarray(lam, dtype=float)
    scale = max(1.0, float(np.max(np.abs(lam)))) ** 2
    return float(np.max(np.abs(lam.T @ ETA @ lam - ETA))) / scale


def is_lorentz(lam: np.ndarray, tol: float = EXACT_TOL) -> bool:
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (4, 4):
        return False
    return lorentz_residual(lam) <= tol and lam[0, 0] >= 1.0 - tol


def is_rotation(r: np.ndarray, tol: float = EXACT_TOL) -> bool:
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        return False
    return bool(np.max(np.abs(r.T @ r - np.eye(3))) <= tol and abs(np.linalg.det(r) - 1.0) <= tol)


def lorentz_inverse(lam: np.ndarray) -> np.ndarray:
    return ETA @ np.asarray(lam).T @ ETA


def embed_rotation(r: np.ndarray) -> np.ndarray:
    out = np.eye(4)
    out[1:, 1:] = r
    return out


def standard_boost(p: FourMomentum) -> np.ndarray:
    """The pure boost L_p carrying m(1,0,0,0) to p."""
    m, vec, p0 = p.m, p.p_vec, p.p0
    lam = np.empty((4, 4))
    lam[0, 0] = p0 / m
    lam[0, 1:] = vec / m
    lam[1:, 0] = vec / m
    lam[1:, 1:] = np.eye(3) + np.outer(vec, vec) / (m * (m + p0))
    return lam


def boost(rapidity: float, axis: Sequence[float]) -> np.ndarray:
    """Pure boost with the given rapidity along a (normalized) axis."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    lam = np.eye(4)
    lam[0, 0] = ch
    lam[0, 1:] = sh * n
    lam[1:, 0] = sh * n
    lam[1:, 1:] += (ch - 1.0) * np.outer(n, n)
    return lam


def axis_rotation(angle: float, axis: Sequence[float]) -> np.ndarray:
    """3x3 right-handed rotation by ``angle`` about ``axis`` (Rodrigues)."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    kx = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return np.eye(3) + np.sin(angle) * kx + (1.0 - np.cos(angle)) * (kx @ kx)


# -- gauge choices for the free vector a_p ----------------------------------


class Gauge(Protocol):
    def axis(self, n: np.ndarray) -> np.ndarray:
        """Unit vector a_p orthogonal to the unit direction ``n``."""
        ...


def _any_perpendicular(n: np.ndarray) -> np.ndarray:
    trial = np.zeros(3)
    trial[np.argmin(np.abs(n))] = 1.0
    a = trial - (trial @ n) * n
    return a / np.linalg.norm(a)


@dataclass(frozen=True)
class SphericalGauge:
    """a_p = (cos t cos f, cos t sin f, -sin t) from the polar angles of n_p.

    The azimuth is fixed to 0 on the z-axis, so n = +z gives a = +x.
    """

    def axis(self, n):
        n = np.asarray(n, dtype=float)
        rho = np.hypot(n[0], n[1])
        theta = np.arctan2(rho, n[2])
        phi = np.arctan2(n[1], n[0]) if rho > 0.0 else 0.0
        return np.array([np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), -np.sin(theta)])


@dataclass(frozen=True)
class ExplicitGauge:
    """User-given reference vector, projected orthogonal to n and normalized."""

    vector: tuple

    def __init__(self, vector):
        object.__setattr__(self, "vector", tuple(float(v) for v in np.asarray(vector).reshape(3)))

    def axis(self, n):
        n = np.asarray(n, dtype=float)
        v = np.asarray(self.vector)
        a = v - (v @ n) * n
        norm = np.linalg.norm(a)
        if norm < 1e-9 * max(1.0, np.linalg.norm(v)):
            raise ValueError("explicit gauge vector is parallel to the momentum")
        return a / norm


@dataclass(frozen=True)
class PairCommonGauge:
    """Common a_k = a_p along k x p (any common perpendicular when collinear)."""

    vector: tuple

    @classmethod
    def for_pair(cls, k_vec, p_vec) -> "PairCommonGauge":
        k_vec = np.asarray(k_vec, dtype=float)
        p_vec = np.asarray(p_vec, dtype=float)
        c = cross3(k_vec, p_vec)
        scale = np.linalg.norm(k_vec) * np.linalg.norm(p_vec)
        if scale == 0.0:
            raise ValueError("helicity is undefined for a particle at rest")
        if np.linalg.norm(c) > 1e-8 * scale:
            a = c / np.linalg.norm(c)
        else:
            a = _any_perpendicular(k_vec / np.linalg.norm(k_vec))
        return cls(tuple(float(v) for v in a))

    def axis(self, n):
        n = np.asarray(n, dtype=float)
        a = np.asarray(self.vector)
        overlap = a @ n
        if abs(overlap) > 1e-6:
            raise ValueError("pair-common gauge vector is not orthogonal to this momentum")
        # rounding in k x p for nearly collinear pairs
        a = a - overlap * n
        return a / np.linalg.norm(a)


@dataclass(frozen=True)
class RotatedGauge:
    """Base gauge with a_p turned by ``delta`` (right-handed) about n_p."""

    base: Gauge
    delta: float

    def axis(self, n):
        n = np.asarray(n, dtype=float)
        a = self.base.axis(n)
        return np.cos(self.delta) * a + np.sin(self.delta) * cross3(n, a)


def direction_rotation(p: FourMomentum, gauge: Gauge | None = None) -> np.ndarray:
    """R_p = (a_p | n_p x a_p | n_p), rotating the z-axis onto p."""
    n = p.direction
    a = (gauge or SphericalGauge()).axis(n)
    return np.column_stack([a, cross3(n, a), n])


def wigner_rotation(lam: np.ndarray, p: FourMomentum, tol: float = COMPOSED_TOL) -> np.ndarray:
    """The little-group element L_{Λp}^{-1} Λ L_p as a 3x3 rotation.

    Evaluated in block form. With u = p_vec/m, g = p0/m, u' and g' the same
    for Λp, and Λ = [[a, b^T], [c, D]]:

        R = D - u' b^T/(1+g') + c u^T/(1+g) + (1-a) u' u^T/((1+g)(1+g'))

    The plain triple product cancels entries of size ~(p0/m)^2 cosh(rapidity)
    and loses several digits at large rapidity; this form does not.
    """
    lam = np.asarray(lam, dtype=float)
    if not is_lorentz(lam, tol):
        raise ValueError("argument is not an orthochronous Lorentz matrix")
    q = p.transformed(lam)
    u, g = p.p_vec / p.m, p.p0 / p.m
    uq, gq = q.p_vec / q.m, q.p0 / q.m
    a, b, c, d = lam[0, 0], lam[0, 1:], lam[1:, 0], lam[1:, 1:]
    r = d - np.outer(uq, b) / (1.0 + gq) + np.outer(c, u) / (1.0 + g) + (1.0 - a) * np.outer(uq, u) / ((1.0 + g) * (1.0 + gq))
    if not is_rotation(r, tol):
        raise ValueError("Wigner rotation left SO(3)")
    return r


def wigner_rotation_product(lam: np.ndarray, p: FourMomentum) -> np.ndarray:
    """Full 4x4 product L_{Λp}^{-1} Λ L_p; reference route for checks."""
    lam = np.asarray(lam, dtype=float)
    return lorentz_inverse(standard_boost(p.transformed(lam))) @ lam @ standard_boost(p)


def cm_partner(k: FourMomentum) -> FourMomentum:
    """k^pi = (k0, -k_vec)."""
    if k.abs_p == 0.0:
        raise ValueError("centre-of-mass partner needs a nonzero momentum")
    return FourMomentum(k.m, -k.p_vec)


def cm_pair(x: float, m: float = 1.0, direction=(0.0, 0.0, 1.0)) -> tuple[FourMomentum, FourMomentum]:
    """Centre-of-mass pair (k, k^pi) with x = (|k|/m)^2."""
    if x <= 0:
        raise ValueError("x must be positive to define helicity states")
    n = np.asarray(direction, dtype=float)
    k = FourMomentum(m, m * np.sqrt(x) * n / np.linalg.norm(n))
    return k, cm_partner(k)


def equal_energy_pair(x: float, alpha: float, m: float = 1.0) -> tuple[FourMomentum, FourMomentum]:
    """Pair with |k| = |p| = m sqrt(x) and opening angle ``alpha``; k along z."""
    if x <= 0:
        raise ValueError("x must be positive to define helicity states")
    mag = m * np.sqrt(x)
    k = FourMomentum(m, [0.0, 0.0, mag])
    p = FourMomentum(m, [mag * np.sin(alpha), 0.0, mag * np.cos(alpha)])
    return k, p
