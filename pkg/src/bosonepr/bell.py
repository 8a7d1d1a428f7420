"""CHSH analysis of the linear-polarization correlators."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from .correlators import (
    StateSpec,
    cm_coefficient,
    polarization_correlation_closed,
)
from .kinematics import FourMomentum

CANONICAL_ANGLES = (0.0, np.pi / 8, 6 * np.pi / 8, 3 * np.pi / 8)
TSIRELSON = 2.0 * np.sqrt(2.0)
X0_CLOSED = -0.5 + 1.0 / (2.0 * np.sqrt(2.0 * np.sqrt(2.0) - 2.0))


@dataclass(frozen=True, eq=False)
class ChshSetting:
    """Angles (θa, θb, θc, θd) plus either a CM parameter x or a pair (k, p)."""

    angles: tuple = CANONICAL_ANGLES
    state: StateSpec = StateSpec("xi")
    x: float | None = None
    k: FourMomentum | None = None
    p: FourMomentum | None = None
    gauge: object = None

    def __post_init__(self):
        if len(self.angles) != 4 or not np.all(np.isfinite(self.angles)):
            raise ValueError("CHSH needs four finite angles")
        if (self.x is None) == (self.k is None or self.p is None):
            raise ValueError("give either x (centre-of-mass) or both momenta k and p")
        if self.x is not None and self.x < 0:
            raise ValueError("x must be non-negative")


@dataclass(frozen=True)
class ChshReport:
    left_side: float
    violated: bool
    margin: float


def chsh_combination(c_ab, c_ad, c_cb, c_cd):
    return np.abs(c_ab - c_ad) + np.abs(c_cb + c_cd)


def four_cosine(angles) -> float:
    """|cos2(a+b) - cos2(a+d)| + |cos2(c+b) + cos2(c+d)|."""
    a, b, c, d = angles
    return float(chsh_combination(np.cos(2 * (a + b)), np.cos(2 * (a + d)), np.cos(2 * (c + b)), np.cos(2 * (c + d))))


def correlation_function(setting: ChshSetting):
    """C(θ, θ~) for the setting's state and momenta (vectorized in the angles)."""
    kind = setting.state.kind
    if setting.x is not None and kind != "chi":
        coef = cm_coefficient(kind, setting.x)
        return lambda t, tt: coef * np.cos(2.0 * (np.asarray(t) + np.asarray(tt)))
    if setting.x is not None:
        raise ValueError("the chi family needs explicit momenta k and p")
    k, p, spec, gauge = setting.k, setting.p, setting.state, setting.gauge

    def single(t, tt):
        return polarization_correlation_closed(spec, k, p, t, tt, gauge)

    # S(θ) is linear in (cos 2θ, sin 2θ), so C is bilinear in those pairs
    q = np.pi / 4
    kernel = np.array([[single(0.0, 0.0), single(0.0, q)], [single(q, 0.0), single(q, q)]])

    def corr(t, tt):
        t, tt = np.asarray(t, dtype=float), np.asarray(tt, dtype=float)
        u = np.stack([np.cos(2 * t), np.sin(2 * t)])
        v = np.stack([np.cos(2 * tt), np.sin(2 * tt)])
        return np.einsum("i...,ij,j...->...", u, kernel, v)

    return corr


def chsh_left_side(setting: ChshSetting) -> float:
    a, b, c, d = setting.angles
    if setting.x is not None and setting.state.kind != "chi":
        return cm_coefficient(setting.state.kind, setting.x) * four_cosine(setting.angles)
    corr = correlation_function(setting)
    return float(chsh_combination(corr(a, b), corr(a, d), corr(c, b), corr(c, d)))


def chsh_report(setting: ChshSetting) -> ChshReport:
    value = chsh_left_side(setting)
    return ChshReport(value, value > 2.0, value - 2.0)


def cm_left_side(x, angles=CANONICAL_ANGLES, kind: str = "xi"):
    """Left side for the centre-of-mass family; vectorizes over x."""
    x = np.asarray(x, dtype=float)
    y = (2.0 * x + 1.0) ** 2
    coef = {"xi": 2.0 * y / (2.0 * y + 1.0), "psi": 2.0 / (2.0 + y), "phi": 0.0 * y}[kind]
    return coef * four_cosine(angles)


def chsh_threshold(xtol: float = 1e-12, maxiter: int = 60) -> float:
    """Bisection root of left_side(x) = 2 on [0, 1] (xi, CM, canonical angles)."""
    return bisect(lambda x: cm_left_side(x) - 2.0, 0.0, 1.0, xtol=xtol, maxiter=maxiter)


def optimize_angles(setting: ChshSetting, step: float = np.pi / 64, sweeps: int = 6):
    """Maximize the left side over the four angles.

    The correlator is π-periodic in each angle, so a grid over [0, π) is
    exhaustive. For a fixed pair (θb, θd) the two absolute values decouple
    in θa and θc, which turns the 4-D grid search into O(n^3) work. The
    best grid point is then polished one coordinate at a time with a
    bounded scalar search. Returns (angles, left_side).
    """
    corr = correlation_function(setting)
    n = int(round(np.pi / step))
    grid = np.arange(n) * (np.pi / n)
    cmat = corr(grid[:, None], grid[None, :])  # cmat[i, j] = C(grid_i, grid_j)
    diff = np.abs(cmat[:, :, None] - cmat[:, None, :])  # [a, b, d]
    summ = np.abs(cmat[:, :, None] + cmat[:, None, :])  # [c, b, d]
    best_a, best_c = diff.argmax(axis=0), summ.argmax(axis=0)
    total = diff.max(axis=0) + summ.max(axis=0)
    ib, id_ = np.unravel_index(np.argmax(total), total.shape)
    angles = np.array([grid[best_a[ib, id_]], grid[ib], grid[best_c[ib, id_]], grid[id_]])

    def objective(vals):
        a, b, c, d = vals
        return float(chsh_combination(corr(a, b), corr(a, d), corr(c, b), corr(c, d)))

    value = objective(angles)
    for _ in range(sweeps):
        start = value
        for i in range(4):
            def neg(t, i=i):
                trial = angles.copy()
                trial[i] = t
                return -objective(trial)

            res = minimize_scalar(neg, bounds=(angles[i] - step, angles[i] + step), method="bounded",
                                  options={"xatol": 1e-12})
            if -res.fun > value:
                angles[i] = res.x
                value = -res.fun
        if value - start < 1e-14:
            break
    return tuple(float(a) for a in np.mod(angles, np.pi)), float(value)
