"""One-sided helicity and linear-polarization observables.

An observable is a 3x3 Hermitian matrix acting on one helicity index of a
``TwoBosonState``: side ``"k"`` acts on the row index λ, side ``"p"`` on
the column index λ'. Because k != p, a one-particle projector built on
momentum k annihilates every |p,λ> component, so the symmetrized
two-slot operators collapse to these one-index matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import FourMomentum, Gauge, SphericalGauge
from .states import TwoBosonState, helicity_coeffs_of_polarization, linear

SIDES = ("k", "p")
HELICITY_MATRIX = np.diag([1.0, 0.0, -1.0]).astype(complex)
HELICITY_MATRIX.setflags(write=False)


@dataclass(frozen=True, eq=False)
class OneSidedObservable:
    side: str
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be 'k' or 'p', got {self.side!r}")
        mat = np.array(self.matrix, dtype=complex).reshape(3, 3)
        if np.max(np.abs(mat - mat.conj().T)) > 1e-13:
            raise ValueError("observable matrix is not Hermitian")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def apply(self, state: TwoBosonState) -> np.ndarray:
        """Coefficient array of (observable)|state>; the state is not modified."""
        if self.side == "k":
            return self.matrix @ state.coeffs
        return state.coeffs @ self.matrix.T

    def applied(self, state: TwoBosonState) -> TwoBosonState:
        return state.with_coeffs(self.apply(state), label=f"{self.label}({state.label})")


def helicity_observable(side: str) -> OneSidedObservable:
    return OneSidedObservable(side, HELICITY_MATRIX, "helicity")


def polarization_projector(side: str, theta: float, momentum: FourMomentum, gauge: Gauge | None = None) -> np.ndarray:
    """f f^dagger for the linear polarization state at angle ``theta``.

    f is contracted from the explicit polarization vector and E(p) in the
    same gauge, so the result depends on ``theta`` only.
    """
    if side not in SIDES:
        raise ValueError(f"side must be 'k' or 'p', got {side!r}")
    f = helicity_coeffs_of_polarization(linear(momentum, theta, gauge or SphericalGauge()))
    return np.outer(f, f.conj())


def polarization_observable(side: str, theta: float, momentum: FourMomentum, gauge: Gauge | None = None) -> OneSidedObservable:
    """S(θ) = Π(θ) - Π(θ + π/2)."""
    mat = polarization_projector(side, theta, momentum, gauge) - polarization_projector(
        side, theta + np.pi / 2, momentum, gauge
    )
    return OneSidedObservable(side, mat, f"polarization({theta!r})")


def polarization_matrix(theta: float) -> np.ndarray:
    """Closed form of S(θ) in helicity ordering: only the ±1 corners survive."""
    s = np.zeros((3, 3), dtype=complex)
    s[0, 2] = np.exp(2j * theta)
    s[2, 0] = np.exp(-2j * theta)
    return s


def commutator_on_state(a: OneSidedObservable, b: OneSidedObservable, state: TwoBosonState) -> float:
    """max |A B c - B A c| for observables acting on a state's coefficients."""
    ab = a.apply(state.with_coeffs(b.apply(state)))
    ba = b.apply(state.with_coeffs(a.apply(state)))
    return float(np.max(np.abs(ab - ba)))


def two_slot_operator(one_particle: np.ndarray, side: str) -> np.ndarray:
    """Symmetrized two-slot operator O(x)1 + 1(x)O on the 36-dimensional
    two-particle space over the orthonormalized 6-state basis
    {|k,+1>,|k,0>,|k,-1>,|p,+1>,|p,0>,|p,-1>}.

    ``one_particle`` is the 3x3 matrix on the chosen side's block; it is
    zero on the other momentum block. Used to check the one-index collapse.
    """
    single = np.zeros((6, 6), dtype=complex)
    off = 0 if side == "k" else 3
    single[off:off + 3, off:off + 3] = one_particle
    eye = np.eye(6)
    return np.kron(single, eye) + np.kron(eye, single)


def two_slot_vector(state: TwoBosonState) -> np.ndarray:
    """Embed coefficients into the 36-dim space via the symmetrized kets,
    scaled so that <v|v> = sum |c|^2."""
    v = np.zeros((6, 6), dtype=complex)
    v[0:3, 3:6] = state.coeffs
    v[3:6, 0:3] = state.coeffs.T
    return v.reshape(36) / np.sqrt(2.0)
