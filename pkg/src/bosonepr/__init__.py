"""Helicity and linear-polarization correlations of two massive spin-1 bosons
in Lorentz-scalar states, with CHSH analysis."""
from .correlators import CorrelationRequest, CorrelationResult, Helicity, Polarization, Spin, StateSpec, correlate
from .kinematics import FourMomentum, PairCommonGauge, SphericalGauge, cm_pair, equal_energy_pair

__version__ = "0.1.0"

__all__ = [
    "CorrelationRequest",
    "CorrelationResult",
    "FourMomentum",
    "Helicity",
    "PairCommonGauge",
    "Polarization",
    "SphericalGauge",
    "Spin",
    "StateSpec",
    "cm_pair",
    "correlate",
    "equal_energy_pair",
]
