"""Parameter sweeps over (x, alpha) and CHSH curves, with CSV/JSON output."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bell
from .correlators import (
    StateSpec,
    equal_energy_correlation,
    polarization_correlation_closed,
    polarization_correlation_oracle,
)
from .kinematics import equal_energy_pair

PRESET_THETA = 5 * np.pi / 6
PRESET_THETA_TILDE = 8.69 * np.pi / 6


@dataclass(frozen=True)
class SweepConfig:
    """Equal-energy grid over (x, alpha); records come out x-major."""

    x_values: tuple
    alpha_values: tuple
    theta: float = PRESET_THETA
    theta_tilde: float = PRESET_THETA_TILDE
    method: str = "closed"
    fmt: str = "csv"
    seed: int = 0
    state: StateSpec = StateSpec("xi")

    def __post_init__(self):
        x = np.asarray(self.x_values, dtype=float)
        a = np.asarray(self.alpha_values, dtype=float)
        if x.size < 1 or a.size < 1:
            raise ValueError("sweep grid is empty")
        if np.any(x < 0):
            raise ValueError("x must be non-negative")
        if np.any(a <= 0) or np.any(a > np.pi):
            raise ValueError("alpha must lie in (0, pi]")
        if np.any(np.diff(x) <= 0) or np.any(np.diff(a) <= 0):
            raise ValueError("grid ranges must be strictly increasing")
        if self.method not in ("closed", "both"):
            raise ValueError("sweep method must be 'closed' or 'both'")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be 'csv' or 'json'")
        if self.state.kind != "xi" and np.any(x == 0):
            raise ValueError("only the xi state is defined at x = 0 (both bosons at rest)")


@dataclass(frozen=True)
class SweepRecord:
    x: float
    alpha: float
    theta: float
    theta_tilde: float
    correlation: float
    method: str
    residual: float | None = None


def grid(lo: float, hi: float, steps: int) -> tuple:
    if steps < 2:
        raise ValueError("a range needs at least 2 steps")
    if not hi > lo:
        raise ValueError("range must satisfy min < max")
    return tuple(float(v) for v in np.linspace(lo, hi, steps))


PRESETS = {
    # x-alpha surface at the preset angles
    "fig1": dict(x_values=grid(0.0, 10.0, 101), alpha_values=tuple(float(a) for a in np.linspace(0.0, np.pi, 102)[1:])),
    # k orthogonal to p
    "fig2": dict(x_values=grid(0.0, 10.0, 1001), alpha_values=(np.pi / 2,)),
}

CHSH_PRESETS = {
    "fig3": dict(x_values=grid(0.0, 0.6, 601), angles=bell.CANONICAL_ANGLES),
}


def _point(spec: StateSpec, x, alpha, theta, theta_tilde) -> float:
    if spec.kind == "xi":
        return float(equal_energy_correlation(x, alpha, theta, theta_tilde))
    k, p = equal_energy_pair(x, alpha)
    return polarization_correlation_closed(spec, k, p, theta, theta_tilde)


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    records = []
    spec, t, tt = config.state, config.theta, config.theta_tilde
    for x in config.x_values:
        for alpha in config.alpha_values:
            value = _point(spec, x, alpha, t, tt)
            if config.method == "both" and x > 0:
                k, p = equal_energy_pair(x, alpha)
                oracle = polarization_correlation_oracle(spec, k, p, t, tt)
                records.append(SweepRecord(x, alpha, t, tt, value, "both", value - oracle))
            else:
                # x = 0 has both bosons at rest: no helicity states to build an oracle from
                records.append(SweepRecord(x, alpha, t, tt, value, "closed"))
    return records


@dataclass(frozen=True)
class ChshRecord:
    x: float
    left_side: float
    violated: bool
    theta_a: float
    theta_b: float
    theta_c: float
    theta_d: float


@dataclass
class ChshCurve:
    records: list = field(default_factory=list)
    x0_bisection: float | None = None
    x0_closed: float | None = None

    def summary(self) -> str:
        if self.x0_bisection is None:
            return "no violation threshold for this configuration"
        return (f"x0_bisection={self.x0_bisection!r} x0_closed={self.x0_closed!r} "
                f"difference={self.x0_bisection - self.x0_closed:.3e}")


def run_chsh(x_values, angles="canonical", kind: str = "xi") -> ChshCurve:
    """Left side vs x for the centre-of-mass family.

    ``angles`` is "canonical", "optimize", or an explicit 4-tuple.
    """
    spec = StateSpec(kind)
    curve = ChshCurve()
    for x in x_values:
        if isinstance(angles, str) and angles == "optimize":
            chosen, value = bell.optimize_angles(bell.ChshSetting(state=spec, x=float(x)))
        else:
            chosen = bell.CANONICAL_ANGLES if isinstance(angles, str) else tuple(angles)
            value = bell.chsh_left_side(bell.ChshSetting(angles=chosen, state=spec, x=float(x)))
        curve.records.append(ChshRecord(float(x), float(value), bool(value > 2.0), *map(float, chosen)))
    if kind == "xi" and (isinstance(angles, str) and angles == "canonical"):
        curve.x0_bisection = float(bell.chsh_threshold())
        curve.x0_closed = float(bell.X0_CLOSED)
    return curve


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_records(records, fmt: str = "csv") -> str:
    """Serialize dataclass records; floats use repr so output is locale-free."""
    rows = [r if isinstance(r, dict) else asdict(r) for r in records]
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if fmt != "csv":
        raise ValueError("format must be 'csv' or 'json'")
    buf = io.StringIO()
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow([_cell(v) for v in row.values()])
    return buf.getvalue()
