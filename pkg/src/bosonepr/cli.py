"""Command-line front end: verify, correlate, sweep, chsh."""
from __future__ import annotations

import argparse
import re
import sys

import numpy as np

from . import sweep as sw
from .bell import CANONICAL_ANGLES
from .correlators import CorrelationRequest, Helicity, Polarization, Spin, StateSpec, correlate
from .kinematics import ExplicitGauge, FourMomentum, SphericalGauge, cm_pair, equal_energy_pair
from .verify import run_suites

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

_PI_FORM = re.compile(r"^([+-]?)(\d*\.?\d*)\*?pi(?:/(\d*\.?\d+))?$")


class InputError(ValueError):
    pass


def parse_angle(text: str) -> float:
    """Radians from "0.3", "pi/8", "-pi/4", "5pi/6", "8.69*pi/6"."""
    t = text.strip().replace(" ", "").lower()
    m = _PI_FORM.match(t)
    if m:
        sign, coef, den = m.groups()
        value = (float(coef) if coef not in ("", ".") else 1.0) * np.pi / (float(den) if den else 1.0)
        return -value if sign == "-" else value
    try:
        value = float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle must be finite, got {text!r}")
    return value


def parse_vector(text: str) -> np.ndarray:
    try:
        v = np.array([float(c) for c in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse vector {text!r}") from None
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected three finite components 'x,y,z', got {text!r}")
    return v


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


def parse_range(text: str, angle: bool = False) -> tuple:
    """A single value, or "min:max:steps" expanded with linspace."""
    conv = parse_angle if angle else float
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return (conv(parts[0]),)
        if len(parts) == 3:
            return sw.grid(conv(parts[0]), conv(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError(f"expected a value or 'min:max:steps', got {text!r}")


def parse_angles(text: str):
    if text in ("canonical", "optimize"):
        return text
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("--angles takes 'canonical', 'optimize' or four comma-separated angles")
    return tuple(parse_angle(p) for p in parts)


# -- argument assembly --------------------------------------------------------


def _state_spec(args) -> StateSpec:
    if args.state == "chi":
        return StateSpec("chi", args.alpha_coef, args.beta_coef)
    return StateSpec(args.state)


def _momenta(args):
    raw = (args.mass, args.k, args.p)
    if any(v is not None for v in raw):
        if args.x is not None or args.alpha is not None:
            raise InputError("give either --x/--alpha or --mass/--k/--p, not both")
        if args.k is None or args.p is None:
            raise InputError("raw momenta need both --k and --p")
        m = 1.0 if args.mass is None else args.mass
        return FourMomentum(m, args.k), FourMomentum(m, args.p)
    if args.x is None:
        raise InputError("give --x (centre-of-mass), --x with --alpha (equal energies), or --k/--p")
    if args.alpha is None:
        return cm_pair(args.x)
    return equal_energy_pair(args.x, args.alpha)


def _gauge(args):
    if args.gauge == "spherical":
        return SphericalGauge()
    if args.gauge == "explicit":
        if args.gauge_vector is None:
            raise InputError("--gauge explicit needs --gauge-vector")
        return ExplicitGauge(args.gauge_vector)
    return None


def _measurement(args):
    kind = args.measure
    if kind is None:
        if args.spin_a is not None or args.spin_b is not None:
            kind = "spin"
        elif args.theta is not None or args.theta_tilde is not None:
            kind = "polarization"
        else:
            kind = "helicity"
    if kind == "helicity":
        return Helicity()
    if kind == "polarization":
        return Polarization(args.theta or 0.0, args.theta_tilde or 0.0)
    if args.spin_a is None or args.spin_b is None:
        raise InputError("spin measurements need --spin-a and --spin-b")
    return Spin(args.spin_a, args.spin_b)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- commands -----------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    results = run_suites(seed=args.seed, trials=args.trials)
    failed = [r for r in results if not r.passed]
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} suites passed (seed={args.seed}, trials={args.trials})")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_correlate(args) -> int:
    k, p = _momenta(args)
    req = CorrelationRequest(_state_spec(args), k, p, _measurement(args), _gauge(args))
    res = correlate(req, args.method)
    if args.format is not None:
        row = {"state": args.state, "method": res.method, "value": res.value,
               "oracle": res.oracle_value, "residual": res.residual}
        _emit(sw.format_records([row], args.format), args.out)
    elif res.method == "both":
        _emit(f"closed={res.value!r}\noracle={res.oracle_value!r}\nresidual={res.residual!r}\n", args.out)
    else:
        _emit(f"{res.value!r}\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    base = dict(sw.PRESETS[args.preset]) if args.preset else {}
    if args.preset is None and (args.x_range is None or args.alpha_range is None):
        raise InputError("sweep needs --preset or both --x and --alpha")
    if args.x_range is not None:
        base["x_values"] = args.x_range
    if args.alpha_range is not None:
        base["alpha_values"] = args.alpha_range
    config = sw.SweepConfig(
        theta=sw.PRESET_THETA if args.theta is None else args.theta,
        theta_tilde=sw.PRESET_THETA_TILDE if args.theta_tilde is None else args.theta_tilde,
        method="closed" if args.method is None else args.method,
        fmt=args.format,
        seed=args.seed,
        state=_state_spec(args),
        **base,
    )
    records = sw.run_sweep(config)
    _emit(sw.format_records(records, config.fmt), args.out)
    residuals = [abs(r.residual) for r in records if r.residual is not None]
    if residuals and max(residuals) > 1e-10:
        print(f"closed form and oracle disagree: max residual {max(residuals):.3e}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_chsh(args) -> int:
    base = dict(sw.CHSH_PRESETS[args.preset]) if args.preset else {}
    x_values = args.x_range if args.x_range is not None else base.get("x_values")
    if x_values is None:
        raise InputError("chsh needs --x or --preset")
    if any(x < 0 for x in x_values):
        raise InputError("x must be non-negative")
    angles = args.angles or base.get("angles", "canonical")
    if angles == CANONICAL_ANGLES:
        angles = "canonical"
    if args.state == "chi":
        raise InputError("chsh sweeps cover the centre-of-mass psi, phi and xi families")
    curve = sw.run_chsh(x_values, angles, args.state)
    _emit(sw.format_records(curve.records, args.format), args.out)
    # keep stdout clean for the data when no file is given
    print(curve.summary(), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bosonepr", description="Helicity and polarization correlations of massive vector-boson pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default):
        sp.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        sp.add_argument("--out", metavar="PATH")
        sp.add_argument("--seed", type=int, default=0)

    def state_flags(sp):
        sp.add_argument("--state", choices=("psi", "phi", "xi", "chi"), default="xi")
        sp.add_argument("--alpha-coef", type=parse_complex, default=1.0, help="chi coefficient of (k.p) psi")
        sp.add_argument("--beta-coef", type=parse_complex, default=0.0, help="chi coefficient of phi")

    v = sub.add_parser("verify", help="run every invariant suite")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", metavar="PATH")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("correlate", help="one correlation value")
    state_flags(c)
    c.add_argument("--x", type=float, help="(|k|/m)^2; alone it selects the centre-of-mass pair")
    c.add_argument("--alpha", type=parse_angle, help="angle between k and p for equal energies")
    c.add_argument("--mass", type=float)
    c.add_argument("--k", type=parse_vector, help="k three-momentum 'x,y,z'")
    c.add_argument("--p", type=parse_vector, help="p three-momentum 'x,y,z'")
    c.add_argument("--measure", choices=("helicity", "polarization", "spin"))
    c.add_argument("--theta", type=parse_angle)
    c.add_argument("--theta-tilde", type=parse_angle)
    c.add_argument("--spin-a", type=parse_vector)
    c.add_argument("--spin-b", type=parse_vector)
    c.add_argument("--gauge", choices=("pair-common", "spherical", "explicit"), default="pair-common")
    c.add_argument("--gauge-vector", type=parse_vector)
    c.add_argument("--method", choices=("closed", "oracle", "both"), default="closed")
    common(c, None)
    c.set_defaults(func=cmd_correlate)

    s = sub.add_parser("sweep", help="equal-energy grid over (x, alpha)")
    state_flags(s)
    s.add_argument("--preset", choices=tuple(sw.PRESETS))
    s.add_argument("--x", dest="x_range", type=parse_range, help="value or min:max:steps")
    s.add_argument("--alpha", dest="alpha_range", type=lambda t: parse_range(t, angle=True), help="value or min:max:steps")
    s.add_argument("--theta", type=parse_angle)
    s.add_argument("--theta-tilde", type=parse_angle)
    s.add_argument("--method", choices=("closed", "both"))
    common(s, "csv")
    s.set_defaults(func=cmd_sweep)

    h = sub.add_parser("chsh", help="CHSH left side vs x in the centre-of-mass frame")
    state_flags(h)
    h.add_argument("--preset", choices=tuple(sw.CHSH_PRESETS))
    h.add_argument("--x", dest="x_range", type=parse_range, help="value or min:max:steps")
    h.add_argument("--angles", type=parse_angles, help="canonical, optimize, or 'a,b,c,d'")
    common(h, "csv")
    h.set_defaults(func=cmd_chsh)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
