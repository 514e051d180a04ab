"""Command-line front end: single-value computation, figure-data export,
and inequality verification sweeps.

Outputs are deterministic: identical invocations produce byte-identical
files, and every output embeds the tool version, the resolved configuration
and the seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import SkewlibError
from .linalg import DensityMatrix, PAULIS, bloch_to_density
from .means import MeanOrder, ORDER_CHAIN, format_order, parse_order
from . import skewinfo as si
from .sweeps import (
    SweepConfig,
    check_convexity,
    check_corollary,
    check_lower_bound,
    check_monotone_orders,
    check_nonnegativity,
    check_qubit_sandwich,
    check_uncertainty_baselines,
    check_variance_dominance,
    search_upper_bound_violations,
)

MIXED34 = np.diag([0.75, 0.25]).astype(np.complex128)

#: Orders for which the convexity statement is known to hold (operator-mean
#: range s in [-1, 0] plus the weighted geometric family); kernels with
#: s < -1 admit genuine counterexamples and are not asserted by default.
CONVEX_ORDERS = (
    MeanOrder.zero(),
    MeanOrder.zero(weight=0.1),
    MeanOrder.zero(weight=0.25),
    MeanOrder.zero(weight=0.9),
    MeanOrder.finite(-1.0),
    MeanOrder.finite(-0.5),
)

_ASSERTING_SUITES = (
    "nonneg",
    "monotone",
    "variance",
    "convexity",
    "lower",
    "sandwich",
    "corollary",
    "baselines",
)
SUITES = _ASSERTING_SUITES + ("search3d",)


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1 (2 is for violations)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def _load_matrix_file(path: str) -> np.ndarray:
    rows = json.loads(Path(path).read_text())
    return np.array(
        [[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128
    )


def _pauli_string(text: str) -> np.ndarray:
    out = PAULIS[text[0]]
    for ch in text[1:]:
        out = np.kron(out, PAULIS[ch])
    return out


def parse_observable(spec: str) -> np.ndarray:
    """Named Pauli (sx/sy/sz/si), Pauli string (e.g. 'xy'), or a JSON matrix
    file of [re, im] rows."""
    if spec in ("sx", "sy", "sz", "si"):
        return PAULIS[spec[1]]
    if spec and all(ch in "ixyz" for ch in spec):
        return _pauli_string(spec)
    if Path(spec).exists():
        return _load_matrix_file(spec)
    raise SkewlibError(f"cannot parse observable spec {spec!r}")


def parse_state(spec: str | None, bloch: str | None) -> DensityMatrix:
    if (spec is None) == (bloch is None):
        raise SkewlibError("give exactly one of --state or --bloch")
    if bloch is not None:
        parts = [float(x) for x in bloch.split(",")]
        return bloch_to_density(parts)
    if spec == "mixed34":
        return DensityMatrix(MIXED34)
    if Path(spec).exists():
        return DensityMatrix(_load_matrix_file(spec))
    raise SkewlibError(f"cannot parse state spec {spec!r}")


def _parse_orders(text: str) -> tuple[MeanOrder, ...]:
    return tuple(parse_order(part) for part in text.split(","))


def _config_lines(config: dict) -> list[str]:
    body = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return [
        f"# tool=skewlib version={__version__}",
        f"# config={body}",
        f"# seed={config.get('seed', 0)}",
    ]


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _apply_config_file(args: argparse.Namespace, parser_defaults: dict) -> None:
    """Fill unset options from --config JSON; explicit flags win."""
    if not getattr(args, "config", None):
        for key, default in parser_defaults.items():
            if getattr(args, key, None) is None:
                setattr(args, key, default)
        return
    body = json.loads(Path(args.config).read_text())
    for key, default in parser_defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, body.get(key, default))


# --- compute ----------------------------------------------------------------


def cmd_compute(args) -> int:
    rho = parse_state(args.state, args.bloch)
    x = parse_observable(args.obs)
    order = parse_order(args.order)
    lines = [
        f"I   = {_fmt(si.skew_information(rho, order, x))}",
        f"V   = {_fmt(si.variance(rho, x))}",
    ]
    if args.obs2:
        y = parse_observable(args.obs2)
        z = si.zeta(rho, order, x, y)
        product = si.skew_information(rho, order, x) * si.skew_information(
            rho, order, y
        )
        lines += [
            f"I_Y = {_fmt(si.skew_information(rho, order, y))}",
            f"V_Y = {_fmt(si.variance(rho, y))}",
            f"Re_zeta = {_fmt(z.real)}",
            f"Im_zeta = {_fmt(z.imag)}",
            f"lower_bound  = {_fmt(z.real ** 2)}",
            f"product      = {_fmt(product)}",
            f"upper_bound  = {_fmt(abs(z) ** 2)}",
        ]
    _emit(lines, args.out)
    return 0


# --- sweep-s (information vs order, per purity) ------------------------------


def _qubit_from_purity(purity: float) -> DensityMatrix:
    from .errors import BadPurity

    if not 0.5 < purity <= 1.0 + 1e-12:
        raise BadPurity(f"purity must lie in (1/2, 1], got {purity!r}")
    radius = float(np.sqrt(min(2.0 * purity - 1.0, 1.0)))
    return bloch_to_density([0.0, 0.0, radius])


def cmd_sweep_s(args) -> int:
    purities = [float(p) for p in args.purities.split(",")]
    x = parse_observable(args.obs)
    grid = np.linspace(args.s_min, args.s_max, args.s_count)
    if args.s_max >= 0 or args.s_min >= args.s_max:
        raise SkewlibError("need s_min < s_max < 0")
    config = {
        "command": "sweep-s",
        "purities": purities,
        "s_min": args.s_min,
        "s_max": args.s_max,
        "s_count": args.s_count,
        "obs": args.obs,
        "seed": args.seed,
    }
    rows = []
    for purity in purities:
        rho = _qubit_from_purity(purity)
        rows.append((purity, "-inf", si.skew_information(rho, MeanOrder.neg_infinity(), x)))
        for s in grid:
            rows.append((purity, _fmt(s), si.skew_information(rho, MeanOrder.finite(float(s)), x)))
        rows.append((purity, "0", si.skew_information(rho, MeanOrder.zero(), x)))
    if args.format == "json":
        payload = {
            "tool": "skewlib",
            "version": __version__,
            "config": config,
            "rows": [
                {"purity": p, "s": s, "I_s": i} for p, s, i in rows
            ],
        }
        _emit([json.dumps(payload, sort_keys=True, indent=2)], args.out)
    else:
        lines = _config_lines(config) + ["purity,s,I_s"]
        lines += [f"{_fmt(p)},{s},{_fmt(i)}" for p, s, i in rows]
        _emit(lines, args.out)
    return 0


# --- sweep-bloch (inequality contour vs Bloch radius) -------------------------


def cmd_sweep_bloch(args) -> int:
    x = parse_observable(args.obs)
    y = parse_observable(args.obs2)
    orders = _parse_orders(args.orders)
    theta, phi = args.theta, args.phi
    direction = np.array(
        [np.cos(theta) * np.sin(phi), np.cos(theta) * np.cos(phi), np.sin(theta)]
    )
    grid = np.linspace(0.0, 1.0, args.r_count)
    config = {
        "command": "sweep-bloch",
        "theta": theta,
        "phi": phi,
        "r_count": args.r_count,
        "obs": args.obs,
        "obs2": args.obs2,
        "orders": [format_order(o) for o in orders],
        "seed": args.seed,
    }
    rows = []
    for r in grid:
        rho = bloch_to_density(r * direction)
        bound = si.im_zeta(rho, x, y) ** 2
        for order in orders:
            i_x = si.skew_information(rho, order, x)
            i_y = si.skew_information(rho, order, y)
            re_pol = si.re_zeta_polarization(rho, order, x, y)
            product = i_x * i_y
            rows.append(
                (
                    r,
                    format_order(order),
                    product,
                    product - re_pol**2,
                    bound,
                    re_pol**2,
                )
            )
    if args.format == "json":
        payload = {
            "tool": "skewlib",
            "version": __version__,
            "config": config,
            "rows": [
                {
                    "r": r,
                    "order": o,
                    "product": p,
                    "corollary_lhs": lhs,
                    "corollary_rhs": rhs,
                    "lower_bound_rhs": lb,
                }
                for r, o, p, lhs, rhs, lb in rows
            ],
        }
        _emit([json.dumps(payload, sort_keys=True, indent=2)], args.out)
    else:
        lines = _config_lines(config) + [
            "r,order,product,corollary_lhs,corollary_rhs,lower_bound_rhs"
        ]
        lines += [
            f"{_fmt(r)},{o},{_fmt(p)},{_fmt(lhs)},{_fmt(rhs)},{_fmt(lb)}"
            for r, o, p, lhs, rhs, lb in rows
        ]
        _emit(lines, args.out)
    return 0


# --- verify -------------------------------------------------------------------


_SUITE_RUNNERS = {
    "nonneg": check_nonnegativity,
    "monotone": check_monotone_orders,
    "variance": check_variance_dominance,
    "convexity": check_convexity,
    "lower": check_lower_bound,
    "sandwich": check_qubit_sandwich,
    "corollary": check_corollary,
    "baselines": check_uncertainty_baselines,
}

_QUBIT_SUITES = ("sandwich", "corollary")


def _suite_config(suite: str, args, parser: _Parser) -> SweepConfig:
    dims = tuple(int(d) for d in args.dims.split(",")) if args.dims else None
    orders = _parse_orders(args.orders) if args.orders else None
    if suite in _QUBIT_SUITES:
        dims = dims or (2,)
        if any(d != 2 for d in dims):
            parser.error(f"suite {suite!r} requires d=2, got dims {dims}")
    elif suite == "search3d":
        dims = dims or (3,)
        if any(d < 3 for d in dims):
            parser.error(f"suite search3d requires d >= 3, got dims {dims}")
    else:
        dims = dims or (2, 3, 4, 5, 6)
    if orders is None:
        orders = CONVEX_ORDERS if suite == "convexity" else ORDER_CHAIN
    return SweepConfig(
        dims=dims,
        orders=orders,
        samples=args.samples,
        seed=args.seed,
        tolerance=args.tolerance,
    )


def cmd_verify(args, parser: _Parser) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    gating_violations = 0
    for suite in suites:
        cfg = _suite_config(suite, args, parser)
        if suite == "search3d":
            report = search_upper_bound_violations(cfg.dims[0], cfg)
        else:
            report = _SUITE_RUNNERS[suite](cfg)
        payload = {
            "tool": "skewlib",
            "version": __version__,
            "suite": suite,
            "seed": cfg.seed,
            "config": {
                "dims": list(cfg.dims),
                "orders": [format_order(o) for o in cfg.orders],
                "samples": cfg.samples,
                "seed": cfg.seed,
                "tolerance": cfg.tolerance,
            },
            "report": report.to_dict(),
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        if out_dir:
            (out_dir / f"{suite}.json").write_text(text)
        else:
            sys.stdout.write(text)
        gates = suite != "search3d"
        if gates:
            gating_violations += report.violations
        print(
            f"suite {suite}: checked={report.checked} violations={report.violations}"
            f" max_slack={report.max_slack:.3e}"
            + ("" if gates else " (report-only)"),
            file=sys.stderr,
        )
    return 0 if gating_violations == 0 else 2


# --- entry point ---------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="skewlib", description=__doc__)
    parser.add_argument("--version", action="version", version=f"skewlib {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate information measures on one state")
    p.add_argument("--state", help="named preset (mixed34) or JSON matrix file")
    p.add_argument("--bloch", help="qubit Bloch vector 'x,y,z'")
    p.add_argument("--obs", required=True, help="observable: sx|sy|sz|si, Pauli string, or file")
    p.add_argument("--obs2", help="second observable for the pair quantities")
    p.add_argument("--order", default="wy", help="wy | qfi | min | s=<neg> | wyd:w=<w>")
    p.add_argument("--out", help="write to file instead of stdout")

    p = sub.add_parser("sweep-s", help="information vs order for fixed purities (figure 1 data)")
    p.add_argument("--config", help="JSON config file; flags override")
    p.add_argument("--purities", default=None)
    p.add_argument("--s-min", dest="s_min", type=float, default=None)
    p.add_argument("--s-max", dest="s_max", type=float, default=None)
    p.add_argument("--s-count", dest="s_count", type=int, default=None)
    p.add_argument("--obs", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("sweep-bloch", help="inequality contour vs Bloch radius (figure 2 data)")
    p.add_argument("--config", help="JSON config file; flags override")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--r-count", dest="r_count", type=int, default=None)
    p.add_argument("--obs", default=None)
    p.add_argument("--obs2", default=None)
    p.add_argument("--orders", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run randomized inequality sweeps")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--dims", help="comma list, e.g. 2,3,4")
    p.add_argument("--orders", help="comma list of order spellings")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--out", help="directory for per-suite JSON reports")

    return parser


_SWEEP_S_DEFAULTS = {
    "purities": "0.55,0.7,0.85,1.0",
    "s_min": -10.0,
    "s_max": -0.05,
    "s_count": 60,
    "obs": "sx",
    "seed": 0,
    "format": "csv",
    "out": None,
}

_SWEEP_BLOCH_DEFAULTS = {
    "theta": float(np.pi / 3),
    "phi": float(np.pi / 3),
    "r_count": 101,
    "obs": "sx",
    "obs2": "sy",
    "orders": "qfi,wy",
    "seed": 0,
    "format": "csv",
    "out": None,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return cmd_compute(args)
        if args.command == "sweep-s":
            _apply_config_file(args, _SWEEP_S_DEFAULTS)
            return cmd_sweep_s(args)
        if args.command == "sweep-bloch":
            _apply_config_file(args, _SWEEP_BLOCH_DEFAULTS)
            return cmd_sweep_bloch(args)
        if args.command == "verify":
            return cmd_verify(args, parser)
    except SkewlibError as exc:
        print(f"skewlib: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"skewlib: error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
