"""Command-line interface.

Subcommands
-----------
scan                 raster of one quantity over a window
bounds RE IM         resolvent-norm bracket and its ingredients at one point
eig                  point-interaction eigenvalue for ``--alpha``
pseudomode RE IM     optimal pseudomode coefficients and quotient
oracle RE IM         finite-difference resolvent norm at one point

Exit status is 0 on success, 2 for configuration errors and 3 when the
requested quantity cannot be computed.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .errors import ConfigError, SteplikeError
from .fd_oracle import build, decay_margin, oracle_eigenvalue_near, oracle_resolvent_norm
from .norm_bounds import (
    r1_bound_terms,
    r1_norm_bracket,
    r2_norm_upper,
    resolvent_norm_asymptotic,
    resolvent_norm_bracket,
)
from .operator_model import (
    classify,
    eigen_result,
    numerical_range_distance,
    sector_vertex,
    spectrum_distance,
)
from .potential import Interaction, StepPotential
from .pseudomode import (
    check_domain_conditions,
    pseudomode_coeffs,
    pseudomode_quotient_asymptotic,
    pseudomode_quotient_exact,
)
from .resolvent_kernel import kernel_coeffs
from .scan import QUANTITIES, ScanConfig, emit, level_crossings, parse_complex, read_config_file, scan
from .scalar_core import wavenumbers

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# option name -> (default, converter); shared by flags and config files
OPTIONS = {
    "v-plus": ("0+1i", "complex"),
    "v-minus": ("0-1i", "complex"),
    "alpha": ("0+0i", "complex"),
    "window": ("0,300,-1,1", "floats4"),
    "res": ("31,21", "ints2"),
    "quantity": ("bracket_upper", "quantity"),
    "eps": ("", "floats"),
    "oracle-L": ("30", "float"),
    "oracle-h": ("0.01", "float"),
    "format": ("csv", "format"),
    "out": ("-", "str"),
    "jobs": ("1", "int"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _convert(name: str, kind: str, text: str, where: str = ""):
    prefix = f"{where}: " if where else ""
    try:
        if kind == "complex":
            return parse_complex(text)
        if kind == "float":
            return float(text)
        if kind == "int":
            return int(text)
        if kind == "str":
            return text
        if kind == "floats":
            return tuple(float(p) for p in text.split(",") if p.strip())
        if kind == "floats4":
            parts = tuple(float(p) for p in text.split(","))
            if len(parts) != 4:
                raise ValueError("need re0,re1,im0,im1")
            return parts
        if kind == "ints2":
            parts = tuple(int(p) for p in text.split(","))
            if len(parts) != 2:
                raise ValueError("need nx,ny")
            return parts
        if kind == "quantity":
            if text not in QUANTITIES:
                raise ValueError(f"choose from {', '.join(QUANTITIES)}")
            return text
        if kind == "format":
            if text not in ("csv", "json"):
                raise ValueError("choose csv or json")
            return text
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"{prefix}--{name}: {exc}") from None
    raise AssertionError(kind)


HELP = {
    "v-plus": "potential on x >= 0, e.g. 0+1i",
    "v-minus": "potential on x < 0",
    "alpha": "point-interaction coupling; write --alpha=-1+0i for a leading minus",
    "window": "scan window re0,re1,im0,im1",
    "res": "scan resolution nx,ny",
    "quantity": "scanned quantity: " + ", ".join(QUANTITIES),
    "eps": "comma-separated eps; scan appends level_curve rows where the value crosses 1/eps",
    "oracle-L": "half-width of the finite-difference interval",
    "oracle-h": "finite-difference grid spacing",
    "format": "csv or json",
    "out": "output file, - for stdout",
    "jobs": "worker processes for scan",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="file of key=value lines; flags override it")
    for name, (default, _) in OPTIONS.items():
        text = HELP[name] + (f" (default {default})" if default else "")
        p.add_argument(f"--{name}", dest=name.replace("-", "_"), default=None, help=text.replace("%", "%%"))


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation."""
    parser = _Parser(prog="steplike", description="Resolvent and pseudospectrum tools for complex step potentials.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("scan", help="evaluate a quantity on a grid")
    _add_common(p)
    for name in ("bounds", "pseudomode", "oracle"):
        p = sub.add_parser(name, help=f"{name} at one spectral point")
        p.add_argument("re", type=float, help="Re z")
        p.add_argument("im", type=float, help="Im z")
        _add_common(p)
    p = sub.add_parser("eig", help="eigenvalue of the operator with point interaction")
    _add_common(p)
    return parser


def resolve_options(args: argparse.Namespace) -> dict:
    """Merge defaults, the optional config file and explicit flags, converting values."""
    raw = {name: (default, "default") for name, (default, _) in OPTIONS.items()}
    if args.config:
        for key, (value, where) in read_config_file(args.config).items():
            if key not in OPTIONS:
                raise ConfigError(f"{where}: unknown key {key!r}")
            raw[key] = (value, where)
    for name in OPTIONS:
        value = getattr(args, name.replace("-", "_"))
        if value is not None:
            raw[name] = (value, "")
    out = {}
    for name, (value, where) in raw.items():
        out[name] = _convert(name, OPTIONS[name][1], value, where if where != "default" else "")
    return out


def _cx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, complex):
        return _cx(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def _write_mapping(data: dict, fmt: str, out: str) -> None:
    data = _clean(data)
    if fmt == "json":
        text = json.dumps(data, indent=1) + "\n"
    else:
        pairs = list(_flatten(data))
        keys = ",".join(k for k, _ in pairs)
        vals = ",".join("" if v is None else (f"{v:.17g}" if isinstance(v, float) else str(v)) for _, v in pairs)
        text = keys + "\n" + vals + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)


def _optional(func, *args):
    try:
        return func(*args)
    except SteplikeError:
        return None


def cmd_scan(opts: dict) -> int:
    config = ScanConfig(
        potential=StepPotential(opts["v-plus"], opts["v-minus"]),
        alpha=opts["alpha"],
        window=opts["window"],
        resolution=opts["res"],
        quantity=opts["quantity"],
        epsilons=opts["eps"],
        oracle_half_width=opts["oracle-L"],
        oracle_spacing=opts["oracle-h"],
        jobs=opts["jobs"],
    )
    records = list(scan(config))
    for eps in config.epsilons:
        records.extend(level_crossings(records[: config.resolution[0] * config.resolution[1]], config, eps))
    emit(records, opts["format"], opts["out"])
    return 0


def cmd_bounds(opts: dict, z: complex) -> int:
    v = StepPotential(opts["v-plus"], opts["v-minus"])
    a = Interaction(opts["alpha"])
    bracket = resolvent_norm_bracket(v, a, z)
    r1 = r1_norm_bracket(r1_bound_terms(v, a, z))
    data = {
        "z": z,
        "lower": bracket.lower,
        "upper": bracket.upper,
        "regime": bracket.regime.value,
        "r1_lower": r1.lower,
        "r1_upper": r1.upper,
        "r2_upper": r2_norm_upper(v, z),
        "spectrum_distance": spectrum_distance(v, z),
        "numerical_range_distance": numerical_range_distance(v, z),
        "asymptotic": _optional(resolvent_norm_asymptotic, v, a, z),
    }
    _write_mapping(data, opts["format"], opts["out"])
    return 0


def cmd_eig(opts: dict) -> int:
    v = StepPotential(opts["v-plus"], opts["v-minus"])
    a = Interaction(opts["alpha"])
    res = eigen_result(v, a)
    cls = classify(v, a)
    data = {
        "alpha": a.alpha,
        "in_omega": res.in_omega,
        "eigenvalue": res.eigenvalue,
        "rate_negative_side": res.eigenfunction_rates[0] if res.in_omega else None,
        "rate_positive_side": res.eigenfunction_rates[1] if res.in_omega else None,
        "sector_vertex": sector_vertex(v, a),
        "normal": cls.normal,
        "self_adjoint": cls.self_adjoint,
        "pt_symmetric": cls.pt_symmetric,
    }
    if res.in_omega:
        k = wavenumbers(v, res.eigenvalue)
        data["dispersion_residual"] = abs(k.k_plus + k.k_minus + a.alpha)
        disc = build(v, a, opts["oracle-L"], opts["oracle-h"])
        data["oracle_eigenvalue"] = oracle_eigenvalue_near(disc, res.eigenvalue)
    _write_mapping(data, opts["format"], opts["out"])
    return 0


def cmd_pseudomode(opts: dict, z: complex) -> int:
    v = StepPotential(opts["v-plus"], opts["v-minus"])
    a = Interaction(opts["alpha"])
    c = pseudomode_coeffs(v, a, z)
    cont, jump = check_domain_conditions(c)
    data = {
        "z": z,
        "n1": c.n1,
        "n2": c.n2,
        "p1": c.p1,
        "p2": c.p2,
        "continuity_residual": cont,
        "jump_residual": jump,
        "quotient_exact": pseudomode_quotient_exact(v, a, z),
        "quotient_asymptotic": _optional(pseudomode_quotient_asymptotic, v, a, z),
    }
    _write_mapping(data, opts["format"], opts["out"])
    return 0


def cmd_oracle(opts: dict, z: complex) -> int:
    v = StepPotential(opts["v-plus"], opts["v-minus"])
    a = Interaction(opts["alpha"])
    kernel_coeffs(v, a, z)  # rejects spectrum points and the eigenvalue up front
    disc = build(v, a, opts["oracle-L"], opts["oracle-h"])
    bracket = resolvent_norm_bracket(v, a, z)
    data = {
        "z": z,
        "oracle": oracle_resolvent_norm(disc, z),
        "nodes": disc.n,
        "boundary_decay": decay_margin(v, z, disc.half_width),
        "bracket_lower": bracket.lower,
        "bracket_upper": bracket.upper,
        "regime": bracket.regime.value,
    }
    _write_mapping(data, opts["format"], opts["out"])
    return 0


def main(argv=None) -> int:
    """Run the command line and return the exit status.

    0 on success, 2 for invalid options or configuration, 3 when the
    requested quantity is undefined at the given point.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = resolve_options(args)
        if args.command == "scan":
            return cmd_scan(opts)
        if args.command == "eig":
            return cmd_eig(opts)
        z = complex(args.re, args.im)
        return {"bounds": cmd_bounds, "pseudomode": cmd_pseudomode, "oracle": cmd_oracle}[args.command](opts, z)
    except ConfigError as exc:
        print(f"steplike: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SteplikeError as exc:
        print(f"steplike: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"steplike: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
