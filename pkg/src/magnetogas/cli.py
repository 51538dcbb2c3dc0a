"""Command-line front end.

Subcommands: zeta (single special-function values), point (one
equation-of-state row), table (grid sweeps), figure (the data behind
the six standard plots, rendered to PNG alongside). Configuration
comes from INI-style files; flags override the file, and the file
falls back to $MAGNETOGAS_CONFIG when --config is absent.

Exit codes: 0 success, 2 input error, 3 domain error, 4 tolerance or
capacity failure.
"""

import argparse
import configparser
import math
import os
import sys

from . import figures, report
from .errors import (
    CapacityError,
    DomainError,
    InputError,
    ToleranceError,
)
from .hurwitz import (
    ZetaEngineConfig,
    hurwitz_zeta,
    hurwitz_zeta_fourier,
    hurwitz_zeta_hermite,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_TOLERANCE = 4


def parse_grid(spec):
    """Grid strings: "lin:a:b:n", "log:a:b:n", or comma-separated values."""
    s = str(spec).strip()
    if s.startswith(("lin:", "log:")):
        parts = s.split(":")
        if len(parts) != 4:
            raise InputError(f"grid spec needs kind:start:stop:count, got {spec!r}")
        kind = parts[0]
        try:
            a, b, n = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError as exc:
            raise InputError(f"bad grid spec {spec!r}") from exc
        if n < 1:
            raise InputError(f"grid count must be >= 1, got {n}")
        if n == 1:
            return [a]
        if kind == "lin":
            return [a + (b - a) * i / (n - 1) for i in range(n)]
        if a <= 0.0 or b <= 0.0:
            raise InputError("log grid endpoints must be positive")
        la, lb = math.log10(a), math.log10(b)
        return [10.0 ** (la + (lb - la) * i / (n - 1)) for i in range(n)]
    try:
        return [float(tok) for tok in s.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise InputError(f"bad grid spec {spec!r}") from exc


def _load_config(args):
    path = getattr(args, "config", None) or os.environ.get("MAGNETOGAS_CONFIG")
    if not path:
        return {}
    cp = configparser.ConfigParser()
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise InputError(f"cannot parse config {path}: {exc}") from exc
    return {s: dict(cp.items(s)) for s in cp.sections()}


def _emit(out, fmt, metadata, columns, rows):
    if out in (None, "-"):
        report.write_table(sys.stdout, fmt, metadata, columns, rows)
    else:
        with open(out, "w", newline="") as fh:
            report.write_table(fh, fmt, metadata, columns, rows)


def _rename_energy(row, name):
    old = "eps_f" if "eps_f" in row else "mu"
    if old == name:
        return row
    return {(name if k == old else k): v for k, v in row.items()}


def _order_arg(value):
    if value in (None, "", "default"):
        return None
    n = int(value)
    if n < 1:
        raise InputError(f"order must be >= 1, got {n}")
    return n


def run_zeta(args):
    config = None
    if args.order is not None:
        config = ZetaEngineConfig(asymptotic_terms=args.order)
    if args.strategy == "hermite":
        zv = hurwitz_zeta_hermite(args.z, args.q, config)
    elif args.strategy == "fourier":
        zv = hurwitz_zeta_fourier(args.z, args.q)
    else:
        zv = hurwitz_zeta(args.z, args.q, config)
    print(f"zeta({args.z:g}, {args.q:g}) = {zv.value:.15g}")
    print(f"abs_error <= {zv.abs_error_estimate:.3g}")
    print(f"strategy = {zv.strategy_used}")
    return EXIT_OK


def run_point(args):
    cfg = _load_config(args).get("run", {})
    if (args.fermi_energy is None) == (args.mu is None):
        raise InputError("give exactly one of --fermi-energy or --mu")
    if args.b is None:
        raise InputError("point needs --b")
    T = args.temperature if args.temperature is not None else 0.0
    if args.fermi_energy is not None and T > 0.0:
        raise InputError(
            "at T > 0 the energy argument is the chemical potential; use --mu"
        )
    energy = args.fermi_energy if args.fermi_energy is not None else args.mu
    name = "eps_f" if args.fermi_energy is not None else "mu"
    method = args.method or cfg.get("method", "auto")
    order = _order_arg(args.order if args.order is not None else cfg.get("order"))
    fmt = args.format or cfg.get("format", "csv")

    row = _rename_energy(report.eos_row(energy, T, b=args.b, method=method, n_max=order), name)
    columns = list(row.keys())
    meta = report.run_metadata(
        columns,
        extra={
            "config.point.energy_kind": "fermi_energy" if name == "eps_f" else "mu",
            "config.point.energy": repr(energy),
            "config.point.temperature": repr(T),
            "config.point.b": repr(args.b),
            "config.run.method": method,
            "config.run.order": str(order) if order else "default",
        },
    )
    _emit(args.out or cfg.get("out"), fmt, meta, columns, [row])
    return EXIT_OK


def _effective_table_config(args):
    file_cfg = _load_config(args)
    cfg = {"grid": dict(file_cfg.get("grid", {})), "run": dict(file_cfg.get("run", {}))}
    if args.fermi_energy is not None and args.mu is not None:
        raise InputError("give at most one of --fermi-energy or --mu")
    if args.fermi_energy is not None:
        cfg["grid"]["energy_kind"] = "fermi_energy"
        cfg["grid"]["energy"] = args.fermi_energy
    if args.mu is not None:
        cfg["grid"]["energy_kind"] = "mu"
        cfg["grid"]["energy"] = args.mu
    if args.b is not None:
        cfg["grid"]["b"] = args.b
    if args.temperature is not None:
        cfg["grid"]["temperature"] = args.temperature
    if args.method is not None:
        cfg["run"]["method"] = args.method
    if args.order is not None:
        cfg["run"]["order"] = str(args.order)
    if args.format is not None:
        cfg["run"]["format"] = args.format
    cfg["run"].setdefault("method", "auto")
    cfg["run"].setdefault("order", "default")
    cfg["run"].setdefault("format", "csv")
    cfg["grid"].setdefault("temperature", "0")
    cfg["grid"].setdefault("energy_kind", "fermi_energy")
    return cfg, (args.out or cfg["run"].pop("out", None))


def run_table(args):
    cfg, out = _effective_table_config(args)
    grid, run = cfg["grid"], cfg["run"]
    for key in ("energy", "b"):
        if key not in grid:
            raise InputError(f"table needs grid.{key} (config file or flag)")
    kind = grid["energy_kind"]
    if kind not in ("fermi_energy", "mu"):
        raise InputError(f"energy_kind must be fermi_energy or mu, got {kind!r}")
    energies = parse_grid(grid["energy"])
    temps = parse_grid(grid["temperature"])
    bs = parse_grid(grid["b"])
    if kind == "fermi_energy" and any(t > 0.0 for t in temps):
        raise InputError("finite-temperature sweeps take the chemical potential; set energy_kind = mu")
    method = run["method"]
    order = _order_arg(run["order"])
    name = "mu" if kind == "mu" else "eps_f"

    rows = []
    for T in temps:
        for b in bs:
            for energy in energies:
                rows.append(
                    _rename_energy(report.eos_row(energy, T, b, method, order), name)
                )
    columns = list(rows[0].keys())
    echo = {
        f"config.{section}.{key}": str(val)
        for section in ("grid", "run")
        for key, val in sorted(cfg[section].items())
    }
    echo["row_order"] = "temperature outer, then b, then energy"
    echo["tolerances"] = "library defaults"
    meta = report.run_metadata(columns, extra=echo)
    _emit(out, run["format"], meta, columns, rows)
    return EXIT_OK


def run_figure(args):
    cfg = _load_config(args).get("run", {})
    fmt = args.format or cfg.get("format", "csv")
    meta, columns, rows = figures.figure_data(args.n)
    meta = report.run_metadata(columns, extra=meta)
    out = args.out or cfg.get("out") or f"figure{args.n}.{fmt}"
    _emit(out, fmt, meta, columns, rows)
    if out in (None, "-"):
        png = f"figure{args.n}.png"
    else:
        png = os.path.splitext(out)[0] + ".png"
    figures.render_png(png, args.n, columns, rows)
    print(f"wrote {out} and {png}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="magnetogas",
        description="Degenerate electron gas in a magnetic field: "
        "special functions, equation-of-state rows, sweeps, plot data.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pz = sub.add_parser("zeta", help="evaluate zeta(z, q)")
    pz.add_argument("-z", type=float, required=True)
    pz.add_argument("-q", type=float, required=True)
    pz.add_argument("--strategy", choices=("auto", "hermite", "fourier"), default="auto")
    pz.add_argument("--order", type=int, default=None, help="asymptotic series terms")
    pz.set_defaults(func=run_zeta)

    def common(sp, grid_flags):
        typ = str if grid_flags else float
        sp.add_argument("--b", type=typ, default=None)
        sp.add_argument("--fermi-energy", dest="fermi_energy", type=typ, default=None)
        sp.add_argument("--mu", type=typ, default=None)
        sp.add_argument("--temperature", type=typ, default=None)
        sp.add_argument(
            "--method",
            choices=report.CLI_METHODS,
            default=None,
            help="auto, quadrature, small-b, large-filling, brute (T = 0); "
            "quadrature, sommerfeld, series (T > 0)",
        )
        sp.add_argument("--order", type=int, default=None, help="oscillation series cap")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--config", default=None)

    pp = sub.add_parser("point", help="one equation-of-state row")
    common(pp, grid_flags=False)
    pp.set_defaults(func=run_point)

    pt = sub.add_parser("table", help="sweep a grid into a table")
    common(pt, grid_flags=True)
    pt.set_defaults(func=run_table)

    pf = sub.add_parser("figure", help="emit the data behind plot 1..6 plus a PNG")
    pf.add_argument("n", type=int, choices=range(1, 7))
    pf.add_argument("--format", choices=("csv", "json"), default=None)
    pf.add_argument("--out", default=None)
    pf.add_argument("--config", default=None)
    pf.set_defaults(func=run_figure)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ToleranceError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
