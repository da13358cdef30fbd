"""Command-line interface.

Subcommands:

    trace      Kerr rotation vs probe delay for one configuration
    sweep      pump-phase, field or pump-wavelength sweep
    fit        extract parameters from a CSV dataset (sine | gauss2)
    figures    write the bundled preset panels to a directory
    validate   audit the excitation energy scales

Every subcommand accepts ``--config FILE`` plus repeatable ``--set key=value``
overrides; overrides are applied after the file.  Datasets go to ``--out``
(default stdout) as CSV.  Exit codes: 0 success, 1 failed validation,
2 configuration or input problems, 3 fit did not converge.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .config import default_config, parse_config, parse_config_items, serialize_config
from .errors import ConfigError, FitDivergedError, InsufficientDataError
from .experiment import (
    FIGURE_PANELS,
    SWEEP_KINDS,
    emit_csv,
    figure_panel_config,
    figure_panel_kind,
    run_multi_trace,
    run_sweep,
    run_trace,
    vsystem_report,
)
from .fitting import fit_damped_sine, fit_two_gaussian


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE", help="configuration file (key = value lines)")
    p.add_argument(
        "--set",
        metavar="KEY=VALUE",
        action="append",
        default=[],
        dest="overrides",
        help="override a single key; repeatable",
    )
    p.add_argument("--out", metavar="FILE", help="output CSV path (default: stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polspin",
        description="simulate and analyze polarization-driven electron spin precession",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="Kerr trace for one configuration")
    _add_common(p_trace)

    p_sweep = sub.add_parser("sweep", help="parameter sweep")
    p_sweep.add_argument("--kind", choices=SWEEP_KINDS, required=True)
    _add_common(p_sweep)

    p_fit = sub.add_parser("fit", help="fit a CSV dataset")
    p_fit.add_argument("model", choices=("sine", "gauss2"))
    p_fit.add_argument("--in", dest="infile", metavar="FILE", required=True,
                       help="two-column CSV with a header line")
    _add_common(p_fit)

    p_fig = sub.add_parser("figures", help="write all preset panels")
    p_fig.add_argument("--outdir", metavar="DIR", required=True)
    _add_common(p_fig)

    p_val = sub.add_parser("validate", help="check the excitation energy hierarchy")
    _add_common(p_val)

    return parser


def _load_config(args):
    cfg = default_config()
    if getattr(args, "config", None):
        path = Path(args.config)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        cfg = parse_config(text)
    if getattr(args, "overrides", None):
        items = []
        for raw in args.overrides:
            if "=" not in raw:
                raise ConfigError(f"--set expects KEY=VALUE, got {raw!r}")
            key, value = raw.split("=", 1)
            items.append((key.strip(), value.strip(), f"--set {key.strip()}"))
        # re-parse the file values first so overrides win
        base_items = []
        for line in serialize_config(cfg).splitlines():
            key, value = line.split("=", 1)
            base_items.append((key.strip(), value.strip(), "config"))
        cfg = parse_config_items(base_items + items)
    return cfg


def _write(dataset, out_path) -> None:
    if out_path:
        emit_csv(dataset, out_path)
    else:
        emit_csv(dataset, sys.stdout)


def _read_xy_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise InsufficientDataError(f"{path} is not a two-column numeric CSV: {exc}") from exc
    if data.shape[1] < 2:
        raise InsufficientDataError(f"{path} needs at least two columns")
    return data[:, 0], data[:, 1]


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "trace":
            cfg = _load_config(args)
            _write(run_trace(cfg), args.out)
            return 0
        if args.command == "sweep":
            cfg = _load_config(args)
            _write(run_sweep(args.kind, cfg), args.out)
            return 0
        if args.command == "fit":
            x, y = _read_xy_csv(args.infile)
            if args.model == "sine":
                result = fit_damped_sine(x, y)
            else:
                b = None
                if args.config or args.overrides:
                    b = _load_config(args).field.bx_tesla
                result = fit_two_gaussian(x, y, b_tesla=b)
            _write(result, args.out)
            return 0
        if args.command == "figures":
            cfg = _load_config(args)
            outdir = Path(args.outdir)
            outdir.mkdir(parents=True, exist_ok=True)
            for panel in FIGURE_PANELS:
                panel_cfg = figure_panel_config(panel, cfg)
                kind = figure_panel_kind(panel)
                if kind == "multi_trace":
                    dataset = run_multi_trace(panel_cfg)
                else:
                    dataset = run_sweep(kind, panel_cfg)
                dest = outdir / f"{panel}.csv"
                emit_csv(dataset, dest)
                print(dest)
            return 0
        if args.command == "validate":
            cfg = _load_config(args)
            report = vsystem_report(cfg)
            _write(report, args.out)
            return 0 if report.overall_ok else 1
    except (ConfigError, InsufficientDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FitDivergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
