"""Command-line interface.

Subcommands: point (single-point observables), sweep (1-D/2-D grids),
bic (resonance-condition search), extrema (dips and peaks of g2 along a
detuning), verify (wavefunction vs master-equation comparison on a random
cloud) and figure (regenerate a named reference dataset, optionally with a
plot).  Exit codes: 0 success, 1 parameter/usage problem, 2 solver
singularity at a point query.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analytic, figures, lindblad, sweeps, verify
from .errors import (
    FanojcError,
    InvalidParameterError,
    SingularPointError,
    ZeroIntensityError,
)
from .observables import OBSERVABLE_NAMES, ObservableSet
from .params import SystemParams, load_config, params_from_mapping


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanojc",
        description="Photon statistics of a driven atom-cavity system with interfering decay channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_param_options(p):
        p.add_argument("--config", type=Path, help="flat key = value parameter file")
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override one parameter (repeatable), units gamma0",
        )
        p.add_argument("--drive", choices=("atom", "cavity"), help="drive side, amplitude 1e-3")

    def add_output_options(p):
        p.add_argument("--out", type=Path, help="output file (stdout when omitted)")
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")

    def add_oracle_options(p):
        p.add_argument("--fock-cutoff", type=int, default=6, help="photon-number cutoff")
        p.add_argument("--auto-converge", action="store_true", help="raise the cutoff until stable")

    p_point = sub.add_parser("point", help="observables at one parameter point")
    add_param_options(p_point)
    add_output_options(p_point)
    add_oracle_options(p_point)
    p_point.add_argument("--preset", help="named configuration at its resonance dip (e.g. fig1)")
    p_point.add_argument("--solver", choices=sweeps.SOLVERS, default="wavefunction")

    p_sweep = sub.add_parser("sweep", help="scan one or two parameters")
    add_param_options(p_sweep)
    add_output_options(p_sweep)
    add_oracle_options(p_sweep)
    p_sweep.add_argument("--solver", choices=sweeps.SOLVERS, default="wavefunction")
    p_sweep.add_argument("--axis1", required=True, metavar="NAME:START:STOP:COUNT")
    p_sweep.add_argument("--axis2", metavar="NAME:START:STOP:COUNT")
    p_sweep.add_argument(
        "--observables", default="n_c,g2", help=f"comma list from {','.join(OBSERVABLE_NAMES)}"
    )

    p_bic = sub.add_parser("bic", help="locate the interference-resonance detuning")
    add_param_options(p_bic)
    add_output_options(p_bic)
    p_bic.add_argument("--range", dest="search_range", metavar="LO:HI", help="search window")

    p_ext = sub.add_parser("extrema", help="dips and peaks of g2 along a detuning")
    add_param_options(p_ext)
    add_output_options(p_ext)
    p_ext.add_argument("--axis", choices=sweeps.DETUNING_AXES, default="delta_0L")
    p_ext.add_argument("--range", dest="search_range", metavar="LO:HI")
    p_ext.add_argument("--points", type=int, default=2001)

    p_verify = sub.add_parser("verify", help="wavefunction vs master-equation comparison")
    add_oracle_options(p_verify)
    p_verify.add_argument("--points", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=1234)
    p_verify.add_argument("--omega", type=float, default=1e-3)
    p_verify.add_argument("--verbose", action="store_true")

    p_fig = sub.add_parser("figure", help="regenerate a named reference dataset")
    p_fig.add_argument("identifier", choices=figures.FIGURE_IDS)
    p_fig.add_argument("--out", type=Path, help="output file (default <id>.csv)")
    p_fig.add_argument("--format", choices=("csv", "json"), default="csv")
    p_fig.add_argument("--plot", action="store_true", help="also render an SVG next to the data")
    return parser


def _build_params(args) -> SystemParams:
    params = SystemParams()
    preset = getattr(args, "preset", None)
    if preset:
        params = figures.preset_point(preset)
    if getattr(args, "config", None):
        params = load_config(args.config, base=params)
    overrides = {}
    for item in getattr(args, "overrides", []):
        if "=" not in item:
            raise InvalidParameterError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = value.strip()
    if overrides:
        params = params_from_mapping(overrides, base=params)
    if getattr(args, "drive", None):
        params = params.with_drive(args.drive)
    return params


def _oracle_config(args) -> lindblad.OracleConfig:
    return lindblad.OracleConfig(
        n_max=getattr(args, "fock_cutoff", 6),
        auto_converge=getattr(args, "auto_converge", False),
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n")


def _point_text(obs: ObservableSet, fmt: str) -> str:
    values = obs.as_dict()
    if fmt == "json":
        payload = dict(values, solver=obs.solver, flags=list(obs.flags))
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "csv":
        names = list(values)
        return ",".join(names) + "\n" + ",".join(f"{values[n]:.12g}" for n in names)
    lines = [f"solver: {obs.solver}"]
    lines += [f"{name:>6}: {value:.9g}" for name, value in values.items()]
    if obs.flags:
        lines.append("flags: " + ", ".join(obs.flags))
    return "\n".join(lines)


def _parse_axis(text: str) -> sweeps.SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise InvalidParameterError(f"axis must be NAME:START:STOP:COUNT, got {text!r}")
    name, start, stop, count = parts
    try:
        return sweeps.SweepAxis(name=name, start=float(start), stop=float(stop), count=int(count))
    except ValueError as exc:
        raise InvalidParameterError(f"cannot parse axis {text!r}") from exc


def _parse_range(text: str | None) -> tuple[float, float] | None:
    if text is None:
        return None
    parts = text.split(":")
    if len(parts) != 2:
        raise InvalidParameterError(f"range must be LO:HI, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise InvalidParameterError(f"cannot parse range {text!r}") from exc


def cmd_point(args) -> int:
    params = _build_params(args)
    if not params.driven:
        raise InvalidParameterError("point requires a drive (use --drive or --set omega_*)")
    obs = sweeps.evaluate_point(
        params, args.solver, ("n_c", "g2", "I0", "I2", "eta"), cfg=_oracle_config(args)
    )
    _emit(_point_text(obs, args.format), args.out)
    return 0


def cmd_sweep(args) -> int:
    params = _build_params(args)
    axes = [_parse_axis(args.axis1)]
    if args.axis2:
        axes.append(_parse_axis(args.axis2))
    observables = tuple(name.strip() for name in args.observables.split(",") if name.strip())
    spec = sweeps.SweepSpec(axes=tuple(axes), solver=args.solver, observables=observables)
    result = sweeps.sweep(spec, params, cfg=_oracle_config(args), workers=4)
    out = args.out if args.out else Path("sweep.csv" if args.format != "json" else "sweep.json")
    if args.format == "json":
        result.to_json(out)
    else:
        result.to_csv(out)
    print(f"wrote {out}")
    return 0


def cmd_bic(args) -> int:
    params = _build_params(args)
    report = sweeps.locate_bic(params, search_range=_parse_range(args.search_range))
    if args.format == "json":
        payload = {
            "optimum": report.location,
            "minimum_decay": report.value,
            "boundary": report.boundary,
            "prediction": report.prediction,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2), args.out)
        return 0
    lines = [
        f"numeric optimum delta_0c: {report.location['delta_0c']:.9g}",
        f"minimum dressed-state decay: {report.value:.6g}",
        f"first-order prediction delta_0c: {report.prediction['delta_0c']:.9g}",
        f"first-order prediction delta_0L: {report.prediction['delta_0L']:.9g}",
    ]
    if report.boundary:
        lines.append("warning: optimum at search-range boundary")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_extrema(args) -> int:
    params = _build_params(args)
    if not params.driven:
        params = params.with_drive("atom")
    report = sweeps.locate_g2_extrema(
        params,
        axis=args.axis,
        search_range=_parse_range(args.search_range),
        npoints=args.points,
    )
    if args.format == "json":
        payload = {
            "axis": report.axis,
            "global_minimum": {"location": report.location, "value": report.value},
            "minima": [
                {"location": m.location, "value": m.value, "classification": m.classification}
                for m in report.all_local_minima
            ],
            "maxima": [{"location": m.location, "value": m.value} for m in report.all_local_maxima],
            "prediction": report.prediction,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2), args.out)
        return 0
    lines = [f"global minimum: {report.axis} = {report.location[report.axis]:.9g},"
             f" g2 = {report.value:.6g}"]
    for m in report.all_local_minima:
        lines.append(f"  dip  at {m.location:12.6g}  g2 = {m.value:.6g}  [{m.classification}]")
    for m in report.all_local_maxima:
        lines.append(f"  peak at {m.location:12.6g}  g2 = {m.value:.6g}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_verify(args) -> int:
    report = verify.compare_solvers(
        n=args.points,
        seed=args.seed,
        omega=args.omega,
        cfg=lindblad.OracleConfig(n_max=args.fock_cutoff, auto_converge=True),
    )
    if args.verbose:
        for point in report.points:
            print(
                f"g={point.params.g:7.3f} kappa0={point.params.kappa0:7.3f}"
                f" g2_wf={point.g2_wavefunction:.6g} g2_oracle={point.g2_oracle:.6g}"
                f" dev={point.rel_deviation:.3e} n_max={point.n_max_used}"
            )
    print(f"points: {len(report.points)}  drive amplitude: {report.omega:g}")
    print(f"max relative g2 deviation: {report.max_rel_deviation:.6e}")
    return 0


def cmd_figure(args) -> int:
    dataset = figures.build_figure(args.identifier)
    suffix = ".json" if args.format == "json" else ".csv"
    out = args.out if args.out else Path(f"{args.identifier}{suffix}")
    if args.format == "json":
        dataset.to_json(out)
    else:
        dataset.to_csv(out)
    print(f"wrote {out}")
    if args.plot:
        plot_path = out.with_suffix(".svg")
        figures.render_plot(dataset, plot_path)
        print(f"wrote {plot_path}")
    return 0


COMMANDS = {
    "point": cmd_point,
    "sweep": cmd_sweep,
    "bic": cmd_bic,
    "extrema": cmd_extrema,
    "verify": cmd_verify,
    "figure": cmd_figure,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return COMMANDS[args.command](args)
    except (SingularPointError, ZeroIntensityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidParameterError, FanojcError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
