"""Command-line interface: single runs, sweeps, fits and figure exports.

Exit codes: 0 success, 2 usage or configuration error, 3 runtime error.
All artifacts are data files (CSV/JSON); plotting is out of scope. Every
output directory receives a manifest.json describing the emitted files.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .engine import ModelSpec, SimConfig, checkpoint_schedule, run_simulation
from .errors import GridConfigError, InvalidConfig, KinexError
from .fitting import fit_logarithmic, fit_saturation, xi_gamma_equivalence
from .io import (
    SWEEP_CSV_COLUMNS,
    parse_grid_config,
    read_table,
    utc_now,
    write_csv,
    write_json,
    write_manifest,
)
from .metrics import histogram
from .sweep import SweepRow, aggregate, run_sweep

__all__ = ["main"]


class _UsageError(Exception):
    pass


def _parse_int_list(text):
    try:
        return tuple(int(part) for part in text.split(",") if part != "")
    except ValueError:
        raise _UsageError(f"expected a comma-separated integer list, got {text!r}")


def _parse_float_list(text):
    try:
        return tuple(float(part) for part in text.split(",") if part != "")
    except ValueError:
        raise _UsageError(f"expected a comma-separated number list, got {text!r}")


def _parse_checkpoints(text, t_max):
    parts = text.split(",")
    if len(parts) != 2 or parts[1] not in ("log", "linear"):
        raise _UsageError("--checkpoints takes '<count>,log' or '<count>,linear'")
    try:
        count = int(parts[0])
    except ValueError:
        raise _UsageError(f"--checkpoints count must be an integer, got {parts[0]!r}")
    return checkpoint_schedule(t_max, count, parts[1])


def _default_jobs():
    try:
        return max(1, int(os.environ.get("KINEX_JOBS", "1")))
    except ValueError:
        return 1


def _ensure_dir(path):
    os.makedirs(path, exist_ok=True)
    return path


def _model_from_flags(args):
    given = {name: getattr(args, name) for name in ("xi", "tp", "gamma")}
    needed = {"basic": (), "ex": ("xi", "tp"), "nx": ("gamma",)}[args.model]
    for name in needed:
        if given[name] is None:
            raise _UsageError(f"--model {args.model} requires --{name}")
    for name, value in given.items():
        if name not in needed and value is not None:
            raise _UsageError(f"--{name} does not apply to --model {args.model}")
    if args.model == "ex":
        return ModelSpec.ex(args.lam, args.xi, args.tp)
    if args.model == "nx":
        return ModelSpec.nx(args.lam, args.gamma)
    return ModelSpec.basic(args.lam)


def _config_echo(config: SimConfig) -> dict:
    p = config.model.params
    return {
        "model": config.model.kind,
        "lambda": p.lam,
        "xi": p.xi,
        "tp": p.tp,
        "gamma": p.gamma,
        "n": config.n_agents,
        "t_max": config.t_max,
        "seed": config.seed,
        "initial_wealth": config.initial_wealth,
        "checkpoint_times": list(config.checkpoint_times),
        "snapshot_times": list(config.snapshot_times),
    }


def _cmd_simulate(args):
    started = utc_now()
    snapshots = _parse_int_list(args.snapshots) if args.snapshots else ()
    model = _model_from_flags(args)
    config = SimConfig(
        model=model,
        n_agents=args.n,
        t_max=args.t_max,
        seed=args.seed,
        checkpoint_times=_parse_checkpoints(args.checkpoints, args.t_max),
        snapshot_times=snapshots,
    )
    record = run_simulation(config)

    out = _ensure_dir(args.out)
    write_csv(
        os.path.join(out, "timeseries.csv"),
        ("t", "gini", "cum_volume", "f_running"),
        [
            (int(t), g, v, v / (2.0 * t))
            for t, g, v in zip(
                record.checkpoint_t, record.checkpoint_gini, record.checkpoint_volume
            )
        ],
    )
    for t, wealth in record.snapshots:
        write_csv(
            os.path.join(out, f"snapshot_{t}.csv"),
            ("rank", "wealth"),
            [(k + 1, w) for k, w in enumerate(wealth)],
        )
    g = record.final_gini
    write_json(
        os.path.join(out, "summary.json"),
        {
            "final_gini": g,
            "final_f": record.final_flow,
            "f_over_g": record.final_flow / g if g > 0 else float("nan"),
            "config": _config_echo(config),
        },
    )
    write_manifest(out, _config_echo(config), started, utc_now(),
                   command="simulate")
    return 0


def _grid_echo(grid) -> dict:
    return {
        "model": grid.kind,
        "lambda": list(grid.lambdas),
        "xi": list(grid.xis),
        "tp": list(grid.tps),
        "gamma": list(grid.gammas),
        "replicates": grid.replicates,
        "n": grid.n_agents,
        "t_max": grid.t_max,
        "master_seed": grid.master_seed,
    }


def _cmd_sweep(args):
    started = utc_now()
    with open(args.grid, "r", encoding="utf-8") as fh:
        grid = parse_grid_config(fh.read())
    if args.replicates is not None:
        from dataclasses import replace

        grid = replace(grid, replicates=args.replicates)
    rows = run_sweep(grid, jobs=args.jobs)

    out = _ensure_dir(args.out)
    write_csv(
        os.path.join(out, "sweep.csv"),
        SWEEP_CSV_COLUMNS,
        [
            (r.model, r.lam, r.xi, r.tp, r.gamma, r.x_ex, r.x_nx,
             r.replicate, r.seed, r.g, r.f, r.f_over_g)
            for r in rows
        ],
    )
    write_manifest(out, _grid_echo(grid), started, utc_now(), command="sweep")
    return 0


def _numeric_column(rows, name, path):
    if not rows or name not in rows[0]:
        raise _UsageError(f"column {name!r} not found in {path}")
    try:
        return np.array([float(r[name]) for r in rows])
    except ValueError as e:
        raise _UsageError(f"column {name!r} in {path} has non-numeric cells: {e}")


def _cmd_fit(args):
    started = utc_now()
    _, rows = read_table(args.input)
    x = _numeric_column(rows, args.x_col, args.input)
    y = _numeric_column(rows, args.y_col, args.input)
    keep = ~(np.isnan(x) | np.isnan(y))
    n_dropped = int((~keep).sum())
    x, y = x[keep], y[keep]
    if args.group_mean and x.size:
        xs = np.unique(x)
        y = np.array([y[x == v].mean() for v in xs])
        x = xs
    points = np.column_stack((x, y)) if x.size else np.empty((0, 2))

    fit = fit_saturation(points) if args.family == "saturation" else fit_logarithmic(points)
    if fit.family == "saturation":
        pred = fit.coefficients["a"] * (1.0 - np.exp(-fit.coefficients["b"] * x))
    else:
        pred = fit.coefficients["slope"] * np.log(x) + fit.coefficients["intercept"]
    resid = y - pred

    out = _ensure_dir(args.out)
    write_json(
        os.path.join(out, "fit.json"),
        {
            "family": fit.family,
            "coefficients": fit.coefficients,
            "r_squared": fit.r_squared,
            "rss": fit.rss,
            "n_points": fit.n_points,
            "n_dropped": n_dropped,
            "degenerate": fit.degenerate,
            "residuals": {
                "mean_abs": float(np.mean(np.abs(resid))) if resid.size else float("nan"),
                "max_abs": float(np.max(np.abs(resid))) if resid.size else float("nan"),
            },
        },
    )
    echo = {
        "family": args.family,
        "input": args.input,
        "x_col": args.x_col,
        "y_col": args.y_col,
        "group_mean": bool(args.group_mean),
    }
    write_manifest(out, echo, started, utc_now(), command="fit")
    return 0


def _sweep_rows_from_csv(path):
    _, raw = read_table(path)
    rows = []
    for r in raw:
        try:
            rows.append(SweepRow(
                model=r["model"],
                lam=float(r["lambda"]),
                xi=float(r["xi"]),
                tp=int(r["tp"]),
                gamma=float(r["gamma"]),
                x_ex=float(r["x_ex"]),
                x_nx=float(r["x_nx"]),
                replicate=int(r["replicate"]),
                seed=int(r["seed"]),
                g=float(r["g"]),
                f=float(r["f"]),
                f_over_g=float(r["f_over_g"]),
            ))
        except (KeyError, ValueError) as e:
            raise _UsageError(f"{path} is not a sweep.csv: {e}")
    return rows


def _point_x(point):
    return point.x_ex if point.model == "ex" else point.x_nx


def _cmd_figures(args):
    started = utc_now()
    out = _ensure_dir(args.out)
    echo = {"figure": args.figure}

    if args.figure == "fig2":
        _, raw = read_table(args.input)
        try:
            wealth = np.array([float(r["wealth"]) for r in raw])
        except (KeyError, ValueError) as e:
            raise _UsageError(f"{args.input} is not a snapshot csv: {e}")
        hist = histogram(wealth, scheme=args.scheme, n_bins=args.bins)
        write_csv(
            os.path.join(out, "histogram.csv"),
            ("bin_lo", "bin_hi", "count"),
            [
                (hist.bin_edges[k], hist.bin_edges[k + 1], int(c))
                for k, c in enumerate(hist.counts)
            ],
        )
        echo.update(input=args.input, scheme=args.scheme, bins=args.bins)
    elif args.figure == "fig3":
        _, raw = read_table(args.input)
        try:
            data = [(int(r["t"]), float(r["gini"])) for r in raw]
        except (KeyError, ValueError) as e:
            raise _UsageError(f"{args.input} is not a timeseries csv: {e}")
        write_csv(os.path.join(out, "gini_vs_t.csv"), ("t", "gini"), data)
        echo.update(input=args.input)
    elif args.figure == "fig4":
        points = aggregate(_sweep_rows_from_csv(args.input))
        write_csv(
            os.path.join(out, "surface.csv"),
            ("model", "lambda", "x", "mean_g", "mean_f"),
            [(p.model, p.lam, _point_x(p), p.mean_g, p.mean_f) for p in points],
        )
        echo.update(input=args.input)
    elif args.figure == "fig5":
        points = aggregate(_sweep_rows_from_csv(args.input))
        write_csv(
            os.path.join(out, "g_vs_x.csv"),
            ("model", "lambda", "xi", "tp", "gamma", "x", "mean_g", "std_g"),
            [
                (p.model, p.lam, p.xi, p.tp, p.gamma, _point_x(p), p.mean_g, p.std_g)
                for p in points
            ],
        )
        echo.update(input=args.input)
    elif args.figure == "fig6":
        points = aggregate(_sweep_rows_from_csv(args.input))
        write_csv(
            os.path.join(out, "f_over_g_vs_x.csv"),
            ("model", "x", "mean_f_over_g", "std_f_over_g",
             "mean_f_over_mean_g", "n_undefined"),
            [
                (p.model, _point_x(p), p.mean_f_over_g, p.std_f_over_g,
                 p.mean_f_over_mean_g, p.n_undefined)
                for p in points
            ],
        )
        echo.update(input=args.input)
    else:  # fig7
        tps = _parse_int_list(args.tp)
        if not tps:
            raise _UsageError("--tp needs at least one period")
        gammas = np.linspace(0.0, 1.0, args.gamma_steps)
        data = []
        for tp in tps:
            for gamma in gammas:
                eq = xi_gamma_equivalence(args.lam, tp, float(gamma))
                data.append((tp, float(gamma), eq.xi, eq.xi_raw, eq.clamped))
        write_csv(
            os.path.join(out, "xi_vs_gamma.csv"),
            ("tp", "gamma", "xi", "xi_raw", "clamped"),
            data,
        )
        echo.update({"lambda": args.lam, "tp": list(tps),
                     "gamma_steps": args.gamma_steps})

    write_manifest(out, echo, started, utc_now(), command=f"figures {args.figure}")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="kinex",
        description="Monte Carlo laboratory for kinetic wealth-exchange models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one simulation and write its artifacts")
    p.add_argument("--model", required=True, choices=("basic", "ex", "nx"))
    p.add_argument("--n", type=int, default=1000, help="number of agents")
    p.add_argument("--t-max", type=int, default=10**6, help="number of exchange events")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="saving rate")
    p.add_argument("--xi", type=float, help="transfer rate (ex model)")
    p.add_argument("--tp", type=int, help="redistribution period in events (ex model)")
    p.add_argument("--gamma", type=float, help="surplus contribution rate (nx model)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--snapshots", help="comma-separated event indices for wealth snapshots")
    p.add_argument("--checkpoints", default="60,log", help="'<count>,log' or '<count>,linear'")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="run a parameter-grid sweep")
    p.add_argument("--grid", required=True, help="grid config JSON path")
    p.add_argument("--replicates", type=int, help="override the grid's replicate count")
    p.add_argument("--jobs", type=int, default=_default_jobs(),
                   help="parallel worker processes (default: KINEX_JOBS or 1)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fit", help="fit a curve family to CSV columns")
    p.add_argument("--family", required=True, choices=("saturation", "log"))
    p.add_argument("--input", required=True, help="input CSV path")
    p.add_argument("--x-col", required=True)
    p.add_argument("--y-col", required=True)
    p.add_argument("--group-mean", action="store_true",
                   help="average y over rows sharing the same x before fitting")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("figures", help="re-emit per-figure datasets from run artifacts")
    figsub = p.add_subparsers(dest="figure", required=True)
    f2 = figsub.add_parser("fig2", help="wealth histogram from a snapshot csv")
    f2.add_argument("--input", required=True)
    f2.add_argument("--scheme", default="linear", choices=("linear", "logarithmic"))
    f2.add_argument("--bins", type=int, default=50)
    f3 = figsub.add_parser("fig3", help="gini vs t from a timeseries csv")
    f3.add_argument("--input", required=True)
    f4 = figsub.add_parser("fig4", help="surface grid from a sweep csv")
    f4.add_argument("--input", required=True)
    f5 = figsub.add_parser("fig5", help="g vs x table from a sweep csv")
    f5.add_argument("--input", required=True)
    f6 = figsub.add_parser("fig6", help="f/g vs x table from a sweep csv")
    f6.add_argument("--input", required=True)
    f7 = figsub.add_parser("fig7", help="xi vs gamma equivalence curves")
    f7.add_argument("--lambda", dest="lam", type=float, default=0.25)
    f7.add_argument("--tp", default="625,1250,2500,5000",
                    help="comma-separated redistribution periods")
    f7.add_argument("--gamma-steps", type=int, default=101)
    for fp in (f2, f3, f4, f5, f6, f7):
        fp.add_argument("--out", required=True, help="output directory")
        fp.set_defaults(func=_cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else int(e.code)
    try:
        return args.func(args)
    except (_UsageError, InvalidConfig, GridConfigError) as e:
        print(f"kinex: error: {e}", file=sys.stderr)
        return 2
    except (KinexError, OSError, ValueError) as e:
        print(f"kinex: error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
