"""Command-line entry point: generate, simulate, sweep, metrics, export.

All diagnostics go to stderr; data goes to files only. Exit codes: 0 on
success, 1 on usage errors, 2 on runtime failures. Flag overrides beat
config-file values, which beat the built-in defaults.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from . import io as gio
from .geometry import sample_positions
from .graph import StepDelta, build_graph, diff_graphs
from .harness import SimulationConfig, SweepSpec, run_simulation, run_sweep
from .metrics import compute_metrics

import numpy as np

_OVERRIDE_FLAGS = {
    "r": float, "velocity": float, "t_rest": int, "seed": int,
    "n": int, "n_moves": int, "t_move": int, "p_stat": float,
}


class UsageError(Exception):
    pass


def _log(verbosity: int, level: int, message: str) -> None:
    if verbosity >= level:
        print(message, file=sys.stderr)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file (defaults apply otherwise)")
    parser.add_argument("--out", help="output directory (default: gnmn_out/<config-hash>)")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--r", type=float, help="connection radius (default 0.65)")
    parser.add_argument("--velocity", type=float, help="mover speed factor (default 0.5)")
    parser.add_argument("--t-rest", dest="t_rest", type=int,
                        help="post-move cooldown in phases (default 10)")
    parser.add_argument("--t-move", dest="t_move", type=int,
                        help="movement phases per run (default 20)")
    parser.add_argument("--phases", dest="t_move", type=int,
                        help="alias for --t-move")
    parser.add_argument("--seed", type=int, help="base RNG seed (default 0)")
    parser.add_argument("--n", type=int, help="node count (default 2000)")
    parser.add_argument("--n-moves", dest="n_moves", type=int,
                        help="movers per phase (default 100)")
    parser.add_argument("--p-stat", dest="p_stat", type=float,
                        help="probability a node is permanently static (default 0.8)")


def _resolve_config(args) -> SimulationConfig:
    if args.config:
        loaded = gio.load_config(args.config)
        if isinstance(loaded, SweepSpec):
            config = loaded.base
        else:
            config = loaded
    else:
        config = SimulationConfig()
    overrides = {
        name: getattr(args, name)
        for name in _OVERRIDE_FLAGS
        if getattr(args, name, None) is not None
    }
    if overrides:
        try:
            config = dataclasses.replace(config, **overrides)
        except ValueError as exc:
            raise UsageError(f"invalid override: {exc}; fix the flag value") from exc
    return config


def _outdir(args, config: SimulationConfig) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get("GNMN_OUT", "gnmn_out")) / gio.config_hash(config)[:16]


def _cmd_generate(args) -> int:
    config = _resolve_config(args)
    outdir = _outdir(args, config)
    outdir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(config.seed)
    positions = sample_positions(config.n, config.region(), rng)
    snapshot = build_graph(positions, config.r, config.region(), phase=0)
    (outdir / "config.json").write_text(gio.serialize_config(config))
    gio.export_graphml(snapshot, outdir / "phase_00.graphml", config)
    gio.export_snapshot_svg(snapshot, snapshot, StepDelta(), config.region(),
                            outdir / "phase_00.svg")
    _log(args.verbose, 1, f"wrote initial snapshot to {outdir}")
    return 0


def _cmd_simulate(args) -> int:
    config = _resolve_config(args)
    outdir = _outdir(args, config)
    trace = run_simulation(config, keep_snapshots=True)
    gio.write_run_bundle(trace, outdir)
    _log(args.verbose, 1, f"simulated {config.t_move} phases; outputs in {outdir}")
    return 0


def _cmd_sweep(args) -> int:
    config = _resolve_config(args)
    if args.config:
        loaded = gio.load_config(args.config)
        file_spec = loaded if isinstance(loaded, SweepSpec) else None
    else:
        file_spec = None

    parameter = args.param or (file_spec.parameter if file_spec else None)
    if parameter is None:
        raise UsageError("no sweep parameter: pass --param or a config with a sweep block")
    if args.values:
        values = [float(v) for v in args.values.split(",")]
    elif file_spec and file_spec.parameter == parameter:
        values = list(file_spec.values)
    else:
        raise UsageError("no sweep values: pass --values or a config with a sweep block")
    if args.seeds is not None:
        seeds = list(range(args.seeds))
    elif file_spec:
        seeds = list(file_spec.seeds)
    else:
        seeds = list(range(5))

    spec = SweepSpec(base=config, parameter=parameter, values=tuple(values),
                     seeds=tuple(seeds))
    outdir = _outdir(args, config)
    report = run_sweep(spec, workers=args.threads, keep_snapshots=True)
    gio.write_sweep_bundle(report, outdir)
    _log(args.verbose, 1,
         f"swept {parameter} over {len(values)} values x {len(seeds)} seeds; "
         f"outputs in {outdir}")
    return 0


def _cmd_metrics(args) -> int:
    snapshot = gio.import_graphml(args.infile)
    outdir = Path(args.out) if args.out else Path(args.infile).parent
    outdir.mkdir(parents=True, exist_ok=True)
    report = compute_metrics(snapshot)
    row = {
        "parameter": "", "value": "", "seed": "",
        **report.scalars(),
        "new_connection_nodes": "",
        "pred_mean_degree": "", "pred_second_hop_p": "",
        "pred_betweenness": "", "pred_avg_path": "",
    }
    gio.write_metrics_csv([row], outdir / "metrics.csv")
    _log(args.verbose, 1, f"recomputed metrics for {args.infile} -> {outdir}/metrics.csv")
    return 0


def _cmd_export(args) -> int:
    old = gio.import_graphml(args.old) if args.old else None
    new = gio.import_graphml(args.infile)
    if old is None:
        old = new
    moved = {
        i for i in range(min(old.n, new.n))
        if not np.array_equal(old.positions[i], new.positions[i])
    }
    delta = diff_graphs(old, new, moved)
    from .geometry import Region
    dims = tuple(float(np.ceil(new.positions[:, k].max())) or 1.0
                 for k in range(new.positions.shape[1]))
    region = Region(dims)
    out = Path(args.out) if args.out else Path(args.infile).with_suffix(".svg")
    gio.export_snapshot_svg(old, new, delta, region, out)
    _log(args.verbose, 1, f"rendered {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gnmn",
        description="Geometric networks with mobile nodes: simulate, sweep, measure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="initial placement + graph exports")
    _add_common(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("simulate", help="full run: trace, metrics, snapshots")
    _add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="parameter sweep -> metrics.csv + sweep.json")
    _add_common(p)
    p.add_argument("--param", choices=("r", "velocity", "t_rest", "n_moves", "p_stat", "n"),
                   help="parameter to sweep")
    p.add_argument("--values", help="comma-separated sweep values")
    p.add_argument("--seeds", type=int, help="number of seeds per cell (default 5)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="parallel sweep cells; 1 gives the bitwise reference mode")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("metrics", help="recompute metrics from a GraphML snapshot")
    p.add_argument("--in", dest="infile", required=True, help="GraphML input")
    p.add_argument("--out", help="output directory (default: alongside input)")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("export", help="re-render an SVG from stored snapshots")
    p.add_argument("--in", dest="infile", required=True, help="GraphML of the new snapshot")
    p.add_argument("--old", help="GraphML of the previous snapshot (for arrows)")
    p.add_argument("--out", help="output SVG path")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; the contract wants 1.
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (UsageError, gio.ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
