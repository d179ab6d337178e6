"""Shared plumbing for the figure scripts.

The scripts are deliberately standalone: they read only the documented
output contracts of a run/sweep directory (metrics.csv, sweep.json,
snapshots/*.graphml) and never recompute metrics. Each one emits both a
PNG and an SVG next to --out.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

FIGURE_IDS = ("snapshots", "second_hop", "degree_dist", "centrality",
              "components")

# The metrics.csv contract. A missing column is a hard error naming it.
EXPECTED_COLUMNS = [
    "parameter", "value", "seed",
    "mean_degree", "second_hop_total", "new_connection_nodes",
    "degree_centrality_mean", "betweenness_mean", "component_count",
    "giant_fraction", "avg_shortest_path",
    "pred_mean_degree", "pred_second_hop_p", "pred_betweenness",
    "pred_avg_path",
]

_SNAPSHOT_RE = re.compile(r"^(?P<param>.+)_(?P<value>[-0-9.eE+]+)_phase_\d+\.graphml$")


class FigureError(Exception):
    """Anything that should abort a script with a message, not a traceback."""


@dataclass
class FigureSpec:
    figure: str
    indir: Path
    outbase: Path  # extension-less; .png and .svg are appended
    parameter: Optional[str] = None


def make_spec(figure: str, argv=None) -> FigureSpec:
    parser = argparse.ArgumentParser(
        description=f"Render the {figure} figure from a run/sweep directory.")
    parser.add_argument("--in", dest="indir", required=True,
                        help="directory holding metrics.csv / sweep.json / snapshots/")
    parser.add_argument("--out", help=f"output basename (default <in>/{figure})")
    parser.add_argument("--param", help="swept parameter (default: from the data)")
    args = parser.parse_args(argv)
    indir = Path(args.indir)
    outbase = Path(args.out) if args.out else indir / figure
    if outbase.suffix in (".png", ".svg"):
        outbase = outbase.with_suffix("")
    return FigureSpec(figure=figure, indir=indir, outbase=outbase,
                      parameter=args.param)


def load_rows(indir: Path) -> list[dict]:
    path = indir / "metrics.csv"
    if not path.exists():
        raise FigureError(f"no data: {path} does not exist")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in EXPECTED_COLUMNS:
            if column not in header:
                raise FigureError(f"metrics.csv is missing column {column!r}")
        rows = list(reader)
    if not rows:
        raise FigureError(f"no data: {path} has a header but no rows")
    return rows


def load_sweep(indir: Path) -> dict:
    path = indir / "sweep.json"
    if not path.exists():
        raise FigureError(f"no data: {path} does not exist (not a sweep directory?)")
    doc = json.loads(path.read_text())
    if not doc.get("cells"):
        raise FigureError(f"no data: {path} has no sweep cells")
    return doc


def cell_series(doc: dict, metric: str):
    """(values, means, stds) for one scalar metric across the sweep cells."""
    values, means, stds = [], [], []
    for cell in doc["cells"]:
        stat = cell["stats"].get(metric)
        if stat is None:
            continue
        values.append(cell["value"])
        means.append(stat["mean"])
        stds.append(stat["std"])
    if not values:
        raise FigureError(f"no data: metric {metric!r} absent from every cell")
    return values, means, stds


def fixed_summary(doc: dict) -> str:
    """Short 'everything that was held constant' string for titles."""
    base = doc["base_config"]
    skip = {doc["parameter"], "dimensions", "metrics_each_phase", "seed"}
    parts = [f"N={base['n']}"]
    parts += [f"{k}={base[k]}" for k in ("r", "velocity", "t_rest", "t_move",
                                         "p_stat", "n_moves") if k not in skip]
    return ", ".join(parts)


def list_snapshots(indir: Path, parameter: Optional[str] = None):
    """Sweep snapshots as (value, path), ordered by value."""
    snapdir = indir / "snapshots"
    if not snapdir.is_dir():
        raise FigureError(f"no data: {snapdir} does not exist")
    found = []
    for path in snapdir.glob("*.graphml"):
        m = _SNAPSHOT_RE.match(path.name)
        if not m:
            continue
        if parameter and m.group("param") != parameter:
            continue
        found.append((float(m.group("value")), path))
    if not found:
        raise FigureError(f"no data: no matching snapshots under {snapdir}")
    return sorted(found)


def read_snapshot(path: Path):
    """Positions, degrees, and the connection radius stored in a GraphML file."""
    g = nx.read_graphml(path)
    nodes = sorted(g.nodes, key=lambda nid: int(nid.lstrip("n")))
    xy = [(float(g.nodes[nid]["x"]), float(g.nodes[nid]["y"])) for nid in nodes]
    degrees = [int(g.nodes[nid]["degree"]) for nid in nodes]
    r = float(g.graph.get("r", "nan"))
    return xy, degrees, r


def save(fig, outbase: Path) -> list[Path]:
    outbase.parent.mkdir(parents=True, exist_ok=True)
    written = []
    for ext in ("png", "svg"):
        target = outbase.with_suffix(f".{ext}")
        fig.savefig(target, bbox_inches="tight", dpi=150)
        written.append(target)
    plt.close(fig)
    return written


def run(figure: str, build, argv=None) -> int:
    """Standard script entry: parse flags, build, save, report."""
    spec = make_spec(figure, argv)
    try:
        fig, _ = build(spec)
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for target in save(fig, spec.outbase):
        print(target)
    return 0
