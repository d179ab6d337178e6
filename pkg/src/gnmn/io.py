"""Configuration loading and all file output: CSV, JSON, GraphML, SVG.

Every output embeds the config hash it came from; re-running the same
config produces byte-identical CSV/JSON. Floats are serialized with their
shortest round-trip decimal representation.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .geometry import Region
from .graph import GraphSnapshot, StepDelta
from .harness import SimulationConfig, SweepReport, SweepSpec
from .metrics import connected_components

CSV_COLUMNS = [
    "parameter", "value", "seed",
    "mean_degree", "second_hop_total", "new_connection_nodes",
    "degree_centrality_mean", "betweenness_mean", "component_count",
    "giant_fraction", "avg_shortest_path",
    "pred_mean_degree", "pred_second_hop_p", "pred_betweenness", "pred_avg_path",
]

_CONFIG_KEYS = {
    "n", "dimensions", "r", "velocity", "t_rest", "t_move",
    "p_stat", "n_moves", "seed", "metrics_each_phase",
}
_SWEEP_KEYS = {"parameter", "values", "seeds"}


class ConfigError(Exception):
    """Base class for configuration problems."""


class ConfigFileError(ConfigError):
    """Config file missing or unreadable."""


class ConfigSyntaxError(ConfigError):
    """Config file is not valid JSON."""


class ConfigValidationError(ConfigError):
    """Config violates a schema or domain constraint; names the key path."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


def config_to_dict(config: SimulationConfig) -> dict:
    d = dataclasses.asdict(config)
    d["dimensions"] = list(d["dimensions"])
    return d


def config_hash(config: SimulationConfig) -> str:
    canonical = json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _build_config(data: dict, source: str = "<config>") -> SimulationConfig:
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigValidationError(sorted(unknown)[0], "unknown key")
    kwargs = dict(data)
    # The default mover count only makes sense for the reference scale;
    # clamp it for small explicit n unless n_moves was given.
    if "n" in kwargs and "n_moves" not in kwargs:
        default_moves = SimulationConfig.__dataclass_fields__["n_moves"].default
        kwargs["n_moves"] = min(default_moves, int(kwargs["n"]))
    if "dimensions" in kwargs:
        dims = kwargs["dimensions"]
        if not isinstance(dims, (list, tuple)) or not dims:
            raise ConfigValidationError("dimensions", "must be a non-empty list of lengths")
        kwargs["dimensions"] = tuple(float(d) for d in dims)
    try:
        return SimulationConfig(**kwargs)
    except (ValueError, TypeError) as exc:
        key = _blamed_key(str(exc), data)
        raise ConfigValidationError(key, str(exc)) from exc


def _blamed_key(message: str, data: dict) -> str:
    for key in _CONFIG_KEYS:
        if key in message:
            return key
    return "/".join(sorted(data)) or "<root>"


def load_config(path: Union[str, Path]) -> Union[SimulationConfig, SweepSpec]:
    """Parse a JSON config file; returns a SweepSpec when a "sweep" block
    is present, otherwise a SimulationConfig.

    Absent optional keys take the reference-table defaults; unknown keys
    are rejected with the offending key path.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigFileError(f"config file not found: {path}")
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigFileError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSyntaxError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigValidationError("<root>", "config must be a JSON object")

    sweep = data.pop("sweep", None)
    config = _build_config(data, str(path))
    if sweep is None:
        return config

    unknown = set(sweep) - _SWEEP_KEYS
    if unknown:
        raise ConfigValidationError(f"sweep.{sorted(unknown)[0]}", "unknown key")
    for required in ("parameter", "values"):
        if required not in sweep:
            raise ConfigValidationError(f"sweep.{required}", "required key missing")
    seeds = sweep.get("seeds", 5)
    if isinstance(seeds, int):
        seeds = list(range(seeds))
    try:
        return SweepSpec(
            base=config,
            parameter=sweep["parameter"],
            values=tuple(sweep["values"]),
            seeds=tuple(seeds),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigValidationError("sweep", str(exc)) from exc


def serialize_config(config: SimulationConfig) -> str:
    """JSON echo of a config, including its own hash."""
    d = config_to_dict(config)
    d["config_hash"] = config_hash(config)
    return json.dumps(d, sort_keys=True, indent=2) + "\n"


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_metrics_csv(rows: list[dict], path: Union[str, Path]) -> None:
    """Flat per-(cell, seed) metric table; header is fixed, missing values
    (absent average path) become empty fields."""
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt(row.get(col)) for col in CSV_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n")


def write_sweep_json(report: SweepReport, path: Union[str, Path]) -> None:
    """Aggregated sweep report: per-cell stats, predictions, raw rows."""
    spec = report.spec
    doc = {
        "config_hash": config_hash(spec.base),
        "base_config": config_to_dict(spec.base),
        "parameter": spec.parameter,
        "values": list(spec.values),
        "seeds": list(spec.seeds),
        "cells": [
            {
                "value": cell.value,
                "seed_count": cell.seed_count,
                "stats": {
                    name: (dataclasses.asdict(s) if s is not None else None)
                    for name, s in cell.stats.items()
                },
                "prediction": dataclasses.asdict(cell.prediction),
            }
            for cell in report.cells
        ],
        "rows": report.rows,
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


# -- GraphML ----------------------------------------------------------------

_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def export_graphml(snapshot: GraphSnapshot, path: Union[str, Path],
                   config: Optional[SimulationConfig] = None) -> None:
    """Standard GraphML with node attributes x, y, degree, component_id.

    Undirected; each edge written once (i < j). Graph-level attributes keep
    the radius, phase, and (when given) the config hash for provenance.
    """
    ET.register_namespace("", _GRAPHML_NS)
    root = ET.Element(f"{{{_GRAPHML_NS}}}graphml")
    keys = [
        ("x", "node", "double"), ("y", "node", "double"),
        ("degree", "node", "int"), ("component_id", "node", "int"),
        ("r", "graph", "double"), ("phase", "graph", "int"),
        ("config_hash", "graph", "string"),
    ]
    for name, domain, typ in keys:
        ET.SubElement(root, f"{{{_GRAPHML_NS}}}key", attrib={
            "id": name, "for": domain, "attr.name": name, "attr.type": typ,
        })
    graph = ET.SubElement(root, f"{{{_GRAPHML_NS}}}graph",
                          id="G", edgedefault="undirected")

    def data(parent, key, value):
        el = ET.SubElement(parent, f"{{{_GRAPHML_NS}}}data", key=key)
        el.text = _fmt(value)

    data(graph, "r", float(snapshot.r))
    data(graph, "phase", snapshot.phase)
    if config is not None:
        data(graph, "config_hash", config_hash(config))

    labels, _ = connected_components(snapshot)
    degrees = snapshot.degrees()
    for i in range(snapshot.n):
        node = ET.SubElement(graph, f"{{{_GRAPHML_NS}}}node", id=f"n{i}")
        data(node, "x", float(snapshot.positions[i, 0]))
        data(node, "y", float(snapshot.positions[i, 1]))
        data(node, "degree", int(degrees[i]))
        data(node, "component_id", int(labels[i]))
    for i, j in sorted(snapshot.edges()):
        ET.SubElement(graph, f"{{{_GRAPHML_NS}}}edge", source=f"n{i}", target=f"n{j}")

    tree = ET.ElementTree(root)
    ET.indent(tree)
    tree.write(path, xml_declaration=True, encoding="unicode")


def import_graphml(path: Union[str, Path]) -> GraphSnapshot:
    """Rebuild a GraphSnapshot from a file written by export_graphml."""
    root = ET.parse(path).getroot()
    graph = root.find(f"{{{_GRAPHML_NS}}}graph")
    if graph is None:
        raise ValueError(f"{path}: no <graph> element")
    r, phase = 0.0, 0
    for el in graph.findall(f"{{{_GRAPHML_NS}}}data"):
        if el.get("key") == "r":
            r = float(el.text)
        elif el.get("key") == "phase":
            phase = int(el.text)

    ids: dict[str, int] = {}
    coords: list[tuple[float, float]] = []
    for node in graph.findall(f"{{{_GRAPHML_NS}}}node"):
        ids[node.get("id")] = len(ids)
        x = y = 0.0
        for el in node.findall(f"{{{_GRAPHML_NS}}}data"):
            if el.get("key") == "x":
                x = float(el.text)
            elif el.get("key") == "y":
                y = float(el.text)
        coords.append((x, y))

    n = len(ids)
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for edge in graph.findall(f"{{{_GRAPHML_NS}}}edge"):
        i, j = ids[edge.get("source")], ids[edge.get("target")]
        neighbors[i].add(j)
        neighbors[j].add(i)
    adjacency = [np.array(sorted(s), dtype=np.int64) for s in neighbors]
    return GraphSnapshot(
        n=n, r=r,
        positions=np.asarray(coords, dtype=float),
        adjacency=adjacency, phase=phase,
    )


# -- SVG snapshots -----------------------------------------------------------

_SVG_SCALE = 50.0  # pixels per length unit
_NODE_COLORS = {"moved": "#d62728", "new_connection": "#2ca02c", "isolated": "#1f77b4"}
_DEFAULT_NODE_COLOR = "#bbbbbb"


def _node_classes(i: int, delta: StepDelta) -> list[str]:
    classes = []
    if i in delta.moved:
        classes.append("moved")
    if i in delta.gained_nodes:
        classes.append("new_connection")
    if i in delta.isolated_nodes:
        classes.append("isolated")
    return classes


def export_snapshot_svg(
    old: GraphSnapshot,
    new: GraphSnapshot,
    delta: StepDelta,
    region: Region,
    path: Union[str, Path],
) -> None:
    """Render one movement phase: grey edges, classified nodes, move arrows.

    Node color precedence red (moved) > green (new connection) > blue
    (isolated) > grey; the full class list is kept in a `class` attribute.
    Element order is deterministic (edges sorted, nodes and arrows by id).
    """
    if old.n != new.n:
        raise ValueError(f"snapshot size mismatch: {old.n} vs {new.n}")
    w = region.dims[0] * _SVG_SCALE
    h = region.dims[1] * _SVG_SCALE

    def pt(pos) -> tuple[float, float]:
        # y is flipped so the origin sits at the bottom-left.
        return pos[0] * _SVG_SCALE, h - pos[1] * _SVG_SCALE

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        '<defs><marker id="arrowhead" markerWidth="6" markerHeight="6" refX="5" refY="3" '
        'orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="#d62728"/></marker></defs>',
        f'<rect width="{_fmt(w)}" height="{_fmt(h)}" fill="white"/>',
    ]
    for i, j in sorted(new.edges()):
        x1, y1 = pt(new.positions[i])
        x2, y2 = pt(new.positions[j])
        parts.append(
            f'<line class="edge" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#dddddd" stroke-width="0.5"/>'
        )
    for i in sorted(delta.moved):
        x1, y1 = pt(old.positions[i])
        x2, y2 = pt(new.positions[i])
        parts.append(
            f'<line class="arrow" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#d62728" stroke-width="0.8" '
            'marker-end="url(#arrowhead)"/>'
        )
    for i in range(new.n):
        classes = _node_classes(i, delta)
        color = _DEFAULT_NODE_COLOR
        for cls in ("moved", "new_connection", "isolated"):
            if cls in classes:
                color = _NODE_COLORS[cls]
                break
        x, y = pt(new.positions[i])
        cls_attr = f' class="{" ".join(classes)}"' if classes else ""
        parts.append(
            f'<circle{cls_attr} cx="{_fmt(x)}" cy="{_fmt(y)}" r="2" fill="{color}"/>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


# -- Output bundles ----------------------------------------------------------

def write_run_bundle(trace, outdir: Union[str, Path]) -> Path:
    """Write one run's outputs: config.json, metrics.csv, snapshots/."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    config = trace.config
    (outdir / "config.json").write_text(serialize_config(config))

    pred = config.prediction()
    row = {
        "parameter": "",
        "value": "",
        "seed": config.seed,
        **trace.metrics.scalars(),
        "new_connection_nodes": len(trace.deltas[-1].gained_nodes) if trace.deltas else 0,
        "pred_mean_degree": pred.expected_degree_centrality,
        "pred_second_hop_p": pred.p_second_nei,
        "pred_betweenness": pred.expected_betweenness,
        "pred_avg_path": pred.predicted_avg_path,
    }
    write_metrics_csv([row], outdir / "metrics.csv")

    if trace.snapshots:
        snapdir = outdir / "snapshots"
        snapdir.mkdir(exist_ok=True)
        region = config.region()
        for snap in trace.snapshots:
            export_graphml(snap, snapdir / f"phase_{snap.phase:02d}.graphml", config)
        for k, delta in enumerate(trace.deltas, start=1):
            export_snapshot_svg(
                trace.snapshots[k - 1], trace.snapshots[k], delta, region,
                snapdir / f"phase_{k:02d}.svg",
            )
    return outdir


def write_sweep_bundle(report: SweepReport, outdir: Union[str, Path]) -> Path:
    """Write one sweep's outputs: config.json, metrics.csv, sweep.json, snapshots/."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "config.json").write_text(serialize_config(report.spec.base))
    write_metrics_csv(report.rows, outdir / "metrics.csv")
    write_sweep_json(report, outdir / "sweep.json")
    if report.snapshots:
        snapdir = outdir / "snapshots"
        snapdir.mkdir(exist_ok=True)
        for value, snap in sorted(report.snapshots.items()):
            name = f"{report.spec.parameter}_{value}_phase_{snap.phase:02d}.graphml"
            export_graphml(snap, snapdir / name, report.spec.base)
    return outdir
