"""End-to-end simulation runs and seeded parameter sweeps.

A run is: uniform placement -> initial graph -> t_move movement phases
(select movers, move, rebuild graph, diff) -> metrics. Sweeps vary one
parameter over a value grid, repeat each cell over a seed list, and
aggregate. Every cell derives its own RNG seed from the base seed, the
swept value, and the seed-list entry, so cells are independent of sweep
order and of each other.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .analytics import Prediction, predict
from .geometry import Region, sample_positions
from .graph import GraphSnapshot, StepDelta, build_graph, diff_graphs
from .metrics import MetricsReport, compute_metrics
from .mobility import MobilityParams, PhaseDiagnostics, init_mobility_state, movement_step

SWEEPABLE_PARAMETERS = ("r", "velocity", "t_rest", "n_moves", "p_stat", "n")

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SimulationConfig:
    """Single source of experiment identity; defaults follow the reference
    parameter table (N=2000 nodes in a 12x12 region)."""

    n: int = 2000
    dimensions: tuple[float, ...] = (12.0, 12.0)
    r: float = 0.65
    velocity: float = 0.5
    t_rest: int = 10
    t_move: int = 20
    p_stat: float = 0.8
    n_moves: int = 100
    seed: int = 0
    metrics_each_phase: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.r <= 0:
            raise ValueError(f"r must be positive, got {self.r}")
        if self.n_moves > self.n:
            raise ValueError(f"n_moves ({self.n_moves}) exceeds n ({self.n})")
        # Region/MobilityParams validation covers the rest.
        self.region()
        self.mobility_params()

    def region(self) -> Region:
        return Region(self.dimensions)

    def mobility_params(self) -> MobilityParams:
        return MobilityParams(
            velocity=self.velocity,
            t_rest=self.t_rest,
            t_move=self.t_move,
            p_stat=self.p_stat,
            n_moves=self.n_moves,
        )

    def prediction(self) -> Prediction:
        return predict(self.n, self.r, self.region().area())


@dataclass
class SimulationTrace:
    """Everything one run produced."""

    config: SimulationConfig
    final_snapshot: GraphSnapshot
    deltas: list[StepDelta]
    metrics: MetricsReport
    diagnostics: list[PhaseDiagnostics]
    second_hop_source_phase: Optional[int]
    snapshots: Optional[list[GraphSnapshot]] = None
    phase_metrics: Optional[list[MetricsReport]] = None


@dataclass(frozen=True)
class Stats:
    mean: float
    std: float
    min: float
    max: float
    count: int


@dataclass(frozen=True)
class SweepSpec:
    base: SimulationConfig
    parameter: str
    values: tuple
    seeds: tuple[int, ...]

    def __post_init__(self):
        if self.parameter not in SWEEPABLE_PARAMETERS:
            raise ValueError(
                f"unknown sweep parameter {self.parameter!r}; "
                f"choose one of {SWEEPABLE_PARAMETERS}"
            )
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if not self.seeds:
            raise ValueError("sweep needs at least one seed")
        # Integer-valued parameters get integer values so config replace()
        # produces valid configs.
        cast = int if self.parameter in ("t_rest", "n", "n_moves") else float
        object.__setattr__(self, "values", tuple(cast(v) for v in self.values))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))


@dataclass
class SweepCell:
    value: float
    seed_count: int
    stats: dict[str, Optional[Stats]]
    prediction: Prediction


@dataclass
class SweepReport:
    spec: SweepSpec
    rows: list[dict]  # one per (value, seed), in grid order
    cells: list[SweepCell]
    snapshots: dict[float, GraphSnapshot] = field(default_factory=dict)


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_cell_seed(base_seed: int, value: float, seed_entry: int) -> int:
    """64-bit seed for one sweep cell, mixed from the base seed, the swept
    value's bit pattern, and the seed-list entry.

    Depends on the value itself (not its index), so reordering or extending
    the value list never perturbs existing cells.
    """
    value_bits = int(np.float64(value).view(np.uint64))
    x = _splitmix64(base_seed & _MASK64)
    x = _splitmix64(x ^ value_bits)
    x = _splitmix64(x ^ (seed_entry & _MASK64))
    return x


def _recent_movers(moved_by_phase: list[set[int]], n_moves: int) -> tuple[set[int], Optional[int]]:
    """The most recently moved n_moves distinct nodes, newest phases first.

    Rest cooldowns can leave the final phases moverless or nearly so;
    pooling backward keeps the second-hop source set ~n_moves strong, the
    population per-phase totals are reported over. Returns the sources and
    the newest contributing phase (1-based), or None if nothing ever moved.
    """
    sources: set[int] = set()
    newest: Optional[int] = None
    for phase in range(len(moved_by_phase), 0, -1):
        movers = moved_by_phase[phase - 1]
        if not movers:
            continue
        if newest is None:
            newest = phase
        for i in sorted(movers):
            if len(sources) >= n_moves:
                return sources, newest
            sources.add(i)
        if len(sources) >= n_moves:
            return sources, newest
    return sources, newest


def run_simulation(config: SimulationConfig, keep_snapshots: bool = False) -> SimulationTrace:
    """One deterministic end-to-end run.

    The second-hop source set for the final metrics report is the set of
    most recently moved nodes, capped at n_moves (see _recent_movers).
    """
    region = config.region()
    params = config.mobility_params()
    rng = np.random.default_rng(config.seed)

    positions = sample_positions(config.n, region, rng)
    state = init_mobility_state(config.n, params, rng)
    g = build_graph(positions, config.r, region, phase=0)

    snapshots = [g] if keep_snapshots else None
    deltas: list[StepDelta] = []
    diagnostics: list[PhaseDiagnostics] = []
    phase_metrics: list[MetricsReport] = [] if config.metrics_each_phase else None
    moved_by_phase: list[set[int]] = []

    for phase in range(1, params.t_move + 1):
        new_positions, moved, diag = movement_step(state, positions, params, region, rng)
        new_g = build_graph(new_positions, config.r, region, phase=phase)
        deltas.append(diff_graphs(g, new_g, moved))
        diagnostics.append(diag)
        moved_by_phase.append(moved)
        if phase_metrics is not None:
            phase_metrics.append(compute_metrics(new_g, moved))
        positions, g = new_positions, new_g
        if snapshots is not None:
            snapshots.append(g)

    source_set, source_phase = _recent_movers(moved_by_phase, params.n_moves)
    metrics = compute_metrics(g, source_set)
    return SimulationTrace(
        config=config,
        final_snapshot=g,
        deltas=deltas,
        metrics=metrics,
        diagnostics=diagnostics,
        second_hop_source_phase=source_phase,
        snapshots=snapshots,
        phase_metrics=phase_metrics,
    )


def _stats(values: list[float]) -> Optional[Stats]:
    if not values:
        return None
    arr = np.asarray(values, dtype=float)
    std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    return Stats(mean=float(arr.mean()), std=std,
                 min=float(arr.min()), max=float(arr.max()), count=len(arr))


def aggregate(traces: list[SimulationTrace]) -> dict[str, Optional[Stats]]:
    """Per-scalar (mean, std, min, max) over runs that differ only in seed.

    Sample std uses the n-1 denominator; a single trace yields std 0.
    Scalars absent from some traces (e.g. avg_shortest_path on fragmented
    graphs) aggregate over the present values only.
    """
    if not traces:
        raise ValueError("aggregate needs at least one trace")
    reference = replace(traces[0].config, seed=0)
    for t in traces[1:]:
        if replace(t.config, seed=0) != reference:
            raise ValueError("traces have heterogeneous configs (beyond seed)")
    out: dict[str, Optional[Stats]] = {}
    names = traces[0].metrics.scalars().keys()
    for name in names:
        present = [t.metrics.scalars()[name] for t in traces]
        out[name] = _stats([v for v in present if v is not None])
    return out


def _run_cell(args) -> tuple[dict, Optional[GraphSnapshot]]:
    spec, value, seed_entry, keep_snapshot = args
    cell_seed = derive_cell_seed(spec.base.seed, float(value), seed_entry)
    config = replace(spec.base, seed=cell_seed, **{spec.parameter: value})
    try:
        trace = run_simulation(config)
    except Exception as exc:
        raise RuntimeError(
            f"sweep cell failed: {spec.parameter}={value}, seed entry {seed_entry}"
        ) from exc
    pred = config.prediction()
    row = {
        "parameter": spec.parameter,
        "value": value,
        "seed": seed_entry,
        **trace.metrics.scalars(),
        "new_connection_nodes": len(trace.deltas[-1].gained_nodes) if trace.deltas else 0,
        "pred_mean_degree": pred.expected_degree_centrality,
        "pred_second_hop_p": pred.p_second_nei,
        "pred_betweenness": pred.expected_betweenness,
        "pred_avg_path": pred.predicted_avg_path,
    }
    return row, (trace.final_snapshot if keep_snapshot else None)


def run_sweep(spec: SweepSpec, workers: int = 1, keep_snapshots: bool = False) -> SweepReport:
    """Run |values| x |seeds| simulations and aggregate per value.

    Cells are independent; with workers > 1 they run in parallel processes
    and are merged back in grid order, so results are identical to the
    sequential run. With keep_snapshots the final snapshot of each value's
    first seed is retained (for graph exports and figure input).
    """
    jobs = [
        (spec, value, seed_entry, keep_snapshots and si == 0)
        for value in spec.values
        for si, seed_entry in enumerate(spec.seeds)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, jobs))
    else:
        results = [_run_cell(job) for job in jobs]

    rows = [row for row, _ in results]
    snapshots: dict[float, GraphSnapshot] = {}
    for (_, value, _, keep), (_, snap) in zip(jobs, results):
        if keep and snap is not None:
            snapshots[float(value)] = snap

    scalar_names = [
        "mean_degree", "second_hop_total", "second_hop_ring_total",
        "degree_centrality_mean",
        "betweenness_mean", "betweenness_mean_normalized", "component_count",
        "giant_fraction", "avg_shortest_path", "new_connection_nodes",
    ]
    cells = []
    n_seeds = len(spec.seeds)
    for vi, value in enumerate(spec.values):
        cell_rows = rows[vi * n_seeds:(vi + 1) * n_seeds]
        stats = {
            name: _stats([r[name] for r in cell_rows if r[name] is not None])
            for name in scalar_names
        }
        config = replace(spec.base, **{spec.parameter: value})
        cells.append(SweepCell(
            value=float(value),
            seed_count=n_seeds,
            stats=stats,
            prediction=config.prediction(),
        ))
    return SweepReport(spec=spec, rows=rows, cells=cells, snapshots=snapshots)
