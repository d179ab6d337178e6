import json

import networkx as nx
import numpy as np
import pytest

from gnmn import io as gio
from gnmn.geometry import Region
from gnmn.graph import StepDelta, build_graph, diff_graphs
from gnmn.harness import SimulationConfig, SweepSpec, run_simulation, run_sweep
from gnmn.metrics import compute_metrics


@pytest.fixture
def region():
    return Region((12.0, 12.0))


@pytest.fixture
def triangle_snapshot(region):
    pos = np.array([[1.0, 1.0], [1.3, 1.0], [1.15, 1.2]])
    return build_graph(pos, 0.5, region)


def write_json(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


class TestLoadConfig:
    def test_minimal_file_gets_defaults(self, tmp_path):
        config = gio.load_config(write_json(tmp_path, {"n": 10, "r": 0.5}))
        assert isinstance(config, SimulationConfig)
        assert (config.n, config.r) == (10, 0.5)
        assert config.dimensions == (12.0, 12.0)
        assert config.t_move == 20
        assert config.p_stat == 0.8

    def test_constraint_violation_names_key(self, tmp_path):
        with pytest.raises(gio.ConfigValidationError) as err:
            gio.load_config(write_json(tmp_path, {"p_stat": 1.5}))
        assert "p_stat" in str(err.value)

    def test_unknown_key_rejected(self, tmp_path):
        with pytest.raises(gio.ConfigValidationError) as err:
            gio.load_config(write_json(tmp_path, {"radius": 0.5}))
        assert "radius" in str(err.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(gio.ConfigFileError):
            gio.load_config(tmp_path / "absent.json")

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(gio.ConfigSyntaxError):
            gio.load_config(path)

    def test_round_trip(self, tmp_path):
        full = {
            "n": 2000, "dimensions": [12, 12], "r": 0.65, "velocity": 0.5,
            "t_rest": 10, "t_move": 20, "p_stat": 0.8, "n_moves": 100, "seed": 4,
        }
        config = gio.load_config(write_json(tmp_path, full))
        echoed = json.loads(gio.serialize_config(config))
        echoed.pop("config_hash")
        reloaded = gio.load_config(write_json(tmp_path, echoed, "echo.json"))
        assert reloaded == config

    def test_sweep_block(self, tmp_path):
        data = {"n": 50, "sweep": {"parameter": "r", "values": [0.1, 0.2], "seeds": 3}}
        spec = gio.load_config(write_json(tmp_path, data))
        assert isinstance(spec, SweepSpec)
        assert spec.values == (0.1, 0.2)
        assert spec.seeds == (0, 1, 2)
        assert spec.base.n == 50

    def test_sweep_seed_list(self, tmp_path):
        data = {"sweep": {"parameter": "velocity", "values": [0.3], "seeds": [7, 9]}}
        spec = gio.load_config(write_json(tmp_path, data))
        assert spec.seeds == (7, 9)

    def test_sweep_unknown_key(self, tmp_path):
        data = {"sweep": {"parameter": "r", "values": [0.1], "grid": True}}
        with pytest.raises(gio.ConfigValidationError) as err:
            gio.load_config(write_json(tmp_path, data))
        assert "grid" in str(err.value)


class TestMetricsCsv:
    def test_empty_rows_header_only(self, tmp_path):
        path = tmp_path / "m.csv"
        gio.write_metrics_csv([], path)
        assert path.read_text() == ",".join(gio.CSV_COLUMNS) + "\n"

    def test_line_count(self, tmp_path):
        rows = [
            {"parameter": "r", "value": v, "seed": s, "mean_degree": 1.0}
            for v in (0.1, 0.2) for s in range(3)
        ]
        path = tmp_path / "m.csv"
        gio.write_metrics_csv(rows, path)
        assert len(path.read_text().splitlines()) == 7

    def test_missing_value_becomes_empty_field(self, tmp_path):
        path = tmp_path / "m.csv"
        gio.write_metrics_csv([{"parameter": "r", "avg_shortest_path": None}], path)
        row = path.read_text().splitlines()[1].split(",")
        assert row[gio.CSV_COLUMNS.index("avg_shortest_path")] == ""

    def test_byte_stable(self, tmp_path):
        spec = SweepSpec(
            base=SimulationConfig(n=60, dimensions=(5.0, 5.0), r=0.7, t_move=3,
                                  n_moves=10, p_stat=0.5, t_rest=2),
            parameter="r", values=(0.5, 0.9), seeds=(0, 1),
        )
        first = run_sweep(spec)
        second = run_sweep(spec)
        gio.write_metrics_csv(first.rows, tmp_path / "a.csv")
        gio.write_metrics_csv(second.rows, tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


class TestGraphml:
    def test_triangle_round_trip_via_networkx(self, tmp_path, triangle_snapshot):
        path = tmp_path / "g.graphml"
        gio.export_graphml(triangle_snapshot, path)
        g = nx.read_graphml(path)
        assert g.number_of_nodes() == 3
        assert g.number_of_edges() == 3
        assert {frozenset(e) for e in g.edges} == \
            {frozenset((f"n{i}", f"n{j}")) for i, j in triangle_snapshot.edges()}
        node = g.nodes["n0"]
        assert {"x", "y", "degree", "component_id"} <= set(node)

    def test_own_reader_round_trip(self, tmp_path, region):
        pos = np.random.default_rng(3).random((40, 2)) * 12
        snapshot = build_graph(pos, 1.5, region, phase=4)
        path = tmp_path / "g.graphml"
        gio.export_graphml(snapshot, path)
        back = gio.import_graphml(path)
        assert back.n == snapshot.n
        assert back.r == snapshot.r
        assert back.phase == 4
        assert np.allclose(back.positions, snapshot.positions)
        assert back.edges() == snapshot.edges()
        # reconstructed snapshot yields identical metrics
        assert compute_metrics(back) == compute_metrics(snapshot)

    def test_edgeless_graph(self, tmp_path, region):
        snapshot = build_graph(np.array([[1.0, 1.0], [5.0, 5.0]]), 0.5, region)
        path = tmp_path / "g.graphml"
        gio.export_graphml(snapshot, path)
        g = nx.read_graphml(path)
        assert g.number_of_nodes() == 2
        assert g.number_of_edges() == 0


class TestSnapshotSvg:
    def test_empty_delta_no_markers(self, tmp_path, region, triangle_snapshot):
        path = tmp_path / "s.svg"
        gio.export_snapshot_svg(triangle_snapshot, triangle_snapshot, StepDelta(),
                                region, path)
        text = path.read_text()
        assert 'class="arrow"' not in text
        assert 'class="moved' not in text
        assert text.count("<circle") == 3

    def test_one_moved_node_one_arrow(self, tmp_path, region):
        old_pos = np.array([[1.0, 1.0], [1.3, 1.0], [8.0, 8.0]])
        new_pos = old_pos.copy()
        new_pos[2] = [1.15, 1.2]
        old = build_graph(old_pos, 0.5, region)
        new = build_graph(new_pos, 0.5, region)
        delta = diff_graphs(old, new, {2})
        path = tmp_path / "s.svg"
        gio.export_snapshot_svg(old, new, delta, region, path)
        text = path.read_text()
        assert text.count('class="arrow"') == 1
        assert text.count('#d62728') >= 2  # mover node + arrow stroke

    def test_disconnected_regime_all_red_or_blue(self, tmp_path, region):
        # tiny radius: everything is isolated, movers show red, rest blue
        config = SimulationConfig(n=80, r=0.05, t_move=1, n_moves=10,
                                  p_stat=0.0, t_rest=0, seed=2)
        trace = run_simulation(config, keep_snapshots=True)
        path = tmp_path / "s.svg"
        gio.export_snapshot_svg(trace.snapshots[0], trace.snapshots[1],
                                trace.deltas[0], region, path)
        for line in path.read_text().splitlines():
            if line.startswith("<circle"):
                assert '#d62728' in line or '#1f77b4' in line

    def test_size_mismatch(self, tmp_path, region, triangle_snapshot):
        other = build_graph(np.zeros((2, 2)), 0.5, region)
        with pytest.raises(ValueError):
            gio.export_snapshot_svg(triangle_snapshot, other, StepDelta(),
                                    region, tmp_path / "s.svg")


class TestBundles:
    def test_run_bundle_layout(self, tmp_path):
        config = SimulationConfig(n=50, dimensions=(5.0, 5.0), r=0.6, t_move=2,
                                  n_moves=5, p_stat=0.5, t_rest=1, seed=6)
        trace = run_simulation(config, keep_snapshots=True)
        outdir = gio.write_run_bundle(trace, tmp_path / "run")
        assert (outdir / "config.json").exists()
        assert (outdir / "metrics.csv").exists()
        assert (outdir / "snapshots" / "phase_00.graphml").exists()
        assert (outdir / "snapshots" / "phase_02.graphml").exists()
        assert (outdir / "snapshots" / "phase_01.svg").exists()
        echoed = json.loads((outdir / "config.json").read_text())
        assert echoed["config_hash"] == gio.config_hash(config)

    def test_sweep_bundle_layout(self, tmp_path):
        spec = SweepSpec(
            base=SimulationConfig(n=50, dimensions=(5.0, 5.0), r=0.6, t_move=2,
                                  n_moves=5, p_stat=0.5, t_rest=1),
            parameter="r", values=(0.4, 0.8), seeds=(0, 1),
        )
        report = run_sweep(spec, keep_snapshots=True)
        outdir = gio.write_sweep_bundle(report, tmp_path / "sweep")
        assert (outdir / "metrics.csv").exists()
        doc = json.loads((outdir / "sweep.json").read_text())
        assert doc["parameter"] == "r"
        assert len(doc["cells"]) == 2
        assert len(doc["rows"]) == 4
        assert doc["config_hash"] == gio.config_hash(spec.base)
        snaps = list((outdir / "snapshots").glob("*.graphml"))
        assert len(snaps) == 2
