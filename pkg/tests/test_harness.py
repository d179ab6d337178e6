import dataclasses

import numpy as np
import pytest

from gnmn.harness import (
    SimulationConfig,
    SweepSpec,
    _stats,
    aggregate,
    derive_cell_seed,
    run_simulation,
    run_sweep,
)


def small_config(**overrides):
    base = dict(n=120, dimensions=(6.0, 6.0), r=0.8, velocity=0.5, t_rest=3,
                t_move=5, p_stat=0.5, n_moves=15, seed=0)
    base.update(overrides)
    return SimulationConfig(**base)


class TestConfig:
    def test_defaults_match_reference_table(self):
        c = SimulationConfig()
        assert (c.n, c.dimensions, c.t_move, c.p_stat, c.n_moves) == \
            (2000, (12.0, 12.0), 20, 0.8, 100)

    @pytest.mark.parametrize(
        "bad",
        [
            {"n": 0},
            {"r": 0.0},
            {"t_move": 0},
            {"p_stat": 2.0},
            {"n": 10, "n_moves": 11},
        ],
    )
    def test_invalid_configs_rejected(self, bad):
        with pytest.raises(ValueError):
            SimulationConfig(**bad)


class TestRunSimulation:
    def test_single_phase(self):
        trace = run_simulation(small_config(t_move=1))
        assert len(trace.deltas) == 1
        assert len(trace.diagnostics) == 1
        assert trace.final_snapshot.phase == 1

    def test_delta_count_equals_t_move(self):
        trace = run_simulation(small_config())
        assert len(trace.deltas) == 5

    def test_deterministic(self):
        a = run_simulation(small_config(seed=77))
        b = run_simulation(small_config(seed=77))
        assert np.array_equal(a.final_snapshot.positions, b.final_snapshot.positions)
        assert a.metrics == b.metrics
        assert [d.moved for d in a.deltas] == [d.moved for d in b.deltas]

    def test_snapshot_retention(self):
        trace = run_simulation(small_config(), keep_snapshots=True)
        assert len(trace.snapshots) == 6  # initial + 5 phases
        assert trace.snapshots[0].phase == 0

    def test_per_phase_metrics_optional(self):
        trace = run_simulation(small_config(metrics_each_phase=True))
        assert len(trace.phase_metrics) == 5

    def test_second_hop_sources_capped_at_n_moves(self):
        trace = run_simulation(small_config())
        assert len(trace.metrics.second_hop_per_source) <= 15


class TestStats:
    def test_single_value(self):
        s = _stats([5.0])
        assert (s.mean, s.std, s.min, s.max, s.count) == (5.0, 0.0, 5.0, 5.0, 1)

    def test_two_values(self):
        s = _stats([2.0, 4.0])
        assert s.mean == 3.0
        assert s.std == pytest.approx(np.sqrt(2))

    def test_empty(self):
        assert _stats([]) is None


class TestAggregate:
    def test_requires_traces(self):
        with pytest.raises(ValueError):
            aggregate([])

    def test_heterogeneous_configs_rejected(self):
        a = run_simulation(small_config(seed=1))
        b = run_simulation(small_config(seed=2, r=0.9))
        with pytest.raises(ValueError):
            aggregate([a, b])

    def test_mean_and_spread_over_seeds(self):
        traces = [run_simulation(small_config(seed=s)) for s in (1, 2)]
        stats = aggregate(traces)
        degs = [t.metrics.mean_degree for t in traces]
        assert stats["mean_degree"].mean == pytest.approx(np.mean(degs))
        assert stats["mean_degree"].std == pytest.approx(np.std(degs, ddof=1))

    def test_single_trace_std_zero(self):
        stats = aggregate([run_simulation(small_config(seed=3))])
        assert stats["mean_degree"].std == 0.0


class TestCellSeeds:
    def test_independent_of_value_order(self):
        assert derive_cell_seed(0, 0.55, 2) == derive_cell_seed(0, 0.55, 2)
        # swapping which position a value occupies cannot matter: the seed
        # only depends on (base, value, seed entry)
        seeds_a = [derive_cell_seed(9, v, 0) for v in (0.1, 0.2)]
        seeds_b = [derive_cell_seed(9, v, 0) for v in (0.2, 0.1)]
        assert seeds_a == list(reversed(seeds_b))

    def test_distinct_across_grid(self):
        grid = {
            derive_cell_seed(0, v, s)
            for v in (0.05, 0.15, 0.25, 0.55, 0.65, 0.85)
            for s in range(5)
        }
        assert len(grid) == 30


class TestRunSweep:
    def test_spec_validation(self):
        with pytest.raises(ValueError):
            SweepSpec(base=small_config(), parameter="bogus", values=(1,), seeds=(0,))
        with pytest.raises(ValueError):
            SweepSpec(base=small_config(), parameter="r", values=(), seeds=(0,))
        with pytest.raises(ValueError):
            SweepSpec(base=small_config(), parameter="r", values=(0.5,), seeds=())

    def test_single_cell_matches_direct_run(self):
        spec = SweepSpec(base=small_config(), parameter="r", values=(0.8,), seeds=(0,))
        report = run_sweep(spec)
        assert len(report.rows) == 1
        cell = report.cells[0]
        direct = run_simulation(
            dataclasses.replace(small_config(), seed=derive_cell_seed(0, 0.8, 0)))
        assert cell.stats["mean_degree"].mean == direct.metrics.mean_degree
        assert cell.stats["mean_degree"].std == 0.0

    def test_value_order_insensitive(self):
        fwd = run_sweep(SweepSpec(base=small_config(), parameter="r",
                                  values=(0.5, 0.9), seeds=(0, 1)))
        rev = run_sweep(SweepSpec(base=small_config(), parameter="r",
                                  values=(0.9, 0.5), seeds=(0, 1)))
        by_value_fwd = {c.value: c.stats["mean_degree"].mean for c in fwd.cells}
        by_value_rev = {c.value: c.stats["mean_degree"].mean for c in rev.cells}
        assert by_value_fwd == by_value_rev

    def test_parallel_equals_sequential(self):
        spec = SweepSpec(base=small_config(), parameter="velocity",
                         values=(0.3, 1.1), seeds=(0, 1))
        seq = run_sweep(spec, workers=1)
        par = run_sweep(spec, workers=2)
        assert seq.rows == par.rows

    def test_integer_parameter_sweep(self):
        spec = SweepSpec(base=small_config(), parameter="t_rest",
                         values=(1, 3), seeds=(0,))
        report = run_sweep(spec)
        assert [c.value for c in report.cells] == [1, 3]

    def test_failing_cell_identified(self):
        spec = SweepSpec(base=small_config(), parameter="n_moves",
                         values=(121,), seeds=(0,))
        with pytest.raises((RuntimeError, ValueError)) as err:
            run_sweep(spec)
        assert "n_moves" in str(err.value) or "121" in str(err.value)

    def test_keep_snapshots(self):
        spec = SweepSpec(base=small_config(), parameter="r",
                         values=(0.5, 0.9), seeds=(0, 1))
        report = run_sweep(spec, keep_snapshots=True)
        assert set(report.snapshots) == {0.5, 0.9}
