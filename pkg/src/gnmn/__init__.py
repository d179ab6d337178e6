"""Geometric networks with mobile nodes: simulator, metrics, predictors."""

from .analytics import (
    Comparison,
    Prediction,
    compare,
    expected_betweenness,
    p_nei,
    p_second_nei,
    predict,
    predicted_avg_path,
)
from .geometry import GridIndex, Region, distance, radius_query, sample_positions
from .graph import GraphSnapshot, StepDelta, build_graph, diff_graphs
from .harness import (
    SimulationConfig,
    SimulationTrace,
    SweepReport,
    SweepSpec,
    aggregate,
    run_simulation,
    run_sweep,
)
from .io import (
    ConfigError,
    export_graphml,
    import_graphml,
    load_config,
    write_metrics_csv,
    write_run_bundle,
    write_sweep_bundle,
)
from .metrics import (
    MetricsReport,
    average_shortest_path,
    betweenness_centrality,
    compute_metrics,
    connected_components,
    degree_centrality,
    degree_distribution,
    second_hop_counts,
    two_hop_contact_counts,
)
from .mobility import (
    MobilityParams,
    MobilityState,
    init_mobility_state,
    movement_step,
    propose_move,
    select_movers,
)

__version__ = "0.1.0"
