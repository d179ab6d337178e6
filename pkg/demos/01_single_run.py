"""A first walk through the library: one run, start to finish.

Places 600 nodes uniformly in a 12x12 region, connects every pair closer
than r, then lets a rotating subset of nodes jump to new spots for a few
phases. Prints what changed each phase and the final network statistics.
"""

from gnmn import SimulationConfig, run_simulation

config = SimulationConfig(
    n=600,
    r=0.9,          # connection radius
    velocity=0.5,   # long jumps are preferred proportionally to length
    t_rest=3,       # phases a node must rest after moving
    t_move=8,       # movement phases in the run
    p_stat=0.8,     # fraction of nodes that never move
    n_moves=50,     # movers selected per phase
    seed=42,
)

trace = run_simulation(config)

print(f"run of {config.t_move} phases, {config.n} nodes, r={config.r}")
for phase, (delta, diag) in enumerate(zip(trace.deltas, trace.diagnostics), 1):
    print(f"  phase {phase:2d}: moved {len(delta.moved):3d} nodes, "
          f"+{len(delta.new_edges):4d}/-{len(delta.lost_edges):4d} edges, "
          f"{len(delta.gained_nodes):3d} nodes gained a connection "
          f"(eligible pool {diag.eligible_count})")

m = trace.metrics
print("\nfinal snapshot:")
print(f"  mean degree          {m.mean_degree:.2f}")
print(f"  components           {m.component_count} "
      f"(giant fraction {m.giant_fraction:.2f})")
print(f"  avg shortest path    {m.avg_shortest_path:.2f}")
print(f"  mean betweenness     {m.betweenness_mean:.1f}")

pred = config.prediction()
print("\nclosed-form expectations at these parameters:")
print(f"  expected degree      {pred.expected_degree_centrality:.2f}")
print(f"  predicted avg path   {pred.predicted_avg_path:.2f}")
