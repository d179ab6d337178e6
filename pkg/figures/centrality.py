"""Mean degree and betweenness centrality vs a swept parameter.

Left panel: degree centrality with the analytic prediction overlaid (the
prediction values are read from the sweep report, not recomputed). Right
panel: betweenness with +/-1 std error bars and no trend claim.
"""

import sys

import matplotlib.pyplot as plt

from figlib import FigureSpec, cell_series, fixed_summary, load_sweep, run


def build(spec: FigureSpec):
    doc = load_sweep(spec.indir)
    parameter = spec.parameter or doc["parameter"]

    values, deg_means, deg_stds = cell_series(doc, "degree_centrality_mean")
    _, bw_means, bw_stds = cell_series(doc, "betweenness_mean")
    predicted = [cell["prediction"]["expected_degree_centrality"]
                 for cell in doc["cells"]]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.errorbar(values, deg_means, yerr=deg_stds, marker="o", capsize=3,
                 color="#1f77b4", label="measured")
    ax1.plot(values, predicted, linestyle="--", color="#d62728",
             label="predicted")
    ax1.set_xlabel(parameter)
    ax1.set_ylabel("mean degree centrality")
    ax1.legend()
    ax1.grid(alpha=0.3)

    ax2.errorbar(values, bw_means, yerr=bw_stds, marker="s", capsize=3,
                 color="#2ca02c")
    ax2.set_xlabel(parameter)
    ax2.set_ylabel("mean betweenness")
    ax2.grid(alpha=0.3)

    fig.suptitle(f"Centrality vs {parameter} ({fixed_summary(doc)})")
    fig.tight_layout()
    return fig, {
        "values": values,
        "degree": (deg_means, deg_stds, predicted),
        "betweenness": (bw_means, bw_stds),
    }


if __name__ == "__main__":
    sys.exit(run("centrality", build))
