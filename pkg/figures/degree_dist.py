"""Degree histograms from stored snapshots, one panel per sweep value.

Degrees come straight from the GraphML node attributes the harness wrote;
nothing is recomputed here.
"""

import sys

import matplotlib.pyplot as plt
import numpy as np

from figlib import FigureSpec, list_snapshots, read_snapshot, run


def build(spec: FigureSpec):
    snapshots = list_snapshots(spec.indir, spec.parameter)
    n_panels = len(snapshots)
    fig, axes = plt.subplots(1, n_panels, figsize=(4 * n_panels, 3.5),
                             squeeze=False)
    payload = {}
    for ax, (value, path) in zip(axes[0], snapshots):
        _, degrees, r = read_snapshot(path)
        degrees = np.asarray(degrees)
        bins = np.arange(degrees.max() + 2) - 0.5
        counts, _, _ = ax.hist(degrees, bins=bins, color="#1f77b4",
                               edgecolor="white")
        ax.axvline(degrees.mean(), color="#d62728", linestyle="--",
                   label=f"mean {degrees.mean():.1f}")
        ax.set_title(f"r = {r:g}" if value == r else f"value = {value:g}")
        ax.set_xlabel("degree")
        ax.legend(fontsize=8)
        payload[value] = {"degrees": degrees, "counts": counts}
    axes[0][0].set_ylabel("nodes")
    fig.suptitle(f"Degree distribution (N = {len(degrees)})")
    fig.tight_layout()
    return fig, payload


if __name__ == "__main__":
    sys.exit(run("degree_dist", build))
