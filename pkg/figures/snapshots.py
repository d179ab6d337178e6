"""Node-placement panels from stored snapshots, one per sweep value.

Nodes with no connections are drawn blue, everything else grey — the same
convention the harness SVGs use. Positions and degrees come from GraphML.
"""

import sys

import matplotlib.pyplot as plt
import numpy as np

from figlib import FigureSpec, list_snapshots, read_snapshot, run


def build(spec: FigureSpec):
    snapshots = list_snapshots(spec.indir, spec.parameter)
    n_panels = len(snapshots)
    cols = min(n_panels, 3)
    rows = (n_panels + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(4 * cols, 4 * rows),
                             squeeze=False)
    flat = axes.ravel()
    payload = {}
    for ax, (value, path) in zip(flat, snapshots):
        xy, degrees, r = read_snapshot(path)
        xy = np.asarray(xy)
        degrees = np.asarray(degrees)
        isolated = degrees == 0
        ax.scatter(xy[~isolated, 0], xy[~isolated, 1], s=6, color="#888888")
        ax.scatter(xy[isolated, 0], xy[isolated, 1], s=6, color="#1f77b4")
        ax.set_title(f"r = {r:g}" if value == r else f"value = {value:g}",
                     fontsize=10)
        ax.set_aspect("equal")
        payload[value] = int(isolated.sum())
    for ax in flat[n_panels:]:
        ax.axis("off")
    fig.suptitle("Node placement (blue = no connections)")
    fig.tight_layout()
    return fig, payload


if __name__ == "__main__":
    sys.exit(run("snapshots", build))
