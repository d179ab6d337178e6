"""Second-hop contact totals vs a swept parameter, with seed error bars."""

import sys

import matplotlib.pyplot as plt

from figlib import FigureSpec, cell_series, fixed_summary, load_sweep, run


def build(spec: FigureSpec):
    doc = load_sweep(spec.indir)
    parameter = spec.parameter or doc["parameter"]
    values, means, stds = cell_series(doc, "second_hop_total")

    fig, ax = plt.subplots(figsize=(6, 4))
    errs = stds if any(s > 0 for s in stds) else None
    ax.errorbar(values, means, yerr=errs, marker="o", capsize=3,
                color="#1f77b4")
    ax.set_xlabel(parameter)
    ax.set_ylabel("second-hop contacts (total over source set)")
    ax.set_title(f"Second-hop reach vs {parameter}\n({fixed_summary(doc)})")
    ax.grid(alpha=0.3)
    return fig, {"values": values, "means": means, "stds": stds}


if __name__ == "__main__":
    sys.exit(run("second_hop", build))
