"""Connected-component count and giant-component fraction vs sweep value."""

import sys

import matplotlib.pyplot as plt

from figlib import FigureSpec, cell_series, fixed_summary, load_sweep, run


def build(spec: FigureSpec):
    doc = load_sweep(spec.indir)
    parameter = spec.parameter or doc["parameter"]
    values, comp_means, comp_stds = cell_series(doc, "component_count")
    _, giant_means, giant_stds = cell_series(doc, "giant_fraction")

    fig, ax = plt.subplots(figsize=(6.5, 4))
    ax.errorbar(values, comp_means, yerr=comp_stds, marker="o", capsize=3,
                color="#1f77b4", label="components")
    ax.set_xlabel(parameter)
    ax.set_ylabel("connected components", color="#1f77b4")
    ax.set_yscale("log")
    ax.grid(alpha=0.3)

    ax2 = ax.twinx()
    ax2.errorbar(values, giant_means, yerr=giant_stds, marker="s", capsize=3,
                 color="#d62728", label="giant fraction")
    ax2.set_ylabel("giant component fraction", color="#d62728")
    ax2.set_ylim(-0.02, 1.02)

    ax.set_title(f"Connectivity vs {parameter}\n({fixed_summary(doc)})")
    fig.tight_layout()
    return fig, {
        "values": values,
        "components": (comp_means, comp_stds),
        "giant": (giant_means, giant_stds),
    }


if __name__ == "__main__":
    sys.exit(run("components", build))
