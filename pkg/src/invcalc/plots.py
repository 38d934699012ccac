"""Figure rendering for enumeration reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def rank_distribution_figure(rows: list[dict], title: str, path: str) -> None:
    """Bar chart of reductive/indecomposable rank counts across subgroups."""
    red_counts: dict[int, int] = {}
    ind_counts: dict[int, int] = {}
    for row in rows:
        red_counts[len(row["reductive"])] = red_counts.get(len(row["reductive"]), 0) + 1
        ind_counts[len(row["indecomposable"])] = (
            ind_counts.get(len(row["indecomposable"]), 0) + 1
        )
    ranks = sorted(set(red_counts) | set(ind_counts))
    xs = range(len(ranks))
    width = 0.4
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(
        [x - width / 2 for x in xs],
        [ind_counts.get(r, 0) for r in ranks],
        width,
        label="indecomposable",
    )
    ax.bar(
        [x + width / 2 for x in xs],
        [red_counts.get(r, 0) for r in ranks],
        width,
        label="reductive",
    )
    ax.set_xticks(list(xs))
    ax.set_xticklabels([str(r) for r in ranks])
    ax.set_xlabel("number of invariant factors")
    ax.set_ylabel("central subgroups")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
