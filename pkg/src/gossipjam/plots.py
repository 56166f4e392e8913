"""Figure rendering for sweep and enumeration tables.

Plots are written straight to files (Agg backend); the CLI calls these
next to its delimited output when asked to.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def plot_ring_sweep(rows, path: str, title: str | None = None) -> str:
    """Average age vs network size for one or more ring sweeps."""
    fig, ax = plt.subplots(figsize=(7, 5))
    strategies = sorted({r["strategy"] for r in rows})
    for strat in strategies:
        sub = [r for r in rows if r["strategy"] == strat]
        ns = [r["n"] for r in sub]
        line = [r["age_line"] for r in sub]
        mini = [r["age_miniring"] for r in sub]
        if any(v is not None for v in line):
            ax.plot(ns, line, "o-", label=f"{strat}: exact segments", ms=3)
        if any(v is not None for v in mini):
            ax.plot(ns, mini, "s--", label=f"{strat}: mini-ring model", ms=3)
        sims = [(r["n"], r["age_sim"], r["sim_stderr"]) for r in sub
                if r["age_sim"] is not None]
        if sims:
            xs, ys, es = zip(*sims)
            ax.errorbar(xs, ys, yerr=[3 * e for e in es], fmt="x",
                        capsize=3, label=f"{strat}: simulation (3 s.e.)")
    lows = [(r["n"], r["lower_bound"]) for r in rows if r["lower_bound"] is not None]
    ups = [(r["n"], r["upper_bound"]) for r in rows if r["upper_bound"] is not None]
    if lows and len(strategies) == 1:
        ax.plot(*zip(*sorted(set(lows))), ":", color="gray", label="lower bound")
        ax.plot(*zip(*sorted(set(ups))), ":", color="black", label="upper bound")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("network size n")
    ax.set_ylabel("average version age")
    ax.set_title(title or "ring network under jamming")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_fc_sweep(rows, path: str, title: str | None = None) -> str:
    """Average age of the consolidated clique vs network size."""
    fig, ax = plt.subplots(figsize=(7, 5))
    ns = [r["n"] for r in rows]
    ages = [r["age_closed_form"] for r in rows]
    ax.plot(ns, ages, "o-", label="closed form", ms=4)
    sims = [(r["n"], r["age_sim"], r["sim_stderr"]) for r in rows
            if r.get("age_sim") is not None]
    if sims:
        xs, ys, es = zip(*sims)
        ax.errorbar(xs, ys, yerr=[3 * e for e in es], fmt="x", capsize=3,
                    label="simulation (3 s.e.)")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("network size n")
    ax.set_ylabel("average version age")
    ax.set_title(title or "complete graph, consolidated survivors")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_enumeration(rows, greedy_rows, path: str) -> str:
    """Every configuration's average age, grouped by kept-link budget."""
    fig, ax = plt.subplots(figsize=(7, 5))
    xs = [r["n_links"] for r in rows]
    ys = [r["average_age"] for r in rows]
    ax.plot(xs, ys, ".", color="steelblue", alpha=0.25, ms=4,
            label="all configurations")
    gx = [g["n_links"] for g in greedy_rows]
    gy = [g["average_age"] for g in greedy_rows]
    ax.plot(gx, gy, "r^", ms=8, label="consolidated placement")
    ax.set_xlabel("surviving links")
    ax.set_ylabel("average version age")
    ax.set_title("all 6-node configurations by link budget")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
