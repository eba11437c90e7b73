"""Figures written next to CSV reports.

Uses :class:`matplotlib.figure.Figure` directly so nothing touches pyplot's
global state or needs a display.
"""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path

from matplotlib.figure import Figure


def _style(ax, xlabel, ylabel, title=None):
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)


def figure_paths(csv_path, *suffixes):
    p = Path(csv_path)
    return [p.with_name(f"{p.stem}_{s}.png") for s in suffixes]


def plot_profile(instance, profile, times, path, title=None):
    """Bar chart of the inventory level at each time in the joint cycle."""
    k = instance.joint_cycle
    fig = Figure(figsize=(6, 3.5))
    ax = fig.add_subplot()
    xs = list(range(1, k + 1))
    levels = [float(v) for v in profile.levels]
    colors = ["tab:red" if x == profile.peak_time else "tab:blue" for x in xs]
    ax.bar(xs, levels, color=colors)
    ax.axhline(float(instance.total_demand), color="grey", ls="--", lw=1, label="D")
    ax.set_xticks(xs)
    ax.legend(frameon=False)
    _style(ax, "time", "inventory level",
           title or f"times {','.join(map(str, times))}, peak {float(profile.peak):.4g}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    return Path(path)


def plot_ratios(rows, path):
    """FPTAS peak / exact peak against eps', with the guaranteed bound."""
    exact = {r["instance_id"]: r["peak"] for r in rows if r["engine"] == "exact"}
    pts = [(float(r["eps"]), float(r["peak"] / exact[r["instance_id"]]))
           for r in rows if r["engine"] == "fptas" and r["instance_id"] in exact]
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    if pts:
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=10, alpha=0.5, label="observed")
        grid = sorted(set(xs))
        ax.plot(grid, [1 + e for e in grid], color="tab:red", label="1 + eps'")
    ax.set_xscale("log")
    ax.legend(frameon=False)
    _style(ax, "eps'", "FPTAS peak / optimal peak")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    return Path(path)


def plot_states(rows, path):
    """Mean DP states against item count, one line per engine setting."""
    series = defaultdict(lambda: defaultdict(list))
    for r in rows:
        if r["engine"] == "exact":
            label = "exact"
        elif r["engine"] == "fptas":
            label = f"fptas eps'={r['eps']}"
        else:
            continue
        series[label][r["n"]].append(r["states"])
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    for label in sorted(series):
        by_n = series[label]
        ns = sorted(by_n)
        ax.plot(ns, [sum(by_n[n]) / len(by_n[n]) for n in ns], marker="o", label=label)
    ax.set_yscale("log")
    ax.legend(frameon=False, fontsize=8)
    _style(ax, "items n", "mean DP states")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    return Path(path)
