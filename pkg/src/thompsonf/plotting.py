"""Figures written next to the CLI's JSON output."""

from __future__ import annotations

from collections import Counter

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def plot_sphere_sizes(sphere_sizes, path):
    """Bar chart of sphere sizes |S(d)| on a log axis."""
    fig, ax = plt.subplots(figsize=(6, 4))
    radii = list(range(len(sphere_sizes)))
    ax.bar(radii, sphere_sizes, color="0.35")
    ax.set_yscale("log")
    ax.set_xlabel("radius d")
    ax.set_ylabel("elements at distance d")
    ax.set_xticks(radii)
    for d, size in zip(radii, sphere_sizes):
        ax.annotate(str(size), (d, size), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_audit(report, path):
    """Word length after each audited letter, with the ball radius marked."""
    lengths = report.lengths
    base = report.n
    offsets = [v - base for v in lengths]
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = list(range(len(offsets)))
    ax.plot(xs, offsets, marker="o", color="k")
    ax.axhline(0, color="0.5", ls="--", lw=1, label="n = |w| - 1")
    if report.first_nonright_step is not None:
        i = report.first_nonright_step
        ax.plot([i], [offsets[i]], marker="s", ms=10, mfc="none", mec="C3", ls="none",
                label="root caret leaves the right side")
    labels = [f"x0^{report.m}"] + [s.generator for s in report.steps]
    ax.set_xticks(xs)
    ax.set_xticklabels(labels)
    ax.set_ylabel("|w x0^m eta| - n")
    ax.set_title(f"k={report.k}, m={report.m}, eta={report.eta or '(empty)'}")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_search(report, path):
    """Histogram of lengths at the prefixes where the tracked caret left the right side."""
    fig, ax = plt.subplots(figsize=(6, 4))
    counts = Counter(c.length - report.n for c in report.root_checks)
    xs = sorted(counts)
    ax.bar(xs, [counts[x] for x in xs], width=0.6, color="0.35")
    ax.set_xticks(xs)
    ax.set_xlabel("length - n at first non-right prefix")
    ax.set_ylabel("prefixes")
    ax.set_title(f"n={report.n}, cap={report.cap}, found={report.found}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
