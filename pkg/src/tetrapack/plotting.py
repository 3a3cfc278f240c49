"""Figures written next to the report tables."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

GOLDEN = (math.sqrt(5) - 1) / 2
COMPUTED_COLOR = "#08589e"
CITED_COLOR = "#a8ddb5"

STYLE = {
    "font.family": "serif",
    "font.size": 8,
    "axes.labelsize": 9,
    "legend.fontsize": 7,
    "xtick.labelsize": 7,
    "ytick.labelsize": 7,
    "lines.linewidth": 1,
    "lines.markersize": 3,
    "savefig.dpi": 200,
}


def figure(width: float = 5.0, height: float | None = None):
    plt.rcParams.update(STYLE)
    return plt.subplots(figsize=(width, height or width * GOLDEN))


def save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_fractions(rows, path) -> Path:
    """Horizontal bars of packing fraction; computed rows in a darker color."""
    fig, ax = figure(5.5, 3.2)
    names = [r.name for r in rows]
    values = [r.phi_value for r in rows]
    colors = [COMPUTED_COLOR if r.source == "computed" else CITED_COLOR for r in rows]
    ax.barh(range(len(rows)), values, color=colors)
    ax.set_yticks(range(len(rows)), names)
    ax.set_xlim(0, 1)
    ax.set_xlabel("packing fraction")
    for i, r in enumerate(rows):
        ax.text(r.phi_value + 0.01, i, r.phi_decimal, va="center", fontsize=6)
    ax.bar(0, 0, color=COMPUTED_COLOR, label="computed")
    ax.bar(0, 0, color=CITED_COLOR, label="cited, not computed")
    ax.legend(loc="lower right")
    return save(fig, path)


def plot_contact_types(summaries, path) -> Path:
    """Stacked bars of the dimer contact types at each sampled x."""
    fig, ax = figure(4.5)
    types = sorted({t for s in summaries for t in s.dimer_types})
    labels = [str(s.x) for s in summaries]
    bottom = [0] * len(summaries)
    cmap = plt.get_cmap("viridis", max(len(types), 2))
    for i, t in enumerate(types):
        heights = [s.dimer_types.get(t, 0) for s in summaries]
        ax.bar(labels, heights, bottom=bottom, label=t, color=cmap(i))
        bottom = [b + h for b, h in zip(bottom, heights)]
    ax.set_xlabel("x")
    ax.set_ylabel("contacts per dimer")
    ax.legend(fontsize=6, ncol=2)
    return save(fig, path)


def plot_scan(xs, valid, contacts, path, lo=None, hi=None) -> Path:
    """Touching neighbors of the reference tetrahedron across x, with verdicts marked."""
    fig, ax = figure(4.5)
    xf = [float(x) for x in xs]
    ax.plot(xf, contacts, color="0.6", zorder=1)
    ax.scatter([x for x, v in zip(xf, valid) if v], [c for c, v in zip(contacts, valid) if v],
               color=COMPUTED_COLOR, label="valid", zorder=2)
    ax.scatter([x for x, v in zip(xf, valid) if not v], [c for c, v in zip(contacts, valid) if not v],
               color="#d95f02", marker="x", label="overlap", zorder=2)
    for edge in (lo, hi):
        if edge is not None:
            ax.axvline(float(edge), color="0.3", linestyle=":")
    ax.set_xlabel("x")
    ax.set_ylabel("touching neighbors")
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.legend()
    return save(fig, path)
