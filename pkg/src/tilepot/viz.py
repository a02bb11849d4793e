"""Static matplotlib renderings saved to files: complex drawings and
order-table charts."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .complexes import LabeledMultigraph
from .pots import Pot
from .spectrum import TileDistribution

_TILE_COLORS = matplotlib.colormaps["tab10"]


def draw_complex(
    graph: LabeledMultigraph,
    path: str,
    pot: Pot | None = None,
    title: str | None = None,
) -> None:
    """Draw the multigraph with vertices on a circle and parallel edges as
    arcs of increasing curvature, then save the figure to ``path``."""
    n = graph.order
    positions: dict[int, tuple[float, float]] = {}
    for index, (vertex, _) in enumerate(graph.vertices):
        if n == 1:
            positions[vertex] = (0.0, 0.0)
        else:
            angle = 2 * math.pi * index / n - math.pi / 2
            positions[vertex] = (math.cos(angle), math.sin(angle))

    side = max(4.0, 1.2 * math.sqrt(n) + 2.0)
    fig, ax = plt.subplots(figsize=(side, side))
    ax.set_aspect("equal")
    ax.axis("off")

    groups: dict[tuple[int, int], list[tuple[int, int, str]]] = {}
    for edge in graph.edges:
        u, w, _ = edge
        groups.setdefault((min(u, w), max(u, w)), []).append(edge)
    multiple_labels = pot is not None and len(pot.bond_edge_types) > 1
    for (a, b), edges in groups.items():
        count = len(edges)
        for i, (u, w, label) in enumerate(edges):
            rad = 0.0 if count == 1 else -0.4 + 0.8 * i / (count - 1)
            if (u, w) != (a, b):
                rad = -rad
            arrow = FancyArrowPatch(
                positions[u],
                positions[w],
                connectionstyle=f"arc3,rad={rad}",
                arrowstyle="-|>",
                mutation_scale=9,
                lw=0.9,
                color="0.35",
                shrinkA=9,
                shrinkB=9,
                zorder=1,
            )
            ax.add_patch(arrow)
            if multiple_labels:
                mx = (positions[u][0] + positions[w][0]) / 2
                my = (positions[u][1] + positions[w][1]) / 2
                ax.text(mx, my + 0.12 * rad, label, fontsize=7, ha="center", color="0.2")

    tiles_seen = sorted({tile for _, tile in graph.vertices})
    for vertex, tile in graph.vertices:
        x, y = positions[vertex]
        ax.scatter(
            [x],
            [y],
            s=420,
            color=_TILE_COLORS((tile - 1) % 10),
            edgecolors="black",
            linewidths=0.8,
            zorder=2,
        )
        ax.text(x, y, f"v{vertex}", fontsize=7, ha="center", va="center", zorder=3)

    handles = [
        plt.Line2D(
            [],
            [],
            marker="o",
            linestyle="",
            markersize=9,
            markerfacecolor=_TILE_COLORS((tile - 1) % 10),
            markeredgecolor="black",
            label=f"t{tile}" + (f" = {pot.tiles[tile - 1]}" if pot else ""),
        )
        for tile in tiles_seen
    ]
    ax.legend(handles=handles, loc="upper right", fontsize=8, framealpha=0.9)
    if title:
        ax.set_title(title, fontsize=10)
    margin = 1.35
    ax.set_xlim(-margin, margin)
    ax.set_ylim(-margin, margin)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def draw_orders(
    table: tuple[tuple[int, TileDistribution | None], ...],
    path: str,
    title: str | None = None,
) -> None:
    """Chart a realizability table: one marker per order, green circles at
    the top for realizable orders, red crosses at the bottom otherwise."""
    realizable = [n for n, witness in table if witness is not None]
    infeasible = [n for n, witness in table if witness is None]
    width = max(5.0, 0.22 * len(table) + 2.0)
    fig, ax = plt.subplots(figsize=(width, 2.4))
    if realizable:
        ax.scatter(realizable, [1] * len(realizable), marker="o", color="forestgreen")
    if infeasible:
        ax.scatter(infeasible, [0] * len(infeasible), marker="x", color="firebrick")
    ax.set_yticks([0, 1])
    ax.set_yticklabels(["infeasible", "realizable"])
    ax.set_ylim(-0.6, 1.6)
    ax.set_xlabel("order n")
    ax.grid(axis="x", linestyle=":", alpha=0.5)
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
