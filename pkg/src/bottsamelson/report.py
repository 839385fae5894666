"""Figures written alongside CLI reports (matplotlib, Agg backend)."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .conjo import SpectralReport  # noqa: E402
from .momentgraph import MomentGraph  # noqa: E402


def _layout(graph: MomentGraph) -> dict:
    by_len: dict[int, list] = {}
    for v in graph.vertices:
        by_len.setdefault(v.length, []).append(v)
    pos = {}
    for ell, vs in by_len.items():
        vs = sorted(vs, key=lambda e: tuple(-b for b in e.bits))
        for i, v in enumerate(vs):
            pos[v] = (i - (len(vs) - 1) / 2, ell)
    return pos


def _passes_through(a, b, pts, tol=0.12) -> bool:
    (x0, y0), (x1, y1) = a, b
    dx, dy = x1 - x0, y1 - y0
    norm = dx * dx + dy * dy
    for px, py in pts:
        t = ((px - x0) * dx + (py - y0) * dy) / norm
        if 0 < t < 1 and abs((px - x0) * dy - (py - y0) * dx) / norm ** 0.5 < tol:
            return True
    return False


def draw_moment_graph(graph: MomentGraph, path: str | Path, title: Optional[str] = None) -> Path:
    """Vertices layered by length; bold edges are family edges."""
    pos = _layout(graph)
    fig, ax = plt.subplots(figsize=(7, 6))
    seen: dict[tuple, int] = {}
    for e in graph.edges:
        key = (e.u, e.v)
        k = seen.get(key, 0)
        seen[key] = k + 1
        rad = 0.0 if k == 0 else 0.25 * (1 if k % 2 else -1) * ((k + 1) // 2)
        (x0, y0), (x1, y1) = pos[e.u], pos[e.v]
        others = [xy for v, xy in pos.items() if v not in (e.u, e.v)]
        if rad == 0.0 and _passes_through(pos[e.u], pos[e.v], others):
            rad = -0.3
        patch = FancyArrowPatch(
            (x0, y0), (x1, y1), arrowstyle="-", connectionstyle=f"arc3,rad={rad}",
            linewidth=3 if e.family else 1, color="black" if e.family else "0.35",
        )
        ax.add_patch(patch)
        mx, my = (x0 + x1) / 2 + rad * (y1 - y0) / 2, (y0 + y1) / 2 - rad * (x1 - x0) / 2
        ax.text(mx, my, "(" + ",".join(map(str, e.cls)) + ")", fontsize=7, ha="center",
                va="center", bbox=dict(boxstyle="round,pad=0.1", fc="white", ec="none"))
    for v, (x, y) in pos.items():
        ax.plot([x], [y], "o", color="tab:blue", markersize=16, zorder=3)
        ax.text(x, y, str(v), fontsize=7, ha="center", va="center", color="white", zorder=4)
    ax.set_title(title or f"moment graph of Z({graph.word})")
    ax.set_axis_off()
    ax.set_aspect("equal")
    ax.autoscale_view()
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def draw_spectrum(report: SpectralReport, path: str | Path, title: str = "eigenvalues of c1 hat",
                  reference: Optional[Sequence[complex]] = None) -> Path:
    fig, ax = plt.subplots(figsize=(6, 6))
    vals = [e.value for e in report.eigenvalues]
    dom = report.eigenvalues[report.dominant].value
    delta = abs(dom)
    circle = plt.Circle((0, 0), delta, fill=False, linestyle="--", color="0.6")
    ax.add_patch(circle)
    ax.scatter([v.real for v in vals], [v.imag for v in vals], color="tab:blue", zorder=3, label="eigenvalues")
    ax.scatter([dom.real], [dom.imag], color="tab:red", s=80, zorder=4, label=f"dominant {dom.real:.6f}")
    if reference:
        ax.scatter([v.real for v in reference], [v.imag for v in reference], marker="x",
                   color="0.3", zorder=5, label="reference matrix")
    ax.axhline(0, color="0.85", linewidth=0.8)
    ax.axvline(0, color="0.85", linewidth=0.8)
    ax.set_aspect("equal")
    ax.set_xlim(-1.1 * delta, 1.1 * delta)
    ax.set_ylim(-1.1 * delta, 1.1 * delta)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title)
    ax.legend(loc="lower left", fontsize=8)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
