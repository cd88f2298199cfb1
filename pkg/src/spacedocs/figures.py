"""Matplotlib renderings for the CLI report paths.

Every report-producing subcommand writes its delimited output and, unless
figures are disabled, a PNG next to it. Rendering is deterministic: fixed
figure sizes, seeded layout, no timestamps.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .index import RetrievalMetrics
from .novelty import ClusterTopics, Partition, SimilarityGraph
from .termgap import EnrichmentReport

_BAR_COLOR = "#3b6ea5"
_ALT_COLOR = "#b4552d"


def save_weirdness_figure(report: EnrichmentReport, path: Path | str) -> Path:
    """Horizontal bars of the highest-weirdness terms (log scale)."""
    terms = list(reversed(report.highest_weirdness))
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.4 * len(terms) + 1)))
    labels = [t.term for t in terms]
    values = [max(t.weirdness, 1e-12) for t in terms]
    ax.barh(range(len(terms)), values, color=_BAR_COLOR)
    ax.set_yticks(range(len(terms)))
    ax.set_yticklabels(labels)
    ax.set_xscale("log")
    ax.set_xlabel("weirdness index")
    ax.set_title("Terms most specific to the corpus")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def save_category_figure(report: EnrichmentReport, path: Path | str) -> Path:
    """Known vs unknown counts per metadata category."""
    cats = list(report.categories.values())
    x = np.arange(len(cats))
    width = 0.38
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(x - width / 2, [c.known for c in cats], width, label="known", color=_BAR_COLOR)
    ax.bar(x + width / 2, [c.unknown for c in cats], width, label="unknown", color=_ALT_COLOR)
    ax.set_xticks(x)
    ax.set_xticklabels([c.category for c in cats])
    ax.set_ylabel("distinct terms")
    ax.set_title("Known vs unknown corpus terms")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def save_metrics_figure(metrics: RetrievalMetrics, path: Path | str) -> Path:
    names = [f"R@{metrics.k}", f"MRR@{metrics.k}", "Accuracy"]
    values = [metrics.recall_at_k, metrics.mrr_at_k, metrics.accuracy_at_k]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(names, values, color=_BAR_COLOR)
    ax.set_ylim(0, 1)
    ax.set_title(f"Retrieval metrics over {metrics.queries} queries")
    for i, v in enumerate(values):
        ax.text(i, v + 0.02, f"{v:.3f}", ha="center")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def _spring_layout(
    adj: Mapping[str, Mapping[str, float]], seed: int = 7, iterations: int = 120
) -> dict[str, tuple[float, float]]:
    """Small deterministic Fruchterman-Reingold layout."""
    nodes = sorted(adj)
    n = len(nodes)
    if n == 0:
        return {}
    rng = np.random.default_rng(seed)
    pos = rng.uniform(-1.0, 1.0, size=(n, 2))
    idx = {v: i for i, v in enumerate(nodes)}
    k = math.sqrt(4.0 / n)
    temp = 0.25
    for _ in range(iterations):
        disp = np.zeros((n, 2))
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=2) + 1e-9
        rep = (k * k / dist)[:, :, None] * (delta / dist[:, :, None])
        disp += rep.sum(axis=1)
        for v, nbrs in adj.items():
            for u, w in nbrs.items():
                i, j = idx[v], idx[u]
                d = pos[i] - pos[j]
                norm = np.linalg.norm(d) + 1e-9
                pull = (norm * norm / k) * (d / norm) * w
                disp[i] -= pull
        lengths = np.linalg.norm(disp, axis=1) + 1e-9
        pos += (disp / lengths[:, None]) * np.minimum(lengths, temp)[:, None]
        temp *= 0.97
    return {v: (float(pos[idx[v], 0]), float(pos[idx[v], 1])) for v in nodes}


_KIND_COLORS = {
    "idea": "#3b6ea5",
    "study": "#b4552d",
    "project": "#4d8f4d",
}


def save_graph_figure(
    graph: SimilarityGraph,
    path: Path | str,
    partition: Partition | None = None,
    seed: int = 7,
) -> Path:
    """Similarity network: edge width proportional to similarity weight."""
    pos = _spring_layout(graph.adjacency(), seed=seed)
    fig, ax = plt.subplots(figsize=(8, 8))
    for a, b, w in graph.edges:
        xa, ya = pos[a]
        xb, yb = pos[b]
        ax.plot([xa, xb], [ya, yb], color="#888888", linewidth=0.5 + 4.0 * w, zorder=1)
    cmap = plt.get_cmap("tab10")
    for node in graph.nodes:
        x, y = pos[node.id]
        if partition is not None:
            color = cmap(partition.communities[node.id] % 10)
        else:
            color = _KIND_COLORS.get(node.kind, "#3b6ea5")
        ax.scatter([x], [y], s=160, color=color, zorder=2, edgecolors="white")
        ax.annotate(node.label, (x, y), fontsize=7, ha="center", va="center", zorder=3)
    ax.set_axis_off()
    title = f"Similarity graph (cutoff {graph.min_sim:g})"
    if partition is not None:
        title += f", Q = {partition.modularity:.3f}"
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def save_cluster_figure(rows: Sequence[ClusterTopics], path: Path | str) -> Path:
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.5 * len(rows) + 1)))
    sizes = [r.size for r in rows]
    labels = [
        ", ".join(c for c, _ in r.top_concepts[:3]) or f"community {r.community}"
        for r in rows
    ]
    y = np.arange(len(rows))
    ax.barh(y, sizes, color=_BAR_COLOR)
    ax.set_yticks(y)
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("documents in cluster")
    ax.set_title("Idea clusters by size")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)
