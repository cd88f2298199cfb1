"""Figure rendering: every report figure writes a readable PNG."""

from spacedocs.figures import (
    save_category_figure,
    save_cluster_figure,
    save_graph_figure,
    save_metrics_figure,
    save_weirdness_figure,
)
from spacedocs.index import RetrievalMetrics
from spacedocs.novelty import ClusterTopics, GraphNode, SimilarityGraph, louvain
from spacedocs.termgap import gap_report, load_general_stats
from tests.conftest import FIXTURES

PNG_MAGIC = b"\x89PNG"


def test_termgap_figures(tmp_path, mini_corpus, mini_kg):
    general = load_general_stats(
        FIXTURES.parent / "src" / "spacedocs" / "resources" / "general_stats.tsv"
    )
    report = gap_report(mini_corpus, mini_kg, general)
    out1 = save_weirdness_figure(report, tmp_path / "w.png")
    out2 = save_category_figure(report, tmp_path / "c.png")
    assert out1.read_bytes()[:4] == PNG_MAGIC
    assert out2.read_bytes()[:4] == PNG_MAGIC


def test_metrics_figure(tmp_path):
    metrics = RetrievalMetrics(
        recall_at_k=0.8, mrr_at_k=0.7, accuracy_at_k=0.9, k=10, queries=4
    )
    out = save_metrics_figure(metrics, tmp_path / "m.png")
    assert out.read_bytes()[:4] == PNG_MAGIC


def test_graph_and_cluster_figures(tmp_path):
    graph = SimilarityGraph(
        nodes=(
            GraphNode("a", "idea", "A"),
            GraphNode("b", "idea", "B"),
            GraphNode("c", "study", "C"),
        ),
        edges=(("a", "b", 0.9), ("b", "c", 0.3)),
        min_sim=0.15,
    )
    partition = louvain(graph, seed=0)
    out = save_graph_figure(graph, tmp_path / "g.png", partition=partition)
    assert out.read_bytes()[:4] == PNG_MAGIC
    rows = [
        ClusterTopics(community=0, size=2, top_concepts=(("debris", 4.0),)),
        ClusterTopics(community=1, size=1, top_concepts=(("regolith", 2.0),)),
    ]
    out2 = save_cluster_figure(rows, tmp_path / "cl.png")
    assert out2.read_bytes()[:4] == PNG_MAGIC


def test_graph_figure_renders_without_partition(tmp_path):
    graph = SimilarityGraph(
        nodes=(GraphNode("a", "idea", "A"), GraphNode("b", "project", "B")),
        edges=(("a", "b", 1.0),),
        min_sim=0.15,
    )
    out = save_graph_figure(graph, tmp_path / "g2.png")
    assert out.read_bytes()[:4] == PNG_MAGIC
