"""Novelty scoring, similarity graph, and Louvain tests."""

import math
import random

import pytest

from spacedocs.novelty import (
    GraphNode,
    MetadataMissingError,
    NoveltyError,
    Partition,
    ProfileStore,
    SimilarityGraph,
    build_similarity_graph,
    cluster_topics,
    export_gexf,
    export_graph_records,
    louvain,
    modularity,
    novelty_score,
    profiles_from_metadata,
    similarity,
)


def store_of(profiles, known=None):
    return ProfileStore(profiles, known_concepts=known or {})


def vec(**terms):
    return {("main_lemmas", k): float(v) for k, v in terms.items()}


def independent_cosine(a, b):
    dot = sum(v * b.get(k, 0.0) for k, v in a.items())
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    return dot / (na * nb) if na and nb else 0.0


class TestSimilarity:
    def test_self_similarity_is_one(self):
        store = store_of({"a": vec(x=2, y=3)})
        assert similarity(store, "a", "a") == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_terms_is_zero(self):
        store = store_of({"a": vec(x=1), "b": vec(y=1)})
        assert similarity(store, "a", "b") == 0.0

    def test_missing_metadata_directs_caller(self):
        store = store_of({"a": vec(x=1)})
        with pytest.raises(MetadataMissingError, match="metadata"):
            similarity(store, "a", "ghost")

    def test_five_doc_toy_matches_independent_cosine(self):
        rng = random.Random(5)
        profiles = {
            f"d{i}": vec(**{f"t{j}": rng.randint(1, 5) for j in rng.sample(range(8), 4)})
            for i in range(5)
        }
        store = store_of(profiles)
        for a in profiles:
            for b in profiles:
                want = independent_cosine(profiles[a], profiles[b])
                assert similarity(store, a, b) == pytest.approx(want, abs=1e-9)

    def test_symmetry_on_engine_profiles(self, analyzed_corpus, mini_corpus):
        metadata = {d: md for d, (_, md) in analyzed_corpus.items()}
        store = profiles_from_metadata(metadata)
        ids = list(metadata)[:8]
        for a in ids[:4]:
            for b in ids[4:]:
                assert similarity(store, a, b) == pytest.approx(
                    similarity(store, b, a), abs=1e-12
                )


class TestNoveltyScore:
    def test_direct_substitution(self):
        """max sims {0.2, 0.4, 0.3} -> 100*(1-0.4) = 60."""
        idea = {("main_lemmas", "a"): 1.0, ("main_lemmas", "b"): 1.0}

        def at_cos(target):
            # Build a profile with the chosen cosine against `idea`.
            theta = math.acos(target)
            return {
                ("main_lemmas", "a"): math.cos(theta) + math.sin(theta),
                ("main_lemmas", "b"): math.cos(theta) - math.sin(theta),
            }

        store = store_of(
            {
                "idea": idea,
                "i1": at_cos(0.2),
                "s1": at_cos(0.4),
                "p1": at_cos(0.3),
            }
        )
        got = novelty_score("idea", store, ideas=["i1"], studies=["s1"], projects=["p1"])
        assert got.novelty_score == pytest.approx(60.0, abs=1e-9)

    def test_identical_study_forces_zero(self):
        store = store_of({"idea": vec(x=1, y=2), "s": vec(x=1, y=2)})
        got = novelty_score("idea", store, ideas=[], studies=["s"], projects=[])
        assert got.novelty_score == pytest.approx(0.0, abs=1e-9)

    def test_empty_collections_score_hundred(self):
        store = store_of({"idea": vec(x=1)})
        got = novelty_score("idea", store, ideas=[], studies=[], projects=[])
        assert got.novelty_score == 100.0
        assert got.novelty_calculated
        assert got.similar_ideas == ()
        assert got.similar_projects == ()

    def test_self_in_ideas_collection_rejected(self):
        store = store_of({"idea": vec(x=1)})
        with pytest.raises(NoveltyError, match="exclude"):
            novelty_score("idea", store, ideas=["idea"], studies=[], projects=[])

    def test_similar_lists_sorted_and_positive(self, analyzed_corpus, mini_corpus):
        metadata = {d: md for d, (_, md) in analyzed_corpus.items()}
        store = profiles_from_metadata(metadata)
        ideas = [d.id for d in mini_corpus if d.source == "idea" and d.id != "idea-04"]
        studies = [d.id for d in mini_corpus if d.source == "study"]
        projects = [d.id for d in mini_corpus if d.source == "project"]
        got = novelty_score("idea-04", store, ideas, studies, projects)
        for lst in (got.similar_ideas, got.similar_projects):
            sims = [s.sim for s in lst]
            assert sims == sorted(sims, reverse=True)
            assert all(s > 0 for s in sims)
        assert any(s.doc_id == "idea-03" for s in got.similar_ideas)

    def test_shared_concepts_subset_of_both(self, analyzed_corpus, mini_corpus):
        metadata = {d: md for d, (_, md) in analyzed_corpus.items()}
        store = profiles_from_metadata(metadata)
        ideas = [d.id for d in mini_corpus if d.source == "idea" and d.id != "idea-04"]
        got = novelty_score("idea-04", store, ideas, [], [])
        mine = {c for c, _ in metadata["idea-04"].known_concepts}
        for s in got.similar_ideas:
            theirs = {c for c, _ in metadata[s.doc_id].known_concepts}
            assert set(s.shared_concepts) <= mine & theirs

    def test_monotone_under_collection_growth(self):
        rng = random.Random(11)
        profiles = {
            f"d{i}": vec(**{f"t{j}": rng.randint(1, 9) for j in rng.sample(range(10), 5)})
            for i in range(12)
        }
        profiles["idea"] = vec(**{f"t{j}": rng.randint(1, 9) for j in range(10)})
        store = store_of(profiles)
        members = [f"d{i}" for i in range(12)]
        prev = 100.0
        for n in range(0, 13, 3):
            got = novelty_score("idea", store, members[:n], [], [])
            assert got.novelty_score <= prev + 1e-12
            prev = got.novelty_score


class TestSimilarityGraph:
    def test_disjoint_vocabulary_no_edges(self):
        store = store_of({"a": vec(x=1), "b": vec(y=1), "c": vec(z=1)})
        g = build_similarity_graph(
            store, [("a", "idea", "A"), ("b", "idea", "B"), ("c", "study", "C")]
        )
        assert g.edges == ()

    def test_identical_docs_edge_weight_one(self):
        store = store_of({"a": vec(x=1, y=1), "b": vec(x=1, y=1)})
        g = build_similarity_graph(store, [("a", "idea", "A"), ("b", "idea", "B")])
        assert len(g.edges) == 1
        a, b, w = g.edges[0]
        assert (a, b) == ("a", "b")
        assert w == pytest.approx(1.0, abs=1e-12)

    def test_twenty_doc_fixture_matches_pairwise_oracle(self):
        rng = random.Random(20)
        profiles = {
            f"d{i:02d}": vec(
                **{f"t{j}": rng.randint(1, 6) for j in rng.sample(range(12), 5)}
            )
            for i in range(20)
        }
        store = store_of(profiles)
        rows = [(d, "idea", d) for d in sorted(profiles)]
        cutoff = 0.3
        g = build_similarity_graph(store, rows, min_sim=cutoff)
        expected = set()
        ids = sorted(profiles)
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                sim = independent_cosine(profiles[a], profiles[b])
                if sim >= cutoff:
                    expected.add((a, b))
        assert {(a, b) for a, b, _ in g.edges} == expected
        for a, b, w in g.edges:
            assert w >= cutoff
            assert w == pytest.approx(
                independent_cosine(profiles[a], profiles[b]), abs=1e-9
            )

    def test_exports(self):
        g = SimilarityGraph(
            nodes=(GraphNode("a", "idea", "A"), GraphNode("b", "study", "B")),
            edges=(("a", "b", 0.5),),
            min_sim=0.15,
        )
        records = export_graph_records(g)
        assert "node\ta\tidea\tA" in records
        assert "edge\ta\tb\t0.500000" in records
        gexf = export_gexf(g)
        assert gexf.startswith("<?xml")
        assert 'source="a"' in gexf and 'target="b"' in gexf


def graph_from_edges(edges, nodes=None):
    node_ids = sorted({n for e in edges for n in e[:2]} | set(nodes or ()))
    return SimilarityGraph(
        nodes=tuple(GraphNode(str(n), "idea", str(n)) for n in node_ids),
        edges=tuple((str(a), str(b), float(w)) for a, b, w in edges),
        min_sim=0.0,
    )


def exhaustive_best_modularity(adj):
    """Oracle: maximum modularity over all partitions (Bell enumeration)."""
    nodes = sorted(adj)

    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in partitions(rest):
            for i, block in enumerate(part):
                yield part[:i] + [block + [first]] + part[i + 1 :]
            yield [[first]] + part

    best = -1.0
    for part in partitions(nodes):
        assignment = {}
        for ci, block in enumerate(part):
            for n in block:
                assignment[n] = ci
        best = max(best, modularity(adj, assignment))
    return best


class TestLouvain:
    def test_two_disjoint_triangles(self):
        edges = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]
        g = graph_from_edges(edges)
        p = louvain(g, seed=0)
        groups = p.groups()
        assert len(groups) == 2
        assert p.modularity == pytest.approx(0.5, abs=1e-9)
        communities = sorted(frozenset(v) for v in groups.values())
        assert communities == [frozenset({"0", "1", "2"}), frozenset({"3", "4", "5"})]
        oracle = exhaustive_best_modularity(g.adjacency())
        assert p.modularity == pytest.approx(oracle, abs=1e-9)

    def test_single_edge_merges_to_one_community(self):
        g = graph_from_edges([(0, 1, 1)])
        p = louvain(g, seed=0)
        assert len(p.groups()) == 1
        assert p.modularity == pytest.approx(0.0, abs=1e-12)
        assert exhaustive_best_modularity(g.adjacency()) == pytest.approx(0.0, abs=1e-12)

    def test_edgeless_graph_all_singletons(self):
        g = graph_from_edges([], nodes=["a", "b", "c"])
        p = louvain(g, seed=0)
        assert len(p.groups()) == 3
        assert p.modularity == 0.0

    def test_empty_graph_rejected(self):
        g = SimilarityGraph(nodes=(), edges=(), min_sim=0.0)
        with pytest.raises(NoveltyError):
            louvain(g)

    def test_modularity_history_non_decreasing(self):
        rng = random.Random(9)
        for trial in range(10):
            n = rng.randint(4, 9)
            edges = [
                (i, j, rng.choice([0.5, 1.0, 2.0]))
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.5
            ]
            if not edges:
                continue
            p = louvain(graph_from_edges(edges), seed=trial)
            hist = p.modularity_history
            for a, b in zip(hist, hist[1:]):
                assert b >= a - 1e-12

    def test_beats_singletons(self):
        rng = random.Random(13)
        for trial in range(10):
            n = rng.randint(3, 8)
            edges = [
                (i, j, rng.uniform(0.2, 1.0))
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.6
            ]
            if not edges:
                continue
            g = graph_from_edges(edges)
            p = louvain(g, seed=trial)
            singles = {node.id: i for i, node in enumerate(g.nodes)}
            assert p.modularity >= modularity(g.adjacency(), singles) - 1e-12

    def test_textbook_modularity_hand_checked(self):
        # Path a-b-c, unit weights, m=2.
        adj = {"a": {"b": 1.0}, "b": {"a": 1.0, "c": 1.0}, "c": {"b": 1.0}}
        # All one community: 2/2 - (4/4)^2 = 0.
        assert modularity(adj, {"a": 0, "b": 0, "c": 0}) == pytest.approx(0.0)
        # {a,b},{c}: e={ab}=1 -> 1/2 - (3/4)^2 plus 0 - (1/4)^2 = 0.5-0.5625-0.0625
        assert modularity(adj, {"a": 0, "b": 0, "c": 1}) == pytest.approx(-0.125)
        # Singletons: 0 - [(1/4)^2 + (2/4)^2 + (1/4)^2] = -0.375
        assert modularity(adj, {"a": 0, "b": 1, "c": 2}) == pytest.approx(-0.375)

    def test_seeded_determinism(self):
        edges = [(i, (i + 1) % 10, 1.0) for i in range(10)]
        g = graph_from_edges(edges)
        p1 = louvain(g, seed=4)
        p2 = louvain(g, seed=4)
        assert p1.communities == p2.communities
        assert p1.modularity == p2.modularity


class TestClusterTopics:
    def test_community_of_identical_docs(self, analyzed_corpus):
        metadata = {d: md for d, (_, md) in analyzed_corpus.items()}
        partition = Partition(
            communities={"idea-03": 0, "idea-04": 0}, modularity=0.0, seed=0
        )
        rows = cluster_topics(partition, metadata, top_n=5)
        assert rows[0].size == 2
        top = [c for c, _ in rows[0].top_concepts]
        assert "regolith" in top

    def test_counts_match_hand_aggregation(self, analyzed_corpus):
        metadata = {d: md for d, (_, md) in analyzed_corpus.items()}
        ids = ["idea-01", "idea-02", "study-01"]
        partition = Partition(
            communities={i: 0 for i in ids}, modularity=0.0, seed=0
        )
        rows = cluster_topics(partition, metadata, top_n=100)
        expected = {}
        for doc_id in ids:
            for cid, count in metadata[doc_id].known_concepts:
                expected[cid] = expected.get(cid, 0) + count
        got = dict(rows[0].top_concepts)
        assert got == expected

    def test_missing_metadata_rejected(self):
        partition = Partition(communities={"x": 0}, modularity=0.0, seed=0)
        with pytest.raises(MetadataMissingError):
            cluster_topics(partition, {}, top_n=3)

    def test_table_rendering_shape(self, analyzed_corpus):
        from spacedocs.novelty import render_cluster_table

        metadata = {d: md for d, (_, md) in analyzed_corpus.items()}
        partition = Partition(
            communities={"idea-01": 0, "idea-02": 0, "idea-03": 1},
            modularity=0.0,
            seed=0,
        )
        text = render_cluster_table(cluster_topics(partition, metadata))
        lines = text.splitlines()
        assert lines[0].startswith("Ideas | Top Concepts")
        assert lines[2].strip().startswith("2 |")
