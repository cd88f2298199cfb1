"""Novelty scoring, similarity graph, and Louvain community detection.

An idea's novelty is ``100 * (1 - max sim)`` where the max runs over its
similarities to prior ideas, studies, and projects (an empty collection
contributes 0). Similarity is the cosine of concatenated field-weighted
document profiles built from extracted metadata (main lemmas, main
syncons) plus the document's top TF-IDF keyword terms, so it already
lives in [0, 1] and the score needs no further normalization.

The similarity graph keeps edges at or above a cutoff; communities come
from a seeded two-phase Louvain whose per-phase modularity trace is
exposed for verification.
"""

from __future__ import annotations

import random
import xml.sax.saxutils as _xml
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .index import Index, cosine_of_vectors
from .kgraph import DocumentMetadata

DEFAULT_MIN_SIM = 0.15
DEFAULT_TOP_SIMILAR = 5
DEFAULT_KEYWORD_TERMS = 10

# Field weights for the similarity profile (metadata emphasis per design).
DEFAULT_PROFILE_WEIGHTS = {
    "main_lemmas": 2.0,
    "main_syncons": 2.0,
    "keywords": 1.0,
}


class NoveltyError(Exception):
    pass


class MetadataMissingError(NoveltyError):
    def __init__(self, doc_id: str):
        super().__init__(
            f"document {doc_id!r} has no extracted metadata; run annotation "
            "and metadata extraction before scoring"
        )
        self.doc_id = doc_id


Profile = dict[tuple[str, str], float]


def build_profile(
    metadata: DocumentMetadata,
    keyword_terms: Sequence[tuple[str, float]] = (),
    weights: Mapping[str, float] | None = None,
) -> Profile:
    """Concatenated field-weighted vector for similarity comparisons."""
    weights = weights or DEFAULT_PROFILE_WEIGHTS
    vec: Profile = {}
    for fname, ranked in (
        ("main_lemmas", metadata.main_lemmas),
        ("main_syncons", metadata.main_syncons),
        ("keywords", keyword_terms),
    ):
        w = weights.get(fname, 0.0)
        if w == 0.0:
            continue
        for term, score in ranked:
            if score > 0:
                vec[(fname, term)] = w * float(score)
    return vec


def top_keyword_terms(
    doc_index: Index, unit_id: str, n: int = DEFAULT_KEYWORD_TERMS
) -> list[tuple[str, float]]:
    """Highest TF-IDF terms of the indexed title+description text."""
    vec = doc_index.unit_vector(unit_id, fields=["text"])
    ranked = sorted(vec.items(), key=lambda kv: (-kv[1], kv[0][1]))
    return [(term, value) for (_, term), value in ranked[:n]]


class ProfileStore:
    """doc id -> profile vector, with known-concept sets for explanations."""

    def __init__(
        self,
        profiles: Mapping[str, Profile],
        known_concepts: Mapping[str, Sequence[tuple[str, float]]] | None = None,
    ):
        self.profiles = dict(profiles)
        self.known_concepts = {
            doc_id: [term for term, _ in ranked]
            for doc_id, ranked in (known_concepts or {}).items()
        }

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.profiles

    def profile(self, doc_id: str) -> Profile:
        if doc_id not in self.profiles:
            raise MetadataMissingError(doc_id)
        return self.profiles[doc_id]

    def shared_concepts(self, a: str, b: str) -> list[str]:
        ca = set(self.known_concepts.get(a, ()))
        cb = set(self.known_concepts.get(b, ()))
        return sorted(ca & cb)


def profiles_from_metadata(
    metadata_store: Mapping[str, DocumentMetadata],
    doc_index: Index | None = None,
    weights: Mapping[str, float] | None = None,
    keyword_terms: int = DEFAULT_KEYWORD_TERMS,
) -> ProfileStore:
    profiles = {}
    for doc_id, md in metadata_store.items():
        kw = (
            top_keyword_terms(doc_index, doc_id, keyword_terms)
            if doc_index is not None and doc_id in doc_index.unit_terms
            else []
        )
        profiles[doc_id] = build_profile(md, kw, weights)
    return ProfileStore(
        profiles,
        known_concepts={d: md.known_concepts for d, md in metadata_store.items()},
    )


def similarity(store: ProfileStore, a: str, b: str) -> float:
    """Cosine similarity of two document profiles; symmetric, in [0, 1]."""
    return cosine_of_vectors(store.profile(a), store.profile(b)).value


@dataclass(frozen=True)
class SimilarDocument:
    doc_id: str
    sim: float
    shared_concepts: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "sim": self.sim,
            "shared_concepts": list(self.shared_concepts),
        }


@dataclass(frozen=True)
class NoveltyResult:
    idea_id: str
    novelty_calculated: bool
    novelty_score: float
    similar_ideas: tuple[SimilarDocument, ...]
    similar_projects: tuple[SimilarDocument, ...]

    def to_dict(self) -> dict:
        """Record fields under the exact external key names."""
        return {
            "idea_id": self.idea_id,
            "noveltyCalculated": self.novelty_calculated,
            "noveltyScore": self.novelty_score,
            "similarIdeas": [s.to_dict() for s in self.similar_ideas],
            "similarProjects": [s.to_dict() for s in self.similar_projects],
        }

    def amend_record(self, record: dict) -> dict:
        out = dict(record)
        out.update(
            {
                "noveltyCalculated": self.novelty_calculated,
                "noveltyScore": self.novelty_score,
                "similarIdeas": [s.to_dict() for s in self.similar_ideas],
                "similarProjects": [s.to_dict() for s in self.similar_projects],
            }
        )
        return out


def novelty_score(
    idea_id: str,
    store: ProfileStore,
    ideas: Sequence[str],
    studies: Sequence[str],
    projects: Sequence[str],
    top_n: int = DEFAULT_TOP_SIMILAR,
) -> NoveltyResult:
    """Exact novelty: 100 * (1 - max sim over all three collections)."""
    if idea_id in set(ideas):
        raise NoveltyError(
            f"idea {idea_id!r} is present in the ideas collection; exclude it "
            "before scoring (self-comparison would force novelty 0)"
        )
    idea_profile = store.profile(idea_id)

    def sims(members: Sequence[str]) -> list[tuple[str, float]]:
        out = []
        for other in members:
            sim = cosine_of_vectors(idea_profile, store.profile(other)).value
            out.append((other, sim))
        return out

    idea_sims = sims(ideas)
    project_sims = sims(list(studies) + list(projects))
    all_sims = [s for _, s in idea_sims] + [s for _, s in project_sims]
    max_sim = max(all_sims) if all_sims else 0.0
    score = 100.0 * (1.0 - max_sim)

    def top(pairs: list[tuple[str, float]]) -> tuple[SimilarDocument, ...]:
        ranked = sorted(pairs, key=lambda kv: (-kv[1], kv[0]))
        return tuple(
            SimilarDocument(
                doc_id=doc_id,
                sim=sim,
                shared_concepts=tuple(store.shared_concepts(idea_id, doc_id)),
            )
            for doc_id, sim in ranked[:top_n]
            if sim > 0.0
        )

    return NoveltyResult(
        idea_id=idea_id,
        novelty_calculated=True,
        novelty_score=score,
        similar_ideas=top(idea_sims),
        similar_projects=top(project_sims),
    )


# -- similarity graph ---------------------------------------------------------


@dataclass(frozen=True)
class GraphNode:
    id: str
    kind: str
    label: str

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "label": self.label}


@dataclass(frozen=True)
class SimilarityGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[tuple[str, str, float], ...]
    min_sim: float

    def adjacency(self) -> dict[str, dict[str, float]]:
        adj: dict[str, dict[str, float]] = {n.id: {} for n in self.nodes}
        for a, b, w in self.edges:
            adj[a][b] = w
            adj[b][a] = w
        return adj

    def to_dict(self) -> dict:
        return {
            "nodes": [n.to_dict() for n in self.nodes],
            "edges": [{"a": a, "b": b, "weight": w} for a, b, w in self.edges],
            "min_sim": self.min_sim,
        }


def build_similarity_graph(
    store: ProfileStore,
    members: Mapping[str, Sequence[tuple[str, str]]] | Sequence[tuple[str, str, str]],
    min_sim: float = DEFAULT_MIN_SIM,
) -> SimilarityGraph:
    """Pairwise-similarity graph; ``members`` rows are (doc_id, kind, label)."""
    rows = list(members) if not isinstance(members, Mapping) else [
        (doc_id, kind, label)
        for kind, entries in members.items()
        for doc_id, label in entries
    ]
    nodes = tuple(GraphNode(id=r[0], kind=r[1], label=r[2]) for r in rows)
    ids = [n.id for n in nodes]
    if len(set(ids)) != len(ids):
        raise NoveltyError("duplicate node ids in similarity graph")
    edges = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            sim = cosine_of_vectors(store.profile(a), store.profile(b)).value
            if sim >= min_sim:
                edge = (a, b, sim) if a < b else (b, a, sim)
                edges.append(edge)
    edges.sort()
    return SimilarityGraph(nodes=nodes, edges=tuple(edges), min_sim=min_sim)


def export_graph_records(graph: SimilarityGraph) -> str:
    """Plain node/edge record file for the web UI."""
    lines = [f"node\t{n.id}\t{n.kind}\t{n.label}" for n in graph.nodes]
    lines += [f"edge\t{a}\t{b}\t{w:.6f}" for a, b, w in graph.edges]
    return "\n".join(lines) + "\n"


def export_gexf(graph: SimilarityGraph) -> str:
    """Minimal GEXF 1.2 export for external graph tools."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<gexf xmlns="http://gexf.net/1.2" version="1.2">',
        '  <graph defaultedgetype="undirected">',
        "    <nodes>",
    ]
    for n in graph.nodes:
        out.append(
            f'      <node id={_xml.quoteattr(n.id)} label={_xml.quoteattr(n.label)} />'
        )
    out.append("    </nodes>")
    out.append("    <edges>")
    for i, (a, b, w) in enumerate(graph.edges):
        out.append(
            f'      <edge id="{i}" source={_xml.quoteattr(a)} '
            f'target={_xml.quoteattr(b)} weight="{w:.6f}" />'
        )
    out.append("    </edges>")
    out.append("  </graph>")
    out.append("</gexf>")
    return "\n".join(out) + "\n"


# -- Louvain community detection -----------------------------------------------


@dataclass(frozen=True)
class Partition:
    communities: dict[str, int]
    modularity: float
    seed: int
    modularity_history: tuple[float, ...] = ()

    def groups(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for node, comm in sorted(self.communities.items()):
            out.setdefault(comm, []).append(node)
        return out

    def to_dict(self) -> dict:
        return {
            "communities": dict(sorted(self.communities.items())),
            "modularity": self.modularity,
            "seed": self.seed,
            "modularity_history": list(self.modularity_history),
        }


def modularity(adj: Mapping[str, Mapping[str, float]], partition: Mapping[str, int]) -> float:
    """Q = sum_c [e_c / m - (d_c / 2m)^2] over weighted undirected adjacency."""
    two_m = sum(sum(nbrs.values()) for nbrs in adj.values())
    if two_m == 0.0:
        return 0.0
    intra: Counter = Counter()
    degree: Counter = Counter()
    for v, nbrs in adj.items():
        cv = partition[v]
        degree[cv] += sum(nbrs.values())
        for u, w in nbrs.items():
            if partition[u] == cv:
                intra[cv] += w
    return sum(
        intra[c] / two_m - (degree[c] / two_m) ** 2 for c in degree
    )


def louvain(
    graph: SimilarityGraph,
    resolution: float = 1.0,
    seed: int = 0,
    restarts: int = 8,
) -> Partition:
    """Two-phase Louvain, seeded; best of ``restarts`` shuffled runs.

    Greedy local moves can stall in poor optima on small graphs, so the
    seed derives a fixed set of visit orders and the best-modularity run
    wins (ties keep the earliest run). Fully deterministic for a given
    seed. The returned partition carries the winning run's per-phase
    modularity trace.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    master = random.Random(seed)
    run_seeds = [master.randrange(2**62) for _ in range(restarts)]
    best: Partition | None = None
    for run_seed in run_seeds:
        candidate = _louvain_single(graph, resolution, run_seed)
        if best is None or candidate.modularity > best.modularity + 1e-15:
            best = candidate
    return Partition(
        communities=best.communities,
        modularity=best.modularity,
        seed=seed,
        modularity_history=best.modularity_history,
    )


def _louvain_single(graph: SimilarityGraph, resolution: float, seed: int) -> Partition:
    base_adj = graph.adjacency()
    if not base_adj:
        raise NoveltyError("cannot partition an empty graph")
    rng = random.Random(seed)

    node_ids = sorted(base_adj)
    mapping = {v: i for i, v in enumerate(node_ids)}  # original -> current node
    current: dict[int, dict[int, float]] = {
        mapping[v]: {mapping[u]: w for u, w in nbrs.items()}
        for v, nbrs in base_adj.items()
    }

    def induced_partition() -> dict[str, int]:
        return {v: mapping[v] for v in node_ids}

    history = [modularity(base_adj, induced_partition())]
    while True:
        m = sum(sum(nbrs.values()) for nbrs in current.values()) / 2.0
        if m == 0.0:
            break
        comm, improved = _louvain_level(current, m, resolution, rng)
        if not improved:
            break
        current, remap = _aggregate(current, comm)
        mapping = {v: remap[comm[mapping[v]]] for v in node_ids}
        history.append(modularity(base_adj, induced_partition()))

    raw = induced_partition()
    relabel: dict[int, int] = {}
    for v in node_ids:
        if raw[v] not in relabel:
            relabel[raw[v]] = len(relabel)
    communities = {v: relabel[raw[v]] for v in node_ids}
    return Partition(
        communities=communities,
        modularity=modularity(base_adj, communities),
        seed=seed,
        modularity_history=tuple(history),
    )


def _louvain_level(
    adj: dict[int, dict[int, float]],
    m: float,
    resolution: float,
    rng: random.Random,
) -> tuple[dict[int, int], bool]:
    nodes = sorted(adj)
    comm = {v: v for v in nodes}
    k = {v: sum(nbrs.values()) for v, nbrs in adj.items()}
    tot = dict(k)
    order = nodes[:]
    rng.shuffle(order)
    improved_any = False
    moved = True
    while moved:
        moved = False
        for v in order:
            cv = comm[v]
            neigh: dict[int, float] = {}
            for u, w in adj[v].items():
                if u != v:
                    neigh[comm[u]] = neigh.get(comm[u], 0.0) + w
            tot[cv] -= k[v]
            best_c = cv
            best_gain = neigh.get(cv, 0.0) - resolution * tot[cv] * k[v] / (2.0 * m)
            for c in sorted(neigh):
                if c == cv:
                    continue
                gain = neigh[c] - resolution * tot[c] * k[v] / (2.0 * m)
                if gain > best_gain + 1e-12:
                    best_gain = gain
                    best_c = c
            tot[best_c] = tot.get(best_c, 0.0) + k[v]
            if best_c != cv:
                comm[v] = best_c
                moved = True
                improved_any = True
    return comm, improved_any


def _aggregate(
    adj: dict[int, dict[int, float]], comm: dict[int, int]
) -> tuple[dict[int, dict[int, float]], dict[int, int]]:
    ids = sorted(set(comm.values()))
    remap = {c: i for i, c in enumerate(ids)}
    new_adj: dict[int, dict[int, float]] = {remap[c]: {} for c in ids}
    for v, nbrs in adj.items():
        cv = remap[comm[v]]
        row = new_adj[cv]
        for u, w in nbrs.items():
            cu = remap[comm[u]]
            row[cu] = row.get(cu, 0.0) + w
    return new_adj, remap


# -- cluster topics -------------------------------------------------------------


@dataclass(frozen=True)
class ClusterTopics:
    community: int
    size: int
    top_concepts: tuple[tuple[str, float], ...]

    def to_dict(self) -> dict:
        return {
            "community": self.community,
            "size": self.size,
            "top_concepts": [[c, n] for c, n in self.top_concepts],
        }


def cluster_topics(
    partition: Partition,
    metadata_store: Mapping[str, DocumentMetadata],
    top_n: int = 10,
    label_fn: Callable[[str], str] | None = None,
) -> list[ClusterTopics]:
    """Per-community concept aggregation, largest communities first."""
    label_of = label_fn or (lambda concept_id: concept_id)
    rows = []
    for comm_id, members in sorted(partition.groups().items()):
        counts: Counter = Counter()
        for doc_id in members:
            md = metadata_store.get(doc_id)
            if md is None:
                raise MetadataMissingError(doc_id)
            for concept_id, score in md.known_concepts:
                counts[label_of(concept_id)] += score
        top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
        rows.append(
            ClusterTopics(
                community=comm_id,
                size=len(members),
                top_concepts=tuple((c, n) for c, n in top),
            )
        )
    rows.sort(key=lambda r: (-r.size, r.community))
    return rows


def render_cluster_table(rows: Sequence[ClusterTopics]) -> str:
    lines = ["Ideas | Top Concepts in Cluster", "----- | -----------------------"]
    for row in rows:
        concepts = ", ".join(c for c, _ in row.top_concepts)
        lines.append(f"{row.size:5d} | {concepts}")
    return "\n".join(lines) + "\n"
