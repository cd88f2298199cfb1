"""Command-line interface.

Every subcommand writes machine-readable output to a stated path and a
short human summary to stdout. Report subcommands also render PNG figures
next to their delimited output unless ``--no-figures`` is given.

Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import date as _date
from pathlib import Path

from ..corpus import (
    CorpusError,
    CorpusFilter,
    SegmentationRules,
    load_corpus,
    passage_index_ids,
    segment_report,
)
from ..index import Index, IndexError_, IndexUnit, build_index, eval_retrieval, load_testset
from ..kgraph import GraphError, analyze_collection, load_graph
from ..novelty import NoveltyError, export_gexf, export_graph_records
from ..qa import QAError, eval_reader
from ..quizgen import QuestionCandidate, QuizError, assemble_quiz
from ..termgap import TermStatsError
from .config import ConfigError, load_config
from .engine import Engine, EngineError, NotFoundError, canonical_json

DATA_ERRORS = (
    CorpusError,
    GraphError,
    IndexError_,
    QAError,
    QuizError,
    NoveltyError,
    TermStatsError,
    ConfigError,
    EngineError,
    NotFoundError,
    FileNotFoundError,
)


def _write(path: str | Path, payload) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(payload, bytes):
        out.write_bytes(payload)
    elif isinstance(payload, str):
        out.write_text(payload, encoding="utf-8")
    else:
        out.write_bytes(canonical_json(payload))
    return out


def _engine(args) -> Engine:
    return Engine(load_config(args.config))


# -- subcommand handlers --------------------------------------------------------


def cmd_ingest(args) -> int:
    corpus_filter = CorpusFilter(
        min_date=_date.fromisoformat(args.min_date) if args.min_date else None,
        field_codes=frozenset(args.codes.split(",")) if args.codes else None,
        sources=frozenset(args.sources.split(",")) if args.sources else None,
    )
    collection = load_corpus(args.corpus, corpus_filter, label=args.label)
    report = collection.load_report
    records = [
        {
            "id": d.id,
            "source": d.source,
            "title": d.title,
            "body": d.body,
            "date": d.date.isoformat() if d.date else None,
            "for_codes": list(d.fields_of_research),
            "keywords": list(d.keywords),
        }
        for d in collection
    ]
    lines = "\n".join(json.dumps(r, ensure_ascii=False) for r in records)
    _write(args.out, lines + "\n" if lines else "")
    print(
        f"ingested {report.kept}/{report.total_records} documents -> {args.out} "
        f"(rejected: date {report.rejected_by_min_date}, codes "
        f"{report.rejected_by_field_codes}, sources {report.rejected_by_sources})"
    )
    return 0


def cmd_annotate(args) -> int:
    collection = load_corpus(args.corpus)
    kg = load_graph(args.kg)
    analyzed = analyze_collection(collection, kg)
    lines = []
    for doc_id, (mentions, metadata) in analyzed.items():
        lines.append(
            json.dumps(
                {
                    "id": doc_id,
                    "mentions": [
                        {
                            "concept_id": m.concept_id,
                            "char_start": m.char_start,
                            "char_end": m.char_end,
                            "matched_lemma": m.matched_lemma,
                            "alternatives": list(m.ambiguous_alternatives),
                        }
                        for m in mentions
                    ],
                    "metadata": metadata.to_dict(),
                },
                ensure_ascii=False,
            )
        )
    _write(args.out, "\n".join(lines) + "\n")
    total_mentions = sum(len(m) for m, _ in analyzed.values())
    print(f"annotated {len(analyzed)} documents, {total_mentions} mentions -> {args.out}")
    return 0


def cmd_index(args) -> int:
    collection = load_corpus(args.corpus)
    if args.unit == "passage":
        rules = (
            SegmentationRules.from_file(args.rules) if args.rules else SegmentationRules()
        )
        passages = []
        for doc in collection:
            if doc.source == "report" or args.all_sources:
                passages.extend(segment_report(doc, rules).passages)
        store = passage_index_ids(passages)
        units = [IndexUnit(unit_id=pid, fields={"text": p.text}) for pid, p in store.items()]
    else:
        units = [
            IndexUnit(unit_id=d.id, fields={"text": f"{d.title}\n{d.body}"})
            for d in collection
        ]
    index = build_index(units, k1=args.k1, b=args.b)
    index.save(args.out)
    print(f"indexed {index.unit_count} {args.unit} units -> {args.out}")
    return 0


def cmd_ask(args) -> int:
    engine = _engine(args)
    result = engine.ask(args.question, k=args.k, scope=args.scope, threshold=args.threshold)
    payload = result.to_dict()
    if args.out:
        _write(args.out, payload)
    if result.no_answer:
        print("no answer found")
    else:
        for span in result.primary_answers:
            print(f"[{span.score:.2f}] {span.text}  ({span.passage_id})")
        if not result.primary_answers:
            print(
                f"only low-confidence answers (< {result.threshold}); "
                f"best: {result.low_confidence_answers[0].text!r} "
                f"[{result.low_confidence_answers[0].score:.2f}]"
            )
    return 0


def cmd_quiz_generate(args) -> int:
    engine = _engine(args)
    created = engine.quiz_create(args.doc, args.sections.split(",") if args.sections else [])
    _write(args.out, created)
    n_valid = sum(1 for c in created["candidates"] if c["status"] == "validated")
    print(
        f"session {created['session_id']}: {len(created['candidates'])} candidates "
        f"({n_valid} validated) -> {args.out}"
    )
    return 0


def cmd_quiz_render(args) -> int:
    raw = json.loads(Path(args.candidates).read_text(encoding="utf-8"))
    cand_list = raw["candidates"] if isinstance(raw, dict) else raw
    by_id = {c["id"]: c for c in cand_list}
    chosen_ids = args.select.split(",")
    missing = [cid for cid in chosen_ids if cid not in by_id]
    if missing:
        raise QuizError(f"unknown candidate ids: {missing}")
    engine = _engine(args)
    selected = [QuestionCandidate.from_dict(by_id[cid]) for cid in chosen_ids]
    quiz, rendered = assemble_quiz(selected, args.title, engine.passages)
    _write(args.out, rendered)
    print(f"quiz with {len(quiz.entries)} questions -> {args.out}")
    return 0


def cmd_termgap(args) -> int:
    from ..termgap import render_text_report

    engine = _engine(args)
    report = engine.termgap_report(pareto_fraction=args.pareto)
    _write(args.out, report.to_dict())
    tsv_path = Path(args.out).with_suffix(".tsv")
    _write(tsv_path, _termgap_tsv(report))
    _write(Path(args.out).with_suffix(".txt"), render_text_report(report))
    print(_termgap_summary(report))
    if not args.no_figures:
        from ..figures import save_category_figure, save_weirdness_figure

        f1 = save_weirdness_figure(report, Path(args.out).with_suffix(".weirdness.png"))
        f2 = save_category_figure(report, Path(args.out).with_suffix(".categories.png"))
        print(f"figures: {f1}, {f2}")
    print(f"report -> {args.out}, {tsv_path}, {Path(args.out).with_suffix('.txt')}")
    return 0


def _termgap_tsv(report) -> str:
    lines = ["category\tknown\tunknown\tpareto_selected\ttotal"]
    for cat in report.categories.values():
        lines.append(
            f"{cat.category}\t{cat.known}\t{cat.unknown}\t"
            f"{len(cat.pareto_selected)}\t{cat.total}"
        )
    lines.append("")
    lines.append("table\tterm\tf_s\tf_g\tweirdness")
    for t in report.highest_weirdness:
        lines.append(f"highest\t{t.term}\t{t.f_s}\t{t.f_g}\t{t.weirdness:.6g}")
    for t in report.lowest_weirdness:
        lines.append(f"lowest\t{t.term}\t{t.f_s}\t{t.f_g}\t{t.weirdness:.6g}")
    return "\n".join(lines) + "\n"


def _termgap_summary(report) -> str:
    parts = []
    for cat in report.categories.values():
        parts.append(
            f"{cat.category}: {cat.known} known / {cat.unknown} unknown "
            f"(top {len(cat.pareto_selected)} selected)"
        )
    return "; ".join(parts)


def cmd_novelty_score(args) -> int:
    engine = _engine(args)
    result = engine.novelty(args.idea)
    record = engine.document(args.idea)
    _write(args.out, result.amend_record(record))
    print(
        f"idea {args.idea}: noveltyScore={result.novelty_score:.1f} "
        f"({len(result.similar_ideas)} similar ideas, "
        f"{len(result.similar_projects)} similar studies/projects) -> {args.out}"
    )
    return 0


def cmd_novelty_graph(args) -> int:
    engine = _engine(args)
    graph = engine.graph(args.min_sim)
    _write(args.out, export_graph_records(graph))
    outputs = [str(args.out)]
    if args.gexf:
        _write(args.gexf, export_gexf(graph))
        outputs.append(str(args.gexf))
    if not args.no_figures:
        from ..figures import save_graph_figure

        fig = save_graph_figure(graph, Path(args.out).with_suffix(".png"))
        outputs.append(str(fig))
    print(
        f"graph: {len(graph.nodes)} nodes, {len(graph.edges)} edges "
        f"(min_sim {graph.min_sim:g}) -> {', '.join(outputs)}"
    )
    return 0


def cmd_novelty_clusters(args) -> int:
    engine = _engine(args)
    payload = engine.clusters(min_sim=args.min_sim, seed=args.seed)
    _write(args.out, payload)
    if not args.no_figures:
        from ..figures import save_cluster_figure
        from ..novelty import ClusterTopics

        rows = [
            ClusterTopics(
                community=r["community"],
                size=r["size"],
                top_concepts=tuple((c, n) for c, n in r["top_concepts"]),
            )
            for r in payload["clusters"]
        ]
        save_cluster_figure(rows, Path(args.out).with_suffix(".png"))
    print(
        f"{len(payload['clusters'])} clusters, modularity {payload['modularity']:.3f} "
        f"-> {args.out}"
    )
    return 0


def cmd_eval_retrieval(args) -> int:
    index = Index.load(args.index)
    testset = load_testset(args.testset)
    metrics = eval_retrieval(index, testset, k=args.k, scorer=args.scorer)
    if args.out:
        _write(args.out, metrics.to_dict())
        if not args.no_figures:
            from ..figures import save_metrics_figure

            save_metrics_figure(metrics, Path(args.out).with_suffix(".png"))
    print(
        f"R@{args.k}={metrics.recall_at_k:.4f} MRR@{args.k}={metrics.mrr_at_k:.4f} "
        f"Accuracy={metrics.accuracy_at_k:.4f} over {metrics.queries} queries"
    )
    return 0


def cmd_eval_reader(args) -> int:
    pairs = []
    for i, line in enumerate(Path(args.predictions).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise QAError(f"{args.predictions}:{i}: expected 'predicted<TAB>gold'")
        pairs.append((parts[0], parts[1]))
    metrics = eval_reader(pairs)
    if args.out:
        _write(args.out, metrics.to_dict())
    print(
        f"precision={metrics.precision:.4f} recall={metrics.recall:.4f} "
        f"f1={metrics.f1:.4f} (macro over {len(pairs)} pairs)"
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    engine = _engine(args)
    app = create_app(engine)
    host = args.host or engine.config.host
    port = args.port or engine.config.port
    print(f"serving on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spacedocs",
        description="Space-document analytics: QA, quizzes, terminology gap, novelty.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load, filter, and normalize a corpus file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-date", default=None)
    p.add_argument("--codes", default=None, help="comma-separated FOR code prefixes")
    p.add_argument("--sources", default=None, help="comma-separated source kinds")
    p.add_argument("--label", default="general")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("annotate", help="annotate a corpus against the knowledge graph")
    p.add_argument("--corpus", required=True)
    p.add_argument("--kg", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("index", help="build and persist an inverted index")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--unit", choices=("passage", "document"), default="passage")
    p.add_argument("--rules", default=None, help="segmentation rules JSON")
    p.add_argument("--all-sources", action="store_true")
    p.add_argument("--k1", type=float, default=1.2)
    p.add_argument("--b", type=float, default=0.75)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("ask", help="answer a question over the report passages")
    p.add_argument("--config", required=True)
    p.add_argument("--question", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--scope", default=None, help="restrict to one report id")
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_ask)

    p = sub.add_parser("quiz", help="quiz generation and rendering")
    quiz_sub = p.add_subparsers(dest="quiz_command", required=True)
    g = quiz_sub.add_parser("generate", help="generate candidates for a document")
    g.add_argument("--config", required=True)
    g.add_argument("--doc", required=True)
    g.add_argument("--sections", default=None, help="comma-separated section prefixes")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_quiz_generate)
    r = quiz_sub.add_parser("render", help="render a quiz from selected candidates")
    r.add_argument("--config", required=True)
    r.add_argument("--candidates", required=True)
    r.add_argument("--select", required=True, help="comma-separated candidate ids")
    r.add_argument("--title", default="Quiz")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_quiz_render)

    p = sub.add_parser("termgap", help="terminology-gap report")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--pareto", type=float, default=None)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_termgap)

    p = sub.add_parser("novelty", help="novelty scoring and graph exploration")
    nov_sub = p.add_subparsers(dest="novelty_command", required=True)
    s = nov_sub.add_parser("score", help="score one idea")
    s.add_argument("--config", required=True)
    s.add_argument("--idea", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_novelty_score)
    g = nov_sub.add_parser("graph", help="export the similarity graph")
    g.add_argument("--config", required=True)
    g.add_argument("--min-sim", type=float, default=None)
    g.add_argument("--out", required=True)
    g.add_argument("--gexf", default=None)
    g.add_argument("--no-figures", action="store_true")
    g.set_defaults(func=cmd_novelty_graph)
    c = nov_sub.add_parser("clusters", help="Louvain communities and topics")
    c.add_argument("--config", required=True)
    c.add_argument("--min-sim", type=float, default=None)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--out", required=True)
    c.add_argument("--no-figures", action="store_true")
    c.set_defaults(func=cmd_novelty_clusters)

    p = sub.add_parser("eval", help="evaluation harnesses")
    eval_sub = p.add_subparsers(dest="eval_command", required=True)
    er = eval_sub.add_parser("retrieval", help="R@k / MRR@k / accuracy over a testset")
    er.add_argument("--index", required=True)
    er.add_argument("--testset", required=True)
    er.add_argument("--k", type=int, default=10)
    er.add_argument("--scorer", choices=("bm25", "tfidf"), default="bm25")
    er.add_argument("--out", default=None)
    er.add_argument("--no-figures", action="store_true")
    er.set_defaults(func=cmd_eval_retrieval)
    eg = eval_sub.add_parser("reader", help="token P/R/F1 over prediction pairs")
    eg.add_argument("--predictions", required=True)
    eg.add_argument("--out", default=None)
    eg.set_defaults(func=cmd_eval_reader)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", required=True)
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
