import json
import time
from pathlib import Path

import pytest

from tests.acceptance_log import RESULTS as _ACCEPTANCE_RESULTS
from tests.acceptance_log import SESSION_START as _SESSION_START


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, detail in _ACCEPTANCE_RESULTS:
            suffix = f"  ({detail})" if detail else ""
            terminalreporter.write_line(f"PASS  {name}{suffix}")
        elapsed = time.perf_counter() - _SESSION_START
        terminalreporter.write_line(f"suite wall time: {elapsed:.1f}s (budget 180s)")

from spacedocs.corpus import load_corpus, passage_index_ids, segment_report
from spacedocs.index import IndexUnit, build_index
from spacedocs.kgraph import load_graph
from spacedocs.lexicon import Lexicon
from spacedocs.qa import BaselineReader, QAPipeline

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

TOY_REPORT_IDS = ("report-athena", "report-marsfast", "report-cryoirtel")


@pytest.fixture(scope="session")
def lexicon():
    return Lexicon()


@pytest.fixture(scope="session")
def mini_corpus():
    return load_corpus(FIXTURES / "mini_corpus.jsonl")


@pytest.fixture(scope="session")
def mini_kg():
    return load_graph(FIXTURES / "mini_kg.tsv")


@pytest.fixture(scope="session")
def toy_passages(mini_corpus):
    """The 20-passage QA toy corpus: three segmented CDF-style reports."""
    passages = []
    for doc_id in TOY_REPORT_IDS:
        passages.extend(segment_report(mini_corpus[doc_id]).passages)
    return passage_index_ids(passages)


@pytest.fixture(scope="session")
def toy_index(toy_passages):
    units = [IndexUnit(pid, {"text": p.text}) for pid, p in toy_passages.items()]
    return build_index(units)


@pytest.fixture(scope="session")
def toy_pipeline(toy_index, toy_passages):
    reader = BaselineReader(idf=lambda t: max(toy_index.bm25_idf("text", t), 0.0))
    return QAPipeline(index=toy_index, passages=toy_passages, reader=reader)


@pytest.fixture(scope="session")
def qa_testset():
    from spacedocs.qa import load_qa_testset

    return load_qa_testset(FIXTURES / "qa_questions.tsv")


@pytest.fixture(scope="session")
def quality_passages(mini_corpus):
    """The 30-passage quality-procedure fixture used by the quiz pipeline."""
    seg = segment_report(mini_corpus["report-quality"])
    return passage_index_ids(seg.passages)


@pytest.fixture(scope="session")
def analyzed_corpus(mini_corpus, mini_kg):
    from spacedocs.kgraph import analyze_collection

    return analyze_collection(mini_corpus, mini_kg)


@pytest.fixture(scope="session")
def engine(tmp_path_factory):
    from spacedocs.gateway import Engine, load_config

    data_dir = tmp_path_factory.mktemp("engine-data")
    cfg = load_config(
        FIXTURES / "config.json", env={"SPACEDOCS_DATA_DIR": str(data_dir)}
    )
    return Engine(cfg)


def load_jsonl(path: Path) -> list[dict]:
    return [
        json.loads(line)
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
