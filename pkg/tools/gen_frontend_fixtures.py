#!/usr/bin/env python3
"""Capture gateway response bytes as fixtures for the frontend tests.

Every file is the exact body the HTTP service returns on the bundled
corpus, so the UI tests assert against true gateway output.

Run from the repo root:  python3 tools/gen_frontend_fixtures.py
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from spacedocs.gateway import Engine, load_config  # noqa: E402
from spacedocs.gateway.service import create_app  # noqa: E402

OUT = ROOT / "frontend" / "tests" / "fixtures"

GOLDEN_QUESTIONS = [
    "What is the first source for raising a spacecraft anomaly report?",
    "Which organization notifies the relevant infrastructure team in case of "
    "an anomaly detected in a shared infrastructure?",
    "What is mandatory for the closure of a Problem Report?",
    "Who issues a supplier waiver when a contracted deliverable departs from "
    "its specification?",
    "What does the system under configuration include?",
]


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as data_dir:
        cfg = load_config(
            ROOT / "fixtures" / "config.json", env={"SPACEDOCS_DATA_DIR": data_dir}
        )
        engine = Engine(cfg)
        client = TestClient(create_app(engine))

        def save(name: str, resp):
            (OUT / name).write_bytes(resp.content)
            print(f"{name}: {len(resp.content)} bytes")

        save(
            "qa_primary.json",
            client.post("/ask", json={"question": "Which launcher will ATHENA use?"}),
        )
        save(
            "qa_low_confidence.json",
            client.post(
                "/ask", json={"question": "Which seal guards the camera heater cable?"}
            ),
        )
        save(
            "qa_no_answer.json",
            client.post("/ask", json={"question": "zzz qqq xxx"}),
        )
        save("documents.json", client.get("/documents"))
        save(
            "snippets.json",
            client.get("/passages/snippets", params={"n": 3, "seed": 7}),
        )
        save("predefined.json", client.get("/questions/predefined"))
        save("novelty_idea04.json", client.get("/novelty/idea-04"))
        save("novelty_isolated.json", client.get("/novelty/idea-10"))
        save("graph.json", client.get("/graph"))
        save("clusters.json", client.get("/clusters"))

        # Passage texts for every id referenced by the QA and quiz fixtures.
        passage_ids = set()
        for name in ("qa_primary.json", "qa_low_confidence.json"):
            payload = json.loads((OUT / name).read_text())
            for span in payload["primary_answers"] + payload["low_confidence_answers"]:
                passage_ids.add(span["passage_id"])
        created = client.post("/quiz/sessions", json={"doc_id": "report-quality"})
        save("quiz_create.json", created)
        session = created.json()
        sid = session["session_id"]
        chosen = [
            c["id"]
            for c in session["candidates"]
            if c["question"] in GOLDEN_QUESTIONS and c["status"] == "validated"
        ]
        assert len(chosen) == 5, chosen
        save(
            "quiz_selection.json",
            client.post(
                f"/quiz/sessions/{sid}/selection", json={"candidate_ids": chosen}
            ),
        )
        finalize = client.post(f"/quiz/sessions/{sid}/finalize")
        save("quiz_finalize.json", finalize)
        (OUT / "quiz_golden_selection.json").write_text(
            json.dumps({"candidate_ids": chosen}) + "\n"
        )
        (OUT / "quiz_rendered_golden.md").write_text(
            finalize.json()["rendered"], encoding="utf-8"
        )
        print(f"golden selection: {chosen}")

        for c in session["candidates"]:
            passage_ids.add(c["passage_id"])
        from urllib.parse import quote

        passages = {}
        for pid in sorted(passage_ids):
            resp = client.get(f"/passages/{quote(pid, safe='')}")
            assert resp.status_code == 200, pid
            passages[pid] = resp.json()
        (OUT / "passages.json").write_text(
            json.dumps(passages, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        print(f"passages.json: {len(passages)} passages")
    return 0


if __name__ == "__main__":
    sys.exit(main())
