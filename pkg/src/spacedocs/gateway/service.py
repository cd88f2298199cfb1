"""HTTP service over the engine; every body is the canonical JSON of the
corresponding library call, so API and library outputs are byte-equal."""

from __future__ import annotations

from fastapi import FastAPI, Request, Response

from ..corpus import CorpusError
from ..novelty import NoveltyError
from ..qa import QAError, UnknownDocumentError
from ..quizgen import QuizError
from .engine import Engine, EngineError, NotFoundError, canonical_json


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, message: str) -> Response:
    return _json_response({"error": message}, status_code=status_code)


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="spacedocs gateway", version="0.1.0")
    app.state.engine = engine

    @app.exception_handler(NotFoundError)
    async def _not_found(_req, exc):
        return _error(404, str(exc))

    @app.exception_handler(UnknownDocumentError)
    async def _unknown_doc(_req, exc):
        return _error(404, str(exc))

    @app.exception_handler(QuizError)
    async def _quiz_error(_req, exc):
        return _error(400, str(exc))

    @app.exception_handler(EngineError)
    async def _engine_error(_req, exc):
        return _error(400, str(exc))

    @app.exception_handler(NoveltyError)
    async def _novelty_error(_req, exc):
        return _error(400, str(exc))

    @app.exception_handler(QAError)
    async def _qa_error(_req, exc):
        return _error(400, str(exc))

    @app.exception_handler(CorpusError)
    async def _corpus_error(_req, exc):
        return _error(400, str(exc))

    @app.post("/ask")
    async def ask(request: Request):
        body = await request.json()
        question = body.get("question", "")
        if not question:
            return _error(400, "missing 'question'")
        result = engine.ask(
            question,
            k=body.get("k"),
            scope=body.get("scope"),
            threshold=body.get("threshold"),
        )
        return _json_response(result.to_dict())

    @app.get("/documents")
    async def documents():
        return _json_response(engine.document_list())

    @app.get("/documents/{doc_id}")
    async def document(doc_id: str):
        return _json_response(engine.document(doc_id))

    @app.get("/passages/snippets")
    async def snippets(n: int = 3, seed: int | None = None):
        return _json_response(engine.snippets(n=n, seed=seed))

    @app.get("/passages/{passage_id}")
    async def passage(passage_id: str):
        return _json_response(engine.passage(passage_id))

    @app.get("/questions/predefined")
    async def predefined():
        return _json_response(engine.predefined_questions())

    @app.post("/quiz/sessions")
    async def quiz_create(request: Request):
        body = await request.json()
        doc_id = body.get("doc_id", "")
        if not doc_id:
            return _error(400, "missing 'doc_id'")
        return _json_response(
            engine.quiz_create(doc_id, body.get("section_paths") or []), 201
        )

    @app.get("/quiz/sessions/{session_id}")
    async def quiz_session(session_id: str):
        return _json_response(engine.quiz_session(session_id))

    @app.post("/quiz/sessions/{session_id}/selection")
    async def quiz_select(session_id: str, request: Request):
        body = await request.json()
        return _json_response(
            engine.quiz_select(session_id, body.get("candidate_ids") or [])
        )

    @app.post("/quiz/sessions/{session_id}/finalize")
    async def quiz_finalize(session_id: str):
        return _json_response(engine.quiz_finalize(session_id))

    @app.get("/novelty/{idea_id}")
    async def novelty(idea_id: str):
        return _json_response(engine.novelty(idea_id).to_dict())

    @app.get("/graph")
    async def graph(min_sim: float | None = None):
        return _json_response(engine.graph(min_sim).to_dict())

    @app.get("/clusters")
    async def clusters(min_sim: float | None = None, seed: int | None = None):
        return _json_response(engine.clusters(min_sim=min_sim, seed=seed))

    @app.post("/feedback")
    async def feedback(request: Request):
        body = await request.json()
        feature = body.get("feature", "")
        payload = body.get("payload") or {}
        return _json_response(engine.add_feedback(feature, payload), 201)

    if engine.config.ui_dir:
        from starlette.staticfiles import StaticFiles

        app.mount(
            "/ui", StaticFiles(directory=engine.config.ui_dir, html=True), name="ui"
        )

    return app
