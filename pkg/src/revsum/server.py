"""Loopback HTTP service for the audit workflow.

Endpoints (all JSON, UTF-8):
  GET  /api/session                     -> items plus progress
  GET  /api/next                        -> first unlabeled item (or null)
  POST /api/label {item_id, label}      -> updated item plus progress
  GET  /api/report?lambdas=0.5,0.6,0.7  -> threshold rows

Errors come back as {"error": <message>} with a matching status code.
Label mutations are serialized through one lock and persisted atomically,
so a page reload always reproduces the current session.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .audit import LABELS, AuditState, record_label, threshold_report

__all__ = ["create_app", "serve"]

DEFAULT_LAMBDAS = (0.5, 0.6, 0.7)


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=status)


def create_app(state_path, ui_dir=None) -> FastAPI:
    state_path = Path(state_path)
    app = FastAPI(title="revsum audit service")
    state = AuditState.load(state_path)
    lock = threading.Lock()

    @app.get("/api/session")
    def session():
        with lock:
            return {
                "items": [it.as_dict() for it in state.items],
                "progress": state.progress(),
            }

    @app.get("/api/next")
    def next_item():
        with lock:
            item = state.next_unlabeled()
            progress = state.progress()
        return {"item": item.as_dict() if item else None, "progress": progress}

    @app.post("/api/label")
    async def label(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return _error(400, "request body must be JSON")
        if not isinstance(payload, dict):
            return _error(400, "request body must be a JSON object")
        item_id = payload.get("item_id")
        value = payload.get("label")
        if not isinstance(item_id, str) or not item_id:
            return _error(400, "item_id is required")
        if value not in LABELS:
            return _error(400, f"label must be one of {list(LABELS)}")
        with lock:
            try:
                item = record_label(state, item_id, value)
            except KeyError:
                return _error(404, f"unknown item_id: {item_id}")
            state.save(state_path)
            return {"item": item.as_dict(), "progress": state.progress()}

    @app.get("/api/report")
    def report(lambdas: str = ""):
        try:
            values = tuple(float(x) for x in lambdas.split(",") if x.strip()) or DEFAULT_LAMBDAS
        except ValueError:
            return _error(400, f"bad lambdas parameter: {lambdas!r}")
        if any(not 0.0 <= v <= 1.0 for v in values):
            return _error(400, "lambda values must be in [0, 1]")
        with lock:
            rows = threshold_report(state, values)
        return [row.as_dict() for row in rows]

    if ui_dir is not None:
        ui_dir = Path(ui_dir)
        index = ui_dir / "index.html"

        @app.get("/")
        def root():
            return FileResponse(index)

        app.mount("/", StaticFiles(directory=str(ui_dir)), name="ui")

    return app


def serve(state_path, host: str = "127.0.0.1", port: int = 8008, ui_dir=None) -> None:
    import uvicorn

    uvicorn.run(create_app(state_path, ui_dir=ui_dir), host=host, port=port)
