"""FastAPI application: REST tooling endpoints plus the WebSocket session.

Each WebSocket connection owns one independent session. Messages are
processed strictly in arrival order through the pure reducer; the shared
dataset and layouts are immutable, so concurrent sessions never interfere.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__, graph, session
from ..errors import ParseError, PredicateTypeError, UnknownFrame, ValidationError
from ..layout import compute_layout
from .models import (
    DatasetSource,
    HealthResponse,
    LayoutRequest,
    LayoutResponse,
    ValidateResponse,
    ViewLayoutModel,
    ViolationModel,
)

_FRONTEND_DIST = Path(__file__).resolve().parents[3] / "frontend" / "dist"


def _dataset_bytes(source: DatasetSource) -> bytes:
    if source.dataset is not None:
        return json.dumps(source.dataset).encode("utf-8")
    try:
        return Path(source.path).read_bytes()
    except OSError as exc:
        raise HTTPException(status_code=400, detail=f"cannot read dataset: {exc}") from exc


def create_app(frontend_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="graphbridge", version=__version__)

    @app.get("/api/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/api/validate", response_model=ValidateResponse)
    def validate(source: DatasetSource):
        try:
            violations = graph.dataset_violations(_dataset_bytes(source))
        except ParseError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return ValidateResponse(
            valid=not violations,
            violations=[
                ViolationModel(rule=v.rule, element=v.element, detail=v.detail)
                for v in violations
            ],
        )

    @app.post("/api/layout", response_model=LayoutResponse)
    def layout(request: LayoutRequest):
        try:
            temporal = graph.load_dataset(_dataset_bytes(request))
            views = []
            for model in request.views:
                spec = graph.view_spec_from_json(model.model_dump(exclude_none=True))
                view = graph.slice(temporal, spec)
                layout_map = compute_layout(
                    view, seed=request.seed, iterations=request.iterations
                )
                views.append(
                    ViewLayoutModel(
                        viewId=spec.view_id,
                        seed=request.seed,
                        iterations=request.iterations,
                        positions={
                            nid: xy for nid, xy in sorted(layout_map.positions.items())
                        },
                    )
                )
        except ValidationError as exc:
            raise HTTPException(
                status_code=422, detail=[str(v) for v in exc.violations]
            ) from exc
        except (ParseError, UnknownFrame, PredicateTypeError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return LayoutResponse(views=views)

    @app.websocket("/ws")
    async def ws_session(socket: WebSocket):
        await socket.accept()
        state = session.initial_state()
        try:
            while True:
                raw = await socket.receive_text()
                try:
                    message = json.loads(raw)
                except json.JSONDecodeError:
                    message = None
                state, events = session.handle_message(state, message)
                for event in events:
                    await socket.send_text(json.dumps(event, ensure_ascii=False))
        except WebSocketDisconnect:
            pass

    static_dir = frontend_dir if frontend_dir is not None else _FRONTEND_DIST
    if static_dir.is_dir():
        index = static_dir / "index.html"
        if index.is_file():
            @app.get("/", include_in_schema=False)
            def root():
                return FileResponse(index)

        app.mount("/", StaticFiles(directory=static_dir), name="static")

    return app
