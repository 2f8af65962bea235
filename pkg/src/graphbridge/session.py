"""Interaction state machine behind the message protocol.

One session owns one dataset, its views, and the live gesture state. The
reducer is pure: ``handle_message(state, message)`` returns the next state
plus the events to emit, never mutating its input, so a message sequence
replays to identical output every time (the foundation of the golden
tests). Illegal or malformed messages produce a single error event and
leave the state untouched.

Views are laid out on a global canvas as unit cells at even integer
offsets (one empty gutter cell between neighbors), so converting between a
view's local coordinates and global canvas coordinates is translation by
integers, which keeps drag arithmetic on the position grid exact.

Modes and transitions::

    idle -> selected          select
    selected -> selected      select (replaces)
    selected -> dragging      beginDrag
    dragging -> dragging      dragMove
    dragging -> previewScrub  hoverTarget with ctrl (plan built)
    previewScrub -> previewScrub   scrub / hoverTarget (retarget)
    dragging|previewScrub -> animating   drop inside a view
    dragging|previewScrub -> idle        cancel, or drop outside every view
    animating -> completed    tick reaching progress 1
    selected|completed -> idle             clear
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping

from . import animation, coordination, graph
from .animation import InterpolationPlan, community_colors
from .coordination import Selection
from .errors import (
    DegenerateAnchors,
    DegeneratePolygon,
    GraphBridgeError,
    ParseError,
    PredicateTypeError,
    UnknownFrame,
    UnknownNode,
    ValidationError,
)
from .graph import TemporalGraph, ViewGraph, ViewSpec
from .layout import LayoutMap, compute_layout, snap


class Mode(str, Enum):
    IDLE = "idle"
    SELECTED = "selected"
    DRAGGING = "dragging"
    PREVIEW_SCRUB = "previewScrub"
    ANIMATING = "animating"
    COMPLETED = "completed"


_SELECTION_MODES = {
    Mode.SELECTED,
    Mode.DRAGGING,
    Mode.PREVIEW_SCRUB,
    Mode.ANIMATING,
    Mode.COMPLETED,
}
_PLAN_MODES = {Mode.PREVIEW_SCRUB, Mode.ANIMATING, Mode.COMPLETED}


@dataclass(frozen=True)
class ViewState:
    spec: ViewSpec
    graph: ViewGraph
    layout: LayoutMap
    viewport: tuple[float, float, float, float]  # x0, y0, x1, y1 (integers)
    colors: Mapping[str, str]  # node id -> community color


@dataclass(frozen=True)
class SessionState:
    dataset: TemporalGraph | None = None
    views: tuple[ViewState, ...] = ()
    mode: Mode = Mode.IDLE
    selection: Selection | None = None
    drag_delta: tuple[float, float] | None = None
    plan: InterpolationPlan | None = None
    scrub_t: float | None = None
    anim_start_t: float = 0.0
    duration_ms: int = animation.DEFAULT_DURATION_MS

    def view(self, view_id: str) -> ViewState | None:
        for entry in self.views:
            if entry.spec.view_id == view_id:
                return entry
        return None


def initial_state() -> SessionState:
    return SessionState()


def grid_viewports(count: int) -> list[tuple[float, float, float, float]]:
    """Unit cells at even offsets, row-major, one gutter cell between views."""
    if count == 0:
        return []
    cols = math.ceil(math.sqrt(count))
    rects = []
    for k in range(count):
        row, col = divmod(k, cols)
        rects.append((float(2 * col), float(2 * row), float(2 * col + 1), float(2 * row + 1)))
    return rects


def hit_view(state: SessionState, point) -> str | None:
    """View whose rectangle contains the point; min edges inclusive, max exclusive."""
    x, y = point
    for entry in state.views:
        x0, y0, x1, y1 = entry.viewport
        if x0 <= x < x1 and y0 <= y < y1:
            return entry.spec.view_id
    return None


def _anchor(entry: ViewState) -> tuple[float, float]:
    x0, y0, x1, y1 = entry.viewport
    return ((x0 + x1) / 2.0, (y0 + y1) / 2.0)


# ---------------------------------------------------------------------------
# event payloads

def _error(code: str, detail: str) -> dict:
    return {"type": "error", "code": code, "detail": detail}


def _views_event(state: SessionState) -> dict:
    views = []
    for entry in state.views:
        payload = graph.view_spec_to_json(entry.spec)
        payload["viewport"] = list(entry.viewport)
        payload["nodes"] = [
            {
                "id": nid,
                "x": entry.layout.positions[nid][0],
                "y": entry.layout.positions[nid][1],
                "community": entry.graph.community_of[nid],
                "color": entry.colors[nid],
            }
            for nid in sorted(entry.graph.node_ids)
        ]
        payload["edges"] = [
            {"source": a, "target": b} for a, b in sorted(entry.graph.edge_ids)
        ]
        views.append(payload)
    return {"type": "views", "views": views}


def _highlight_event(state: SessionState, selection: Selection | None) -> dict:
    views = []
    if selection is None:
        per_view = {entry.spec.view_id: (frozenset(), frozenset()) for entry in state.views}
    else:
        per_view = coordination.linked_highlight(
            selection, [entry.graph for entry in state.views]
        )
    for entry in state.views:
        nodes, edges = per_view[entry.spec.view_id]
        views.append(
            {
                "viewId": entry.spec.view_id,
                "nodes": sorted(nodes),
                "edges": [[a, b] for a, b in sorted(edges)],
            }
        )
    return {"type": "highlight", "views": views}


def _drag_event(positions: Mapping[str, tuple[float, float]]) -> dict:
    return {
        "type": "drag",
        "positions": [
            {"id": nid, "x": positions[nid][0], "y": positions[nid][1]}
            for nid in sorted(positions)
        ],
    }


def _plan_event(plan: InterpolationPlan) -> dict:
    tracks = []
    for nid in sorted(plan.node_tracks):
        track = plan.node_tracks[nid]
        if track.role == animation.MATCHED:
            colors = plan.color_tracks[nid]
            start_color, end_color = colors.start, colors.end
        else:
            start_color = end_color = plan.static_colors[nid]
        tracks.append(
            {
                "id": nid,
                "role": track.role,
                "start": [track.start[0], track.start[1]],
                "end": [track.end[0], track.end[1]],
                "startColor": start_color,
                "endColor": end_color,
            }
        )
    return {
        "type": "plan",
        "targetView": plan.target_view_id,
        "durationMs": plan.duration_ms,
        "nodeTracks": tracks,
        "edgeTracks": [
            {"source": a, "target": b, "role": plan.edge_tracks[(a, b)]}
            for a, b in sorted(plan.edge_tracks)
        ],
        "grayedNodes": sorted(plan.grayed_nodes),
        "grayedEdges": [[a, b] for a, b in sorted(plan.grayed_edges)],
    }


def _frame_event(frame: animation.Frame) -> dict:
    payload = animation.frame_payload(frame)
    payload["type"] = "frame"
    return payload


# ---------------------------------------------------------------------------
# reducer

def handle_message(state: SessionState, message) -> tuple[SessionState, list[dict]]:
    """Apply one protocol request; returns (next state, emitted events)."""
    if not isinstance(message, Mapping) or not isinstance(message.get("type"), str):
        return state, [_error("malformedMessage", "message must be an object with a type")]
    kind = message["type"]
    handler = _HANDLERS.get(kind)
    if handler is None:
        return state, [_error("malformedMessage", f"unknown message type {kind!r}")]
    return handler(state, message)


def _illegal(state: SessionState, kind: str):
    return state, [
        _error("illegalTransition", f"{kind!r} not legal in mode {state.mode.value!r}")
    ]


def _number(value) -> float | None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return None
    return float(value)


def _handle_load_dataset(state: SessionState, message):
    if state.mode is not Mode.IDLE:
        return _illegal(state, "loadDataset")
    inline = message.get("inline")
    path = message.get("path")
    try:
        if inline is not None:
            if not isinstance(inline, dict):
                return state, [_error("malformedMessage", "inline dataset must be an object")]
            import json as _json

            dataset = graph.load_dataset(_json.dumps(inline))
        elif isinstance(path, str):
            dataset = graph.load_dataset_file(path)
        else:
            return state, [_error("malformedMessage", "loadDataset needs 'path' or 'inline'")]
    except ParseError as exc:
        return state, [_error("parseError", str(exc))]
    except ValidationError as exc:
        return state, [
            _error("validationError", "; ".join(str(v) for v in exc.violations))
        ]
    except OSError as exc:
        return state, [_error("ioError", str(exc))]
    return replace(state, dataset=dataset, views=()), []


def _handle_define_views(state: SessionState, message):
    if state.mode is not Mode.IDLE:
        return _illegal(state, "defineViews")
    if state.dataset is None:
        return _illegal(state, "defineViews (no dataset loaded)")
    raw_specs = message.get("specs")
    if not isinstance(raw_specs, list):
        return state, [_error("malformedMessage", "defineViews needs a 'specs' array")]
    seed = message.get("seed", 1)
    iterations = message.get("iterations", 300)
    duration = message.get("durationMs", animation.DEFAULT_DURATION_MS)
    if (
        isinstance(seed, bool)
        or not isinstance(seed, int)
        or isinstance(iterations, bool)
        or not isinstance(iterations, int)
        or iterations < 1
        or isinstance(duration, bool)
        or not isinstance(duration, int)
        or duration < 1
    ):
        return state, [_error("malformedMessage", "seed/iterations/durationMs must be integers")]
    try:
        specs = [graph.view_spec_from_json(obj) for obj in raw_specs]
        if len({spec.view_id for spec in specs}) != len(specs):
            return state, [_error("malformedMessage", "view ids must be unique")]
        views = []
        rects = grid_viewports(len(specs))
        for spec, rect in zip(specs, rects):
            view_graph = graph.slice(state.dataset, spec)
            layout = compute_layout(view_graph, seed=seed, iterations=iterations)
            views.append(
                ViewState(
                    spec=spec,
                    graph=view_graph,
                    layout=layout,
                    viewport=rect,
                    colors=community_colors(view_graph),
                )
            )
    except ParseError as exc:
        return state, [_error("malformedMessage", str(exc))]
    except UnknownFrame as exc:
        return state, [_error("unknownFrame", str(exc))]
    except PredicateTypeError as exc:
        return state, [_error("predicateTypeError", str(exc))]
    next_state = replace(state, views=tuple(views), duration_ms=duration)
    return next_state, [_views_event(next_state)]


def _handle_select(state: SessionState, message):
    if state.mode not in (Mode.IDLE, Mode.SELECTED):
        return _illegal(state, "select")
    if not state.views:
        return _illegal(state, "select (no views defined)")
    view_id = message.get("view")
    entry = state.view(view_id) if isinstance(view_id, str) else None
    if entry is None:
        return state, [_error("unknownView", f"no view {view_id!r}")]
    try:
        if "lasso" in message:
            polygon = message["lasso"]
            if not isinstance(polygon, list) or not all(
                isinstance(p, list) and len(p) == 2
                and _number(p[0]) is not None and _number(p[1]) is not None
                for p in polygon
            ):
                return state, [_error("malformedMessage", "lasso must be [[x, y], ...]")]
            selection = coordination.select_lasso(
                entry.graph, entry.layout, [(float(p[0]), float(p[1])) for p in polygon]
            )
        elif "ids" in message:
            ids = message["ids"]
            if not isinstance(ids, list) or not all(isinstance(i, str) for i in ids):
                return state, [_error("malformedMessage", "ids must be a string array")]
            selection = coordination.select_ids(entry.graph, entry.layout, ids)
        else:
            return state, [_error("malformedMessage", "select needs 'lasso' or 'ids'")]
    except DegeneratePolygon as exc:
        return state, [_error("degeneratePolygon", str(exc))]
    except UnknownNode as exc:
        return state, [_error("unknownNode", str(exc))]
    next_state = replace(state, mode=Mode.SELECTED, selection=selection)
    return next_state, [_highlight_event(next_state, selection)]


def _dragged_global(state: SessionState) -> dict[str, tuple[float, float]]:
    """Selection positions on the global canvas at the current drag delta."""
    entry = state.view(state.selection.source_view_id)
    x0, y0 = entry.viewport[0], entry.viewport[1]
    dx, dy = state.drag_delta
    return {
        nid: (x + x0 + dx, y + y0 + dy)
        for nid, (x, y) in state.selection.grab_positions.items()
    }


def _handle_begin_drag(state: SessionState, message):
    if state.mode is not Mode.SELECTED:
        return _illegal(state, "beginDrag")
    next_state = replace(state, mode=Mode.DRAGGING, drag_delta=(0.0, 0.0))
    return next_state, [_drag_event(_dragged_global(next_state))]


def _handle_drag_move(state: SessionState, message):
    if state.mode is not Mode.DRAGGING:
        return _illegal(state, "dragMove")
    dx = _number(message.get("dx"))
    dy = _number(message.get("dy"))
    if dx is None or dy is None:
        return state, [_error("malformedMessage", "dragMove needs numeric dx and dy")]
    delta = (state.drag_delta[0] + snap(dx), state.drag_delta[1] + snap(dy))
    next_state = replace(state, drag_delta=delta)
    return next_state, [_drag_event(_dragged_global(next_state))]


def _build_plan(state: SessionState, target: ViewState) -> InterpolationPlan:
    source = state.view(state.selection.source_view_id)
    dragged = _dragged_global(state)
    tx0, ty0 = target.viewport[0], target.viewport[1]
    released = {nid: (gx - tx0, gy - ty0) for nid, (gx, gy) in dragged.items()}
    match = coordination.classify_drop(state.selection, target.graph)
    return animation.plan_animation(
        match,
        released,
        target.layout,
        source_colors=source.colors,
        target_colors=target.colors,
        duration_ms=state.duration_ms,
    )


def _handle_hover_target(state: SessionState, message):
    if state.mode not in (Mode.DRAGGING, Mode.PREVIEW_SCRUB):
        return _illegal(state, "hoverTarget")
    view_id = message.get("view")
    entry = state.view(view_id) if isinstance(view_id, str) else None
    if entry is None:
        return state, [_error("unknownView", f"no view {view_id!r}")]
    if not message.get("ctrl"):
        return state, []  # without the control key hovering has no preview
    plan = _build_plan(state, entry)
    next_state = replace(state, mode=Mode.PREVIEW_SCRUB, plan=plan, scrub_t=0.0)
    return next_state, [_plan_event(plan)]


def _handle_scrub(state: SessionState, message):
    if state.mode is not Mode.PREVIEW_SCRUB:
        return _illegal(state, "scrub")
    x = _number(message.get("x"))
    y = _number(message.get("y"))
    if x is None or y is None:
        return state, [_error("malformedMessage", "scrub needs numeric x and y")]
    source = state.view(state.selection.source_view_id)
    target = state.view(state.plan.target_view_id)
    try:
        t = animation.scrub_progress((x, y), _anchor(source), _anchor(target))
    except DegenerateAnchors as exc:
        return state, [_error("degenerateAnchors", str(exc))]
    next_state = replace(state, scrub_t=t)
    return next_state, [{"type": "progress", "t": t}]


def _cancelled(state: SessionState) -> tuple[SessionState, list[dict]]:
    next_state = replace(
        state,
        mode=Mode.IDLE,
        selection=None,
        drag_delta=None,
        plan=None,
        scrub_t=None,
        anim_start_t=0.0,
    )
    return next_state, [_highlight_event(next_state, None)]


def _handle_drop(state: SessionState, message):
    if state.mode not in (Mode.DRAGGING, Mode.PREVIEW_SCRUB):
        return _illegal(state, "drop")
    x = _number(message.get("x"))
    y = _number(message.get("y"))
    if x is None or y is None:
        return state, [_error("malformedMessage", "drop needs numeric x and y")]
    hit = hit_view(state, (x, y))
    if hit is None:
        return _cancelled(state)
    if state.mode is Mode.PREVIEW_SCRUB and hit == state.plan.target_view_id:
        # commit the previewed plan, continuing from the scrubbed progress
        plan, start_t = state.plan, state.scrub_t
    else:
        plan, start_t = _build_plan(state, state.view(hit)), 0.0
    next_state = replace(
        state,
        mode=Mode.ANIMATING,
        plan=plan,
        drag_delta=None,
        scrub_t=None,
        anim_start_t=start_t,
    )
    return next_state, [_plan_event(plan)]


def _handle_tick(state: SessionState, message):
    if state.mode is not Mode.ANIMATING:
        return _illegal(state, "tick")
    elapsed = _number(message.get("elapsedMs"))
    if elapsed is None or elapsed < 0:
        return state, [_error("malformedMessage", "tick needs non-negative elapsedMs")]
    t = min(1.0, max(0.0, state.anim_start_t + elapsed / state.plan.duration_ms))
    frame = animation.sample(state.plan, t)
    mode = Mode.COMPLETED if t >= 1.0 else Mode.ANIMATING
    return replace(state, mode=mode), [_frame_event(frame)]


def _handle_cancel(state: SessionState, message):
    if state.mode not in (Mode.DRAGGING, Mode.PREVIEW_SCRUB):
        return _illegal(state, "cancel")
    return _cancelled(state)


def _handle_clear(state: SessionState, message):
    if state.mode not in (Mode.SELECTED, Mode.COMPLETED):
        return _illegal(state, "clear")
    return _cancelled(state)


_HANDLERS = {
    "loadDataset": _handle_load_dataset,
    "defineViews": _handle_define_views,
    "select": _handle_select,
    "beginDrag": _handle_begin_drag,
    "dragMove": _handle_drag_move,
    "hoverTarget": _handle_hover_target,
    "scrub": _handle_scrub,
    "drop": _handle_drop,
    "tick": _handle_tick,
    "cancel": _handle_cancel,
    "clear": _handle_clear,
}
