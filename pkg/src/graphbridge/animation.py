"""Interpolation plans for drops and closed-form sampling at any progress.

A plan is immutable once built; sampling never accumulates state, so
scrubbing backward and forward reproduces identical frames. Matched nodes
move on straight lines from their release position to their slot in the
target layout while their color crossfades into the target view's
encoding; faded elements stay put and lose opacity; grayed elements carry
a constant flag the renderer turns into gray.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .coordination import MatchResult
from .errors import DegenerateAnchors, MissingPosition, ProgressOutOfRange
from .graph import ViewGraph
from .layout import LayoutMap

DEFAULT_DURATION_MS = 800

MATCHED = "matched"
FADED = "faded"

# 12 categorical colors (ColorBrewer "Paired"), assigned to community labels
# in lexicographic label order per view, cycling on overflow.
PALETTE = (
    "#a6cee3",
    "#1f78b4",
    "#b2df8a",
    "#33a02c",
    "#fb9a99",
    "#e31a1c",
    "#fdbf6f",
    "#ff7f00",
    "#cab2d6",
    "#6a3d9a",
    "#ffff99",
    "#b15928",
)


def community_colors(view: ViewGraph) -> dict[str, str]:
    """Node id -> hex color for one view's per-view community encoding."""
    labels = sorted(set(view.community_of.values()))
    of_label = {label: PALETTE[i % len(PALETTE)] for i, label in enumerate(labels)}
    return {nid: of_label[view.community_of[nid]] for nid in sorted(view.node_ids)}


def _parse_hex(color: str) -> tuple[int, int, int]:
    if len(color) != 7 or not color.startswith("#"):
        raise ValueError(f"expected #rrggbb color, got {color!r}")
    return int(color[1:3], 16), int(color[3:5], 16), int(color[5:7], 16)


def crossfade(start: str, end: str, t: float) -> str:
    """Linear RGB blend; exactly ``start`` at t=0 and ``end`` at t=1."""
    if t <= 0.0:
        return start
    if t >= 1.0:
        return end
    sr, sg, sb = _parse_hex(start)
    er, eg, eb = _parse_hex(end)
    r = round((1.0 - t) * sr + t * er)
    g = round((1.0 - t) * sg + t * eg)
    b = round((1.0 - t) * sb + t * eb)
    return f"#{r:02x}{g:02x}{b:02x}"


@dataclass(frozen=True)
class NodeTrack:
    start: tuple[float, float]
    end: tuple[float, float]
    role: str  # MATCHED or FADED


@dataclass(frozen=True)
class ColorTrack:
    start: str
    end: str


@dataclass(frozen=True)
class InterpolationPlan:
    target_view_id: str
    node_tracks: Mapping[str, NodeTrack]
    edge_tracks: Mapping[tuple[str, str], str]  # pair -> role
    grayed_nodes: frozenset[str]
    grayed_edges: frozenset[tuple[str, str]]
    color_tracks: Mapping[str, ColorTrack]  # matched nodes only
    static_colors: Mapping[str, str]  # faded nodes keep their source color
    duration_ms: int


@dataclass(frozen=True)
class NodeState:
    position: tuple[float, float]
    alpha: float
    color: str


@dataclass(frozen=True)
class Frame:
    progress: float
    node_states: Mapping[str, NodeState]
    edge_states: Mapping[tuple[str, str], float]  # pair -> alpha
    grayed_nodes: frozenset[str]
    grayed_edges: frozenset[tuple[str, str]]


def plan_animation(
    match: MatchResult,
    released_positions: Mapping[str, tuple[float, float]],
    target_layout: LayoutMap,
    source_colors: Mapping[str, str],
    target_colors: Mapping[str, str],
    duration_ms: int = DEFAULT_DURATION_MS,
) -> InterpolationPlan:
    """Build the per-element tracks for one drop.

    ``released_positions`` are the dragged positions at drop time, expressed
    in the target view's coordinates; they must cover every selection node.
    """
    if duration_ms < 1:
        raise ValueError("duration_ms must be positive")
    node_tracks = {}
    color_tracks = {}
    static_colors = {}
    for nid in sorted(match.matched_nodes):
        if nid not in target_layout.positions:
            raise MissingPosition(f"matched node {nid!r} has no target layout position")
        start = released_positions[nid]
        node_tracks[nid] = NodeTrack(start=start, end=target_layout.positions[nid], role=MATCHED)
        color_tracks[nid] = ColorTrack(start=source_colors[nid], end=target_colors[nid])
    for nid in sorted(match.faded_nodes):
        start = released_positions[nid]
        node_tracks[nid] = NodeTrack(start=start, end=start, role=FADED)
        static_colors[nid] = source_colors[nid]
    edge_tracks = {pair: MATCHED for pair in sorted(match.matched_edges)}
    for pair in sorted(match.faded_edges):
        edge_tracks[pair] = FADED
    return InterpolationPlan(
        target_view_id=match.target_view_id,
        node_tracks=node_tracks,
        edge_tracks=edge_tracks,
        grayed_nodes=match.grayed_nodes,
        grayed_edges=match.grayed_edges,
        color_tracks=color_tracks,
        static_colors=static_colors,
        duration_ms=duration_ms,
    )


def sample(plan: InterpolationPlan, t: float) -> Frame:
    """Evaluate the plan at progress t (linear easing, closed form).

    At t=0 matched positions equal their release positions bit-exactly, and
    at t=1 they equal the target layout bit-exactly: (1-t)*a + t*b reduces
    to a + 0.0 and 0.0 + b at the endpoints, which IEEE addition preserves.
    """
    if not (0.0 <= t <= 1.0):
        raise ProgressOutOfRange(f"progress {t!r} outside [0, 1]")
    s = 1.0 - t
    node_states = {}
    for nid, track in plan.node_tracks.items():
        if track.role == MATCHED:
            x = s * track.start[0] + t * track.end[0]
            y = s * track.start[1] + t * track.end[1]
            colors = plan.color_tracks[nid]
            node_states[nid] = NodeState(
                position=(x, y), alpha=1.0, color=crossfade(colors.start, colors.end, t)
            )
        else:
            node_states[nid] = NodeState(
                position=track.start, alpha=s, color=plan.static_colors[nid]
            )
    edge_states = {
        pair: (1.0 if role == MATCHED else s) for pair, role in plan.edge_tracks.items()
    }
    return Frame(
        progress=t,
        node_states=node_states,
        edge_states=edge_states,
        grayed_nodes=plan.grayed_nodes,
        grayed_edges=plan.grayed_edges,
    )


def scrub_progress(mouse, source_anchor, target_anchor) -> float:
    """Project the mouse onto the line between the two view centers.

    Returns the clamped fraction of the way from source to target anchor;
    displacement perpendicular to that line does not change the result.
    """
    ax, ay = source_anchor
    bx, by = target_anchor
    dx = bx - ax
    dy = by - ay
    norm_sq = dx * dx + dy * dy
    if norm_sq == 0.0:
        raise DegenerateAnchors("source and target anchors coincide")
    # single division by the squared length keeps both endpoints exact
    t = ((mouse[0] - ax) * dx + (mouse[1] - ay) * dy) / norm_sq
    return min(1.0, max(0.0, t))


def autoplay_schedule(plan: InterpolationPlan, elapsed_ms: float) -> float:
    """Progress after elapsed_ms of autoplay, clamped to [0, 1]."""
    return min(1.0, max(0.0, elapsed_ms / plan.duration_ms))


# ---------------------------------------------------------------------------
# frame dump format (scenario_cli golden surface)

def _num(value: float) -> str:
    return f"{value:.9f}"


def frame_payload(frame: Frame) -> dict:
    """Frame as a JSON-ready dict (native floats), canonical ordering."""
    return {
        "progress": frame.progress,
        "nodes": [
            {
                "id": nid,
                "x": frame.node_states[nid].position[0],
                "y": frame.node_states[nid].position[1],
                "alpha": frame.node_states[nid].alpha,
                "color": frame.node_states[nid].color,
            }
            for nid in sorted(frame.node_states)
        ],
        "edges": [
            {"source": pair[0], "target": pair[1], "alpha": frame.edge_states[pair]}
            for pair in sorted(frame.edge_states)
        ],
        "grayedNodes": sorted(frame.grayed_nodes),
        "grayedEdges": [[a, b] for a, b in sorted(frame.grayed_edges)],
    }


def frame_to_json(frame: Frame) -> str:
    """Byte-stable frame dump: canonical order, numbers with 9 decimal digits."""
    parts = ['{"progress":', _num(frame.progress), ',"nodes":[']
    for i, nid in enumerate(sorted(frame.node_states)):
        state = frame.node_states[nid]
        if i:
            parts.append(",")
        parts.append(
            '{"id":%s,"x":%s,"y":%s,"alpha":%s,"color":%s}'
            % (
                json.dumps(nid),
                _num(state.position[0]),
                _num(state.position[1]),
                _num(state.alpha),
                json.dumps(state.color),
            )
        )
    parts.append('],"edges":[')
    for i, pair in enumerate(sorted(frame.edge_states)):
        if i:
            parts.append(",")
        parts.append(
            '{"source":%s,"target":%s,"alpha":%s}'
            % (json.dumps(pair[0]), json.dumps(pair[1]), _num(frame.edge_states[pair]))
        )
    parts.append('],"grayedNodes":[')
    parts.append(",".join(json.dumps(nid) for nid in sorted(frame.grayed_nodes)))
    parts.append('],"grayedEdges":[')
    parts.append(
        ",".join(
            "[%s,%s]" % (json.dumps(a), json.dumps(b))
            for a, b in sorted(frame.grayed_edges)
        )
    )
    parts.append("]}\n")
    return "".join(parts)
