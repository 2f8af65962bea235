"""Linked-view algebra: selection, highlighting, drag translation, drop matching.

Everything here is a pure function over immutable inputs. A selection is an
induced subgraph of its source view (an edge is selected iff both endpoints
are), and all cross-view reasoning reduces to set intersections and
differences on node ids and canonical edge pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DegeneratePolygon, UnknownNode
from .graph import ViewGraph
from .layout import LayoutMap, snap

Point = "tuple[float, float]"


@dataclass(frozen=True)
class Selection:
    """A grabbed subgraph plus the positions it was grabbed at."""

    source_view_id: str
    node_ids: frozenset[str]
    edge_ids: frozenset[tuple[str, str]]
    grab_positions: Mapping[str, tuple[float, float]]


@dataclass(frozen=True)
class MatchResult:
    """Drop classification: partition of selection and target into seven sets."""

    target_view_id: str
    matched_nodes: frozenset[str]
    matched_edges: frozenset[tuple[str, str]]
    faded_nodes: frozenset[str]
    faded_edges: frozenset[tuple[str, str]]
    grayed_nodes: frozenset[str]
    grayed_edges: frozenset[tuple[str, str]]


def induced_edges(view: ViewGraph, node_ids: frozenset[str]) -> frozenset:
    return frozenset(
        pair for pair in view.edge_ids if pair[0] in node_ids and pair[1] in node_ids
    )


def _on_segment(p, a, b) -> bool:
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cross != 0.0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
        a[1], b[1]
    )


def point_in_polygon(point, polygon: Sequence) -> bool:
    """Even-odd rule; points on the boundary count as inside."""
    x, y = point
    count = len(polygon)
    inside = False
    j = count - 1
    for i in range(count):
        if _on_segment(point, polygon[i], polygon[j]):
            return True
        xi, yi = polygon[i]
        xj, yj = polygon[j]
        if (yi > y) != (yj > y):
            x_cross = xi + (y - yi) * (xj - xi) / (yj - yi)
            if x < x_cross:
                inside = not inside
        j = i
    return inside


def select_lasso(view: ViewGraph, layout: LayoutMap, polygon: Sequence) -> Selection:
    """Select the nodes whose layout position falls inside the closed polygon."""
    if len(polygon) < 3:
        raise DegeneratePolygon(f"lasso needs at least 3 vertices, got {len(polygon)}")
    node_ids = frozenset(
        nid for nid in view.node_ids if point_in_polygon(layout.positions[nid], polygon)
    )
    return Selection(
        source_view_id=view.view_id,
        node_ids=node_ids,
        edge_ids=induced_edges(view, node_ids),
        grab_positions={nid: layout.positions[nid] for nid in sorted(node_ids)},
    )


def select_ids(view: ViewGraph, layout: LayoutMap, node_ids: Iterable[str]) -> Selection:
    """Positionless selection for scripted scenarios."""
    wanted = frozenset(node_ids)
    unknown = wanted - view.node_ids
    if unknown:
        raise UnknownNode(f"not in view {view.view_id!r}: {sorted(unknown)}")
    return Selection(
        source_view_id=view.view_id,
        node_ids=wanted,
        edge_ids=induced_edges(view, wanted),
        grab_positions={nid: layout.positions[nid] for nid in sorted(wanted)},
    )


def linked_highlight(selection: Selection, all_views: Iterable[ViewGraph]):
    """Per-view intersection of the selection with each view's elements."""
    return {
        view.view_id: (
            selection.node_ids & view.node_ids,
            selection.edge_ids & view.edge_ids,
        )
        for view in all_views
    }


def translate_selection(selection: Selection, delta) -> dict[str, tuple[float, float]]:
    """Shift every grab position by delta, preserving pairwise offsets exactly.

    The delta is snapped to the position grid; grab positions coming from a
    LayoutMap are grid-aligned already, so each addition below is exact and
    (p_u + d) - (p_v + d) == p_u - p_v holds bit-for-bit.
    """
    dx = snap(delta[0])
    dy = snap(delta[1])
    return {nid: (x + dx, y + dy) for nid, (x, y) in selection.grab_positions.items()}


def classify_drop(selection: Selection, target: ViewGraph) -> MatchResult:
    """Split selection and target into matched / faded / grayed element sets."""
    return MatchResult(
        target_view_id=target.view_id,
        matched_nodes=selection.node_ids & target.node_ids,
        matched_edges=selection.edge_ids & target.edge_ids,
        faded_nodes=selection.node_ids - target.node_ids,
        faded_edges=selection.edge_ids - target.edge_ids,
        grayed_nodes=target.node_ids - selection.node_ids,
        grayed_edges=target.edge_ids - selection.edge_ids,
    )
