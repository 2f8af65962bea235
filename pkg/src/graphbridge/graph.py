"""Temporal multidimensional graph model, dataset I/O, and per-view slicing.

The dataset is a single JSON document::

    {
      "frames": [{"id": "f1", "label": "March", "order": 0}, ...],
      "nodes":  [{"id": "a", "attributes": {...}, "frames": ["f1"],
                  "community": {"f1": "blue"}}, ...],
      "edges":  [{"source": "a", "target": "b", "attributes": {...},
                  "frames": ["f1"]}, ...]
    }

Graphs are undirected and simple: an edge is identified by its unordered
endpoint pair, self-loops and parallel edges are rejected at load time.
``serialize`` emits the same schema with canonical ordering (frames by
order, nodes by id, edges by canonical pair) so load -> serialize -> load
round-trips byte-stably.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Any, Iterable, Mapping, Union

from .errors import (
    ParseError,
    PredicateTypeError,
    SelfLoopError,
    UnknownFrame,
    ValidationError,
    Violation,
)

Scalar = Union[str, int, float, bool]
Pair = "tuple[str, str]"

FRAME_KIND = "frame"
PREDICATE_KIND = "predicate"

_ORDER_OPS = {"<", "<=", ">", ">="}
_EQUALITY_OPS = {"=", "!="}
# unicode spellings accepted on input, normalized to the ASCII forms
_OP_ALIASES = {"≠": "!=", "≤": "<=", "≥": ">=", "==": "="}


def edge_identity(a: str, b: str) -> tuple[str, str]:
    """Canonical unordered pair for an edge; raises SelfLoopError if a == b."""
    if a == b:
        raise SelfLoopError(f"self-loop on node {a!r}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class FrameDescriptor:
    id: str
    label: str
    order: int


@dataclass(frozen=True)
class NodeRecord:
    id: str
    attributes: Mapping[str, Scalar]
    frames: frozenset[str]
    community: Mapping[str, str]  # frame id -> community label


@dataclass(frozen=True)
class EdgeRecord:
    endpoints: tuple[str, str]  # canonical order
    attributes: Mapping[str, Scalar]
    frames: frozenset[str]


@dataclass(frozen=True)
class TemporalGraph:
    frames: tuple[FrameDescriptor, ...]  # sorted by order
    nodes: Mapping[str, NodeRecord]
    edges: Mapping[tuple[str, str], EdgeRecord]

    @property
    def frame_ids(self) -> tuple[str, ...]:
        return tuple(f.id for f in self.frames)


@dataclass(frozen=True)
class ViewSpec:
    """Definition of one small-multiple view: a time frame or an attribute filter."""

    view_id: str
    kind: str
    frame_id: str | None = None
    predicate: tuple[tuple[str, str, Scalar], ...] | None = None

    def __post_init__(self):
        if self.kind == FRAME_KIND:
            if self.frame_id is None or self.predicate is not None:
                raise ValueError("frame view requires frame_id and no predicate")
        elif self.kind == PREDICATE_KIND:
            if self.predicate is None or self.frame_id is not None:
                raise ValueError("predicate view requires predicate and no frame_id")
        else:
            raise ValueError(f"unknown view kind {self.kind!r}")


@dataclass(frozen=True)
class ViewGraph:
    view_id: str
    node_ids: frozenset[str]
    edge_ids: frozenset[tuple[str, str]]
    community_of: Mapping[str, str]


# ---------------------------------------------------------------------------
# parsing

def _require(cond: bool, message: str):
    if not cond:
        raise ParseError(message)


def _as_scalar_map(value: Any, where: str) -> dict[str, Scalar]:
    if value is None:
        return {}
    _require(isinstance(value, dict), f"{where}: attributes must be an object")
    out: dict[str, Scalar] = {}
    for key, item in value.items():
        _require(isinstance(key, str), f"{where}: attribute names must be strings")
        _require(
            isinstance(item, (str, int, float, bool)),
            f"{where}: attribute {key!r} must be a scalar",
        )
        out[key] = item
    return out


def _as_id_list(value: Any, where: str) -> list[str]:
    _require(isinstance(value, list), f"{where}: frames must be an array")
    for item in value:
        _require(isinstance(item, str), f"{where}: frame references must be strings")
    return value


def _parse_document(source: Union[bytes, str, IO[bytes], IO[str]]) -> dict:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"dataset is not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"dataset is not valid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "top-level value must be an object")
    for key in ("frames", "nodes", "edges"):
        _require(key in doc, f"missing top-level key {key!r}")
        _require(isinstance(doc[key], list), f"{key!r} must be an array")
    return doc


def _typed_parts(doc: dict):
    frames = []
    for i, raw in enumerate(doc["frames"]):
        where = f"frames[{i}]"
        _require(isinstance(raw, dict), f"{where} must be an object")
        _require(isinstance(raw.get("id"), str), f"{where}: id must be a string")
        _require(isinstance(raw.get("label"), str), f"{where}: label must be a string")
        order = raw.get("order")
        _require(isinstance(order, int) and not isinstance(order, bool),
                 f"{where}: order must be an integer")
        frames.append(FrameDescriptor(raw["id"], raw["label"], order))

    nodes = []
    for i, raw in enumerate(doc["nodes"]):
        where = f"nodes[{i}]"
        _require(isinstance(raw, dict), f"{where} must be an object")
        _require(isinstance(raw.get("id"), str), f"{where}: id must be a string")
        community_raw = raw.get("community") or {}
        _require(isinstance(community_raw, dict), f"{where}: community must be an object")
        for key, label in community_raw.items():
            _require(isinstance(key, str) and isinstance(label, str),
                     f"{where}: community must map frame ids to label strings")
        nodes.append(
            NodeRecord(
                id=raw["id"],
                attributes=_as_scalar_map(raw.get("attributes"), where),
                frames=frozenset(_as_id_list(raw.get("frames"), where)),
                community=dict(community_raw),
            )
        )

    edges = []
    for i, raw in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        _require(isinstance(raw, dict), f"{where} must be an object")
        _require(isinstance(raw.get("source"), str), f"{where}: source must be a string")
        _require(isinstance(raw.get("target"), str), f"{where}: target must be a string")
        edges.append(
            (
                raw["source"],
                raw["target"],
                _as_scalar_map(raw.get("attributes"), where),
                frozenset(_as_id_list(raw.get("frames"), where)),
            )
        )
    return frames, nodes, edges


# ---------------------------------------------------------------------------
# validation

def _collect_violations(frames, nodes, edges) -> list[Violation]:
    violations: list[Violation] = []
    frame_ids: set[str] = set()
    orders: set[int] = set()
    for f in frames:
        if f.id in frame_ids:
            violations.append(Violation("duplicate id", f.id, "frame id declared twice"))
        frame_ids.add(f.id)
        if f.order in orders:
            violations.append(Violation("duplicate order", f.id, f"order {f.order} reused"))
        orders.add(f.order)

    node_ids: set[str] = set()
    node_frames: dict[str, frozenset[str]] = {}
    for n in nodes:
        if n.id in node_ids:
            violations.append(Violation("duplicate id", n.id, "node id declared twice"))
        node_ids.add(n.id)
        node_frames[n.id] = n.frames
        if not n.frames:
            violations.append(Violation("frames non-empty", n.id))
        for fid in sorted(n.frames):
            if fid not in frame_ids:
                violations.append(Violation("unknown frame reference", n.id, f"frame {fid!r}"))
        for fid in sorted(n.community):
            if fid not in frame_ids:
                violations.append(
                    Violation("unknown frame reference", n.id, f"community frame {fid!r}")
                )
            elif fid not in n.frames:
                violations.append(
                    Violation("community frame outside node frames", n.id, f"frame {fid!r}")
                )

    seen_pairs: set[tuple[str, str]] = set()
    for source, target, _attrs, eframes in edges:
        name = f"({source}, {target})"
        if source == target:
            violations.append(Violation("self-loop", name))
            continue
        pair = edge_identity(source, target)
        if pair in seen_pairs:
            violations.append(Violation("duplicate edge", name))
        seen_pairs.add(pair)
        dangling = False
        for end in pair:
            if end not in node_ids:
                violations.append(Violation("dangling endpoint", name, f"node {end!r}"))
                dangling = True
        for fid in sorted(eframes):
            if fid not in frame_ids:
                violations.append(Violation("unknown frame reference", name, f"frame {fid!r}"))
            elif not dangling:
                for end in pair:
                    if fid not in node_frames[end]:
                        violations.append(
                            Violation(
                                "edge frame without endpoint presence",
                                name,
                                f"node {end!r} absent from frame {fid!r}",
                            )
                        )
    return violations


def dataset_violations(source) -> list[Violation]:
    """Parse and check a dataset document, returning every violated rule."""
    frames, nodes, edges = _typed_parts(_parse_document(source))
    return _collect_violations(frames, nodes, edges)


def load_dataset(source) -> TemporalGraph:
    """Parse, validate, and build a TemporalGraph from a dataset document."""
    frames, nodes, edges = _typed_parts(_parse_document(source))
    violations = _collect_violations(frames, nodes, edges)
    if violations:
        raise ValidationError(violations)
    frames = tuple(sorted(frames, key=lambda f: f.order))
    node_map = {n.id: n for n in sorted(nodes, key=lambda n: n.id)}
    edge_map = {}
    for source_id, target_id, attrs, eframes in edges:
        pair = edge_identity(source_id, target_id)
        edge_map[pair] = EdgeRecord(endpoints=pair, attributes=attrs, frames=eframes)
    edge_map = {pair: edge_map[pair] for pair in sorted(edge_map)}
    return TemporalGraph(frames=frames, nodes=node_map, edges=edge_map)


def load_dataset_file(path) -> TemporalGraph:
    with open(path, "rb") as handle:
        return load_dataset(handle)


# ---------------------------------------------------------------------------
# serialization

def serialize(graph: TemporalGraph) -> str:
    """Emit the dataset document with canonical ordering (byte-stable)."""
    frame_rank = {f.id: f.order for f in graph.frames}
    doc = {
        "frames": [
            {"id": f.id, "label": f.label, "order": f.order} for f in graph.frames
        ],
        "nodes": [
            {
                "id": node.id,
                "attributes": {k: node.attributes[k] for k in sorted(node.attributes)},
                "frames": sorted(node.frames, key=frame_rank.__getitem__),
                "community": {k: node.community[k] for k in sorted(node.community)},
            }
            for node in graph.nodes.values()
        ],
        "edges": [
            {
                "source": edge.endpoints[0],
                "target": edge.endpoints[1],
                "attributes": {k: edge.attributes[k] for k in sorted(edge.attributes)},
                "frames": sorted(edge.frames, key=frame_rank.__getitem__),
            }
            for edge in graph.edges.values()
        ],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


# ---------------------------------------------------------------------------
# view construction

def _kind_of(value: Scalar) -> str:
    if isinstance(value, bool):
        return "bool"
    if isinstance(value, (int, float)):
        return "number"
    return "string"


def normalize_op(op: str) -> str:
    op = _OP_ALIASES.get(op, op)
    if op not in _ORDER_OPS | _EQUALITY_OPS:
        raise ValueError(f"unknown predicate operator {op!r}")
    return op


def _satisfies(attributes: Mapping[str, Scalar], clauses) -> bool:
    for attr, op, wanted in clauses:
        if op in _ORDER_OPS and _kind_of(wanted) != "number":
            raise PredicateTypeError(
                f"operator {op!r} needs a numeric literal, got {wanted!r}"
            )
        if attr not in attributes:
            return False
        value = attributes[attr]
        if op in _EQUALITY_OPS:
            equal = _kind_of(value) == _kind_of(wanted) and value == wanted
            if (op == "=") != equal:
                return False
        else:
            if _kind_of(value) != "number":
                raise PredicateTypeError(
                    f"operator {op!r} applied to non-numeric attribute {attr!r}={value!r}"
                )
            if op == "<" and not value < wanted:
                return False
            if op == "<=" and not value <= wanted:
                return False
            if op == ">" and not value > wanted:
                return False
            if op == ">=" and not value >= wanted:
                return False
    return True


def connected_components(node_ids: Iterable[str], edge_ids: Iterable[tuple[str, str]]):
    """Components as lists of node ids, ordered by smallest contained id."""
    adjacency: dict[str, list[str]] = {nid: [] for nid in node_ids}
    for a, b in edge_ids:
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen: set[str] = set()
    components = []
    for start in sorted(adjacency):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        component = []
        while stack:
            current = stack.pop()
            component.append(current)
            for neighbor in sorted(adjacency[current], reverse=True):
                if neighbor not in seen:
                    seen.add(neighbor)
                    stack.append(neighbor)
        components.append(sorted(component))
    return components


def _assign_communities(graph, spec, node_ids, edge_ids) -> dict[str, str]:
    labels: dict[str, str] = {}
    if spec.kind == FRAME_KIND:
        for nid in node_ids:
            label = graph.nodes[nid].community.get(spec.frame_id)
            if label is not None:
                labels[nid] = label
    missing = node_ids - labels.keys()
    if missing:
        for index, component in enumerate(connected_components(node_ids, edge_ids)):
            for nid in component:
                if nid in missing:
                    labels[nid] = f"cc:{index}"
    return labels


def slice(graph: TemporalGraph, spec: ViewSpec) -> ViewGraph:
    """Build the subgraph one view displays: a frame slice or a predicate filter."""
    if spec.kind == FRAME_KIND:
        if spec.frame_id not in graph.frame_ids:
            raise UnknownFrame(f"frame {spec.frame_id!r} not in dataset")
        node_ids = frozenset(
            nid for nid, node in graph.nodes.items() if spec.frame_id in node.frames
        )
        edge_ids = frozenset(
            pair for pair, edge in graph.edges.items() if spec.frame_id in edge.frames
        )
    else:
        clauses = [(attr, normalize_op(op), value) for attr, op, value in spec.predicate]
        node_ids = frozenset(
            nid for nid, node in graph.nodes.items() if _satisfies(node.attributes, clauses)
        )
        edge_ids = frozenset(
            pair
            for pair, edge in graph.edges.items()
            if pair[0] in node_ids and pair[1] in node_ids
            and _satisfies(edge.attributes, clauses)
        )
    return ViewGraph(
        view_id=spec.view_id,
        node_ids=node_ids,
        edge_ids=edge_ids,
        community_of=_assign_communities(graph, spec, node_ids, edge_ids),
    )


# ---------------------------------------------------------------------------
# ViewSpec JSON helpers (protocol and scenario files)

def view_spec_from_json(obj: Mapping) -> ViewSpec:
    if not isinstance(obj, Mapping) or not isinstance(obj.get("viewId"), str):
        raise ParseError("view spec must be an object with a string viewId")
    kind = obj.get("kind")
    if kind == FRAME_KIND:
        frame_id = obj.get("frameId")
        if not isinstance(frame_id, str):
            raise ParseError(f"view {obj['viewId']!r}: frame view needs a frameId string")
        return ViewSpec(view_id=obj["viewId"], kind=FRAME_KIND, frame_id=frame_id)
    if kind == PREDICATE_KIND:
        raw = obj.get("predicate")
        if not isinstance(raw, list) or not raw:
            raise ParseError(f"view {obj['viewId']!r}: predicate view needs a clause array")
        clauses = []
        for clause in raw:
            if (
                not isinstance(clause, Mapping)
                or not isinstance(clause.get("attr"), str)
                or not isinstance(clause.get("op"), str)
                or not isinstance(clause.get("value"), (str, int, float, bool))
            ):
                raise ParseError(
                    f"view {obj['viewId']!r}: clauses are {{attr, op, value}} objects"
                )
            try:
                op = normalize_op(clause["op"])
            except ValueError as exc:
                raise ParseError(f"view {obj['viewId']!r}: {exc}") from exc
            clauses.append((clause["attr"], op, clause["value"]))
        return ViewSpec(view_id=obj["viewId"], kind=PREDICATE_KIND, predicate=tuple(clauses))
    raise ParseError(f"view {obj.get('viewId')!r}: kind must be 'frame' or 'predicate'")


def view_spec_to_json(spec: ViewSpec) -> dict:
    if spec.kind == FRAME_KIND:
        return {"viewId": spec.view_id, "kind": FRAME_KIND, "frameId": spec.frame_id}
    return {
        "viewId": spec.view_id,
        "kind": PREDICATE_KIND,
        "predicate": [
            {"attr": attr, "op": op, "value": value} for attr, op, value in spec.predicate
        ],
    }
