"""Shared fixtures and small builders for the test suite."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest
from hypothesis import settings

from graphbridge import graph
from graphbridge.graph import TemporalGraph, ViewGraph, edge_identity
from graphbridge.layout import LayoutMap, snap

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

REPO_ROOT = Path(__file__).resolve().parents[1]
DATA_DIR = REPO_ROOT / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def minimal_path() -> Path:
    return DATA_DIR / "minimal.json"


@pytest.fixture(scope="session")
def communities_path() -> Path:
    return DATA_DIR / "communities.json"


@pytest.fixture(scope="session")
def communities_graph(communities_path) -> TemporalGraph:
    return graph.load_dataset_file(communities_path)


@pytest.fixture(scope="session")
def demo_scenario_path() -> Path:
    return DATA_DIR / "scenarios" / "demo_transfer.json"


def dataset_doc(frames=None, nodes=(), edges=()) -> dict:
    """Dataset document from shorthand: frames as (id, order) or plain ids,
    nodes as (id, frame ids) or (id, frame ids, attributes), edges as
    (source, target, frame ids)."""
    if frames is None:
        frames = ["f1"]
    frame_objs = []
    for i, f in enumerate(frames):
        if isinstance(f, str):
            frame_objs.append({"id": f, "label": f.upper(), "order": i})
        else:
            frame_objs.append({"id": f[0], "label": f[0].upper(), "order": f[1]})
    node_objs = []
    for n in nodes:
        obj = {"id": n[0], "attributes": {}, "frames": list(n[1]), "community": {}}
        if len(n) > 2:
            obj["attributes"] = dict(n[2])
        if len(n) > 3:
            obj["community"] = dict(n[3])
        node_objs.append(obj)
    edge_objs = []
    for e in edges:
        obj = {"source": e[0], "target": e[1], "attributes": {}, "frames": list(e[2])}
        if len(e) > 3:
            obj["attributes"] = dict(e[3])
        edge_objs.append(obj)
    return {"frames": frame_objs, "nodes": node_objs, "edges": edge_objs}


def load_doc(frames=None, nodes=(), edges=()) -> TemporalGraph:
    return graph.load_dataset(json.dumps(dataset_doc(frames, nodes, edges)))


def make_view(view_id: str, node_ids, edge_pairs=(), community=None) -> ViewGraph:
    """ViewGraph built directly, bypassing dataset loading, for unit tests."""
    nodes = frozenset(node_ids)
    edges = frozenset(edge_identity(a, b) for a, b in edge_pairs)
    labels = dict(community) if community else {}
    for nid in nodes:
        labels.setdefault(nid, "one")
    return ViewGraph(view_id=view_id, node_ids=nodes, edge_ids=edges, community_of=labels)


def random_view(rng: random.Random, view_id: str = "v", max_nodes: int = 30,
                edge_prob: float = 0.25) -> ViewGraph:
    n = rng.randint(0, max_nodes)
    ids = [f"n{i:02d}" for i in range(n)]
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                pairs.append((ids[i], ids[j]))
    return make_view(view_id, ids, pairs)


def grid_layout(view: ViewGraph, rng: random.Random) -> LayoutMap:
    """Random positions snapped to the shared grid, like a real layout."""
    positions = {nid: (snap(rng.random()), snap(rng.random())) for nid in sorted(view.node_ids)}
    return LayoutMap(view_id=view.view_id, positions=positions, seed=0, iterations=1)
