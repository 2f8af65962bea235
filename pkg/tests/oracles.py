"""Independent reference implementations the tests compare against.

Everything here is written from the documented contracts rather than from
the package source, using different algorithms or data layouts where the
contract allows it, so a transcription bug on either side surfaces as a
disagreement instead of being copied into the expectation.
"""

from __future__ import annotations

import math
from fractions import Fraction

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Published first outputs of the splitmix64 generator for seed 0.
SPLITMIX_SEED0_FIRST4 = (
    0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4,
    0x06C45D188009454F,
    0xF88BB8A8724C81EC,
)


def splitmix_sequence(seed: int, count: int) -> list[int]:
    """Closed form: the i-th output mixes seed + (i+1) * gamma directly,
    with no incremental state, unlike the generator class under test."""
    out = []
    for i in range(1, count + 1):
        z = (seed + i * _GAMMA) & _MASK
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        out.append(z ^ (z >> 31))
    return out


def brute_match(sel_nodes, sel_edges, tgt_nodes, tgt_edges) -> dict:
    """Drop classification by linear membership scans over id lists."""
    sn, se = list(sel_nodes), list(sel_edges)
    tn, te = list(tgt_nodes), list(tgt_edges)
    return {
        "matched_nodes": {v for v in sn if v in tn},
        "matched_edges": {e for e in se if e in te},
        "faded_nodes": {v for v in sn if v not in tn},
        "faded_edges": {e for e in se if e not in te},
        "grayed_nodes": {v for v in tn if v not in sn},
        "grayed_edges": {e for e in te if e not in se},
    }


def exact_point_in_polygon(point, polygon) -> bool:
    """Even-odd membership in exact rational arithmetic, boundary inclusive."""
    px, py = Fraction(point[0]), Fraction(point[1])
    verts = [(Fraction(x), Fraction(y)) for x, y in polygon]
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        if cross == 0 and min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by):
            return True
    inside = False
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        if (ay > py) != (by > py):
            x_cross = ax + (py - ay) * (bx - ax) / (by - ay)
            if px < x_cross:
                inside = not inside
    return inside


def components_by_union_find(node_ids, edge_pairs) -> list[list[str]]:
    """Connected components via union-find, ordered by smallest member id."""
    parent = {nid: nid for nid in node_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edge_pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[str, list[str]] = {}
    for nid in node_ids:
        groups.setdefault(find(nid), []).append(nid)
    return sorted((sorted(group) for group in groups.values()), key=lambda g: g[0])


def predicate_holds(attributes, clauses) -> bool:
    """Conjunction of (attr, op, value) clauses evaluated per documented rules:
    missing attribute fails the clause; equality is type-aware (bool is not a
    number); ordering compares numbers only."""

    def kind(v):
        if isinstance(v, bool):
            return "bool"
        if isinstance(v, (int, float)):
            return "number"
        return "string"

    for attr, op, wanted in clauses:
        if attr not in attributes:
            return False
        value = attributes[attr]
        if op in ("=", "!="):
            same = kind(value) == kind(wanted) and value == wanted
            if op == "=" and not same:
                return False
            if op == "!=" and same:
                return False
        else:
            if kind(value) != "number" or kind(wanted) != "number":
                raise TypeError(f"ordering op {op!r} on non-numbers")
            if op == "<" and not value < wanted:
                return False
            if op == "<=" and not value <= wanted:
                return False
            if op == ">" and not value > wanted:
                return False
            if op == ">=" and not value >= wanted:
                return False
    return True


def fr_layout_reference(node_ids, edge_pairs, seed: int, iterations: int) -> dict:
    """Reference force-directed layout built from the documented recipe.

    Follows the pinned arithmetic order (canonical id order everywhere,
    repulsion then attraction then capped displacement, linear cooling from
    0.1, normalization into [0.05, 0.95] with snapping to 2^-30) but uses
    its own data layout: positions keyed by node id in dicts rather than
    parallel index arrays.
    """
    order = sorted(node_ids)
    n = len(order)
    if n == 0:
        return {}
    raw = splitmix_sequence(seed, 2 * n)
    floats = [(u >> 11) * 2.0**-53 for u in raw]
    pos = {nid: [floats[2 * i], floats[2 * i + 1]] for i, nid in enumerate(order)}
    edges = sorted(edge_pairs)
    k = math.sqrt(1.0 / n)

    for step in range(iterations):
        temperature = 0.1 * (iterations - step) / iterations
        disp = {nid: [0.0, 0.0] for nid in order}
        for nid in order:
            total_x = 0.0
            total_y = 0.0
            for other in order:
                if other == nid:
                    continue
                dx = pos[nid][0] - pos[other][0]
                dy = pos[nid][1] - pos[other][1]
                dist = math.sqrt(dx * dx + dy * dy)
                if dist > 0.0:
                    force = k * k / dist
                    total_x += dx / dist * force
                    total_y += dy / dist * force
            disp[nid][0] = total_x
            disp[nid][1] = total_y
        for a, b in edges:
            dx = pos[a][0] - pos[b][0]
            dy = pos[a][1] - pos[b][1]
            dist = math.sqrt(dx * dx + dy * dy)
            if dist > 0.0:
                force = dist * dist / k
                fx = dx / dist * force
                fy = dy / dist * force
                disp[a][0] -= fx
                disp[a][1] -= fy
                disp[b][0] += fx
                disp[b][1] += fy
        for nid in order:
            dx, dy = disp[nid]
            dist = math.sqrt(dx * dx + dy * dy)
            if dist > 0.0:
                scale = min(dist, temperature) / dist
                pos[nid][0] += dx * scale
                pos[nid][1] += dy * scale

    min_x = min(p[0] for p in pos.values())
    max_x = max(p[0] for p in pos.values())
    min_y = min(p[1] for p in pos.values())
    max_y = max(p[1] for p in pos.values())

    def quantize(value):
        return round(value * 2**30) / 2**30

    result = {}
    for nid in order:
        x, y = pos[nid]
        nx = 0.05 + 0.9 * (x - min_x) / (max_x - min_x) if max_x > min_x else 0.5
        ny = 0.05 + 0.9 * (y - min_y) / (max_y - min_y) if max_y > min_y else 0.5
        result[nid] = (quantize(nx), quantize(ny))
    return result
