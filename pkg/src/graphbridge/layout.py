"""Deterministic force-directed layout for view graphs.

Positions are the substrate of the transfer animation, so reproducibility
outranks layout quality: a fixed-iteration Fruchterman-Reingold loop runs
from seeded pseudo-random starting points, iterating nodes and edges in
canonical id order so the arithmetic order (and therefore every bit of the
result) is pinned.

All emitted coordinates are snapped to the dyadic grid of ``GRID`` = 2^-30.
On that grid, translating every point by the same grid-aligned delta is
exact in IEEE-754 doubles, which is what makes the drag pipeline's
"pairwise offsets never change" guarantee hold bit-for-bit. The grid step
(~9.3e-10) sits below the 9-decimal-digit serialization used for frame
dumps, so snapping is invisible in any emitted number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import EmptyInput
from .graph import ViewGraph

DEFAULT_SEED = 1
DEFAULT_ITERATIONS = 300

GRID = 2.0**-30

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# initial temperature: a tenth of the unit viewport, cooled linearly to zero
_INITIAL_TEMPERATURE = 0.1


def snap(value: float) -> float:
    """Quantize to the shared position grid (round half to even)."""
    return round(value / GRID) * GRID


class SplitMix64:
    """64-bit splitmix generator; constants above are the standard ones."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53


@dataclass(frozen=True)
class LayoutMap:
    view_id: str
    positions: Mapping[str, tuple[float, float]]
    seed: int
    iterations: int


def bounding_box(points: Iterable[tuple[float, float]]):
    """Componentwise (min_x, min_y, max_x, max_y); EmptyInput on no points."""
    points = list(points)
    if not points:
        raise EmptyInput("bounding_box of no points")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


def compute_layout(
    view: ViewGraph,
    seed: int = DEFAULT_SEED,
    iterations: int = DEFAULT_ITERATIONS,
) -> LayoutMap:
    """Run the seeded force loop and normalize into [0.05, 0.95]^2.

    Repulsion k^2/d acts between every node pair, attraction d^2/k along
    every edge, k = sqrt(area/|V|) with unit area. Displacement per step is
    capped by a linearly cooling temperature. Exactly ``iterations`` steps
    run regardless of convergence. Axes whose final extent is zero are
    centered at 0.5.
    """
    if iterations < 1:
        raise ValueError("iterations must be positive")
    order = sorted(view.node_ids)
    n = len(order)
    if n == 0:
        return LayoutMap(view.view_id, {}, seed, iterations)

    rng = SplitMix64(seed)
    xs = []
    ys = []
    for _ in order:
        xs.append(rng.next_float())
        ys.append(rng.next_float())

    index = {nid: i for i, nid in enumerate(order)}
    edges = [(index[a], index[b]) for a, b in sorted(view.edge_ids)]
    k = math.sqrt(1.0 / n)

    for step in range(iterations):
        temperature = _INITIAL_TEMPERATURE * (iterations - step) / iterations
        disp_x = [0.0] * n
        disp_y = [0.0] * n

        for i in range(n):
            xi = xs[i]
            yi = ys[i]
            dx_total = 0.0
            dy_total = 0.0
            for j in range(n):
                if i == j:
                    continue
                dx = xi - xs[j]
                dy = yi - ys[j]
                dist = math.sqrt(dx * dx + dy * dy)
                if dist > 0.0:
                    force = k * k / dist
                    dx_total += dx / dist * force
                    dy_total += dy / dist * force
            disp_x[i] = dx_total
            disp_y[i] = dy_total

        for i, j in edges:
            dx = xs[i] - xs[j]
            dy = ys[i] - ys[j]
            dist = math.sqrt(dx * dx + dy * dy)
            if dist > 0.0:
                force = dist * dist / k
                fx = dx / dist * force
                fy = dy / dist * force
                disp_x[i] -= fx
                disp_y[i] -= fy
                disp_x[j] += fx
                disp_y[j] += fy

        for i in range(n):
            dist = math.sqrt(disp_x[i] * disp_x[i] + disp_y[i] * disp_y[i])
            if dist > 0.0:
                scale = min(dist, temperature) / dist
                xs[i] += disp_x[i] * scale
                ys[i] += disp_y[i] * scale

    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    positions = {}
    for i, nid in enumerate(order):
        if max_x > min_x:
            x = 0.05 + 0.9 * (xs[i] - min_x) / (max_x - min_x)
        else:
            x = 0.5
        if max_y > min_y:
            y = 0.05 + 0.9 * (ys[i] - min_y) / (max_y - min_y)
        else:
            y = 0.5
        positions[nid] = (snap(x), snap(y))
    return LayoutMap(view.view_id, positions, seed, iterations)
