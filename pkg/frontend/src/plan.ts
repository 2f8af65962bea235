// Local sampling of a received interpolation plan. Rendering during scrub
// and autoplay evaluates the plan at a progress value; the plan itself is
// always server-authored.

import type { EdgeTrack, NodeTrack, PlanEvent } from "./protocol.js";

export interface SampledNode {
  id: string;
  x: number;
  y: number;
  alpha: number;
  color: string;
}

export interface SampledEdge {
  source: string;
  target: string;
  alpha: number;
}

export interface SampledFrame {
  progress: number;
  nodes: SampledNode[];
  edges: SampledEdge[];
}

function parseHex(color: string): [number, number, number] {
  const v = parseInt(color.slice(1), 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

export function crossfade(from: string, to: string, t: number): string {
  const a = parseHex(from);
  const b = parseHex(to);
  let out = "#";
  for (let i = 0; i < 3; i++) {
    // (1-t)*a + t*b is exact at both endpoints
    const c = Math.round((1 - t) * a[i] + t * b[i]);
    out += c.toString(16).padStart(2, "0");
  }
  return out;
}

function sampleNode(track: NodeTrack, t: number): SampledNode {
  if (track.role === "matched") {
    return {
      id: track.id,
      x: (1 - t) * track.start[0] + t * track.end[0],
      y: (1 - t) * track.start[1] + t * track.end[1],
      alpha: 1,
      color: crossfade(track.startColor, track.endColor, t),
    };
  }
  return {
    id: track.id,
    x: track.start[0],
    y: track.start[1],
    alpha: 1 - t,
    color: track.startColor,
  };
}

function sampleEdge(track: EdgeTrack, t: number): SampledEdge {
  return {
    source: track.source,
    target: track.target,
    alpha: track.role === "matched" ? 1 : 1 - t,
  };
}

export function samplePlan(plan: PlanEvent, t: number): SampledFrame {
  if (!(t >= 0 && t <= 1)) {
    throw new RangeError(`progress ${t} outside [0, 1]`);
  }
  return {
    progress: t,
    nodes: plan.nodeTracks.map((track) => sampleNode(track, t)),
    edges: plan.edgeTracks.map((track) => sampleEdge(track, t)),
  };
}
