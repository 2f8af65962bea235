// Message schema for the session WebSocket. Requests go client to server,
// events come back; the client never invents a highlight or plan on its own.

export interface ViewSpecMsg {
  viewId: string;
  kind: "frame" | "predicate";
  frameId?: string;
  predicate?: { attr: string; op: string; value: unknown }[];
}

export type ProtocolRequest =
  | { type: "loadDataset"; path?: string; inline?: unknown }
  | {
      type: "defineViews";
      specs: ViewSpecMsg[];
      seed: number;
      iterations: number;
      durationMs?: number;
    }
  | { type: "select"; view: string; lasso?: [number, number][]; ids?: string[] }
  | { type: "beginDrag" }
  | { type: "dragMove"; dx: number; dy: number }
  | { type: "hoverTarget"; view: string; ctrl: boolean }
  | { type: "scrub"; x: number; y: number }
  | { type: "drop"; x: number; y: number; ctrl: boolean }
  | { type: "tick"; elapsedMs: number }
  | { type: "cancel" }
  | { type: "clear" };

export interface ViewNode {
  id: string;
  x: number; // view-local layout coordinates in [0, 1]
  y: number;
  color: string;
  community: string;
}

export interface ViewEdge {
  source: string;
  target: string;
}

export interface ViewPayload {
  viewId: string;
  kind: "frame" | "predicate";
  frameId?: string;
  predicate?: { attr: string; op: string; value: unknown }[];
  viewport: [number, number, number, number]; // global canvas rectangle
  nodes: ViewNode[];
  edges: ViewEdge[];
}

export interface ViewsEvent {
  type: "views";
  views: ViewPayload[];
}

export interface HighlightSection {
  viewId: string;
  nodes: string[];
  edges: [string, string][];
}

export interface HighlightEvent {
  type: "highlight";
  views: HighlightSection[];
}

export interface DragPositionsEvent {
  type: "drag";
  positions: { id: string; x: number; y: number }[]; // global coordinates
}

export interface NodeTrack {
  id: string;
  role: "matched" | "faded";
  start: [number, number];
  end: [number, number];
  startColor: string;
  endColor: string;
}

export interface EdgeTrack {
  source: string;
  target: string;
  role: "matched" | "faded";
}

export interface PlanEvent {
  type: "plan";
  targetView: string;
  durationMs: number;
  nodeTracks: NodeTrack[];
  edgeTracks: EdgeTrack[];
  grayedNodes: string[];
  grayedEdges: [string, string][];
}

export interface ProgressAckEvent {
  type: "progress";
  t: number;
}

export interface FrameNode {
  id: string;
  x: number;
  y: number;
  alpha: number;
  color: string;
}

export interface FrameEdge {
  source: string;
  target: string;
  alpha: number;
}

export interface FrameEvent {
  type: "frame";
  progress: number;
  nodes: FrameNode[];
  edges: FrameEdge[];
  grayedNodes: string[];
  grayedEdges: [string, string][];
}

export interface ServerErrorEvent {
  type: "error";
  code: string;
  detail: string;
}

export type ServerEvent =
  | ViewsEvent
  | HighlightEvent
  | DragPositionsEvent
  | PlanEvent
  | ProgressAckEvent
  | FrameEvent
  | ServerErrorEvent;
