import { GraphBridgeClient } from "./client.js";
import type { ProtocolRequest, ViewSpecMsg } from "./protocol.js";

// Demo bootstrap for the bundled dataset; override with ?dataset=...&seed=...
const DEFAULT_DATASET = "data/communities.json";
const DEFAULT_VIEWS: ViewSpecMsg[] = [
  { viewId: "march", kind: "frame", frameId: "f1" },
  { viewId: "april", kind: "frame", frameId: "f2" },
  { viewId: "heavy", kind: "predicate", predicate: [{ attr: "weight", op: ">=", value: 5 }] },
];

function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const params = new URLSearchParams(window.location.search);
  const proto = window.location.protocol === "https:" ? "wss" : "ws";
  const socket = new WebSocket(`${proto}://${window.location.host}/ws`);
  const client = new GraphBridgeClient(root, (request: ProtocolRequest) => {
    socket.send(JSON.stringify(request));
  });
  socket.onmessage = (e) => client.handleServerEvent(JSON.parse(e.data));
  socket.onopen = () => {
    socket.send(
      JSON.stringify({
        type: "loadDataset",
        path: params.get("dataset") ?? DEFAULT_DATASET,
      }),
    );
    socket.send(
      JSON.stringify({
        type: "defineViews",
        specs: DEFAULT_VIEWS,
        seed: Number(params.get("seed") ?? 7),
        iterations: Number(params.get("iterations") ?? 120),
        durationMs: Number(params.get("durationMs") ?? 800),
      }),
    );
  };
}

window.addEventListener("DOMContentLoaded", boot);
