import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { GraphBridgeClient } from "../src/client.js";
import { ORIGIN, SCALE } from "../src/render.js";
import type { ProtocolRequest, ServerEvent } from "../src/protocol.js";

// vitest runs with cwd at the package root (frontend/)
export const GOLDEN_DIR = resolve(process.cwd(), "../tests/golden/demo_transfer");
export const FIXTURE_DIR = resolve(process.cwd(), "tests/fixtures");

export function golden<T>(name: string): T {
  return JSON.parse(readFileSync(resolve(GOLDEN_DIR, name), "utf8")) as T;
}

export function fixture(name: string): string {
  return readFileSync(resolve(FIXTURE_DIR, name), "utf8");
}

export interface Harness {
  client: GraphBridgeClient;
  sent: ProtocolRequest[];
  root: HTMLDivElement;
  svg: SVGSVGElement;
  feed(event: ServerEvent): void;
  dispose(): void;
}

export function harness(
  autoRespond?: (request: ProtocolRequest, feed: (event: ServerEvent) => void) => void,
): Harness {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const sent: ProtocolRequest[] = [];
  const feed = (event: ServerEvent) => client.handleServerEvent(event);
  const client = new GraphBridgeClient(root, (request) => {
    sent.push(request);
    if (autoRespond) autoRespond(request, feed);
  });
  const svg = root.querySelector("svg") as SVGSVGElement;
  return {
    client,
    sent,
    root,
    svg,
    feed,
    dispose: () => {
      client.dispose();
      root.remove();
    },
  };
}

// canvas coordinate -> client pixel under the stage's fixed scale and origin
export function px(canvas: number): number {
  return (canvas - ORIGIN) * SCALE;
}

export function mouse(
  target: EventTarget,
  type: "mousedown" | "mousemove" | "mouseup",
  canvasX: number,
  canvasY: number,
): void {
  target.dispatchEvent(
    new MouseEvent(type, {
      bubbles: true,
      clientX: px(canvasX),
      clientY: px(canvasY),
    }),
  );
}

export function key(type: "keydown" | "keyup", name: string): void {
  document.dispatchEvent(new KeyboardEvent(type, { key: name, bubbles: true }));
}
