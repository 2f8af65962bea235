// Gesture loop and server-event application. All authority stays with the
// server: the client turns pointer and keyboard input into protocol requests
// and renders what comes back (views, highlights, drag echoes, plans,
// progress acknowledgments, frames). Invalid gestures send nothing.

import type {
  DragPositionsEvent,
  HighlightEvent,
  PlanEvent,
  ProtocolRequest,
  ServerEvent,
  ViewPayload,
} from "./protocol.js";
import { samplePlan } from "./plan.js";
import {
  ORIGIN,
  SCALE,
  Stage,
  applyGraying,
  applyHighlight,
  clearAnimation,
  clearGraying,
  clearLasso,
  createStage,
  dimSelection,
  drawLasso,
  nodeGlobal,
  overlayPresent,
  removeDragOverlay,
  renderSampledFrame,
  renderViews,
  setStatus,
  showDragOverlay,
} from "./render.js";

export const HIT_RADIUS = 10 / SCALE; // pointer-to-node slack, in canvas units

type Phase = "idle" | "lasso" | "dragging" | "preview";

const TICK_INTERVAL_MS = 16;

export class GraphBridgeClient {
  readonly stage: Stage;

  private readonly sendRequest: (request: ProtocolRequest) => void;
  private readonly now: () => number;
  private views: ViewPayload[] = [];
  private highlightByView = new Map<
    string,
    { nodes: string[]; edges: [string, string][] }
  >();
  private sourceViewId: string | null = null;
  private phase: Phase = "idle";
  private lassoViewId: string | null = null;
  private lassoPoints: [number, number][] = []; // view-local
  private lastPointer: [number, number] | null = null; // canvas coords
  private ctrlHeld = false;
  private previewViewId: string | null = null;
  private plan: PlanEvent | null = null;
  private progress: number | null = null;
  private awaitingPlan = false;
  private autoplayStart: number | null = null;
  private autoplayTimer: ReturnType<typeof setTimeout> | null = null;
  private readonly detach: () => void;

  constructor(
    root: HTMLElement,
    sendRequest: (request: ProtocolRequest) => void,
    now: () => number = () => Date.now(),
  ) {
    this.stage = createStage(root);
    this.sendRequest = sendRequest;
    this.now = now;

    const onDown = (e: MouseEvent) => this.onMouseDown(e);
    const onMove = (e: MouseEvent) => this.onMouseMove(e);
    const onUp = (e: MouseEvent) => this.onMouseUp(e);
    const onKeyDown = (e: KeyboardEvent) => this.onKeyDown(e);
    const onKeyUp = (e: KeyboardEvent) => this.onKeyUp(e);
    const doc = root.ownerDocument;
    this.stage.svg.addEventListener("mousedown", onDown);
    doc.addEventListener("mousemove", onMove);
    doc.addEventListener("mouseup", onUp);
    doc.addEventListener("keydown", onKeyDown);
    doc.addEventListener("keyup", onKeyUp);
    this.detach = () => {
      this.stage.svg.removeEventListener("mousedown", onDown);
      doc.removeEventListener("mousemove", onMove);
      doc.removeEventListener("mouseup", onUp);
      doc.removeEventListener("keydown", onKeyDown);
      doc.removeEventListener("keyup", onKeyUp);
    };
  }

  dispose(): void {
    this.stopAutoplay();
    this.detach();
  }

  get renderedProgress(): number | null {
    return this.progress;
  }

  get dragOverlayVisible(): boolean {
    return overlayPresent(this.stage);
  }

  // ------------------------------------------------------------------
  // server events

  handleServerEvent(event: ServerEvent): void {
    switch (event.type) {
      case "views":
        this.views = event.views;
        this.resetGesture();
        renderViews(this.stage, this.views);
        break;
      case "highlight":
        this.onHighlight(event);
        break;
      case "drag":
        this.onDragEcho(event);
        break;
      case "plan":
        this.onPlan(event);
        break;
      case "progress":
        this.progress = event.t;
        if (this.plan) {
          renderSampledFrame(this.stage, samplePlan(this.plan, event.t));
        }
        break;
      case "frame":
        this.progress = event.progress;
        renderSampledFrame(this.stage, event);
        if (event.progress >= 1) this.stopAutoplay();
        break;
      case "error":
        setStatus(this.stage, `${event.code}: ${event.detail}`);
        break;
    }
  }

  private onHighlight(event: HighlightEvent): void {
    this.highlightByView = new Map(
      event.views.map((s) => [s.viewId, { nodes: s.nodes, edges: s.edges }]),
    );
    const empty = event.views.every((s) => s.nodes.length === 0);
    if (empty) {
      this.sourceViewId = null;
      this.plan = null;
      this.progress = null;
      this.awaitingPlan = false;
      this.stopAutoplay();
      removeDragOverlay(this.stage);
      clearAnimation(this.stage);
      clearGraying(this.stage);
      this.undimAll();
    } else if (this.sourceViewId === null) {
      const first = event.views.find((s) => s.nodes.length > 0);
      this.sourceViewId = first ? first.viewId : null;
    }
    applyHighlight(this.stage, event);
  }

  private onDragEcho(event: DragPositionsEvent): void {
    const source = this.sourceView();
    if (!source) return;
    const colorById = new Map(source.nodes.map((n) => [n.id, n.color]));
    const entries = event.positions.map((p) => ({
      id: p.id,
      x: p.x,
      y: p.y,
      color: colorById.get(p.id) ?? "#888888",
    }));
    const section = this.highlightByView.get(source.viewId);
    showDragOverlay(this.stage, entries, section ? section.edges : []);
    dimSelection(
      this.stage,
      source.viewId,
      entries.map((e) => e.id),
      true,
    );
  }

  private onPlan(event: PlanEvent): void {
    this.plan = event;
    applyGraying(
      this.stage,
      event.targetView,
      event.grayedNodes,
      event.grayedEdges,
    );
    if (this.awaitingPlan) {
      this.awaitingPlan = false;
      this.startAutoplay();
    } else if (this.phase === "preview") {
      renderSampledFrame(
        this.stage,
        samplePlan(event, this.progress ?? 0),
      );
    }
  }

  // ------------------------------------------------------------------
  // pointer and keyboard input

  private toCanvas(e: MouseEvent): [number, number] {
    const rect = this.stage.svg.getBoundingClientRect();
    return [
      (e.clientX - rect.left) / SCALE + ORIGIN,
      (e.clientY - rect.top) / SCALE + ORIGIN,
    ];
  }

  private hitView(point: [number, number]): ViewPayload | null {
    for (const view of this.views) {
      const [x0, y0, x1, y1] = view.viewport;
      if (point[0] >= x0 && point[0] < x1 && point[1] >= y0 && point[1] < y1) {
        return view;
      }
    }
    return null;
  }

  private sourceView(): ViewPayload | null {
    return this.views.find((v) => v.viewId === this.sourceViewId) ?? null;
  }

  private hitsSelectedNode(point: [number, number]): boolean {
    const source = this.sourceView();
    if (!source) return false;
    const section = this.highlightByView.get(source.viewId);
    if (!section || section.nodes.length === 0) return false;
    const selected = new Set(section.nodes);
    for (const node of source.nodes) {
      if (!selected.has(node.id)) continue;
      const [gx, gy] = nodeGlobal(source, node);
      if (Math.hypot(point[0] - gx, point[1] - gy) <= HIT_RADIUS) return true;
    }
    return false;
  }

  private onMouseDown(e: MouseEvent): void {
    if (this.phase !== "idle") return;
    const pt = this.toCanvas(e);
    const view = this.hitView(pt);
    if (!view) return;
    if (view.viewId === this.sourceViewId && this.hitsSelectedNode(pt)) {
      this.sendRequest({ type: "beginDrag" });
      this.phase = "dragging";
      this.lastPointer = pt;
      return;
    }
    this.phase = "lasso";
    this.lassoViewId = view.viewId;
    this.lassoPoints = [
      [pt[0] - view.viewport[0], pt[1] - view.viewport[1]],
    ];
  }

  private onMouseMove(e: MouseEvent): void {
    const pt = this.toCanvas(e);
    if (this.phase === "lasso") {
      const view = this.views.find((v) => v.viewId === this.lassoViewId);
      if (!view) return;
      this.lassoPoints.push([pt[0] - view.viewport[0], pt[1] - view.viewport[1]]);
      drawLasso(
        this.stage,
        this.lassoPoints.map(([x, y]) => [
          x + view.viewport[0],
          y + view.viewport[1],
        ]),
      );
      return;
    }
    if (this.phase === "dragging") {
      const last = this.lastPointer ?? pt;
      const dx = pt[0] - last[0];
      const dy = pt[1] - last[1];
      if (dx !== 0 || dy !== 0) this.sendRequest({ type: "dragMove", dx, dy });
      this.lastPointer = pt;
      if (this.ctrlHeld) {
        const view = this.hitView(pt);
        if (view) {
          this.sendRequest({ type: "hoverTarget", view: view.viewId, ctrl: true });
          this.phase = "preview";
          this.previewViewId = view.viewId;
          // scrubbing needs two distinct anchors, so not over the source view
          if (view.viewId !== this.sourceViewId) {
            this.sendRequest({ type: "scrub", x: pt[0], y: pt[1] });
          }
        }
      }
      return;
    }
    if (this.phase === "preview") {
      this.lastPointer = pt;
      if (!this.ctrlHeld) return;
      const view = this.hitView(pt);
      if (view && view.viewId !== this.previewViewId) {
        this.sendRequest({ type: "hoverTarget", view: view.viewId, ctrl: true });
        this.previewViewId = view.viewId;
      }
      // the scrub line spans the gap between views, so keep streaming even
      // when the pointer is over no viewport
      if (this.previewViewId !== this.sourceViewId) {
        this.sendRequest({ type: "scrub", x: pt[0], y: pt[1] });
      }
    }
  }

  private onMouseUp(e: MouseEvent): void {
    const pt = this.toCanvas(e);
    if (this.phase === "lasso") {
      if (this.lassoViewId) {
        this.sendRequest({
          type: "select",
          view: this.lassoViewId,
          lasso: this.lassoPoints,
        });
        this.sourceViewId = this.lassoViewId;
      }
      clearLasso(this.stage);
      this.phase = "idle";
      this.lassoViewId = null;
      this.lassoPoints = [];
      return;
    }
    if (this.phase === "dragging" || this.phase === "preview") {
      this.sendRequest({ type: "drop", x: pt[0], y: pt[1], ctrl: this.ctrlHeld });
      removeDragOverlay(this.stage);
      this.awaitingPlan = true;
      this.phase = "idle";
      this.previewViewId = null;
    }
  }

  private onKeyDown(e: KeyboardEvent): void {
    if (e.key === "Control") {
      this.ctrlHeld = true;
      return;
    }
    if (e.key !== "Escape") return;
    if (this.phase === "lasso") {
      clearLasso(this.stage);
      this.phase = "idle";
      this.lassoViewId = null;
      this.lassoPoints = [];
      return;
    }
    if (this.phase === "dragging" || this.phase === "preview") {
      this.sendRequest({ type: "cancel" });
      removeDragOverlay(this.stage);
      clearAnimation(this.stage);
      clearGraying(this.stage);
      this.undimAll();
      this.plan = null;
      this.progress = null;
      this.phase = "idle";
      this.previewViewId = null;
    }
  }

  private onKeyUp(e: KeyboardEvent): void {
    if (e.key === "Control") this.ctrlHeld = false;
  }

  // ------------------------------------------------------------------
  // autoplay

  private startAutoplay(): void {
    this.stopAutoplay();
    this.autoplayStart = this.now();
    const tick = () => {
      if (this.autoplayStart === null) return;
      this.sendRequest({
        type: "tick",
        elapsedMs: this.now() - this.autoplayStart,
      });
      this.autoplayTimer = setTimeout(tick, TICK_INTERVAL_MS);
    };
    this.autoplayTimer = setTimeout(tick, TICK_INTERVAL_MS);
  }

  private stopAutoplay(): void {
    if (this.autoplayTimer !== null) {
      clearTimeout(this.autoplayTimer);
      this.autoplayTimer = null;
    }
    this.autoplayStart = null;
  }

  private undimAll(): void {
    for (const view of this.views) {
      dimSelection(
        this.stage,
        view.viewId,
        view.nodes.map((n) => n.id),
        false,
      );
    }
  }

  private resetGesture(): void {
    this.stopAutoplay();
    this.highlightByView = new Map();
    this.sourceViewId = null;
    this.phase = "idle";
    this.lassoViewId = null;
    this.lassoPoints = [];
    this.lastPointer = null;
    this.previewViewId = null;
    this.plan = null;
    this.progress = null;
    this.awaitingPlan = false;
  }
}
