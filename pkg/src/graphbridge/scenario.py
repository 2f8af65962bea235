"""Headless scenario replay: scripted message sequences with frame dumps.

A scenario file is JSON::

    {
      "dataset": "relative/or/absolute/path.json",
      "views": [view specs],
      "seed": 1,
      "iterations": 300,
      "steps": [protocol requests],
      "samplePoints": [0, 0.25, 0.5, 0.75, 1]
    }

The runner feeds ``loadDataset`` + ``defineViews`` + steps to a fresh
session, writes every emitted event to its own numbered JSON file, then
samples the last interpolation plan at each sample point and writes the
pinned frame dump format. ``manifest.json`` lists the files in emission
order. Output is a pure function of the inputs, so two runs produce
byte-identical trees.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from . import animation, session
from .errors import ParseError
from .graph import ViewSpec, view_spec_from_json, view_spec_to_json


@dataclass(frozen=True)
class Scenario:
    dataset_path: str
    view_specs: tuple[ViewSpec, ...]
    seed: int
    iterations: int
    duration_ms: int
    steps: tuple[dict, ...]
    sample_points: tuple[float, ...]


def _require(cond: bool, message: str):
    if not cond:
        raise ParseError(message)


def parse_scenario(doc: dict, base_dir: Path | None = None) -> Scenario:
    _require(isinstance(doc, dict), "scenario must be an object")
    _require(isinstance(doc.get("dataset"), str), "scenario needs a 'dataset' path")
    _require(isinstance(doc.get("views"), list), "scenario needs a 'views' array")
    steps = doc.get("steps")
    _require(isinstance(steps, list) and steps, "scenario needs a non-empty 'steps' array")
    _require(all(isinstance(s, dict) for s in steps), "steps must be objects")
    points = doc.get("samplePoints", [])
    _require(isinstance(points, list), "'samplePoints' must be an array")
    values = []
    for p in points:
        _require(
            isinstance(p, (int, float)) and not isinstance(p, bool) and 0.0 <= p <= 1.0,
            "sample points must be numbers in [0, 1]",
        )
        values.append(float(p))
    _require(values == sorted(values), "sample points must be sorted ascending")
    seed = doc.get("seed", 1)
    iterations = doc.get("iterations", 300)
    duration = doc.get("durationMs", animation.DEFAULT_DURATION_MS)
    for name, value in (("seed", seed), ("iterations", iterations), ("durationMs", duration)):
        _require(
            isinstance(value, int) and not isinstance(value, bool),
            f"'{name}' must be an integer",
        )
    dataset_path = doc["dataset"]
    if base_dir is not None and not os.path.isabs(dataset_path):
        dataset_path = str(base_dir / dataset_path)
    return Scenario(
        dataset_path=dataset_path,
        view_specs=tuple(view_spec_from_json(v) for v in doc["views"]),
        seed=seed,
        iterations=iterations,
        duration_ms=duration,
        steps=tuple(steps),
        sample_points=tuple(values),
    )


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"scenario is not valid JSON: {exc}") from exc
    return parse_scenario(doc, base_dir=path.parent)


def _event_json(event: dict) -> str:
    return json.dumps(event, ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n"


def run_scenario(scenario: Scenario, output_dir) -> int:
    """Replay the scenario, writing event files, frame dumps, and a manifest.

    Returns 0 on a fully legal replay, 1 if any error event was emitted.
    """
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    state = session.initial_state()
    messages = [
        {"type": "loadDataset", "path": scenario.dataset_path},
        {
            "type": "defineViews",
            "specs": [view_spec_to_json(spec) for spec in scenario.view_specs],
            "seed": scenario.seed,
            "iterations": scenario.iterations,
            "durationMs": scenario.duration_ms,
        },
    ]
    messages.extend(scenario.steps)

    files: list[str] = []
    failed = False
    counter = 0
    last_plan = None
    for message in messages:
        state, events = session.handle_message(state, message)
        if state.plan is not None:
            last_plan = state.plan
        for event in events:
            counter += 1
            if event["type"] == "error":
                failed = True
            name = f"{counter:04d}_{event['type']}.json"
            (out / name).write_text(_event_json(event), encoding="utf-8")
            files.append(name)

    if last_plan is not None:
        for i, t in enumerate(scenario.sample_points):
            frame = animation.sample(last_plan, t)
            name = f"frame_{i:02d}.json"
            (out / name).write_text(animation.frame_to_json(frame), encoding="utf-8")
            files.append(name)

    manifest = {"files": files, "status": "error" if failed else "ok"}
    (out / "manifest.json").write_text(_event_json(manifest), encoding="utf-8")
    return 1 if failed else 0
