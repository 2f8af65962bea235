"""Command-line entry point: dataset tooling, scenario replay, and the server."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import graph, scenario
from .errors import ParseError
from .layout import compute_layout

DEFAULT_PORT = 7341


@click.group()
def main():
    """Linked-view coordination engine for temporal multidimensional graphs."""


@main.command()
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False))
def validate(dataset):
    """Check a dataset document against every structural rule."""
    with open(dataset, "rb") as handle:
        try:
            violations = graph.dataset_violations(handle)
        except ParseError as exc:
            click.echo(f"parse error: {exc}", err=True)
            sys.exit(2)
    for violation in violations:
        click.echo(str(violation))
    click.echo(f"{len(violations)} violations")
    sys.exit(0 if not violations else 1)


@main.command()
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False))
@click.option("--views", "views_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="JSON array of view specs.")
@click.option("--seed", default=1, show_default=True, type=int)
@click.option("--iterations", default=300, show_default=True, type=int)
def layout(dataset, views_path, seed, iterations):
    """Slice views out of a dataset and print their deterministic layouts."""
    try:
        temporal = graph.load_dataset_file(dataset)
        specs_doc = json.loads(Path(views_path).read_text(encoding="utf-8"))
        if not isinstance(specs_doc, list):
            raise ParseError("views file must be a JSON array of view specs")
        specs = [graph.view_spec_from_json(obj) for obj in specs_doc]
    except (ParseError, graph.ValidationError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    result = []
    for spec in specs:
        view = graph.slice(temporal, spec)
        layout_map = compute_layout(view, seed=seed, iterations=iterations)
        result.append(
            {
                "viewId": spec.view_id,
                "seed": seed,
                "iterations": iterations,
                "positions": {
                    nid: [xy[0], xy[1]] for nid, xy in sorted(layout_map.positions.items())
                },
            }
        )
    click.echo(json.dumps({"views": result}, indent=2, sort_keys=True))


@main.command()
@click.argument("scenario_path", metavar="SCENARIO", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "output_dir", required=True, type=click.Path(file_okay=False),
              help="Directory for event files, frame dumps, and the manifest.")
def run(scenario_path, output_dir):
    """Replay a scripted interaction scenario headlessly."""
    try:
        loaded = scenario.load_scenario(scenario_path)
    except ParseError as exc:
        click.echo(f"scenario error: {exc}", err=True)
        sys.exit(2)
    status = scenario.run_scenario(loaded, output_dir)
    click.echo(f"wrote {output_dir} (status {'ok' if status == 0 else 'error'})")
    sys.exit(status)


@main.command()
@click.option("--port", default=None, type=int,
              help=f"Port to bind (default: $GRAPHBRIDGE_PORT or {DEFAULT_PORT}).")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Start the HTTP + WebSocket session service."""
    import uvicorn

    from .service.app import create_app

    if port is None:
        port = int(os.environ.get("GRAPHBRIDGE_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
