"""The `agent` command line: run benchmarks, compare runs, inspect metrics,
serve the insight service, onboard OpenAPI specs, and replay tasks."""

from __future__ import annotations

import json
import os
import sys

import click

from ..fixtures.bench import bundled_manifest
from ..reasoner import BackendConfig
from ..registry import ApiRegistry
from .compare import compare_runs
from .metrics import compute_metrics
from .records import LADDER, SampleSpec
from .runner import AgentConfig, run_benchmark, replay_task
from .sampling import draw_sample
from .stores import RunStore


@click.group()
def main():
    """Plan-and-execute agent harness."""


@main.command()
@click.option("--sample", "sample_name", type=click.Choice(sorted(LADDER)), default="nano")
@click.option("--workers", type=int, default=4, show_default=True)
@click.option("--agent-version", default="dev", show_default=True)
@click.option(
    "--backend",
    type=click.Choice(["scripted", "remote"]),
    default="scripted",
    show_default=True,
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--run-id", default=None, help="Defaults to <version>-<sample>-<seed>.")
@click.option("--runs-dir", default="runs", show_default=True)
@click.option("--endpoint", default=None, help="Chat endpoint for the remote backend.")
@click.option("--model", default=None, help="Model name for the remote backend.")
def run(sample_name, workers, agent_version, backend, seed, run_id, runs_dir, endpoint, model):
    """Run a benchmark sample end to end."""
    manifest = bundled_manifest()
    spec = SampleSpec.for_level(sample_name, seed=seed)
    tasks = draw_sample(manifest, spec)
    remote = None
    if backend == "remote":
        endpoint = endpoint or os.environ.get("AGENT_CHAT_ENDPOINT")
        if not endpoint:
            raise click.UsageError("remote backend needs --endpoint or AGENT_CHAT_ENDPOINT")
        remote = BackendConfig(
            kind="remote_chat",
            endpoint=endpoint,
            model_name=model or os.environ.get("AGENT_CHAT_MODEL", "default"),
        )
    config = AgentConfig(
        backend_kind=backend, remote=remote, agent_version=agent_version
    )
    run_id = run_id or f"{agent_version}-{sample_name}-{seed}"
    record = run_benchmark(
        tasks, config, workers=workers, run_id=run_id, sample=spec, runs_root=runs_dir
    )
    successes = sum(1 for r in record.results.values() if r.status == "success")
    click.echo(
        f"run {record.run_id}: {successes}/{len(record.results)} succeeded "
        f"({100.0 * successes / len(record.results):.1f}%)"
    )
    click.echo(f"artifacts under {os.path.join(runs_dir, record.run_id)}")


@main.command()
@click.argument("base")
@click.argument("new")
@click.option("--runs-dir", default="runs", show_default=True)
def compare(base, new, runs_dir):
    """Diff two runs: resolved, regressed, new, persistent buckets."""
    store = RunStore(runs_dir)
    report = compare_runs(store.load(base), store.load(new))
    click.echo(json.dumps(report.to_dict(), indent=2))


@main.command()
@click.argument("run_id")
@click.option("--runs-dir", default="runs", show_default=True)
def metrics(run_id, runs_dir):
    """Print a run's metric summary."""
    store = RunStore(runs_dir)
    summary = compute_metrics(store.load(run_id))
    click.echo(json.dumps(summary.to_dict(), indent=2))


@main.command()
@click.option("--port", type=int, default=8321, show_default=True)
@click.option("--runs-dir", default="runs", show_default=True)
@click.option("--ui", "ui_dir", default=None, help="Directory with the built dashboard.")
def serve(port, runs_dir, ui_dir):
    """Serve the insight HTTP service."""
    from .service import serve_insight

    click.echo(f"insight service on http://127.0.0.1:{port} (runs from {runs_dir})")
    serve_insight(runs_dir, port=port, ui_dir=ui_dir)


@main.group()
def registry():
    """Application registry commands."""


@registry.command("ingest")
@click.argument("spec_file", type=click.Path(exists=True))
@click.option("--app", "app_id", required=True)
@click.option("--base-url", required=True)
@click.option("--registry-dir", default="registry", show_default=True)
def registry_ingest(spec_file, app_id, base_url, registry_dir):
    """Onboard an OpenAPI document and persist its minimized manifest."""
    with open(spec_file, "r", encoding="utf-8") as fh:
        document = fh.read()
    reg = ApiRegistry()
    manifest = reg.ingest_spec(document, app_id, base_url)
    os.makedirs(registry_dir, exist_ok=True)
    out_path = os.path.join(registry_dir, f"{app_id}.json")
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(manifest.to_dict(), fh, indent=2, sort_keys=True)
    click.echo(f"registered {app_id}: {len(manifest.tools)} tools -> {out_path}")


@main.command()
@click.argument("run_id")
@click.argument("task_id")
@click.option("--runs-dir", default="runs", show_default=True)
def replay(run_id, task_id, runs_dir):
    """Re-execute a task from its recorded reasoner script."""
    result, stored, replayed = replay_task(runs_dir, run_id, task_id)
    match = stored == replayed
    click.echo(f"replayed {task_id}: status={result.status} steps={result.steps}")
    click.echo(
        f"trajectory match (excluding wall-clock): {'yes' if match else 'NO'} "
        f"({len(replayed)} events vs {len(stored)} stored)"
    )
    if not match:
        sys.exit(1)


if __name__ == "__main__":
    main()
