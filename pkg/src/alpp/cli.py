"""Command-line entry points: simulate, oracle-report, serve, make-dataset."""

from __future__ import annotations

from pathlib import Path

import click

from . import benchmark
from .config import ConfigError, load_config
from .data import DataError
from .experiment import (
    run_experiment,
    summarize,
    write_results_csv,
    write_summary_json,
)


@click.group()
def main():
    """Rationale-weighted query-by-committee active learning."""


def _load(config_path, seed_offset=0, strategies=None):
    try:
        return load_config(config_path, seed_offset=seed_offset, strategies_override=strategies)
    except (ConfigError, DataError) as exc:
        raise click.ClickException(str(exc)) from exc


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="YAML config document.")
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Output directory.")
@click.option("--seed-offset", default=0, show_default=True, help="Added to every repetition seed.")
@click.option("--strategies", default=None, help="Comma-separated subset, e.g. qbc,alpp.")
def simulate(config_path, out_dir, seed_offset, strategies):
    """Run the simulated-oracle benchmark and write results.csv + summary.json."""
    override = tuple(s.strip() for s in strategies.split(",") if s.strip()) if strategies else None
    config = _load(config_path, seed_offset=seed_offset, strategies=override)
    try:
        outcomes = run_experiment(config)
    except DataError as exc:
        raise click.ClickException(str(exc)) from exc
    summary = summarize(outcomes, threshold=config.threshold)

    out = Path(out_dir)
    write_results_csv(outcomes, out / "results.csv")
    write_summary_json(summary, out / "summary.json")

    click.echo(f"wrote {out / 'results.csv'} and {out / 'summary.json'}")
    for name, s in summary.strategies.items():
        click.echo(
            f"{name}: mean F1 {s.overall_mean_f1:.4f}, "
            f"queries to F1>={summary.threshold} {s.queries_to_threshold:.1f}"
        )
    for pair, result in summary.t_tests.items():
        click.echo(f"paired t-test {pair}: t={result['t']:.3f} p={result['p']:.3g}")


@main.command("oracle-report")
@click.option("--config", "config_path", required=True, type=click.Path(), help="YAML config document.")
def oracle_report(config_path):
    """Train the simulated oracle and report its held-out accuracy and F1."""
    from .experiment import prepare_repetition
    from .oracle import build_simulated_oracle, oracle_metrics

    config = _load(config_path)
    try:
        prepared = prepare_repetition(config, 0)
        oracle = build_simulated_oracle(prepared.pools.train, config.oracle)
        metrics = oracle_metrics(oracle, prepared.pools.test)
    except (DataError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"rows: train={len(prepared.pools.train)} test={len(prepared.pools.test)} "
               f"dropped={prepared.dropped_rows}")
    click.echo(f"oracle accuracy: {metrics['accuracy']:.4f}")
    click.echo(f"oracle f1: {metrics['f1']:.4f}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="YAML config document.")
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--state-dir", "state_dir", required=True, type=click.Path(),
              help="Directory for session snapshots.")
def serve(config_path, port, host, state_dir):
    """Serve live annotation sessions over HTTP."""
    import uvicorn

    from .service import create_app

    config = _load(config_path)
    app = create_app(config, Path(state_dir))
    uvicorn.run(app, host=host, port=port)


@main.command("make-dataset")
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Output directory.")
@click.option("--rows", default=benchmark.DEFAULT_ROWS, show_default=True)
@click.option("--seed", default=benchmark.DEFAULT_SEED, show_default=True)
def make_dataset(out_dir, rows, seed):
    """Generate the census-style benchmark CSV and a ready-to-run config."""
    out = Path(out_dir)
    csv_path = benchmark.write_benchmark_csv(out / "benchmark_census.csv", rows=rows, seed=seed)
    config_path = benchmark.write_benchmark_config(out / "benchmark.yaml", csv_path.name)
    click.echo(f"wrote {csv_path} and {config_path}")


if __name__ == "__main__":
    main()
