import sys
import time
import logging
from typing import List, Optional

import click

from .config import Settings, load_settings, resolve_seed
from .errors import RouletteError, ValidationError, format_error
from .export import csv_export
from .fitness import load_fitness
from .logging import configure_logging
from .models.execution import ExecConfig
from .models.fitness import SelectionResult
from .parallel.executor import select_log_bid_parallel
from .pram.simulator import round_sweep, rounds_row, simulate_max_race
from .rng import conflict_stream_id, index_sources, substream
from .selection.kernels import make_bids, select_independent, select_log_bid, select_prefix_sum
from .stats.harness import Algorithm, run_experiment
from .stats.tables import (
    TABLE_ALGORITHMS,
    TABLE1_FITNESS,
    TABLE2_DISPLAY_ROWS,
    comparison_table,
    table1_experiment,
    table2_experiment,
)

logger = logging.getLogger(__name__)

ALGORITHM_CHOICES = ["prefix-sum", "independent", "log-bid", "log-bid-parallel", "pram-sim"]
COMPARE_ALGORITHMS = [Algorithm.PREFIX_SUM, Algorithm.INDEPENDENT, Algorithm.LOG_BID]
SLOW_ALGORITHMS = [Algorithm.LOG_BID_PARALLEL, Algorithm.PRAM_SIM]
DEFAULT_ROUNDS_TRIALS = 10_000
DEFAULT_BENCH_TRIALS = 100_000


class RouletteGroup(click.Group):
    """Maps domain errors to a JSON envelope on stderr and a stable exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except RouletteError as e:
            click.echo(format_error(e), err=True)
            ctx.exit(e.exit_code)


def _settings(ctx) -> Settings:
    return ctx.obj["settings"]


def _trials(ctx, trials: Optional[int]) -> int:
    value = trials if trials is not None else _settings(ctx).trials
    if value < 1:
        raise click.BadParameter("--trials must be >= 1.")
    return value


def _workers(ctx, workers: Optional[int]) -> int:
    value = workers if workers is not None else _settings(ctx).workers
    if value < 1:
        raise click.BadParameter("--workers must be >= 1.")
    return value


def _emit(text: str, out: Optional[str]):
    if out:
        csv_export.write_text(text, out)
        logger.info(f"Wrote {out}")
    else:
        click.echo(text, nl=False)


def _parse_ks(value: Optional[str]) -> Optional[List[int]]:
    if value is None:
        return None
    try:
        ks = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter("--ks must be a comma-separated list of integers.")
    if not ks or any(k < 1 for k in ks):
        raise click.BadParameter("--ks values must be >= 1.")
    return ks


seed_option = click.option("--seed", default=None, help="Master seed, decimal or 0x hex (fallback: RWS_SEED)")
trials_option = click.option("--trials", type=int, default=None, help="Number of trials")
workers_option = click.option("--workers", type=int, default=None, help="Worker threads (default: CPU count)")
out_option = click.option("--out", default=None, help="Output file (default: stdout)")
fitness_override_option = click.option(
    "--fitness", "fitness_path", default=None, help="Fitness file replacing the built-in configuration"
)


@click.group(cls=RouletteGroup)
@click.option("--config", "config_path", default=None, help="Settings YAML (default: rws.yaml if present)")
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output")
@click.pass_context
def cli(ctx, config_path, verbose):
    """rwselect: roulette wheel selection with logarithmic random bidding."""
    configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj["settings"] = load_settings(config_path)


@cli.command()
@click.option("--fitness", "fitness_path", required=True, help="Fitness file, one value per line")
@click.option("--algorithm", type=click.Choice(ALGORITHM_CHOICES), default="log-bid", show_default=True)
@seed_option
@workers_option
@click.pass_context
def select(ctx, fitness_path, algorithm, seed, workers):
    """Select one index; prints the index, then the winning bid when there is one."""
    f = load_fitness(fitness_path)
    master = resolve_seed(seed)
    alg = Algorithm.parse(algorithm)

    if alg is Algorithm.PREFIX_SUM:
        result = select_prefix_sum(f, substream(master, 0).draw())
    elif alg is Algorithm.INDEPENDENT:
        result = select_independent(f, index_sources(master, f.n))
    elif alg is Algorithm.LOG_BID:
        result = select_log_bid(f, index_sources(master, f.n))
    elif alg is Algorithm.LOG_BID_PARALLEL:
        cfg = ExecConfig(worker_count=_workers(ctx, workers), chunk_size=_settings(ctx).chunk_size)
        result = select_log_bid_parallel(f, master, cfg)
    else:
        report = simulate_max_race(
            make_bids(f, index_sources(master, f.n)),
            substream(master, conflict_stream_id(0)),
            trace_limit=_settings(ctx).trace_limit,
        )
        result = report.result

    _print_selection(result)


def _print_selection(result: SelectionResult):
    click.echo(result.index)
    if result.winning_bid is not None:
        click.echo(f"winning_bid={result.winning_bid!r}")
    if result.rounds is not None:
        click.echo(f"rounds={result.rounds}")


@cli.command()
@fitness_override_option
@trials_option
@seed_option
@workers_option
@out_option
@click.pass_context
def table1(ctx, fitness_path, trials, seed, workers, out):
    """Reproduce the f_i = i (i = 0..9) probability table."""
    trials, master, n_workers = _trials(ctx, trials), resolve_seed(seed), _workers(ctx, workers)
    if fitness_path:
        table = comparison_table(load_fitness(fitness_path), TABLE_ALGORITHMS, trials, master,
                                 workers=n_workers, block_size=_settings(ctx).block_size)
    else:
        table = table1_experiment(trials, master, workers=n_workers, block_size=_settings(ctx).block_size)
    _emit(csv_export.render_comparison_csv(table), out)


@cli.command()
@fitness_override_option
@trials_option
@seed_option
@workers_option
@out_option
@click.option("--all-rows", is_flag=True, help="Emit all 100 rows instead of the first 10")
@click.pass_context
def table2(ctx, fitness_path, trials, seed, workers, out, all_rows):
    """Reproduce the f_0 = 1, f_1..f_99 = 2 probability table."""
    trials, master, n_workers = _trials(ctx, trials), resolve_seed(seed), _workers(ctx, workers)
    if fitness_path:
        table = comparison_table(load_fitness(fitness_path), TABLE_ALGORITHMS, trials, master,
                                 workers=n_workers, block_size=_settings(ctx).block_size,
                                 display_rows=None if all_rows else TABLE2_DISPLAY_ROWS)
    else:
        table = table2_experiment(trials, master, workers=n_workers,
                                  block_size=_settings(ctx).block_size, all_rows=all_rows)
    _emit(csv_export.render_comparison_csv(table), out)


@cli.command()
@fitness_override_option
@trials_option
@seed_option
@out_option
@click.option("--ks", default=None, help="Comma-separated k values (default: 1,2,4,...,1024)")
@click.option("--n-factor", default=1, show_default=True, type=int, help="Processors per nonzero fitness (n = k * factor)")
@click.option("--n", "fixed_n", default=None, type=int, help="Fixed processor count for every k")
@click.pass_context
def rounds(ctx, fitness_path, trials, seed, out, ks, n_factor, fixed_n):
    """Mean and maximum write-race rounds against the 2*ceil(log2 k) bound."""
    if n_factor < 1:
        raise click.BadParameter("--n-factor must be >= 1.")
    trials = trials if trials is not None else DEFAULT_ROUNDS_TRIALS
    if trials < 1:
        raise click.BadParameter("--trials must be >= 1.")
    if fitness_path:
        rows = [rounds_row(load_fitness(fitness_path), trials, resolve_seed(seed))]
    else:
        rows = round_sweep(
            _parse_ks(ks) or _settings(ctx).ks, trials, resolve_seed(seed),
            n_factor=n_factor, n=fixed_n,
        )
    _emit(csv_export.render_rounds_csv(rows), out)


@cli.command()
@click.option("--fitness", "fitness_path", required=True, help="Fitness file, one value per line")
@trials_option
@seed_option
@workers_option
@out_option
@click.option("--include-parallel", is_flag=True, help="Also run the threaded executor and the PRAM simulator")
@click.pass_context
def compare(ctx, fitness_path, trials, seed, workers, out, include_parallel):
    """Side-by-side accuracy of every algorithm on a user fitness file."""
    f = load_fitness(fitness_path)
    algorithms = COMPARE_ALGORITHMS + (SLOW_ALGORITHMS if include_parallel else [])
    table = comparison_table(
        f, algorithms, _trials(ctx, trials), resolve_seed(seed),
        workers=_workers(ctx, workers), block_size=_settings(ctx).block_size,
    )
    _emit(csv_export.render_comparison_csv(table), out)


@cli.command()
@click.option("--fitness", "fitness_path", default=None, help="Fitness file (default: f_i = i, i = 0..9)")
@trials_option
@seed_option
@workers_option
@out_option
@click.option("--include-parallel", is_flag=True, help="Also time the threaded executor and the PRAM simulator")
@click.pass_context
def bench(ctx, fitness_path, trials, seed, workers, out, include_parallel):
    """Selections per second for each algorithm."""
    f = load_fitness(fitness_path) if fitness_path else TABLE1_FITNESS
    trials = trials if trials is not None else DEFAULT_BENCH_TRIALS
    if trials < 1:
        raise click.BadParameter("--trials must be >= 1.")
    master = resolve_seed(seed)
    n_workers = _workers(ctx, workers)

    rows = []
    for alg in COMPARE_ALGORITHMS + (SLOW_ALGORITHMS if include_parallel else []):
        started = time.perf_counter()
        table = run_experiment(alg, f, trials, master, workers=n_workers, block_size=_settings(ctx).block_size)
        seconds = time.perf_counter() - started
        rows.append({
            "algorithm": alg.value,
            "n": table.n,
            "trials": trials,
            "seconds": seconds,
            "selections_per_second": trials / seconds if seconds > 0 else float("inf"),
        })
        logger.info(f"{alg.value}: {seconds:.3f}s for {trials} trials")
    _emit(csv_export.render_bench_csv(rows), out)


def main():
    """Entry point for the CLI."""
    try:
        # non-standalone click returns the exit code instead of exiting
        rv = cli(standalone_mode=False)
        sys.exit(rv if isinstance(rv, int) else 0)
    except Exception as e:
        if isinstance(e, click.exceptions.Exit):
            sys.exit(e.exit_code)
        if isinstance(e, click.exceptions.Abort):
            sys.exit(130)

        # usage errors (missing options, bad values) are input errors
        if isinstance(e, click.exceptions.UsageError):
            click.echo(format_error(ValidationError(e.format_message())), err=True)
            sys.exit(ValidationError.exit_code)

        click.echo(format_error(e), err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
