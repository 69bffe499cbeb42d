"""CLI interface for the tensor-network model counter."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer
from dotenv import load_dotenv
from pydantic import ValidationError

from tncount import __version__, driver
from tncount.config import AppSettings, RunConfig, get_app_settings, load_run_config
from tncount.errors import (
    DeadlineExceeded,
    GraphError,
    MemoryCapExceeded,
    ParseError,
    TncountError,
)
from tncount.formula.dimacs import read_dimacs
from tncount.graph.multigraph import line_graph
from tncount.graph.pace import write_gr
from tncount.graph.structure import structure_graph
from tncount.network.tn import reduce_wmc
from tncount.utils import bind_run_context, setup_logging

# Load environment variables from .env file
load_dotenv()

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TIMEOUT = 2
EXIT_MEMORY_CAP = 3
EXIT_PARSE_ERROR = 4

app = typer.Typer(
    name="tncount",
    help="Exact weighted model counting by tensor network contraction.",
    add_completion=False,
)


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        typer.echo(f"tncount version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
) -> None:
    """Tensor-network weighted model counter CLI."""
    pass


def _load_settings() -> AppSettings:
    try:
        return get_app_settings()
    except ValidationError as e:
        typer.echo(f"Error loading settings: {e}", err=True)
        raise typer.Exit(EXIT_ERROR)


@app.command()
def count(
    formula: Path = typer.Argument(..., help="DIMACS CNF file to count."),
    method: Optional[str] = typer.Option(
        None, "--method", "-m", help="Planner: greedy, lg, ft or portfolio."
    ),
    td: Optional[str] = typer.Option(
        None, "--td", help="Comma-separated TD strategies (min-fill, min-degree)."
    ),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Random seed."),
    timeout: Optional[float] = typer.Option(None, "--timeout", "-t", help="Wall-clock budget in seconds."),
    mem_cap: Optional[int] = typer.Option(
        None, "--mem-cap", help="Most tensor entries held at once while contracting."
    ),
    seconds_per_flop: Optional[float] = typer.Option(
        None, "--seconds-per-flop", help="Cost model calibration constant."
    ),
    weights: Optional[str] = typer.Option(
        None, "--weights", help="'file' to use weights in the input, 'unit' to count models."
    ),
    import_td: Optional[Path] = typer.Option(
        None, "--import-td", help="PACE .td file to plan from instead of searching."
    ),
    emit_tree: Optional[Path] = typer.Option(None, "--emit-tree", help="Write the contraction tree here."),
    emit_plan: Optional[Path] = typer.Option(None, "--emit-plan", help="Write the chosen plan here."),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML run configuration."),
) -> None:
    """Compute the weighted model count of a CNF formula.

    Prints 'c' statistics lines and one 's wmc <value>' line.
    Exit codes: 0 success, 1 error, 2 timeout, 3 memory cap, 4 parse error.
    """
    settings = _load_settings()
    logger = setup_logging(
        level=settings.log_level,
        log_file=settings.log_file,
        json_output=settings.log_json,
    )

    try:
        values = load_run_config(config) if config else {}
    except (FileNotFoundError, ValueError) as e:
        logger.error("config_load_error", error=str(e))
        raise typer.Exit(EXIT_ERROR)

    flags = {
        "method": method,
        "td_strategies": td,
        "seed": seed,
        "timeout": timeout,
        "mem_cap": mem_cap,
        "seconds_per_flop": seconds_per_flop,
        "weights": weights,
        "import_td": import_td,
        "emit_tree": emit_tree,
        "emit_plan": emit_plan,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    try:
        run_config = RunConfig.from_settings(settings, **values)
    except ValidationError as e:
        logger.error("invalid_run_config", error=str(e))
        raise typer.Exit(EXIT_ERROR)

    bind_run_context(formula=str(formula), method=run_config.method)
    logger.info("starting_count", version=__version__)

    try:
        report = driver.count(run_config, formula)
    except ParseError as e:
        logger.error("parse_error", path=str(formula), error=str(e))
        raise typer.Exit(EXIT_PARSE_ERROR)
    except DeadlineExceeded as e:
        logger.error("timeout", stage=e.stage)
        typer.echo(f"c timeout {e.stage}")
        if e.plan is not None:
            typer.echo(f"c best_plan {e.plan.method} max_rank {e.plan.max_rank}")
        raise typer.Exit(EXIT_TIMEOUT)
    except MemoryCapExceeded as e:
        logger.error("memory_cap_exceeded", entries=e.entries, cap=e.cap)
        typer.echo(f"c memory_cap {e.cap} needed {e.entries}")
        if e.plan is not None:
            typer.echo(f"c best_plan {e.plan.method} max_rank {e.plan.max_rank}")
        raise typer.Exit(EXIT_MEMORY_CAP)
    except TncountError as e:
        logger.error("count_failed", error=str(e))
        raise typer.Exit(EXIT_ERROR)
    except OSError as e:
        logger.error("io_error", error=str(e))
        raise typer.Exit(EXIT_ERROR)

    for line in report.to_lines():
        typer.echo(line)


@app.command()
def gen(
    kind: str = typer.Argument(..., help="Benchmark family (cubic-vc)."),
    n: int = typer.Option(..., "--n", help="Number of graph vertices (even, >= 4)."),
    seed: int = typer.Option(0, "--seed", "-s", help="Random seed."),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write here instead of stdout."),
) -> None:
    """Generate a benchmark formula as DIMACS."""
    settings = _load_settings()
    logger = setup_logging(level=settings.log_level, log_file=settings.log_file, json_output=settings.log_json)
    try:
        text = driver.gen_bench(kind, n, seed)
    except (ValueError, GraphError) as e:
        logger.error("gen_failed", kind=kind, n=n, error=str(e))
        raise typer.Exit(EXIT_ERROR)
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")
        logger.info("benchmark_written", path=str(output), kind=kind, n=n, seed=seed)


@app.command()
def inspect(
    formula: Path = typer.Argument(..., help="DIMACS CNF file to inspect."),
    budget: float = typer.Option(10.0, "--budget", "-b", help="Seconds for the decomposition searches."),
    seed: int = typer.Option(0, "--seed", "-s", help="Random seed."),
    emit_gr: Optional[Path] = typer.Option(
        None, "--emit-gr", help="Write the structure graph (FT decomposition input) as PACE .gr."
    ),
    emit_line_gr: Optional[Path] = typer.Option(
        None, "--emit-line-gr", help="Write its line graph (LG decomposition input) as PACE .gr."
    ),
) -> None:
    """Report incidence-graph structure and decomposition widths."""
    settings = _load_settings()
    logger = setup_logging(level=settings.log_level, log_file=settings.log_file, json_output=settings.log_json)
    try:
        parsed = read_dimacs(str(formula))
        if emit_gr is not None or emit_line_gr is not None:
            sg = structure_graph(reduce_wmc(parsed))
            if emit_gr is not None:
                emit_gr.write_text(write_gr(sg.graph.without_isolated()), encoding="utf-8")
            if emit_line_gr is not None:
                emit_line_gr.write_text(write_gr(line_graph(sg.graph)), encoding="utf-8")
        report = driver.inspect(parsed, budget=budget, seed=seed)
    except ParseError as e:
        logger.error("parse_error", path=str(formula), error=str(e))
        raise typer.Exit(EXIT_PARSE_ERROR)
    except (TncountError, OSError) as e:
        logger.error("inspect_failed", error=str(e))
        raise typer.Exit(EXIT_ERROR)

    for line in report.to_lines():
        typer.echo(line)


if __name__ == "__main__":
    app()
