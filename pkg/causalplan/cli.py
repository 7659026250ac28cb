"""Defines the main command-line interface (CLI) for CausalPlan.

This script sets up the main entry point for the application using `typer`.
Planning commands read a PDDL domain and problem; benchmark commands work on
the instance families discovered in `causalplan.benchmarks`.

Exit codes: 0 plan found (or command succeeded), 1 usage, parse or
validation error, 2 no plan within the horizon, 3 time or memory limit
reached without a plan.
"""

import logging
import os
import time
from collections.abc import Iterator
from contextlib import contextmanager
from datetime import timedelta
from pathlib import Path
from typing import TYPE_CHECKING, Annotated, Optional

import humanize
import typer
import typer.completion
from click import Choice
from rich import print
from rich.console import Console

from causalplan.benchmarks import FAMILIES_ALL
from causalplan.config import PlannerConfig
from causalplan.utils import (
    DEBUG,
    USER_OUTPUT_DIR,
    CapacityError,
    EffectConflict,
    InternalError,
    MemoryLimitExceeded,
    OracleRefusal,
    PddlError,
    PropagatorContractError,
    setup_logging,
)

if TYPE_CHECKING:
    from causalplan.fstrips.task import FstripsTask

typer.completion.completion_init()

CLI_NAME = "cplan"

COMPLETION_FILE = [
    Path.home() / ".bash_completions" / f"{CLI_NAME}.sh",
    Path.home() / f".zfunc/_{CLI_NAME}",
    Path.home() / f".config/fish/completions/{CLI_NAME}.fish",
]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_LIMIT = 3

err_console = Console(stderr=True)

cli = typer.Typer(
    name=CLI_NAME,
    no_args_is_help=True,
    add_help_option=False,
    add_completion=not any(f.is_file() for f in COMPLETION_FILE),
)


def version_callback(value: bool) -> None:
    """Print the application version and exit."""
    import importlib.metadata

    if value:
        print(importlib.metadata.version("causalplan"))
        raise typer.Exit()


@cli.callback()
def main(
    debug: Annotated[
        bool,
        typer.Option(
            "-d",
            "--debug",
            help="Show debugging messages and disable pretty exceptions.",
        ),
    ] = False,
    version: Annotated[
        Optional[bool],
        typer.Option(
            "-v",
            "--version",
            help="Show the tool's version.",
            callback=version_callback,
        ),
    ] = None,
) -> None:
    """CausalPlan CLI."""
    if debug:
        os.environ["DEBUG"] = "1"
        os.environ["_TYPER_STANDARD_TRACEBACK"] = "1"
        setup_logging(logging.DEBUG)


@contextmanager
def diagnostics() -> Iterator[None]:
    """Turn planner exceptions into messages on standard error and exit codes."""
    try:
        yield
    except (PddlError, EffectConflict) as error:
        err_console.print(str(error), markup=False, highlight=False)
        raise typer.Exit(code=EXIT_ERROR) from None
    except (MemoryLimitExceeded, CapacityError) as error:
        err_console.print(f"limit reached: {error}", markup=False, highlight=False)
        raise typer.Exit(code=EXIT_LIMIT) from None
    except (InternalError, PropagatorContractError) as error:
        if DEBUG():
            raise
        err_console.print(f"error: {error}", markup=False, highlight=False)
        raise typer.Exit(code=EXIT_ERROR) from None


def load(domain: Path, problem: Path, transform: str = "fn", hm_m: int = 2, hm_fuel: int = 10**6) -> "FstripsTask":
    """Read a task and translate it to FSTRIPS."""
    from causalplan.pddl import load_task
    from causalplan.reachability.functional import translate

    return translate(load_task(domain, problem), transform, hm_m, hm_fuel)


ModeOption = Annotated[
    Optional[str],
    typer.Option("--mode", click_type=Choice(["optimal", "satisficing"]), help="Search regime [default: optimal]."),
]
TransformOption = Annotated[
    Optional[str],
    typer.Option("--transform", click_type=Choice(["simple", "fn"]), help="Predicate translation [default: fn]."),
]
PersistenceOption = Annotated[
    Optional[str],
    typer.Option(
        "--persistence",
        click_type=Choice(["eager", "propagator"]),
        help="Persistence handling [default: propagator].",
    ),
]
DomainArgument = Annotated[Path, typer.Argument(exists=True, dir_okay=False, help="The PDDL domain file.")]
ProblemArgument = Annotated[Path, typer.Argument(exists=True, dir_okay=False, help="The PDDL problem file.")]


@cli.command()
def plan(
    domain: DomainArgument,
    problem: ProblemArgument,
    mode: ModeOption = None,
    transform: TransformOption = None,
    persistence: PersistenceOption = None,
    time_limit: Annotated[Optional[float], typer.Option(help="Seconds for the whole search [default: 1800].")] = None,
    window: Annotated[Optional[int], typer.Option(help="Satisficing window of plan lengths [default: 50].")] = None,
    hm_m: Annotated[Optional[int], typer.Option("--hm-m", help="h^m parameter of the fn transform [default: 2].")] = None,
    seed: Annotated[Optional[int], typer.Option(help="Solver random seed.")] = None,
    max_horizon: Annotated[Optional[int], typer.Option(help="Largest number of slots tried.")] = None,
    memory_limit: Annotated[Optional[float], typer.Option(help="Memory limit in MB.")] = None,
    config: Annotated[Optional[Path], typer.Option(exists=True, dir_okay=False, help="YAML profile.")] = None,
    stats: Annotated[Optional[Path], typer.Option(help="Write search statistics as JSON.")] = None,
    dump_model: Annotated[Optional[Path], typer.Option(help="Write the listing of the first model.")] = None,
    trace: Annotated[Optional[Path], typer.Option(help="Write the solver event trace.")] = None,
    output: Annotated[Optional[Path], typer.Option("-o", "--output", help="Plan file, standard output by default.")] = None,
    verbose: Annotated[bool, typer.Option("--verbose", help="Log one line per model.")] = False,
) -> None:
    """Search a plan for a PDDL task."""
    from causalplan.encoding.builder import build
    from causalplan.search.driver import PlanSearch
    from causalplan.search.outcome import FeasiblePlan, OptimalPlan, ProvedInfeasibleUpTo
    from causalplan.search.schedule import first_horizon
    from causalplan.validator.planfile import write_plan

    if verbose and not DEBUG():
        setup_logging(logging.INFO)

    with diagnostics():
        profile = PlannerConfig.from_yaml(config) if config else PlannerConfig()
        settings = profile.merged(
            mode=mode,
            transform=transform,
            persistence=persistence,
            time_limit=time_limit,
            window=window,
            hm_m=hm_m,
            seed=seed,
            max_horizon=max_horizon,
            memory_limit_mb=memory_limit,
            trace=trace,
        )
        began = time.monotonic()
        task = load(domain, problem, settings.transform, settings.hm_m, settings.hm_fuel)
        if dump_model:
            dump_model.write_text(build(task, max(first_horizon(task), 1), settings).dump(), encoding="utf-8")
        result = PlanSearch(task, settings).run()
    elapsed = humanize.precisedelta(timedelta(seconds=time.monotonic() - began), minimum_unit="milliseconds")

    if stats:
        stats.write_text(result.stats.model_dump_json(indent=4), encoding="utf-8")

    outcome = result.outcome
    match outcome:
        case OptimalPlan() | FeasiblePlan():
            text = write_plan(outcome.plan)
            if output:
                output.write_text(text, encoding="utf-8")
            else:
                typer.echo(text, nl=False)
            if isinstance(outcome, OptimalPlan):
                err_console.print(f"Optimal plan of cost [b]{outcome.cost}[/b] found in {elapsed}")
            else:
                err_console.print(
                    f"Plan of cost [b]{outcome.upper}[/b] found in {elapsed}, optimum in [{outcome.lower}, {outcome.upper}]",
                    highlight=False,
                )
            raise typer.Exit(code=EXIT_OK)
        case ProvedInfeasibleUpTo():
            err_console.print(f"No plan with at most [b]{outcome.horizon}[/b] steps ({elapsed})")
            raise typer.Exit(code=EXIT_INFEASIBLE)
        case _:
            lower, _ = outcome.bounds
            err_console.print(f"No plan found within limits after {elapsed}, optimal cost is at least [b]{lower}[/b]")
            raise typer.Exit(code=EXIT_LIMIT)


@cli.command()
def validate(
    domain: DomainArgument,
    problem: ProblemArgument,
    plan_file: Annotated[Path, typer.Argument(exists=True, dir_okay=False, help="The plan file.")],
) -> None:
    """Check a plan file against a PDDL task."""
    from causalplan.pddl import read_source
    from causalplan.validator.planfile import read_plan
    from causalplan.validator.validate import validate as check

    with diagnostics():
        task = load(domain, problem, "simple")
        try:
            steps = read_plan(read_source(plan_file))
        except PddlError as error:
            raise error.located(plan_file) from None
    result = check(task, steps)
    if not result.ok:
        err_console.print(f"{plan_file}: invalid plan, {result}", markup=False, highlight=False)
        raise typer.Exit(code=EXIT_ERROR)
    print(f"Plan valid, cost [b]{steps.cost}[/b]")


@cli.command()
def oracle(
    domain: DomainArgument,
    problem: ProblemArgument,
    horizon: Annotated[Optional[int], typer.Option(help="Longest plan explored.")] = None,
    limit: Annotated[int, typer.Option(help="Maximum number of stored states.")] = 200_000,
) -> None:
    """Find an optimal plan by breadth-first search over ground states."""
    from causalplan.validator.oracle import bfs_oracle
    from causalplan.validator.planfile import write_plan

    with diagnostics():
        task = load(domain, problem, "simple")
    try:
        result = bfs_oracle(task, horizon, limit)
    except OracleRefusal as error:
        err_console.print(str(error), markup=False, highlight=False)
        raise typer.Exit(code=EXIT_LIMIT) from None
    if result.plan is None:
        scope = "at all" if result.exhausted else f"within {horizon} steps"
        err_console.print(f"No plan {scope} ({result.states} states)")
        raise typer.Exit(code=EXIT_INFEASIBLE)
    typer.echo(write_plan(result.plan), nl=False)
    err_console.print(f"Optimal cost [b]{result.cost}[/b] ({result.states} states)")


@cli.command("dump-model")
def dump_model(
    domain: DomainArgument,
    problem: ProblemArgument,
    horizon: Annotated[int, typer.Option(help="Number of action slots.")] = 1,
    transform: TransformOption = None,
    persistence: PersistenceOption = None,
    output: Annotated[Optional[Path], typer.Option("-o", "--output", help="Listing file, standard output by default.")] = None,
) -> None:
    """Print the variables and constraints of the causal model."""
    from causalplan.encoding.builder import build

    with diagnostics():
        settings = PlannerConfig().merged(transform=transform, persistence=persistence)
        task = load(domain, problem, settings.transform, settings.hm_m, settings.hm_fuel)
        listing = build(task, horizon, settings).dump()
    if output:
        output.write_text(listing, encoding="utf-8")
        print(f"Model listing written to {output}")
    else:
        typer.echo(listing)


@cli.command()
def transform(
    domain: DomainArgument,
    problem: ProblemArgument,
    hm_m: Annotated[int, typer.Option("--hm-m", help="h^m parameter.")] = 2,
    fuel: Annotated[int, typer.Option(help="Formula budget per h^m evaluation.")] = 10**6,
) -> None:
    """Show how every predicate is represented by the fn transform."""
    from rich.table import Table

    from causalplan.pddl import load_task
    from causalplan.reachability.functional import choose_mappings

    with diagnostics():
        typed = load_task(domain, problem)
        report = choose_mappings(typed, hm_m, fuel)

    table = Table(show_lines=True)
    table.add_column("Predicate", justify="center", no_wrap=True)
    table.add_column("Representation", justify="center", no_wrap=True)
    table.add_column("Note", justify="center")
    for name, decision in report.decisions.items():
        tried = "\n".join(f"position {position}: {outcome}" for position, outcome in decision.tried)
        note = "\n".join(filter(None, [decision.reason, tried]))
        table.add_row(name, report.describe(typed, name), note)
    print(table)


@cli.command()
def families() -> None:
    """Display the benchmark families and whether they have been benchmarked."""
    from rich.table import Table

    from causalplan.benchmarks.core.harness import RESULT_FILE

    table = Table(show_lines=True)
    table.add_column("Family", justify="center", no_wrap=True)
    table.add_column("Suite", justify="center", no_wrap=True)
    table.add_column("Benchmarked", justify="center", no_wrap=True)
    table.add_column("Note", justify="center")
    for family_name, family in FAMILIES_ALL.items():
        suite = len(family().suite())
        if (USER_OUTPUT_DIR / family_name / RESULT_FILE).is_file():
            table.add_row(family_name, str(suite), "✅", family.description)
        else:
            table.add_row(
                family_name,
                str(suite),
                "❌",
                f"{family.description}\nRun with: [i red]cplan benchmark {family_name}[/i red]",
            )
    print(table)


FamilyArgument = Annotated[str, typer.Argument(click_type=Choice(list(FAMILIES_ALL)), metavar="FAMILY")]


def parse_params(values: list[str]) -> dict[str, int]:
    """Read `key=value` pairs with integer values."""
    params = {}
    for value in values:
        key, sep, number = value.partition("=")
        if not sep or not number.lstrip("-").isdigit():
            raise typer.BadParameter(f"expected key=integer, got '{value}'")
        params[key] = int(number)
    return params


@cli.command()
def generate(
    family: FamilyArgument,
    output_dir: Annotated[Path, typer.Option("-o", "--output-dir", help="Where to write the PDDL files.")] = Path("."),
    param: Annotated[Optional[list[str]], typer.Option("-p", "--param", help="Generator parameter key=value.")] = None,
    suite: Annotated[bool, typer.Option("--suite", help="Write every instance of the desk-scale suite.")] = False,
) -> None:
    """Write the domain and problem files of a benchmark family."""
    generator = FAMILIES_ALL[family]()
    try:
        instances = generator.instances() if suite else [generator.instance(**parse_params(param or []))]
    except (KeyError, ValueError) as error:
        err_console.print(f"error: {error}", markup=False, highlight=False)
        raise typer.Exit(code=EXIT_ERROR) from None
    for instance in instances:
        domain_path, problem_path = instance.write(output_dir)
        print(f"Instance [b]{instance.name}[/b] written at {problem_path}")
    print(f"Domain written at {output_dir / 'domain.pddl'}")


@cli.command()
def benchmark(
    family: FamilyArgument,
    transform: TransformOption = None,
    persistence: PersistenceOption = None,
    time_limit: Annotated[float, typer.Option(help="Seconds per instance.")] = 120.0,
    figures: Annotated[bool, typer.Option(help="Export figures of the results.")] = False,
    format: Annotated[str, typer.Option(click_type=Choice(["png", "pdf", "svg"]), help="Figure format.")] = "png",
    overwrite: Annotated[bool, typer.Option(help="Overwrite existing figures without asking.")] = False,
) -> None:
    """Solve a family's suite and compare the plans with the breadth-first oracle."""
    from rich.table import Table

    from causalplan.benchmarks.core.graphics import BenchmarkGraphics
    from causalplan.benchmarks.core.harness import run_benchmark

    settings = PlannerConfig().merged(transform=transform, persistence=persistence, time_limit=time_limit)
    with diagnostics():
        report = run_benchmark(FAMILIES_ALL[family](), settings)
    path = report.save()

    table = Table(show_lines=True)
    table.add_column("Instance", justify="center", no_wrap=True)
    table.add_column("Oracle", justify="center", no_wrap=True)
    table.add_column("Planner", justify="center", no_wrap=True)
    table.add_column("Outcome", justify="center", no_wrap=True)
    table.add_column("Time (s)", justify="center", no_wrap=True)
    table.add_column("Agree", justify="center", no_wrap=True)
    for record in report.records:
        agree = {True: "✅", False: "❌", None: "-"}[record.agrees]
        table.add_row(
            record.instance,
            str(record.oracle_cost),
            str(record.plan_cost),
            record.outcome,
            f"{record.wall_time:.2f}",
            agree,
        )
    print(table)
    print(report.summary())
    print(f"Records saved at {path}")

    if figures:
        BenchmarkGraphics(report).export(overwrite=overwrite, format=format)
