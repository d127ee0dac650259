"""Command-line front end.

Subcommands follow the analysis pipeline: ``check-deadlock``, ``scope``,
``bound``, ``blocking-time``, ``check-chain``, ``oracle``, the fixture
generators under ``gen``, and the all-in-one ``analyze``.

Exit codes: 0 ok, 1 usage or parse problem, 2 cyclic resource order,
3 oracle limit exceeded.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .admissibility import is_admissible_chain
from .analysis import analyze, render_report
from .bound import blocking_time_matrix, max_assignment
from .deadlock import CyclicResourceOrderError, check_deadlock_free, require_acyclic
from .oracle import (
    OracleLimitError,
    brute_force_blocking_time,
    generate_antidiagonal_family,
    random_taskset,
)
from .relevance import blocking_scope, fixpoint_trace
from .search import blocking_time
from .taskset import (
    TaskSet,
    TaskSetError,
    chain_duration,
    format_chain,
    parse_chain,
    parse_taskset,
    serialize_taskset,
)

__all__ = ["cli", "main"]


def _load(path: str) -> TaskSet:
    return parse_taskset(Path(path).read_text(encoding="utf-8"))


def _resources(values) -> str:
    return "{" + ", ".join(f"R{r}" for r in sorted(values)) + "}"


def _jobs(values) -> str:
    return "{" + ", ".join(f"J{j}" for j in sorted(values)) + "}"


@click.group()
def cli() -> None:
    """Blocking-time analysis under basic priority inheritance."""


@cli.command("analyze")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--job", type=int, default=None, help="Analyze a single job.")
@click.option("--bound-only", is_flag=True, help="Skip the exact search.")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
@click.option("--trace", is_flag=True, help="Dump search expansions.")
@click.pass_context
def cmd_analyze(ctx, file, job, bound_only, as_json, trace) -> None:
    """Deadlock check, bound, quick screen and (by default) exact search."""
    ts = _load(file)
    report = analyze(ts, job=job, exact=not bound_only)
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(render_report(report))
        if trace and report.deadlock.acyclic:
            for a in report.jobs:
                if a.searched:
                    _echo_trace(ts, a.job)
    if not report.deadlock.acyclic:
        ctx.exit(2)


def _echo_trace(ts: TaskSet, i: int) -> None:
    result = blocking_time(ts, i)
    click.echo(f"  search trace for J{i}:")
    for record in result.expansions:
        chain = format_chain(record.chain)
        ext = ", ".join(record.extensions) if record.extensions else "none"
        note = " (re-marked as leaf)" if record.releafed else ""
        click.echo(
            f"    n{record.seq}: chain={chain} f={record.estimate} "
            f"extensions: {ext}{note}"
        )


@cli.command("check-deadlock")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def cmd_check_deadlock(ctx, file) -> None:
    """Verify that nesting orders resources acyclically (exit 2 if not)."""
    verdict = check_deadlock_free(_load(file))
    if verdict.acyclic:
        click.echo("acyclic: no deadlock risk")
    else:
        assert verdict.cycle is not None
        pretty = " -> ".join(f"R{r}" for r in verdict.cycle)
        click.echo(f"cyclic: {pretty}")
        ctx.exit(2)


@cli.command("scope")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--job", type=int, required=True)
def cmd_scope(file, job) -> None:
    """Print the direct and relevant blocking sets with the fixpoint trace."""
    ts = _load(file)
    scope = blocking_scope(ts, job)
    click.echo(f"direct resources:   {_resources(scope.direct_resources)}")
    click.echo(f"direct jobs:        {_jobs(scope.direct_jobs)}")
    click.echo(f"relevant resources: {_resources(scope.relevant_resources)}")
    click.echo(f"relevant jobs:      {_jobs(scope.relevant_jobs)}")
    click.echo("fixpoint trace:")
    for step, iterate in enumerate(fixpoint_trace(ts, job)):
        click.echo(f"  step {step}: {_resources(iterate)}")


@cli.command("bound")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--job", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def cmd_bound(file, job, as_json) -> None:
    """Blocking-time matrix, bound and realizing assignment per job."""
    ts = _load(file)
    require_acyclic(ts)
    targets = [job] if job is not None else list(range(1, ts.n + 1))
    doc = []
    for i in targets:
        scope = blocking_scope(ts, i)
        matrix = blocking_time_matrix(
            ts, scope.relevant_jobs, scope.relevant_resources
        )
        assignment = max_assignment(matrix)
        doc.append((i, matrix, assignment))
    if as_json:
        click.echo(
            json.dumps(
                [
                    {
                        "job": i,
                        "rows": [str(j) for j in matrix.jobs],
                        "cols": [f"R{r}" for r in matrix.resources],
                        "matrix": [[str(c) for c in row] for row in matrix.rows],
                        "bound": str(assignment.value),
                        "assignment": [[j, r] for j, r in assignment.pairs],
                    }
                    for i, matrix, assignment in doc
                ],
                indent=2,
            )
        )
        return
    for i, matrix, assignment in doc:
        click.echo(f"J{i}: bound {assignment.value}")
        if matrix.jobs:
            header = "      " + " ".join(f"R{r:<4}" for r in matrix.resources)
            click.echo(header)
            for j, row in zip(matrix.jobs, matrix.rows):
                cells = " ".join(f"{str(c):<5}" for c in row)
                click.echo(f"  J{j:<3} {cells}")
        pairs = ", ".join(f"(J{j}, R{r})" for j, r in assignment.pairs) or "-"
        click.echo(f"  assignment: {pairs}")


@cli.command("blocking-time")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--job", type=int, default=None)
@click.option("--trace", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
def cmd_blocking_time(file, job, trace, as_json) -> None:
    """Exact worst-case blocking time with witness chain."""
    ts = _load(file)
    targets = [job] if job is not None else list(range(1, ts.n + 1))
    results = [(i, blocking_time(ts, i)) for i in targets]
    if as_json:
        click.echo(
            json.dumps(
                [
                    {
                        "job": i,
                        "blocking_time": str(res.blocking_time),
                        "witness": [z.label for z in res.witness],
                        "nodes_generated": res.nodes_generated,
                        "nodes_expanded": res.nodes_expanded,
                    }
                    for i, res in results
                ],
                indent=2,
            )
        )
        return
    for i, res in results:
        click.echo(
            f"J{i}: blocking time {res.blocking_time}  "
            f"witness {format_chain(res.witness)}  "
            f"({res.nodes_generated} nodes generated, "
            f"{res.nodes_expanded} expanded)"
        )
        if trace:
            for record in res.expansions:
                chain = format_chain(record.chain)
                ext = ", ".join(record.extensions) if record.extensions else "none"
                note = " (re-marked as leaf)" if record.releafed else ""
                click.echo(
                    f"  n{record.seq}: chain={chain} f={record.estimate} "
                    f"extensions: {ext}{note}"
                )


@cli.command("check-chain")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--job", type=int, required=True)
@click.option("--chain", "chain_text", required=True, help='e.g. "z4,1 z3,2 z2,1"')
def cmd_check_chain(file, job, chain_text) -> None:
    """Check a chain's admissibility and report the failing condition."""
    ts = _load(file)
    chain = parse_chain(ts, chain_text)
    verdict = is_admissible_chain(ts, job, chain)
    if verdict.admissible:
        click.echo(
            f"admissible, duration {chain_duration(chain)}"
        )
    else:
        where = verdict.section.label if verdict.section else "?"
        click.echo(f"inadmissible: {where} fails {verdict.failed_condition}")
        if verdict.witness:
            a, b = verdict.witness
            click.echo(f"  conflicting sections: {a.label}, {b.label}")


@cli.command("oracle")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--job", type=int, required=True)
@click.option("--limit", type=int, default=10**6, show_default=True)
def cmd_oracle(file, job, limit) -> None:
    """Exhaustive enumeration of admissible chains (small task sets only)."""
    ts = _load(file)
    result = brute_force_blocking_time(ts, job, limit=limit)
    click.echo(f"best duration: {result.best_duration}")
    for chain in result.best_chains:
        click.echo(f"  {format_chain(chain)}")
    click.echo(
        f"chains enumerated: {result.chains_enumerated} "
        f"(uninformed space {result.uninformed_space})"
    )


@cli.group("gen")
def cmd_gen() -> None:
    """Emit generated task sets in the canonical text format."""


@cmd_gen.command("antidiagonal")
@click.option("--n", "n", type=int, required=True, help="Total number of jobs.")
@click.option("--i", "i", type=int, required=True, help="Target job index.")
@click.option("--delta", required=True, help="Long section duration.")
@click.option("--epsilon", required=True, help="Short section duration.")
def cmd_gen_antidiagonal(n, i, delta, epsilon) -> None:
    """Antidiagonal family with a provably loose bound."""
    try:
        ts = generate_antidiagonal_family(n, i, delta, epsilon)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(serialize_taskset(ts), nl=False)


@cmd_gen.command("random")
@click.option("--seed", type=int, required=True)
@click.option("--jobs", type=int, default=5, show_default=True)
@click.option("--resources", type=int, default=5, show_default=True)
@click.option("--sections-per-job", type=int, default=3, show_default=True)
@click.option("--nesting-depth", type=int, default=2, show_default=True)
def cmd_gen_random(seed, jobs, resources, sections_per_job, nesting_depth) -> None:
    """Seeded random task set, deadlock-free by construction."""
    try:
        ts = random_taskset(
            seed,
            jobs=jobs,
            resources=resources,
            sections_per_job=sections_per_job,
            nesting_depth=nesting_depth,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(serialize_taskset(ts), nl=False)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        rv = cli.main(args=argv, standalone_mode=False)
        if isinstance(rv, int):
            return rv
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (TaskSetError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except CyclicResourceOrderError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OracleLimitError as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
