import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Tuple

import click
from dotenv import load_dotenv

from ..exceptions import SweepError
from ..scenario import convergence_study, exit_code_for, run_to_exit, selftest
from .logger import logger

load_dotenv()

DEFAULT_OUT_DIR = "out"
SCENARIO_SUFFIXES = (".yaml", ".yml")


def _out_dir(out: str) -> Path:
    return Path(out or os.getenv("VOLSWEEP_OUT_DIR", DEFAULT_OUT_DIR))


def _scenario_files(directory: Path) -> List[Path]:
    return sorted(p for p in directory.iterdir() if p.suffix in SCENARIO_SUFFIXES)


def _report(label: str, code: int, lines: List[str]) -> None:
    click.echo(f"{'✓' if code == 0 else '✗'} {label}")
    for line in lines:
        click.echo(f"  {line}")


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Show info and debug logs')
def cli(verbose):
    """Solve and verify Volterra sweeping processes."""
    if verbose or os.getenv("VOLSWEEP_VERBOSE", "0") == "1":
        logger.set_verbose(True)


@cli.command()
@click.argument('scenario')
@click.option('--out', default=None, help='Output directory (default $VOLSWEEP_OUT_DIR or ./out)')
@click.option('--workers', default=1, show_default=True, help='Parallel workers for a directory')
def run(scenario, out, workers):
    """Run a scenario file, a built-in name, or every scenario in a directory."""
    out_dir = _out_dir(out)
    source = Path(scenario)
    if source.is_dir():
        files = _scenario_files(source)
        if not files:
            click.echo(f"✗ no scenario files in {source}")
            sys.exit(2)
        targets = [(f, out_dir / f.stem) for f in files]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes: List[Tuple[str, int, List[str]]] = list(
                    pool.map(run_to_exit, *zip(*targets))
                )
        else:
            outcomes = [run_to_exit(f, o) for f, o in targets]
        for label, code, lines in outcomes:
            _report(label, code, lines)
        sys.exit(max(code for _, code, _ in outcomes))

    label, code, lines = run_to_exit(scenario, out_dir)
    _report(label, code, lines)
    sys.exit(code)


@cli.command()
@click.argument('scenario')
@click.option('--grids', required=True, help='Comma-separated grid sizes, e.g. 50,100,200,400')
@click.option('--out', default=None, help='Output directory (default $VOLSWEEP_OUT_DIR or ./out)')
def study(scenario, grids, out):
    """Convergence table of catching-up against a refined reference."""
    try:
        sizes = [int(part) for part in grids.split(",") if part.strip()]
    except ValueError:
        click.echo(f"✗ --grids must be comma-separated integers, got '{grids}'")
        sys.exit(2)
    try:
        table = convergence_study(scenario, sizes, _out_dir(out))
    except SweepError as e:
        click.echo(f"✗ {type(e).__name__}: {e}")
        sys.exit(exit_code_for(e))

    click.echo(f"{'n':>8} {'h':>12} {'error':>12} {'order':>8}")
    for row in table.rows:
        order = "exact" if table.exact else ("" if row.order is None else f"{row.order:.3f}")
        click.echo(f"{row.n:>8d} {row.h:>12.4e} {row.error:>12.4e} {order:>8}")
    if table.exact:
        click.echo("fitted order: exact")
    elif table.fitted_order is not None:
        click.echo(f"fitted order: {table.fitted_order:.3f}")
    sys.exit(0)


@cli.command(name="selftest")
@click.option('--n', 'n', default=200, show_default=True, help='Grid size for the solver checks')
def selftest_cmd(n):
    """Built-in Gronwall and solver property suites."""
    try:
        checks = selftest(n)
    except SweepError as e:
        click.echo(f"✗ {type(e).__name__}: {e}")
        sys.exit(exit_code_for(e))
    for check in checks:
        click.echo(check.line())
    failed = [c for c in checks if not c.passed]
    click.echo(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    sys.exit(1 if failed else 0)


if __name__ == '__main__':
    cli()
