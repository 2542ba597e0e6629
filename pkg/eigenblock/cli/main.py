"""eigenblock command line"""

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import click
from pydantic import ValidationError as SchemaError

from .. import __version__
from ..config import load_environment, tolerances_from_env
from ..errors import EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EigenblockError
from .commands import run
from .config import Command, RunConfig, parse_states

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

FilePath = click.Path(dir_okay=False, path_type=Path)
DirPath = click.Path(file_okay=False, path_type=Path)


class EigenblockGroup(click.Group):
    """Click group that maps failures to eigenblock exit codes"""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            result = super().main(
                args=args, prog_name=prog_name, complete_var=complete_var,
                standalone_mode=False, **extra
            )
            code = result if isinstance(result, int) else EXIT_OK
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            code = EXIT_USAGE
        except click.ClickException as exc:
            exc.show()
            code = EXIT_USAGE
        except EigenblockError as exc:
            click.echo(f"Error: {exc}", err=True)
            code = exc.exit_code
        except OSError as exc:
            click.echo(f"Error: {exc}", err=True)
            code = EXIT_VALIDATION
        if standalone_mode:
            sys.exit(code)
        return code


def setup_logging(verbose: bool, level_name: Optional[str]) -> None:
    level = logging.DEBUG if verbose else getattr(logging, (level_name or "WARNING").upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("eigenblock").setLevel(level)


def _states_callback(ctx, param, value):
    try:
        return parse_states(value)
    except ValueError:
        raise click.BadParameter("expected a comma-separated list of integers, e.g. 1,4")


def _execute(ctx: click.Context, command: Command, **values) -> int:
    settings = ctx.obj
    if values.get("seed") is None:
        values["seed"] = settings["seed"]
    values = {key: value for key, value in values.items() if value is not None}
    try:
        config = RunConfig(command=command, **values)
    except SchemaError as exc:
        first = exc.errors()[0]
        raise click.UsageError(str(first.get("msg", exc)).replace("Value error, ", ""))
    return run(config, settings["tolerances"])


def model_option(required: bool = True):
    return click.option("--model", "model_path", type=FilePath, required=required, help="Model JSON file")


def out_option(f):
    return click.option("--out", "out_dir", type=DirPath, default=Path("."), show_default=True,
                        help="Output directory")(f)


def tolerance_options(f):
    f = click.option("--tol-block", type=float, default=None, help="Blocking tolerance")(f)
    f = click.option("--tol-spectrum", type=float, default=None, help="Spectrum tolerance")(f)
    return f


def pair_options(f):
    f = click.option("--pair-freq-window", type=float, default=None, help="Window around --pair-freq in Hz")(f)
    f = click.option("--pair-freq", type=float, default=None, help="Target pair by frequency in Hz")(f)
    f = click.option("--pair-index", type=int, default=None, help="Target pair by 1-based mode index")(f)
    return f


def blocking_options(f):
    f = click.option("--seed", type=int, default=None, help="Seed for retry directions")(f)
    f = click.option("--best-effort", is_flag=True,
                     help="Attempt requests outside the guaranteed feasibility region")(f)
    return f


@click.group(cls=EigenblockGroup)
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.option("--env-file", type=FilePath, default=None, help=".env file with EIGENBLOCK_* settings")
@click.version_option(__version__, prog_name="eigenblock")
@click.pass_context
def cli(ctx, verbose, env_file):
    """Block mode participation and observability by eigenstructure assignment."""
    settings = load_environment(env_file)
    setup_logging(verbose, settings["log_level"])
    try:
        tolerances = tolerances_from_env()
        seed = int(settings["seed"]) if settings["seed"] else 0
    except ValueError as exc:
        raise click.UsageError(f"invalid EIGENBLOCK_* environment setting: {exc}")
    ctx.obj = {"tolerances": tolerances, "seed": seed}


@cli.command()
@model_option()
@out_option
@click.pass_context
def analyze(ctx, **values):
    """Write modes.csv, participation.csv and observability.csv."""
    return _execute(ctx, Command.ANALYZE, **values)


@cli.command("block-participation")
@model_option()
@pair_options
@click.option("--states", callback=_states_callback, default=None, help="1-based states, e.g. 1,4")
@click.option("--machine", type=int, default=None, help="Block every state of a 1-based machine")
@blocking_options
@tolerance_options
@out_option
@click.pass_context
def block_participation(ctx, **values):
    """Remove states from one mode pair."""
    return _execute(ctx, Command.BLOCK_PARTICIPATION, **values)


@cli.command("block-observability")
@model_option()
@pair_options
@click.option("--all-inter-area", is_flag=True, help="Block every inter-area pair in turn")
@blocking_options
@tolerance_options
@out_option
@click.pass_context
def block_observability(ctx, **values):
    """Hide one mode pair (or every inter-area pair) from the model output."""
    return _execute(ctx, Command.BLOCK_OBSERVABILITY, **values)


@cli.command()
@model_option()
@click.option("--plan", "plan_path", type=FilePath, required=True, help="Plan JSON: list of stages")
@blocking_options
@tolerance_options
@out_option
@click.pass_context
def sequential(ctx, **values):
    """Run a multi-stage blocking plan."""
    return _execute(ctx, Command.SEQUENTIAL, **values)


@cli.command()
@model_option()
@click.option("--gain", "gain_path", type=FilePath, required=True, help="Gain JSON file")
@tolerance_options
@out_option
@click.pass_context
def verify(ctx, **values):
    """Check a gain file against a model; exit 5 when a check fails."""
    return _execute(ctx, Command.VERIFY, **values)


@cli.command("build-heffron")
@click.option("--params", "params_path", type=FilePath, default=None,
              help="Parameter JSON (default: built-in synthetic 3-machine set)")
@click.option("--literal-paper-structure", "k5_in_exciter", is_flag=True,
              help="Use K5 in the exciter E'q column")
@out_option
@click.pass_context
def build_heffron(ctx, **values):
    """Write the Heffron-Phillips model to model.json."""
    return _execute(ctx, Command.BUILD_HEFFRON, **values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return the exit code"""
    return cli.main(args=list(argv) if argv is not None else None, prog_name="eigenblock", standalone_mode=False)
