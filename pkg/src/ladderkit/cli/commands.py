# ladderkit/cli/commands.py
"""
Command line: `ladderkit <command> [options]`.

Exit codes: 0 success, 1 usage/parse/order cap, 2 hermiticity,
3 verification failure (cutoff-margin rejections included).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import click

from ladderkit.app_info import APP_VERSION
from ladderkit.cli.config import OUTPUT_FORMATS, UNITS_MODES
from ladderkit.cli.controller import EXIT_USAGE, LadderController, exit_code_for
from ladderkit.core.context import AppContext
from ladderkit.core.errors import LadderKitError
from ladderkit.engine.perturbation import NORMALIZATIONS
from ladderkit.numeric.errata import ITEMS
from ladderkit.numeric.verify import CHECK_NAMES


class LadderGroup(click.Group):
    """click.Group whose usage errors exit with 1 (2 is reserved for hermiticity)."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(
                args=args,
                prog_name=prog_name,
                complete_var=complete_var,
                standalone_mode=False,
                **extra,
            )
        except click.ClickException as e:
            e.show()
            rv = EXIT_USAGE
        except click.Abort:
            click.echo("Aborted!", err=True)
            rv = EXIT_USAGE
        code = rv if isinstance(rv, int) else 0
        if standalone_mode:
            sys.exit(code)
        return code


# ---------------------------------------------------------------------------
# Option groups
# ---------------------------------------------------------------------------
def _parse_levels(ctx, param, value: Optional[str]):
    """'0,1,5' or '0-4' or a mix."""
    if not value:
        return ()
    levels = []
    try:
        for part in value.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                lo, hi = part.split("-", 1)
                levels.extend(range(int(lo), int(hi) + 1))
            else:
                levels.append(int(part))
    except ValueError:
        raise click.BadParameter(f"expected levels like '0,1,2' or '0-4', got {value!r}")
    return tuple(levels)


def _split_names(value: Optional[str]):
    if not value:
        return ()
    return tuple(v.strip() for v in value.split(",") if v.strip())


def model_options(f):
    options = [
        click.option("-V", "--perturbation", default=None, help="Perturbation V, e.g. 'q' or 'p^4'."),
        click.option("-M", "--order", type=int, default=None, help="Perturbative order M."),
        click.option("-D", "--cutoff", type=int, default=None, help="Fock cutoff for numeric work."),
        click.option("--lambda", "lambda_values", type=float, multiple=True, help="Coupling value (repeatable)."),
        click.option("--units", "units_mode", type=click.Choice(UNITS_MODES), default=None),
        click.option("--normalization", type=click.Choice(NORMALIZATIONS), default=None),
        click.option("--levels", callback=_parse_levels, default=None, help="Levels, e.g. '0-4' or '0,2,5'."),
        click.option("--tol", type=float, default=None, help="Oracle tolerance."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def output_options(f):
    options = [
        click.option("--format", "output", type=click.Choice(OUTPUT_FORMATS), default=None),
        click.option(
            "--config",
            "config_file",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            default=None,
            help="JSON run file (settings < run file < flags).",
        ),
        click.option("-o", "--output-file", type=click.Path(dir_okay=False, path_type=Path), default=None),
        click.option("--json-diagnostics", is_flag=True, help="Print errors as JSON on stderr."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _flags(params: Dict[str, Any]) -> Dict[str, Any]:
    flags = dict(params)
    tol = flags.pop("tol", None)
    if tol is not None:
        flags["tolerances"] = {"oracle": tol}
    return flags


def _run(
    ctx: click.Context,
    command: str,
    flags: Dict[str, Any],
    config_file: Optional[Path],
    output_file: Optional[Path],
    json_diagnostics: bool,
    **extra: Any,
) -> int:
    controller = LadderController(ctx.obj)
    try:
        cfg = controller.build_config(_flags(flags), config_file)
        result = controller.execute_command(command, cfg, **extra)
    except LadderKitError as e:
        if json_diagnostics:
            click.echo(json.dumps(e.to_dict(), ensure_ascii=False), err=True)
        else:
            click.echo(f"error: {e}", err=True)
        return exit_code_for(e)
    except (OSError, json.JSONDecodeError) as e:
        if json_diagnostics:
            click.echo(json.dumps({"kind": "io", "message": str(e)}), err=True)
        else:
            click.echo(f"error: {e}", err=True)
        return EXIT_USAGE

    for warning in result.warnings:
        click.echo(f"warning: {warning}", err=True)
    if output_file is not None:
        Path(output_file).write_text(result.output, encoding="utf-8")
        click.echo(f"wrote {output_file}", err=True)
    else:
        click.echo(result.output, nl=False)
    return result.exit_code


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------
@click.group(cls=LadderGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(APP_VERSION, prog_name="ladderkit")
@click.pass_context
def cli(ctx: click.Context) -> None:
    """Perturbative corrections to the harmonic-oscillator ladder operators."""
    if ctx.obj is None:
        ctx.obj = AppContext.create()


@cli.command()
@model_options
@output_options
@click.pass_context
def correct(ctx, config_file, output_file, json_diagnostics, **params):
    """Corrections α_m, α_m† and ν_m through order M."""
    return _run(ctx, "correct", params, config_file, output_file, json_diagnostics)


@cli.command()
@model_options
@output_options
@click.pass_context
def spectrum(ctx, config_file, output_file, json_diagnostics, **params):
    """Energy corrections ε_m(n), with values at the chosen levels."""
    return _run(ctx, "spectrum", params, config_file, output_file, json_diagnostics)


@cli.command()
@click.option("-O", "--observable", default=None, help="Observable O, e.g. 'q'.")
@model_options
@output_options
@click.pass_context
def expect(ctx, config_file, output_file, json_diagnostics, **params):
    """⟨n|O|n⟩ on the perturbed levels: unnormalized, norm and ratio."""
    return _run(ctx, "expect", params, config_file, output_file, json_diagnostics)


@cli.command()
@click.option("--checks", default=None, help=f"Comma-separated subset of: {', '.join(CHECK_NAMES)}.")
@click.option("--errata/--no-errata", default=True, help="Adjudicate published forms when V is q or p^4.")
@click.option("--save", "save_path", type=click.Path(dir_okay=False, path_type=Path), default=None)
@model_options
@output_options
@click.pass_context
def verify(ctx, checks, errata, save_path, config_file, output_file, json_diagnostics, **params):
    """Compare the engine with the truncated-Fock-space oracle."""
    selected = _split_names(checks) or CHECK_NAMES
    return _run(
        ctx, "verify", params, config_file, output_file, json_diagnostics,
        checks=selected, errata=errata, save_path=save_path,
    )


@cli.command()
@click.argument("keys", nargs=-1, type=click.Choice(sorted(ITEMS)))
@output_options
@click.pass_context
def errata(ctx, keys, config_file, output_file, json_diagnostics, output):
    """Adjudicate conflicting published forms with the oracle."""
    return _run(ctx, "errata", {"output": output}, config_file, output_file, json_diagnostics, keys=keys)


@cli.command()
@click.option("-M", "--order", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--count", type=int, default=20, show_default=True)
@click.option("--max-degree", type=int, default=4, show_default=True)
@output_options
@click.pass_context
def selfcheck(ctx, count, max_degree, config_file, output_file, json_diagnostics, **params):
    """Exact identities on random Hermitian perturbations."""
    return _run(
        ctx, "selfcheck", params, config_file, output_file, json_diagnostics,
        count=count, max_degree=max_degree,
    )


@cli.command()
@click.argument("run_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@output_options
@click.pass_context
def batch(ctx, run_file, config_file, output_file, json_diagnostics, output):
    """Run the command records of a JSON batch file in order."""
    return _run(ctx, "batch", {"output": output}, config_file, output_file, json_diagnostics, path=run_file)


def main(argv=None) -> int:
    return cli.main(args=argv, prog_name="ladderkit")
