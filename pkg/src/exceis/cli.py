"""Command-line front end.

Exit status is 0 iff no Mismatch row was produced; reports go to stdout in
JSON (machine) or Markdown (human) form.
"""

from __future__ import annotations

import sys

import click

from . import cases, report
from .config import load_config


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        click.echo(report.to_json(doc), nl=False)
    else:
        click.echo(report.to_markdown(doc), nl=False)
    if doc.get("status") == "Mismatch":
        sys.exit(1)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Alternative config file (defaults to the packaged one).")
@click.option("--format", "fmt", type=click.Choice(["json", "md"]), default="md")
@click.pass_context
def main(ctx, config_path, fmt):
    """Exact verification of coset censuses, constant-term ledgers,
    archimedean multipliers, and algebra identities."""
    ctx.ensure_object(dict)
    ctx.obj["cfg"] = load_config(config_path)
    ctx.obj["fmt"] = fmt


@main.command()
@click.argument("system")
@click.argument("left")
@click.argument("right")
@click.pass_context
def cosets(ctx, system, left, right):
    """Minimal double-coset representatives [W_LEFT \\ W / W_RIGHT]."""
    cfg = ctx.obj["cfg"]
    try:
        doc = cases.cosets_report(cfg, system, left, right)
    except (KeyError, ValueError) as exc:
        raise click.ClickException(str(exc))
    _emit(doc, ctx.obj["fmt"])


@main.command("constant-term")
@click.argument("case_name", metavar="CASE")
@click.argument("source")
@click.argument("target")
@click.option("--s0", default=None, help="Evaluation point (defaults to the case's).")
@click.pass_context
def constant_term(ctx, case_name, source, target, s0):
    """Constant-term table of CASE from SOURCE down to TARGET."""
    cfg = ctx.obj["cfg"]
    try:
        doc = cases.constant_term_report(cfg, case_name, source, target, s0=s0)
    except (KeyError, ValueError) as exc:
        raise click.ClickException(str(exc))
    _emit(doc, ctx.obj["fmt"])


@main.command()
@click.argument("case_name", metavar="CASE", required=False)
@click.pass_context
def arch(ctx, case_name):
    """Verify the archimedean multiplier recipes (all cases by default)."""
    cfg = ctx.obj["cfg"]
    _emit(cases.arch_report(cfg, case_name), ctx.obj["fmt"])


@main.command()
@click.argument("suite", default="all")
@click.option("--seed", type=int, default=None)
@click.option("--count", type=int, default=None)
@click.pass_context
def algebra(ctx, suite, seed, count):
    """Seeded algebra property suites (composition, sharp, triality, ...)."""
    cfg = ctx.obj["cfg"]
    try:
        doc = cases.algebra_report(cfg, suite, seed=seed, count=count)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _emit(doc, ctx.obj["fmt"])


@main.command()
@click.pass_context
def modulus(ctx):
    """Check the configured modulus-character exponents."""
    _emit(cases.modulus_report(ctx.obj["cfg"]), ctx.obj["fmt"])


@main.command()
@click.pass_context
def oracle(ctx):
    """Rational c-functions against the absolute-system oracle."""
    _emit(cases.oracle_report(ctx.obj["cfg"]), ctx.obj["fmt"])


@main.command("all")
@click.option("--seed", type=int, default=None)
@click.option("--count", type=int, default=None,
              help="Algebra-suite sample count (default from config).")
@click.pass_context
def run_everything(ctx, seed, count):
    """Run every configured verification."""
    cfg = ctx.obj["cfg"]
    _emit(cases.run_all(cfg, seed=seed, count=count), ctx.obj["fmt"])


if __name__ == "__main__":
    main()
