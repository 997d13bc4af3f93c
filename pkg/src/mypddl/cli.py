"""Command-line entry point: one executable, one subcommand per tool.

Exit codes: 0 success, 1 domain error (broken input, failed planner, ...),
2 usage error. Diagnostics print as ``file:line:col: severity: message``
with positions derived from byte spans (columns count bytes, not glyphs).
"""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from . import construct, distance, highlight, planner, scaffold, snippets, typegraph
from .sexpr import (
    MyPddlError,
    ParseDiagnostic,
    Severity,
    offset_to_line_col,
    parse_sexpr,
)


def _print_diagnostics(path: Path, text: str,
                       diagnostics: Sequence[ParseDiagnostic],
                       quiet: bool) -> None:
    if quiet:
        return
    data = text.encode("utf-8")
    for diag in sorted(diagnostics, key=lambda d: (d.span.start, d.span.end)):
        line, col = offset_to_line_col(data, diag.span.start)
        click.echo(f"{path}:{line}:{col}: {diag.severity.value}: "
                   f"{diag.message} [{diag.code}]", err=True)


def _diagnostics_json(text: str,
                      diagnostics: Sequence[ParseDiagnostic]) -> list[dict]:
    data = text.encode("utf-8")
    out = []
    for diag in sorted(diagnostics, key=lambda d: (d.span.start, d.span.end)):
        line, col = offset_to_line_col(data, diag.span.start)
        out.append({"start": diag.span.start, "end": diag.span.end,
                    "line": line, "col": col,
                    "severity": diag.severity.value,
                    "message": diag.message, "code": diag.code})
    return out


class _Cli(click.Group):
    """Maps domain errors to exit code 1 with a one-line message."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except MyPddlError as exc:
            raise click.ClickException(str(exc)) from exc


@click.group(cls=_Cli)
@click.option("--quiet", is_flag=True, help="Suppress diagnostic output.")
@click.option("--json", "as_json", is_flag=True,
              help="Machine-readable output where supported.")
@click.pass_context
def main(ctx: click.Context, quiet: bool, as_json: bool) -> None:
    """Knowledge-engineering toolkit for PDDL 3.1."""
    ctx.ensure_object(dict)
    ctx.obj["quiet"] = quiet
    ctx.obj["json"] = as_json


@main.command()
@click.argument("name")
@click.option("--dir", "parent_dir", type=click.Path(path_type=Path),
              default=Path("."), help="Parent directory for the project.")
@click.option("--templates", "template_dir", type=click.Path(path_type=Path),
              default=None, help="Directory of template files overriding the "
              "built-in ones by relative path.")
@click.pass_context
def new(ctx: click.Context, name: str, parent_dir: Path,
        template_dir: Optional[Path]) -> None:
    """Create a new PDDL project tree named NAME."""
    templates = scaffold.default_templates()
    if template_dir is not None:
        templates = scaffold.merge_templates(
            templates, scaffold.load_template_dir(template_dir))
    created = scaffold.create_project(name, parent_dir, templates)
    if not ctx.obj["quiet"]:
        for path in created:
            click.echo(str(path))


@main.command()
@click.argument("trigger", required=False)
@click.option("--list", "list_all", is_flag=True,
              help="List available snippets instead of expanding one.")
@click.option("--snippets-dir", type=click.Path(path_type=Path), default=None,
              help="Extra snippet directory; shadows built-ins by trigger.")
@click.pass_context
def snippet(ctx: click.Context, trigger: Optional[str], list_all: bool,
            snippets_dir: Optional[Path]) -> None:
    """Print the expansion of a snippet TRIGGER (e.g. domain, p2, t3)."""
    snippet_set = snippets.load_snippets(snippets_dir)
    for warning in snippet_set.warnings:
        if not ctx.obj["quiet"]:
            click.echo(f"warning: {warning}", err=True)
    if list_all:
        for row_trigger, description in snippets.list_snippets(snippet_set):
            click.echo(f"{row_trigger:24} {description}")
        return
    if trigger is None:
        raise click.UsageError("provide a trigger or use --list")
    click.echo(snippets.expand(trigger, snippet_set))


@main.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.option("--format", "output_format",
              type=click.Choice(["json", "html"]), default="json",
              help="Output format.")
@click.option("--fail-on-invalid", is_flag=True,
              help="Exit 1 when any invalid region is present.")
def tokens(file: Path, output_format: str, fail_on_invalid: bool) -> None:
    """Print the scoped token stream of FILE."""
    text = file.read_text(encoding="utf-8")
    token_stream = highlight.tokenize(text)
    if output_format == "html":
        click.echo(highlight.render_html(token_stream, text, title=file.name),
                   nl=False)
    else:
        sys.stdout.buffer.write(highlight.emit_tokens_json(token_stream, text))
        sys.stdout.buffer.write(b"\n")
        sys.stdout.buffer.flush()
    if fail_on_invalid and highlight.invalid_regions(token_stream):
        sys.exit(1)


@main.command()
@click.argument("domain_file", metavar="DOMAIN",
                type=click.Path(exists=True, path_type=Path))
@click.option("--out", "output_root", type=click.Path(path_type=Path),
              default=Path("."), help="Directory receiving domains/, dot/ "
              "and diagrams/.")
@click.option("--no-render", is_flag=True, help="Write DOT only; skip the image.")
@click.option("--renderer", default=None,
              help="External renderer command (default: dot, when available).")
@click.pass_context
def diagram(ctx: click.Context, domain_file: Path, output_root: Path,
            no_render: bool, renderer: Optional[str]) -> None:
    """Generate the type-hierarchy diagram for DOMAIN."""
    if no_render:
        renderer = None
    elif renderer is None and shutil.which("dot"):
        renderer = "dot"
    artifacts, diagnostics = typegraph.render_diagram(
        domain_file, output_root, renderer=renderer)
    text = domain_file.read_text(encoding="utf-8")
    _print_diagnostics(domain_file, text, diagnostics, ctx.obj["quiet"])
    if not ctx.obj["quiet"]:
        click.echo(f"revision {artifacts.revision}:")
        click.echo(f"  {artifacts.copied_domain_path}")
        click.echo(f"  {artifacts.dot_path}")
        if artifacts.image_path is not None:
            click.echo(f"  {artifacts.image_path}")


@main.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.argument("keyword")
def extract(file: Path, keyword: str) -> None:
    """Print every block of FILE headed by KEYWORD."""
    from .sexpr import serialize_node

    for block in construct.read_construct(keyword, file):
        click.echo(serialize_node(block))


@main.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.argument("keyword")
@click.argument("construct_text", metavar="CONSTRUCT")
@click.option("--stdout", "to_stdout", is_flag=True,
              help="Print the updated file instead of rewriting it.")
def insert(file: Path, keyword: str, construct_text: str,
           to_stdout: bool) -> None:
    """Append CONSTRUCT to the first KEYWORD block of FILE."""
    nodes = construct.parse_constructs(construct_text)
    if to_stdout:
        text = file.read_text(encoding="utf-8")
        click.echo(construct.insert_construct(text, keyword, nodes), nl=False)
    else:
        construct.add_construct(file, keyword, nodes)


@main.command(name="distance")
@click.argument("problem_file", metavar="PROBLEM",
                type=click.Path(exists=True, path_type=Path))
@click.option("--predicate", default=distance.DEFAULT_PREDICATE,
              show_default=True, help="Location predicate to harvest.")
@click.option("--in-place", is_flag=True, help="Rewrite PROBLEM itself.")
@click.option("--out", "output_file", type=click.Path(path_type=Path),
              default=None, help="Output file (default: <name>_dist.pddl).")
@click.pass_context
def distance_cmd(ctx: click.Context, problem_file: Path, predicate: str,
                 in_place: bool, output_file: Optional[Path]) -> None:
    """Append pairwise Euclidean distance facts to PROBLEM's init block."""
    if in_place and output_file is not None:
        raise click.UsageError("--in-place and --out are mutually exclusive")
    if in_place:
        output_file = problem_file
    out_path, diagnostics = distance.augment_file(
        problem_file, output_file, predicate_name=predicate)
    text = problem_file.read_text(encoding="utf-8")
    _print_diagnostics(problem_file, text, diagnostics, ctx.obj["quiet"])
    if not ctx.obj["quiet"]:
        click.echo(str(out_path))


@main.command()
@click.option("--domain", "domain_file", type=click.Path(path_type=Path),
              default=Path("domain.pddl"), show_default=True)
@click.option("--problem", "problem_file", type=click.Path(path_type=Path),
              default=Path("problems/p01.pddl"), show_default=True)
@click.option("--config", "config_file", type=click.Path(path_type=Path),
              default=Path(planner.CONFIG_FILENAME), show_default=True)
@click.pass_context
def plan(ctx: click.Context, domain_file: Path, problem_file: Path,
         config_file: Path) -> None:
    """Run the configured planner on a domain/problem pair."""
    config = planner.load_config(config_file)
    result = planner.run_planner(config, domain_file, problem_file)
    if result.stdout and not ctx.obj["quiet"]:
        click.echo(result.stdout, nl=False)
    if result.stderr:
        click.echo(result.stderr, err=True, nl=False)
    if result.timed_out:
        click.echo(f"planner timed out after {result.elapsed:.1f}s", err=True)
        sys.exit(1)
    if not ctx.obj["quiet"]:
        if result.solution_path is not None:
            click.echo(f"solution: {result.solution_path}")
        else:
            click.echo("no new solution file detected")
    if result.exit_code != 0:
        sys.exit(1)


@main.command()
@click.argument("files", nargs=-1, required=True,
                type=click.Path(exists=True, path_type=Path))
@click.pass_context
def check(ctx: click.Context, files: tuple[Path, ...]) -> None:
    """Parse and scope FILES, reporting errors and invalid regions."""
    any_bad = False
    reports = []
    for path in files:
        text = path.read_text(encoding="utf-8")
        data = text.encode("utf-8")
        _, diagnostics = parse_sexpr(text)
        errors = [d for d in diagnostics if d.severity is Severity.ERROR]
        token_stream = highlight.tokenize(text)
        regions = highlight.invalid_regions(token_stream)
        bad = bool(errors or regions)
        any_bad = any_bad or bad
        if ctx.obj["json"]:
            reports.append({
                "file": str(path),
                "diagnostics": _diagnostics_json(text, diagnostics),
                "invalid_regions": [
                    {"start": r.start, "end": r.end,
                     "line": offset_to_line_col(data, r.start)[0],
                     "col": offset_to_line_col(data, r.start)[1],
                     "text": data[r.start:r.end].decode("utf-8",
                                                        errors="replace")}
                    for r in regions],
            })
            continue
        _print_diagnostics(path, text, diagnostics, ctx.obj["quiet"])
        if not ctx.obj["quiet"]:
            for region in regions:
                line, col = offset_to_line_col(data, region.start)
                excerpt = data[region.start:region.end].decode(
                    "utf-8", errors="replace")
                if len(excerpt) > 40:
                    excerpt = excerpt[:37] + "..."
                click.echo(f"{path}:{line}:{col}: invalid: {excerpt}")
        click.echo(f"{path}: {len(errors)} errors, "
                   f"{len(regions)} invalid regions")
    if ctx.obj["json"]:
        click.echo(json.dumps(reports, indent=2))
    if any_bad:
        sys.exit(1)


if __name__ == "__main__":
    main()
