"""Batch command-line driver.

Exit codes: 0 success, 2 usage/configuration error, 3 provider/transport
error, 4 data (document) error.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .analysis.collapse import collapse as collapse_tree
from .analysis.coverage import WordList, coverage_report
from .analysis.ranking import annotate_ranks
from .compare import PromptTemplate, generate_comparison
from .errors import (
    BeamscopeError,
    ConfigError,
    ContractError,
    DocumentParseError,
    ModelError,
    ProviderProtocolError,
    ProviderTransportError,
    SchemaVersionError,
    UnknownNodeError,
    VocabularyError,
)
from .providers import build_provider
from .render import render_dot, render_text
from .serialize import deserialize, serialize, tree_to_dict
from .service.app import create_app
from .service.config import ServiceConfig
from .service.store import atomic_write_text
from .tree import GenerationParams, generate_tree

EXIT_CONFIG = 2
EXIT_PROVIDER = 3
EXIT_DATA = 4

_EXIT_CODES: list[tuple[type, int]] = [
    (ConfigError, EXIT_CONFIG),
    (ProviderTransportError, EXIT_PROVIDER),
    (ProviderProtocolError, EXIT_PROVIDER),
    (ModelError, EXIT_PROVIDER),
    (VocabularyError, EXIT_PROVIDER),
    (SchemaVersionError, EXIT_DATA),
    (DocumentParseError, EXIT_DATA),
    (UnknownNodeError, EXIT_DATA),
    (ContractError, EXIT_DATA),
]


def _exit_code(exc: BeamscopeError) -> int:
    for cls, code in _EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return EXIT_DATA


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BeamscopeError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(_exit_code(exc))
        except (OSError, json.JSONDecodeError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_CONFIG)
    return wrapper


def _load_provider(path: str):
    try:
        config = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read provider config {path}: {exc}")
    return build_provider(config)


def _load_tree(path: str):
    try:
        return deserialize(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentParseError(f"cannot read tree {path}: {exc}")


def _emit(content: str, out: str | None) -> None:
    if out:
        atomic_write_text(Path(out), content)
    else:
        click.echo(content, nl=not content.endswith("\n"))


@click.group(help=__doc__)
def main():
    pass


@main.command()
@click.option("--provider", "provider_path", required=True,
              help="Provider config JSON file.")
@click.option("--prompt", required=True)
@click.option("--k", required=True, type=int, help="Beam width.")
@click.option("--n", required=True, type=int, help="Beam length (max tokens).")
@click.option("--e", type=int, default=None,
              help="Expansion factor (candidates per beam; default k).")
@click.option("--record-pruned/--no-record-pruned", default=True)
@click.option("--out", default=None, help="Output file (default stdout).")
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "dot", "text"]))
@handle_errors
def generate(provider_path, prompt, k, n, e, record_pruned, out, fmt):
    """Generate a beam search tree for a prompt."""
    provider = _load_provider(provider_path)
    params = GenerationParams(beam_width=k, beam_length=n,
                              expansion_factor=e, record_pruned=record_pruned)
    tree = generate_tree(provider, prompt, params)
    if fmt == "json":
        _emit(serialize(tree), out)
    elif fmt == "dot":
        _emit(render_dot(tree), out)
    else:
        _emit(render_text(tree), out)


def parse_replacements(content: str) -> list[str]:
    r"""One replacement per line; '\s' escapes a literal space so leading and
    trailing whitespace stays visible in fixture files."""
    lines = content.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline, not an empty replacement
    return [line.replace("\\s", " ") for line in lines]


@main.command()
@click.option("--provider", "provider_path", required=True,
              help="Provider config JSON file.")
@click.option("--template", required=True,
              help="Prompt containing exactly one <PH> marker.")
@click.option("--replacements", "replacements_path", required=True,
              help=r"File with one replacement per line (\s = literal space).")
@click.option("--k", required=True, type=int)
@click.option("--n", required=True, type=int)
@click.option("--e", type=int, default=None)
@click.option("--out", "out_dir", required=True, help="Output directory.")
@handle_errors
def compare(provider_path, template, replacements_path, k, n, e, out_dir):
    """Generate one tree per template replacement plus a manifest."""
    provider = _load_provider(provider_path)
    replacements = parse_replacements(
        Path(replacements_path).read_text(encoding="utf-8"))
    prompt_template = PromptTemplate(template, tuple(replacements))
    params = GenerationParams(beam_width=k, beam_length=n, expansion_factor=e)
    comparison = generate_comparison(provider, prompt_template, params)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, tree in enumerate(comparison.trees):
        tree_id = f"tree-{i:03d}"
        comparison.tree_ids.append(tree_id)
        atomic_write_text(out / f"{tree_id}.json", serialize(tree))
    atomic_write_text(out / "manifest.json",
                      json.dumps(comparison.manifest(), sort_keys=True,
                                 ensure_ascii=False, indent=2))
    click.echo(f"wrote {len(comparison.trees)} trees to {out}")


@main.command()
@click.option("--tree", "tree_path", required=True, help="Tree JSON file.")
@click.option("--wordlist", "wordlist_path", required=True,
              help="Wordlist file, one entry per line.")
@click.option("--include-stubs", is_flag=True, default=False)
@click.option("--format", "fmt", default="table",
              type=click.Choice(["table", "json"]))
@click.option("--out", default=None)
@handle_errors
def coverage(tree_path, wordlist_path, include_stubs, fmt, out):
    """Per-rank keyword coverage report for a stored tree."""
    tree = _load_tree(tree_path)
    wordlist = WordList.from_file(wordlist_path)
    report = coverage_report(tree, wordlist, include_stubs=include_stubs)
    if fmt == "json":
        _emit(json.dumps(report.to_dict(), sort_keys=True,
                         ensure_ascii=False, indent=2), out)
    else:
        _emit(report.to_table(), out)


@main.command()
@click.option("--tree", "tree_path", required=True, help="Tree JSON file.")
@click.option("--out", default=None)
@handle_errors
def rank(tree_path, out):
    """Annotate every node of a stored tree with its branch rank."""
    tree = _load_tree(tree_path)
    annotate_ranks(tree)
    _emit(serialize(tree), out)


@main.command()
@click.option("--tree", "tree_path", required=True, help="Tree JSON file.")
@click.option("--wordlist", "wordlist_path", required=True)
@click.option("--include-stubs", is_flag=True, default=False)
@click.option("--out", default=None)
@handle_errors
def collapse(tree_path, wordlist_path, include_stubs, out):
    """Collapse a stored tree to root plus wordlist-matching nodes."""
    tree = _load_tree(tree_path)
    wordlist = WordList.from_file(wordlist_path)
    view = collapse_tree(tree, wordlist, include_stubs=include_stubs)
    _emit(json.dumps(view.to_dict(tree), sort_keys=True,
                     ensure_ascii=False, indent=2), out)


@main.command()
@click.option("--config", "config_path", default=None,
              help="Service config JSON file.")
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@handle_errors
def serve(config_path, host, port):
    """Run the HTTP service."""
    import uvicorn

    config = ServiceConfig.load(config_path)
    app = create_app(config)
    uvicorn.run(app, host=host or config.host, port=port or config.port)


if __name__ == "__main__":
    main()
