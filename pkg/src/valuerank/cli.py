"""Command-line interface.

Exit codes are stable: 0 success, 1 validation failure, 2 usage error,
3 runtime error (all-zero weights, missing dimension, port in use). Every
error path prints a single line to stderr prefixed with ``error:``.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from datetime import date

import click

from valuerank.catalog import Catalog, load_catalog, load_profile, validate_catalog
from valuerank.errors import (
    AllZeroWeightsError,
    EmptyInputError,
    MissingDimensionError,
    ParseError,
    UndefinedMetricError,
    ValidationError,
)
from valuerank.evaluation import (
    DEFAULT_K,
    evaluate,
    report_to_csv,
    report_to_json,
    report_to_markdown,
)
from valuerank.valuation import (
    Method,
    RankedList,
    ValuationConfig,
    WeightVector,
    rank_explained,
    variant_weights,
)
from valuerank.weights import DIMENSIONS

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3

AS_OF_ENV = "VALUERANK_AS_OF"

_VALIDATION_ERRORS = (ParseError, ValidationError)
_RUNTIME_ERRORS = (
    AllZeroWeightsError,
    EmptyInputError,
    MissingDimensionError,
    UndefinedMetricError,
)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


class _Cli(click.Group):
    """Group whose ``main`` maps every failure onto the stable exit codes."""

    def main(self, *args, standalone_mode=True, **kwargs):  # noqa: D102
        try:
            super().main(*args, standalone_mode=False, **kwargs)
        except click.exceptions.Exit as exc:
            sys.exit(exc.exit_code)
        except click.UsageError as exc:
            _fail(exc.format_message(), EXIT_USAGE)
        except click.ClickException as exc:
            _fail(exc.format_message(), exc.exit_code)
        except _VALIDATION_ERRORS as exc:
            _fail(str(exc), EXIT_VALIDATION)
        except _RUNTIME_ERRORS as exc:
            _fail(str(exc), EXIT_RUNTIME)
        except OSError as exc:
            _fail(str(exc), EXIT_RUNTIME)
        sys.exit(EXIT_OK)


@click.group(cls=_Cli, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="valuerank")
def cli() -> None:
    """Personalized dataset ranking and NDCG evaluation."""


def _parse_as_of(text: str, origin: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise click.UsageError(f"invalid {origin} date {text!r}, expected YYYY-MM-DD") from None


def _resolve_as_of(flag_value: str | None) -> date | None:
    """As-of precedence: --as-of flag, then VALUERANK_AS_OF, then the file."""
    if flag_value is not None:
        return _parse_as_of(flag_value, "--as-of")
    env_value = os.environ.get(AS_OF_ENV)
    if env_value:
        return _parse_as_of(env_value, AS_OF_ENV)
    return None


def catalog_options(fn):
    """Catalog path, either positional or via --catalog, plus CSV companions."""

    @click.argument("catalog_arg", required=False, metavar="[CATALOG]")
    @click.option("--catalog", "catalog_opt", metavar="PATH", help="Catalog file (JSON or CSV).")
    @click.option("--usage", "usage_path", metavar="PATH", help="Usage table for CSV catalogs.")
    @click.option("--as-of", "as_of", metavar="DATE", help="Override the catalog as-of date.")
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return fn(*args, **kwargs)

    return wrapper


def _catalog_path(catalog_arg: str | None, catalog_opt: str | None) -> str:
    path = catalog_opt or catalog_arg
    if path is None:
        raise click.UsageError("missing catalog path (pass it as an argument or via --catalog)")
    if not os.path.isfile(path):
        raise click.UsageError(f"cannot read catalog file {path!r}")
    return path


def _load(
    catalog_arg: str | None,
    catalog_opt: str | None,
    usage_path: str | None,
    as_of: str | None,
    strict: bool = True,
) -> Catalog:
    path = _catalog_path(catalog_arg, catalog_opt)
    if usage_path is not None and not os.path.isfile(usage_path):
        raise click.UsageError(f"cannot read usage file {usage_path!r}")
    return load_catalog(
        path, usage_path=usage_path, as_of=_resolve_as_of(as_of), strict=strict
    )


@cli.command()
@catalog_options
@click.option(
    "--profile",
    "profiles",
    multiple=True,
    metavar="PATH",
    help="Stakeholder profile to validate (repeatable).",
)
def validate(catalog_arg, catalog_opt, usage_path, as_of, profiles) -> None:
    """Check a catalog (and optional profiles) against every invariant.

    Violations go to stderr. Warnings alone do not fail the command.
    """
    catalog = _load(catalog_arg, catalog_opt, usage_path, as_of, strict=False)
    violations = validate_catalog(catalog)
    for violation in violations:
        click.echo(str(violation), err=True)
    for profile_path in profiles:
        if not os.path.isfile(profile_path):
            raise click.UsageError(f"cannot read profile file {profile_path!r}")
        load_profile(profile_path)
    if any(v.severity == "error" for v in violations):
        sys.exit(EXIT_VALIDATION)


def _parse_inline_weights(text: str) -> WeightVector:
    parts = text.split(",")
    if len(parts) != 4:
        raise click.UsageError(
            "--weights takes four comma-separated integers: utility,creation_date,n_objects,usage"
        )
    try:
        numbers = [int(p.strip()) for p in parts]
    except ValueError:
        raise click.UsageError(f"--weights components must be integers, got {text!r}") from None
    return WeightVector(**dict(zip(DIMENSIONS, numbers)))


def _config_from_flags(
    catalog: Catalog, usage_mode: str, utility_source: str | None, decline_rate: float
) -> ValuationConfig:
    return ValuationConfig(
        decline_rate=decline_rate,
        usage_mode=usage_mode,
        utility_source=utility_source,
        as_of_date=catalog.as_of_date,
    )


def _format_ranking(ranking: RankedList, catalog: Catalog, fmt: str) -> str:
    names = {r.id: r.name for r in catalog.datasets}
    if fmt == "csv":
        lines = ["rank,dataset_id,data_value"]
        lines += [
            f"{position},{item.dataset_id},{item.value:.6f}"
            for position, item in enumerate(ranking, start=1)
        ]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = [
            {
                "rank": position,
                "dataset_id": item.dataset_id,
                "name": names[item.dataset_id],
                "data_value": item.value,
            }
            for position, item in enumerate(ranking, start=1)
        ]
        return json.dumps(doc, indent=2) + "\n"
    lines = ["| Rank | Dataset | Name | Data Value |", "| ---: | --- | --- | ---: |"]
    lines += [
        f"| {position} | {item.dataset_id} | {names[item.dataset_id]} | {item.value:.4f} |"
        for position, item in enumerate(ranking, start=1)
    ]
    return "\n".join(lines) + "\n"


@cli.command()
@catalog_options
@click.option("--profile", "profile_path", metavar="PATH", help="Take weights from a profile.")
@click.option("--weights", "weights_text", metavar="U,C,O,S", help="Inline slider weights, order: utility,creation_date,n_objects,usage.")
@click.option(
    "--method",
    "method_text",
    default="weighted",
    show_default=True,
    metavar="SPEC",
    help="weighted | simple | univariate:<utility|creation_date|n_objects|usage>",
)
@click.option("--usage-mode", type=click.Choice(["total", "average"]), default="total", show_default=True)
@click.option("--utility-source", metavar="LABEL", help="Utility label to use (default: catalog's).")
@click.option("--decline-rate", type=float, default=0.2, show_default=True, help="Currency decline per year.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "markdown"]), default="csv", show_default=True)
def rank(
    catalog_arg,
    catalog_opt,
    usage_path,
    as_of,
    profile_path,
    weights_text,
    method_text,
    usage_mode,
    utility_source,
    decline_rate,
    fmt,
) -> None:
    """Rank every dataset by its personalized data value."""
    catalog = _load(catalog_arg, catalog_opt, usage_path, as_of)
    try:
        method = Method.parse(method_text)
    except ValidationError as exc:
        raise click.UsageError(str(exc)) from None

    if method.kind == "weighted":
        if weights_text is not None and profile_path is not None:
            raise click.UsageError("pass either --weights or --profile, not both")
        if weights_text is not None:
            weights = _parse_inline_weights(weights_text)
        elif profile_path is not None:
            if not os.path.isfile(profile_path):
                raise click.UsageError(f"cannot read profile file {profile_path!r}")
            weights = load_profile(profile_path).weights
        else:
            raise click.UsageError("the weighted method needs --weights or --profile")
    else:
        if weights_text is not None or profile_path is not None:
            raise click.UsageError(f"method {method} does not take --weights or --profile")
        weights = variant_weights(method)

    config = _config_from_flags(catalog, usage_mode, utility_source, decline_rate)
    explanation = rank_explained(catalog, weights, config)
    click.echo(_format_ranking(explanation.ranking, catalog, fmt), nl=False)


def _run_evaluation(
    catalog_arg, catalog_opt, usage_path, as_of, profiles, k, decline_rate, utility_source, fmt
) -> None:
    catalog = _load(catalog_arg, catalog_opt, usage_path, as_of)
    loaded = []
    for profile_path in profiles:
        if not os.path.isfile(profile_path):
            raise click.UsageError(f"cannot read profile file {profile_path!r}")
        loaded.append(load_profile(profile_path))
    config = ValuationConfig(
        decline_rate=decline_rate,
        utility_source=utility_source,
        as_of_date=catalog.as_of_date,
    )
    report = evaluate(catalog, loaded, k=k, config=config)
    for warning in report.warnings:
        click.echo(f"warning: {warning}", err=True)
    if not report.cells:
        _fail("no profile has an ideal ranking; nothing to evaluate", EXIT_VALIDATION)
    if fmt == "csv":
        text = report_to_csv(report)
    elif fmt == "json":
        text = report_to_json(report)
    else:
        text = report_to_markdown(report)
    click.echo(text, nl=False)


def evaluation_options(fn):
    @click.option(
        "--profile",
        "profiles",
        multiple=True,
        required=True,
        metavar="PATH",
        help="Stakeholder profile with an ideal ranking (repeatable).",
    )
    @click.option(
        "--k", type=int, default=DEFAULT_K, show_default=True, help="Truncation depth for NDCG@k."
    )
    @click.option("--decline-rate", type=float, default=0.2, show_default=True)
    @click.option(
        "--utility-source",
        metavar="LABEL",
        help="Default utility label for the weighted and simple-average rows.",
    )
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return fn(*args, **kwargs)

    return wrapper


@cli.command("evaluate")
@catalog_options
@evaluation_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "markdown"]), default="csv", show_default=True)
def evaluate_cmd(
    catalog_arg, catalog_opt, usage_path, as_of, profiles, k, decline_rate, utility_source, fmt
) -> None:
    """Compare data-value rankings with stakeholder ideal rankings."""
    _run_evaluation(
        catalog_arg, catalog_opt, usage_path, as_of, profiles, k, decline_rate, utility_source, fmt
    )


@cli.command("report")
@catalog_options
@evaluation_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "markdown"]), default="markdown", show_default=True)
def report_cmd(
    catalog_arg, catalog_opt, usage_path, as_of, profiles, k, decline_rate, utility_source, fmt
) -> None:
    """Evaluate and render the Markdown report (evaluate with --format markdown)."""
    _run_evaluation(
        catalog_arg, catalog_opt, usage_path, as_of, profiles, k, decline_rate, utility_source, fmt
    )


@cli.command()
@catalog_options
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--ui-dir", metavar="PATH", help="Directory of built web UI assets to serve at /.")
def serve(catalog_arg, catalog_opt, usage_path, as_of, host, port, ui_dir) -> None:
    """Serve the HTTP API (and the web UI when built) for a catalog."""
    import uvicorn

    from valuerank.service import create_app, resolve_ui_dir

    catalog = _load(catalog_arg, catalog_opt, usage_path, as_of)
    app = create_app(catalog, ui_dir=resolve_ui_dir(ui_dir))
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except OSError as exc:
        _fail(f"cannot bind {host}:{port}: {exc}", EXIT_RUNTIME)


def main(argv: list[str] | None = None) -> int:
    return cli.main(args=argv)


if __name__ == "__main__":
    main()
