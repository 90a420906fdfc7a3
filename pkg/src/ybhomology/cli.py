"""Click CLI: ``ybh gen|verify|homology|split-check|tables|color|invariant|envgroup``.

Layer: CLI
May only import from: .runner, .tables, .knots, .families, .config, .algebra,
    .smith, .complex, .exceptions, metaflow._vendor.click

Exit codes are shared by every command: 0 success, 1 a mathematical check
failed (the report carries the witness), 2 bad input or resource guard.
Results go to stdout; progress and diagnostics go to stderr.
"""

from __future__ import annotations

import functools
import json
import sys
import traceback
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Sequence

from metaflow._vendor import click

from .algebra import dumps
from .algebra import verify_axioms
from .complex import verify_complex
from .config import DEFAULT_GUARD
from .config import DEFAULT_MAX_DEGREE
from .config import DEFAULT_WORKERS
from .config import RunConfig
from .config import debug_enabled
from .config import parse_coeff
from .config import parse_theories
from .exceptions import YBHException
from .families import resolve
from .knots import colorings
from .knots import envgroup_abelianization
from .knots import envgroup_presentation
from .knots import homological_invariant
from .knots import load_diagram
from .runner import HomologyRunner
from .tables import reproduce

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


def echo(msg: str, stream: str = "stderr", **kw: Any) -> None:
    click.echo(msg, err=(stream == "stderr"), **kw)


def _emit(payload: dict[str, Any]) -> None:
    echo(json.dumps(payload, indent=2), stream="stdout")


def _guarded(func: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (YBHException, ValueError, OSError) as e:
            if debug_enabled():
                traceback.print_exc()
            headline = getattr(e, "headline", "Invalid input")
            echo(f"[ybh] {headline}: {e}")
            sys.exit(EXIT_BAD_INPUT)

    return wrapper


def _render_rows(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = [
        "  ".join(str(x).ljust(w) for x, w in zip(line, widths)).rstrip()
        for line in (header, *rows)
    ]
    return "\n".join(lines)


_source = click.argument("source", nargs=-1, required=True)
_format = click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
    help="Output rendering.",
)
_max_degree = click.option(
    "--max-degree",
    type=int,
    default=DEFAULT_MAX_DEGREE,
    show_default=True,
    help="Highest degree computed (env YBH_MAX_DEGREE).",
)
_guard = click.option(
    "--guard",
    type=int,
    default=DEFAULT_GUARD,
    show_default=True,
    help="Largest chain rank assembled (env YBH_GUARD).",
)
_skip_verify = click.option(
    "--skip-verify", is_flag=True, default=False, help="Do not check the axioms first."
)


@click.group(help="Set-theoretic Yang-Baxter homology of finite biquandles.")
def cli() -> None:
    pass


@cli.command(help="Write a builtin biquandle (e.g. `cyclic 3`, `alexander 8 3 5`) as a file.")
@click.argument("spec", nargs=-1, required=True)
@click.option("-o", "--output", default=None, help="Write here instead of stdout.")
@_guarded
def gen(spec: tuple[str, ...], output: str | None = None) -> None:
    label, X = resolve(spec)
    if output:
        Path(output).write_text(dumps(X), encoding="utf-8")
        echo(f"[ybh] wrote {label} ({X.size} elements) to {output}")
    else:
        echo(dumps(X), stream="stdout", nl=False)


@cli.command(help="Check the Yang-Baxter, birack and biquandle axioms and the chain complexes.")
@_source
@_max_degree
@click.option("--theory", default="all", show_default=True, help="Comma-separated: yb,deg,nyb.")
@_format
@_guarded
def verify(
    source: tuple[str, ...],
    max_degree: int = DEFAULT_MAX_DEGREE,
    theory: str = "all",
    output_format: str = "text",
) -> None:
    config = RunConfig(
        command="verify",
        source=source,
        theories=parse_theories(theory),
        max_degree=max_degree,
        output_format=output_format,
    )
    label, X = resolve(config.source)
    report = verify_axioms(X)
    failures = report.failures()
    complexes = {}
    if report.ybe_holds:
        for name in config.theories:
            if name != "YB" and not X.has_bar:
                continue
            result = verify_complex(X, name, config.max_degree)
            complexes[name] = result
            failures += result.failures()
    ok = not failures

    if config.output_format == "json":
        _emit(
            {
                "biquandle": label,
                "ok": ok,
                "axioms": report.to_dict(),
                "complex": {k: v.to_dict() for k, v in complexes.items()},
                "failures": failures,
            }
        )
    else:
        flags = [
            ("Yang-Baxter equation", report.ybe_holds),
            ("R bijective", report.r_bijective),
            ("R1 left-invertible", report.left_invertible),
            ("R2 right-invertible", report.right_invertible),
            ("unique fixed-pair partners", report.biquandle),
        ]
        echo(f"biquandle: {label} ({X.size} elements)", stream="stdout")
        for name, flag in flags:
            echo(f"  {name:<28} {'ok' if flag else 'FAILED'}", stream="stdout")
        for name, result in complexes.items():
            status = "ok" if result.all_pass else "FAILED"
            echo(f"  {name} complex to degree {config.max_degree:<8} {status}", stream="stdout")
        for line in failures:
            echo(f"  - {line}", stream="stdout")
    sys.exit(EXIT_OK if ok else EXIT_CHECK_FAILED)


def _precheck(X: Any, config: RunConfig) -> list[str]:
    if config.skip_verify:
        return []
    report = verify_axioms(X)
    needed = report.ybe_holds and (report.biquandle or config.theories == ("YB",))
    return [] if needed else report.failures()


@cli.command(help="Compute H_n for n = 1..max-degree in each selected theory.")
@_source
@click.option("--theory", default="all", show_default=True, help="Comma-separated: yb,deg,nyb.")
@_max_degree
@click.option(
    "--coeff", default="Z", show_default=True, help="Z or pP for a prime field (e.g. p3)."
)
@_format
@click.option("--dump-matrices", "dump_dir", default=None, help="Directory for boundary matrices.")
@_guard
@_skip_verify
@click.option("--h0", "include_h0", is_flag=True, default=False, help="Also report degree 0.")
@_guarded
def homology(
    source: tuple[str, ...],
    theory: str = "all",
    max_degree: int = DEFAULT_MAX_DEGREE,
    coeff: str = "Z",
    output_format: str = "text",
    dump_dir: str | None = None,
    guard: int = DEFAULT_GUARD,
    skip_verify: bool = False,
    include_h0: bool = False,
) -> None:
    config = RunConfig(
        command="homology",
        source=source,
        theories=parse_theories(theory),
        max_degree=max_degree,
        coeff=parse_coeff(coeff),
        output_format=output_format,
        dump_dir=dump_dir,
        guard=guard,
        skip_verify=skip_verify,
        include_h0=include_h0,
    )
    label, X = resolve(config.source)
    failures = _precheck(X, config)
    if failures:
        for line in failures:
            echo(f"[ybh] {line}")
        echo("[ybh] axioms fail; run `ybh verify` for details or pass --skip-verify.")
        sys.exit(EXIT_CHECK_FAILED)

    runner = HomologyRunner(
        X,
        guard=config.guard,
        dump_dir=config.dump_dir,
        echo=echo,
        assume_verified=config.skip_verify,
    )
    low = 0 if config.include_h0 else 1
    results: dict[str, dict[int, Any]] = {}
    for name in config.theories:
        if config.coeff is None:
            results[name] = runner.homology(name, config.max_degree, min_degree=low)
        else:
            results[name] = runner.homology_mod_p(
                name, config.max_degree, config.coeff, min_degree=low
            )

    if config.output_format == "json":
        _emit(
            {
                "biquandle": label,
                "coefficients": config.coeff_label,
                "results": {
                    name: {
                        str(n): (g.to_dict() if config.coeff is None else g)
                        for n, g in groups.items()
                    }
                    for name, groups in results.items()
                },
            }
        )
    else:
        echo(f"biquandle: {label}   coefficients: {config.coeff_label}", stream="stdout")
        header = ["n", *config.theories]
        rows = [
            [str(n), *(str(results[name][n]) for name in config.theories)]
            for n in range(low, config.max_degree + 1)
        ]
        echo(_render_rows(header, rows), stream="stdout")


@cli.command("split-check", help="Test whether H^YB = H^DEG + H^NYB in every degree.")
@_source
@_max_degree
@_guard
@_skip_verify
@_format
@_guarded
def split_check(
    source: tuple[str, ...],
    max_degree: int = DEFAULT_MAX_DEGREE,
    guard: int = DEFAULT_GUARD,
    skip_verify: bool = False,
    output_format: str = "text",
) -> None:
    config = RunConfig(
        command="split-check",
        source=source,
        max_degree=max_degree,
        guard=guard,
        skip_verify=skip_verify,
        output_format=output_format,
    )
    label, X = resolve(config.source)
    failures = _precheck(X, config)
    if failures:
        for line in failures:
            echo(f"[ybh] {line}")
        sys.exit(EXIT_CHECK_FAILED)
    runner = HomologyRunner(X, guard=config.guard, echo=echo, assume_verified=config.skip_verify)
    report = runner.split_check(config.max_degree)

    if config.output_format == "json":
        _emit({"biquandle": label, **report.to_dict()})
    else:
        echo(f"biquandle: {label}", stream="stdout")
        rows = [
            [str(r.degree), str(r.yb), str(r.deg), str(r.nyb), "yes" if r.holds else "NO"]
            for r in report.rows
        ]
        echo(_render_rows(["n", "YB", "DEG", "NYB", "splits"], rows), stream="stdout")
    if not report.holds:
        echo("[ybh] COUNTEREXAMPLE: homology does not split in the degrees marked NO.")
        sys.exit(EXIT_CHECK_FAILED)


@cli.command(help="Recompute a published homology table (1: cyclic, 2: Alexander) and diff it.")
@click.argument("which", type=int)
@_guard
@click.option(
    "--workers",
    type=int,
    default=DEFAULT_WORKERS,
    show_default=True,
    help="Biquandles computed in parallel (env YBH_WORKERS).",
)
@_format
@_guarded
def tables(
    which: int,
    guard: int = DEFAULT_GUARD,
    workers: int = DEFAULT_WORKERS,
    output_format: str = "text",
) -> None:
    config = RunConfig(command="tables", guard=guard, workers=workers, output_format=output_format)
    report = reproduce(which, guard=config.guard, workers=config.workers, echo=echo)

    if config.output_format == "json":
        _emit(report.to_dict())
    else:
        rows = [
            [
                r.cell.block,
                str(r.cell.degree),
                r.cell.theory,
                str(r.cell.expected),
                str(r.actual),
                "ok" if r.matches else "MISMATCH",
                f"{r.seconds:.2f}s",
            ]
            for r in report.results
        ]
        header = ["biquandle", "n", "theory", "expected", "computed", "", "time"]
        echo(_render_rows(header, rows), stream="stdout")
        echo(
            f"{len(report.results) - len(report.mismatches)}/{len(report.results)} cells match; "
            f"split {'holds' if report.split_holds else 'FAILS'} in every block.",
            stream="stdout",
        )
    if not (report.all_match and report.split_holds):
        sys.exit(EXIT_CHECK_FAILED)


@cli.command(help="List every biquandle coloring of a diagram.")
@click.argument("diagram", type=click.Path())
@_source
@_format
@_guarded
def color(diagram: str, source: tuple[str, ...], output_format: str = "text") -> None:
    D = load_diagram(diagram)
    label, X = resolve(source)
    found = colorings(D, X)
    if output_format == "json":
        _emit(
            {
                "diagram": diagram,
                "biquandle": label,
                "count": len(found),
                "colorings": [list(c) for c in found],
            }
        )
        return
    echo(
        f"diagram: {diagram} ({D.semi_arcs} semi-arcs, {D.components} components)",
        stream="stdout",
    )
    echo(f"biquandle: {label}   colorings: {len(found)}", stream="stdout")
    for c in found:
        echo("  " + " ".join(str(x) for x in c), stream="stdout")


@cli.command(help="Coloring count and homological state sum of a diagram.")
@click.argument("diagram", type=click.Path())
@_source
@_format
@_guarded
def invariant(diagram: str, source: tuple[str, ...], output_format: str = "text") -> None:
    D = load_diagram(diagram)
    label, X = resolve(source)
    value = homological_invariant(D, X)
    if output_format == "json":
        _emit({"diagram": diagram, "biquandle": label, **value.to_dict()})
        return
    echo(f"diagram: {diagram}   biquandle: {label}", stream="stdout")
    echo(f"colorings: {value.count}", stream="stdout")
    echo(f"H_2 (normalized): {value.group}", stream="stdout")
    echo(f"invariant: {value.render()}", stream="stdout")


@cli.command(help="Presentation of the enveloping group and its abelianization.")
@_source
@click.option("--gap", is_flag=True, default=False, help="Render the presentation as GAP input.")
@_format
@_guarded
def envgroup(source: tuple[str, ...], gap: bool = False, output_format: str = "text") -> None:
    label, X = resolve(source)
    pres = envgroup_presentation(X)
    ab = envgroup_abelianization(X)
    if output_format == "json":
        _emit({"biquandle": label, **pres.to_dict(), "abelianization": ab.to_dict()})
        return
    echo(pres.render("gap" if gap else "text"), stream="stdout")
    echo(f"abelianization: {ab}", stream="stdout")


if __name__ == "__main__":
    cli()
