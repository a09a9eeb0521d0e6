"""Command-line surface: indices, genera, ranks, finiteness verdicts and
the reference tables, from bundled fixtures by default.

Exit codes: 0 success, 2 data/parse error, 3 certificate failure,
4 network error.  All numeric output is exact (integers and rationals);
decimal renderings are labelled approximations.
"""

from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import click

from . import curves
from .decomposition import decompose
from .errors import CertificateError, DataError, NetworkError
from .gonality import (
    KIM_SARNAK,
    LUO_RUDNICK_SARNAK,
    NAMED_BOUNDS,
    SELBERG,
    decimal_str,
    gonality_lower_bound,
    integer_gonality_bound,
)
from .jacobians import chen_ns7_decomposition, mordell_weil_rank, total_dimension
from .levels import psl2_index
from .newforms import (
    BUNDLED_AMBIENTS,
    NewformSet,
    bundled_newforms,
    load_fixtures,
    validate_family_counts,
)
from .verdicts import run_pipeline, verify_report

_FORMATS = ("md", "tsv", "json")


def _mapped_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DataError as exc:
            click.echo(f"data error: {exc}", err=True)
            raise SystemExit(2)
        except CertificateError as exc:
            click.echo(f"certificate failure: {exc}", err=True)
            raise SystemExit(3)
        except NetworkError as exc:
            click.echo(f"network error: {exc}", err=True)
            raise SystemExit(4)

    return wrapper


def _load_forms(fixtures: Optional[str]) -> NewformSet:
    if fixtures is None:
        return bundled_newforms()
    # Replacement fixtures take over the bundled completeness contract and
    # must at least have the right family shape.
    ns = load_fixtures(Path(fixtures), complete_for=BUNDLED_AMBIENTS)
    validate_family_counts(ns)
    return ns


def _render_table(headers: Sequence[str], rows: Sequence[Sequence[str]], fmt: str) -> str:
    if fmt == "tsv":
        lines = ["\t".join(headers)]
        lines += ["\t".join(row) for row in rows]
        return "\n".join(lines) + "\n"
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    def line(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    out = [line(headers), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return "\n".join(out) + "\n"


def _emit(doc: dict, headers, rows, fmt: str, notes: Sequence[str] = ()) -> None:
    if fmt == "json":
        click.echo(json.dumps(doc, indent=2))
        return
    click.echo(_render_table(headers, rows, fmt), nl=False)
    for note in notes:
        click.echo(note)


@click.group()
@click.option(
    "--fixtures",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Replacement newform fixture file (bundled data by default).",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(_FORMATS),
    default="md",
    show_default=True,
    help="Output format.",
)
@click.pass_context
def main(ctx: click.Context, fixtures: Optional[str], fmt: str) -> None:
    """Genus, gonality, rank and finiteness bookkeeping for modular curves
    with Borel / Cartan-normalizer / e7 level structures at 3, 5, 7."""
    ctx.ensure_object(dict)
    ctx.obj["fixtures"] = fixtures
    ctx.obj["fmt"] = fmt


def _bound_info(index: int, bound) -> dict:
    exact = gonality_lower_bound(index, bound)
    return {
        "exact": str(exact),
        "decimal": decimal_str(exact),
        "integer_bound": integer_gonality_bound(index, bound),
    }


@main.command()
@click.argument("spec")
@click.pass_context
@_mapped_errors
def index(ctx: click.Context, spec: str) -> None:
    """PSL2(Z) index of a level structure, with gonality lower bounds.

    SPEC examples: "b3,b5,b7", "s3,b5,e7", "b3", "X0(105)".
    """
    parsed = curves.parse_curve_spec(spec)
    if parsed.quotient:
        raise DataError("the index command takes a level structure, not a quotient")
    if parsed.structure is None:
        raise DataError(
            f"X0({parsed.x0_level}) is not a product of the supported local "
            "structures; give the index command per-prime tags"
        )
    n = psl2_index(parsed.structure)
    doc = {
        "spec": parsed.text,
        "index": n,
        "gonality_bounds": {
            b.name: _bound_info(n, b)
            for b in (LUO_RUDNICK_SARNAK, KIM_SARNAK, SELBERG)
        },
    }
    headers = ["spec", "index", "proved (kim-sarnak)", "expected (selberg)"]
    ks = doc["gonality_bounds"]["kim-sarnak"]
    sb = doc["gonality_bounds"]["selberg"]
    rows = [[
        parsed.text,
        str(n),
        f">= {ks['exact']} (~{ks['decimal']})",
        f">= {sb['exact']} (~{sb['decimal']})",
    ]]
    _emit(doc, headers, rows, ctx.obj["fmt"],
          notes=["decimals are approximations of the exact rationals"])


@main.command()
@click.argument("spec")
@click.pass_context
@_mapped_errors
def genus(ctx: click.Context, spec: str) -> None:
    """Genus of a curve spec, e.g. "X0(105)", "X0(105)/w35", "ns7/w3"."""
    model = curves.resolve(curves.parse_curve_spec(spec))
    if model.kind == "e7":
        value, provenance = model.curated_genus, "curated"
    else:
        forms = _load_forms(ctx.obj["fixtures"])
        value, provenance = model.genus(forms), "computed"
    doc = {"curve": model.tag, "genus": value, "provenance": provenance}
    if ctx.obj["fmt"] == "json":
        click.echo(json.dumps(doc, indent=2))
    else:
        mark = " (curated literature value)" if provenance == "curated" else ""
        click.echo(f"genus({model.tag}) = {value}{mark}")


@main.command()
@click.argument("spec")
@click.pass_context
@_mapped_errors
def rank(ctx: click.Context, spec: str) -> None:
    """Mordell-Weil rank of the Jacobian of a curve spec, with the
    per-factor breakdown."""
    model = curves.resolve(curves.parse_curve_spec(spec))
    forms = _load_forms(ctx.obj["fixtures"])
    dec = model.jacobian(forms)
    total = mordell_weil_rank(dec)
    factors = [
        {
            "label": f.form.label,
            "hecke_degree": f.form.hecke_degree,
            "analytic_rank": f.form.analytic_rank,
            "multiplicity": f.multiplicity,
            "rank_contribution": f.form.analytic_rank
            * f.form.hecke_degree
            * f.multiplicity,
        }
        for f in dec.factors
    ]
    doc = {
        "curve": model.tag,
        "mordell_weil_rank": total,
        "dimension": total_dimension(dec),
        "factors": factors,
    }
    headers = ["factor", "dim A_f", "analytic rank", "mult", "rank contribution"]
    rows = [
        [
            f["label"],
            str(f["hecke_degree"]),
            str(f["analytic_rank"]),
            str(f["multiplicity"]),
            str(f["rank_contribution"]),
        ]
        for f in factors
    ]
    _emit(doc, headers, rows, ctx.obj["fmt"],
          notes=[f"Mordell-Weil rank of Jac({model.tag}) = {total}"])


@main.command()
@click.option("--degree", type=int, default=5, show_default=True)
@click.option(
    "--lambda",
    "spectral",
    type=click.Choice(sorted(NAMED_BOUNDS)),
    default="kim-sarnak",
    show_default=True,
    help="Spectral lower bound used for the gonality rule.",
)
@click.pass_context
@_mapped_errors
def verdict(ctx: click.Context, degree: int, spectral: str) -> None:
    """Run the finiteness pipeline over the bundled curve list."""
    forms = _load_forms(ctx.obj["fixtures"])
    report = run_pipeline(forms, spectral=NAMED_BOUNDS[spectral], degree=degree)
    doc = report.to_dict()
    headers = ["curve", "rule", "result"]
    rows = [
        [v.tag, v.rule.value, v.result.value] for v in report.verdicts
    ]
    summary = report.summary
    _emit(
        doc, headers, rows, ctx.obj["fmt"],
        notes=[
            f"{summary['finite']}/{summary['curves']} finite "
            f"({summary['primary']} primary, {summary['propagated']} propagated)"
        ],
    )


@main.command()
@click.argument("report", type=click.Path(exists=True, dir_okay=False))
@_mapped_errors
def verify(report: str) -> None:
    """Re-check every certificate in a JSON verdict report."""
    try:
        doc = json.loads(Path(report).read_text())
    except json.JSONDecodeError as exc:
        raise DataError(f"report is not valid JSON: {exc}") from exc
    verify_report(doc)
    click.echo(f"report verified: {len(doc.get('verdicts', []))} certificates OK")


@main.command()
@click.option("--level-divides", "level", type=int, required=True)
@click.pass_context
@_mapped_errors
def fetch(ctx: click.Context, level: int) -> None:
    """Fetch newform metadata for levels dividing N (cache-backed)."""
    from .lmfdb import fetch_remote

    ns = fetch_remote(level)
    doc = {
        "level_divides": level,
        "count": len(ns),
        "labels": [f.label for f in ns],
    }
    if ctx.obj["fmt"] == "json":
        click.echo(json.dumps(doc, indent=2))
    else:
        click.echo(f"{len(ns)} forms of level dividing {level}")
        for f in ns:
            click.echo(f"  {f.label}")


_SIGNED = {1: "+1", -1: "-1", None: ""}


def _fixture_table(ambient: int, forms: NewformSet):
    headers = ["form", "dim A_f", "analytic rank", "mult", "w3", "w5", "w7"]
    rows, data = [], []
    for comp in decompose(ambient, forms):
        f = comp.form
        signs = {p: f.fricke_sign(p) for p in (3, 5, 7)}
        rows.append(
            [
                f.label,
                str(f.hecke_degree),
                str(f.analytic_rank),
                str(comp.old_multiplicity),
                _SIGNED[signs[3]],
                _SIGNED[signs[5]],
                _SIGNED[signs[7]],
            ]
        )
        data.append(
            {
                "label": f.label,
                "dim": f.hecke_degree,
                "analytic_rank": f.analytic_rank,
                "multiplicity": comp.old_multiplicity,
                "atkin_lehner": f.fricke_signs,
            }
        )
    doc = {
        "table": f"newforms of level dividing {ambient}",
        "computed_columns": ["multiplicity"],
        "curated_columns": ["dim", "analytic_rank", "atkin_lehner"],
        "rows": data,
    }
    notes = [
        f"genus of X0({ambient}) = "
        f"{sum(c.dim_v for c in decompose(ambient, forms))}",
        "dim, rank and signs are fixture inputs; mult is computed",
    ]
    return doc, headers, rows, notes


def _a5_table(forms: NewformSet):
    plain = chen_ns7_decomposition(forms)
    from .jacobians import jacobian_x0

    j15 = jacobian_x0(15, forms)
    j105 = jacobian_x0(105, forms)
    comps735 = {c.form.label: c for c in decompose(735, forms)}
    from .decomposition import eigenspace_dim

    headers = ["form", "dim A_f", "analytic rank", "mult s7", "mult X0(15)",
               "mult X0(105)", "mult ns7"]
    rows, data = [], []
    for label, comp in comps735.items():
        f = comp.form
        if eigenspace_dim(comp, [frozenset({7})]) == 0:
            s7 = 0
        else:
            s7 = eigenspace_dim(comp, [frozenset({7})]) // f.hecke_degree
        m15 = j15.multiplicity(label)
        m105 = j105.multiplicity(label)
        ns7 = plain.multiplicity(label)
        if not any((s7, m15, m105, ns7)):
            continue
        rows.append(
            [
                label,
                str(f.hecke_degree),
                str(f.analytic_rank),
                str(s7),
                str(m15) if 15 % f.level == 0 else "",
                str(m105) if 105 % f.level == 0 else "",
                str(ns7),
            ]
        )
        data.append(
            {
                "label": label,
                "dim": f.hecke_degree,
                "analytic_rank": f.analytic_rank,
                "mult_s7": s7,
                "mult_x0_15": m15,
                "mult_x0_105": m105,
                "mult_ns7": ns7,
            }
        )
    doc = {
        "table": "isogeny factors of the level-735 family",
        "computed_columns": ["mult_s7", "mult_x0_15", "mult_x0_105", "mult_ns7"],
        "curated_columns": ["dim", "analytic_rank"],
        "rows": data,
    }
    notes = [
        f"genus of X(b3,b5,ns7) = {total_dimension(plain)}",
        "multiplicities computed; the ns7 column uses the isogeny relation "
        "mult_ns7 = mult_s7 + mult_X0(15) - mult_X0(105)",
    ]
    return doc, headers, rows, notes


_S51_CURVES = (
    ("X0(105)", "b3,b5,b7"),
    ("X(s3,b5,b7)", "s3,b5,b7"),
    ("X(b3,b5,ns7)", "ns7"),
    ("X(b3,b5,e7)", "b3,b5,e7"),
    ("X(s3,b5,e7)", "s3,b5,e7"),
)


def _s51_table(forms: NewformSet):
    headers = ["curve", "index", "genus", "gonality (proved)", "gonality (expected)"]
    rows, data = [], []
    for tag, spec in _S51_CURVES:
        parsed = curves.parse_curve_spec(spec)
        n = psl2_index(parsed.structure)
        model = curves.resolve(parsed)
        if model.kind == "e7":
            g, curated = model.curated_genus, True
        else:
            g, curated = model.genus(forms), False
        ks = gonality_lower_bound(n, KIM_SARNAK)
        sb = gonality_lower_bound(n, SELBERG)
        rows.append(
            [
                tag,
                str(n),
                f"{g}*" if curated else str(g),
                f">= {ks} (~{decimal_str(ks)})",
                f">= {sb} (~{decimal_str(sb)})",
            ]
        )
        data.append(
            {
                "curve": tag,
                "index": n,
                "genus": g,
                "genus_provenance": "curated" if curated else "computed",
                "gonality_proved": {"exact": str(ks), "decimal": decimal_str(ks)},
                "gonality_expected": {"exact": str(sb), "decimal": decimal_str(sb)},
            }
        )
    doc = {
        "table": "index / genus / gonality bounds",
        "rows": data,
    }
    notes = [
        "* curated literature genus (not recomputable from fixtures); "
        "proved bounds use Kim-Sarnak, expected bounds Selberg",
    ]
    return doc, headers, rows, notes


@main.command()
@click.argument("which", type=click.Choice(["a3", "a4", "a5", "s51"]))
@click.pass_context
@_mapped_errors
def tables(ctx: click.Context, which: str) -> None:
    """Render the reference tables (a3: level 105 family, a4: level 315
    family, a5: level 735 family with the ns7 column, s51: index/gonality)."""
    forms = _load_forms(ctx.obj["fixtures"])
    if which == "a3":
        doc, headers, rows, notes = _fixture_table(105, forms)
    elif which == "a4":
        doc, headers, rows, notes = _fixture_table(315, forms)
    elif which == "a5":
        doc, headers, rows, notes = _a5_table(forms)
    else:
        doc, headers, rows, notes = _s51_table(forms)
    _emit(doc, headers, rows, ctx.obj["fmt"], notes=notes)


if __name__ == "__main__":
    main()
