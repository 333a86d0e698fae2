"""Markdown, JSON and CSV renderings of dispersion, rank-table, timeline and kappa results.

Numbers are rounded half-up from their exact values for display only. Markdown
uses thousands separators; JSON and CSV never do. JSON carries unrounded
floats so a report can be read back without loss.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .ingest import Skipped
from .measures import Distribution, DispersionReport, RankedDistribution
from .reliability import CodedSet, ConfusionMatrix, KappaReport

DEFAULT_PRECISION = 4

DISPERSION_CAVEAT = (
    "Caveat: with the most frequent category ranked 1, M never exceeds (N+1)/2, so delta "
    "stays within [0, 0.5]. A perfectly even distribution gives exactly 0.5 and a single "
    "dominant category drives delta towards 0. Low values therefore do not by themselves "
    "separate an even spread from a dominated one; read delta together with the frequency "
    "table (and --all-measures)."
)


class Format(str, enum.Enum):
    MARKDOWN = "markdown"
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class RenderedReport:
    format: Format
    body: str

    def __str__(self):
        return self.body


def _decimal(x) -> Decimal:
    if isinstance(x, Decimal):
        return x
    f = Fraction(x)
    return Decimal(f.numerator) / Decimal(f.denominator) if f.denominator != 1 else Decimal(f.numerator)


def fmt_fixed(x, places: int, thousands: bool = False) -> str:
    """Round half-up to ``places`` decimals. Floats are rounded from their exact binary value."""
    if isinstance(x, float):
        x = Fraction(x)
    f = Fraction(x)
    # exact decimal quantization of a rational: scale, round half away from zero, unscale
    scaled = f * 10**places
    q = (abs(scaled.numerator) * 2 + scaled.denominator) // (2 * scaled.denominator)
    d = Decimal(q if scaled >= 0 else -q).scaleb(-places)
    if d == 0:
        d = abs(d)
    return f"{d:,.{places}f}" if thousands else f"{d:.{places}f}"


def fmt_exact(x, precision: int = DEFAULT_PRECISION, thousands: bool = False) -> str:
    """Integers and terminating decimals verbatim (2.5, 17.5); anything else rounded."""
    f = Fraction(x)
    den = f.denominator
    while den % 2 == 0:
        den //= 2
    while den % 5 == 0:
        den //= 5
    if den != 1:
        return fmt_fixed(f, precision, thousands)
    d = _decimal(f).normalize()
    if d == d.to_integral_value():
        d = d.quantize(Decimal(1))
    return f"{d:,f}" if thousands else f"{d:f}"


def _md_table(header, rows) -> str:
    def esc(cell):
        return str(cell).replace("|", "\\|")

    lines = ["| " + " | ".join(map(esc, header)) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines.extend("| " + " | ".join(map(esc, row)) + " |" for row in rows)
    return "\n".join(lines)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\r\n").writerows(rows)
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def interpretation_text(report: DispersionReport, caveat_below: float = 0.45) -> str:
    scale = "scale: delta > 0.5 concentration tendency, delta < 0.5 dispersion tendency, delta ~ 0.5 balanced"
    text = f"{report.interpretation.phrase} ({scale})"
    if report.delta < caveat_below:
        text += "\n\n" + DISPERSION_CAVEAT
    return text


def _proportions(d: Distribution):
    return [Fraction(100 * c.count, d.total) for c in d]


def render_dispersion(
    report: DispersionReport,
    distribution: Distribution,
    fmt: Format | str = Format.MARKDOWN,
    precision: int = DEFAULT_PRECISION,
) -> RenderedReport:
    """Summary statistics for one distribution plus its frequency table (category, count, share)."""
    fmt = Format(fmt)
    p = precision
    comps = report.comparatives
    if fmt is Format.JSON:
        doc = {
            "report": report.to_dict(),
            "weighted_mean_rank_exact": str(report.exact_weighted_mean_rank),
            "delta_exact": str(report.exact_delta),
            "categories": [
                {"label": c.label, "count": c.count, "proportion": float(Fraction(c.count, distribution.total))}
                for c in distribution
            ],
        }
        return RenderedReport(fmt, _json(doc))
    if fmt is Format.CSV:
        header = ["n_categories", "total_count", "weighted_component_sum", "weighted_mean_rank", "delta", "interpretation"]
        row = [
            report.n_categories,
            report.total_count,
            fmt_exact(report.weighted_component_sum, p),
            fmt_fixed(report.weighted_mean_rank, p),
            fmt_fixed(report.delta, p),
            report.interpretation.value,
        ]
        if comps:
            header += ["hhi", "gini", "shannon_evenness"]
            row += [fmt_fixed(comps.hhi, p), fmt_fixed(comps.gini, p), fmt_fixed(comps.shannon_evenness, p)]
        return RenderedReport(fmt, _csv([header, row]))

    stats = [
        ("N (categories)", f"{report.n_categories:,}"),
        ("Σf (total count)", f"{report.total_count:,}"),
        ("Σ(f×r)", fmt_exact(report.weighted_component_sum, p, thousands=True)),
        ("M (weighted mean rank)", fmt_fixed(report.weighted_mean_rank, p)),
        ("Δ (Brookes' measure)", fmt_fixed(report.delta, p)),
        ("Interpretation", report.interpretation.phrase),
    ]
    if comps:
        stats += [
            ("HHI", fmt_fixed(comps.hhi, p)),
            ("Gini", fmt_fixed(comps.gini, p)),
            ("Shannon evenness (J)", fmt_fixed(comps.shannon_evenness, p)),
        ]
    shares = _proportions(distribution)
    freq_rows = [(c.label, f"{c.count:,}", fmt_fixed(s, 1)) for c, s in zip(distribution, shares)]
    freq_rows.append(("TOTAL", f"Σf = {distribution.total:,}", fmt_fixed(sum(shares), 1)))
    body = "\n\n".join(
        [
            "# Brookes' dispersion report",
            _md_table(["Statistic", "Value"], stats),
            "## Frequency distribution",
            _md_table(["Category", "Frequency (f)", "Proportion of total (%)"], freq_rows),
            "## Interpretation",
            interpretation_text(report),
        ]
    )
    return RenderedReport(fmt, body + "\n")


def render_rank_table(
    rd: RankedDistribution, fmt: Format | str = Format.MARKDOWN, precision: int = DEFAULT_PRECISION
) -> RenderedReport:
    """Ranked categories with their f×r components and a SUMS row."""
    fmt = Format(fmt)
    p = precision
    if fmt is Format.JSON:
        doc = {
            "entries": [
                {
                    "rank": float(e.rank),
                    "category": e.label,
                    "frequency": e.count,
                    "component": float(e.component),
                }
                for e in rd.entries
            ],
            "sums": {
                "n_categories": rd.n_categories,
                "total_count": rd.total_count,
                "weighted_component_sum": float(rd.weighted_component_sum),
            },
        }
        return RenderedReport(fmt, _json(doc))
    if fmt is Format.CSV:
        rows = [["rank", "category", "frequency", "component"]]
        rows += [[fmt_exact(e.rank, p), e.label, e.count, fmt_exact(e.component, p)] for e in rd.entries]
        rows.append(["SUMS", f"N={rd.n_categories}", rd.total_count, fmt_exact(rd.weighted_component_sum, p)])
        return RenderedReport(fmt, _csv(rows))
    rows = [
        (fmt_exact(e.rank, p), e.label, f"{e.count:,}", fmt_exact(e.component, p, thousands=True))
        for e in rd.entries
    ]
    rows.append(
        (
            "SUMS",
            f"N = {rd.n_categories}",
            f"Σf = {rd.total_count:,}",
            f"Σ(f×r) = {fmt_exact(rd.weighted_component_sum, p, thousands=True)}",
        )
    )
    body = "# Ranked data\n\n" + _md_table(["Rank (r)", "Category", "Frequency (f)", "Component (f×r)"], rows)
    return RenderedReport(fmt, body + "\n")


def render_timeline(rows, fmt: Format | str = Format.MARKDOWN, precision: int = DEFAULT_PRECISION) -> RenderedReport:
    """One line per window; skipped windows keep their N and Σf and leave M and Δ blank."""
    fmt = Format(fmt)
    p = precision
    if fmt is Format.JSON:
        doc = []
        for label, item in rows:
            if isinstance(item, Skipped):
                doc.append(
                    {
                        "window": label,
                        "skipped": True,
                        "n_categories": item.n_categories,
                        "total_count": item.total_count,
                        "reason": item.reason,
                    }
                )
            else:
                doc.append({"window": label, "skipped": False, **item.to_dict()})
        return RenderedReport(fmt, _json({"windows": doc}))

    table = []
    for label, item in rows:
        if isinstance(item, Skipped):
            n = item.n_categories
            total = item.total_count
            table.append([label, n, total, "", "", "skipped"])
        else:
            table.append(
                [
                    label,
                    item.n_categories,
                    item.total_count,
                    fmt_fixed(item.weighted_mean_rank, p),
                    fmt_fixed(item.delta, p),
                    item.interpretation.value if fmt is Format.CSV else item.interpretation.phrase,
                ]
            )
    if fmt is Format.CSV:
        return RenderedReport(fmt, _csv([["window", "n_categories", "total_count", "weighted_mean_rank", "delta", "interpretation"]] + table))
    md_rows = [
        [r[0], f"{r[1]:,}", f"{r[2]:,}", r[3] or "-", r[4] or "-", r[5]]
        for r in table
    ]
    body = "# Dispersion timeline\n\n" + _md_table(["Window", "N", "Σf", "M", "Δ", "Interpretation"], md_rows)
    return RenderedReport(fmt, body + "\n")


def render_kappa(
    report: KappaReport,
    matrix: ConfusionMatrix,
    disagreeing: list[tuple[str, str, str]],
    coder_a: CodedSet,
    coder_b: CodedSet,
    fmt: Format | str = Format.MARKDOWN,
    precision: int = DEFAULT_PRECISION,
) -> RenderedReport:
    fmt = Format(fmt)
    p = precision
    a_name, b_name = coder_a.coder_name, coder_b.coder_name
    if fmt is Format.JSON:
        doc = {
            "coders": [a_name, b_name],
            **report.to_dict(),
            "confusion": {"labels": list(matrix.labels), "cells": [list(r) for r in matrix.cells]},
            "disagreements": [{"id": i, "a": la, "b": lb} for i, la, lb in disagreeing],
        }
        return RenderedReport(fmt, _json(doc))
    if fmt is Format.CSV:
        rows = [
            ["n_items", "observed_agreement", "expected_agreement", "kappa", "band", "disagreements"],
            [
                report.n_items,
                fmt_fixed(report.observed_agreement, p),
                fmt_fixed(report.expected_agreement, p),
                fmt_fixed(report.kappa, p),
                report.band.value,
                len(disagreeing),
            ],
        ]
        return RenderedReport(fmt, _csv(rows))
    stats = [
        ("Items", f"{report.n_items:,}"),
        ("Observed agreement (p_o)", fmt_fixed(report.observed_agreement, p)),
        ("Chance agreement (p_e)", fmt_fixed(report.expected_agreement, p)),
        ("Cohen's κ", fmt_fixed(report.kappa, p)),
        ("Landis-Koch band", report.band.phrase),
    ]
    confusion = _md_table(
        [f"{a_name} \\ {b_name}", *matrix.labels],
        [[label, *row] for label, row in zip(matrix.labels, matrix.cells)],
    )
    parts = [
        f"# Intercoder agreement: {a_name} vs {b_name}",
        _md_table(["Statistic", "Value"], stats),
        "## Confusion matrix",
        confusion,
        f"## Disagreements ({len(disagreeing)})",
    ]
    if disagreeing:
        parts.append(_md_table(["id", a_name, b_name], disagreeing))
    else:
        parts.append("None.")
    return RenderedReport(fmt, "\n\n".join(parts) + "\n")
