"""Two-coder agreement: confusion matrix, Cohen's kappa and Landis-Koch bands."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DegenerateAgreement, DuplicateId, IdSetMismatch, ParseError
from .ingest import _as_text, _csv_rows

CODER_HEADER = ["id", "category"]


class Band(str, enum.Enum):
    POOR = "poor"
    SLIGHT = "slight"
    FAIR = "fair"
    MODERATE = "moderate"
    SUBSTANTIAL = "substantial"
    ALMOST_PERFECT = "almost_perfect"

    @property
    def phrase(self) -> str:
        return self.value.replace("_", " ")


# upper edges, inclusive
_BAND_EDGES = (
    (Fraction(1, 5), Band.SLIGHT),
    (Fraction(2, 5), Band.FAIR),
    (Fraction(3, 5), Band.MODERATE),
    (Fraction(4, 5), Band.SUBSTANTIAL),
)


@dataclass(frozen=True)
class CodedSet:
    assignments: Mapping[str, str]
    coder_name: str = "coder"

    @property
    def ids(self) -> set[str]:
        return set(self.assignments)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are coder A's labels, columns coder B's."""

    labels: tuple[str, ...]
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "cells", tuple(tuple(row) for row in self.cells))
        k = len(self.labels)
        if k < 1 or len(set(self.labels)) != k:
            raise ValueError("labels must be non-empty and unique")
        if len(self.cells) != k or any(len(row) != k for row in self.cells):
            raise ValueError(f"cells must be a {k}x{k} matrix")
        for row in self.cells:
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                    raise ValueError(f"cells must be non-negative integers, got {x!r}")
        if self.total == 0:
            raise ValueError("confusion matrix is empty")

    @classmethod
    def from_rows(cls, rows, labels=None) -> "ConfusionMatrix":
        rows = [list(r) for r in rows]
        if labels is None:
            labels = [str(i) for i in range(len(rows))]
        return cls(tuple(labels), tuple(tuple(r) for r in rows))

    @property
    def total(self) -> int:
        return sum(map(sum, self.cells))

    @property
    def row_totals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.cells)

    @property
    def col_totals(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.cells))

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.cells[i][i] for i in range(len(self.labels)))

    def transpose(self) -> "ConfusionMatrix":
        return ConfusionMatrix(self.labels, tuple(zip(*self.cells)))


@dataclass(frozen=True)
class KappaReport:
    observed_agreement: float
    expected_agreement: float
    kappa: float
    band: Band
    n_items: int

    def to_dict(self) -> dict:
        return {
            "n_items": self.n_items,
            "observed_agreement": self.observed_agreement,
            "expected_agreement": self.expected_agreement,
            "kappa": self.kappa,
            "band": self.band.value,
        }


def parse_coder_csv(data, coder_name: str = "coder") -> CodedSet:
    assignments = {}
    for line, (rid, label) in _csv_rows(_as_text(data), [CODER_HEADER], "coder"):
        if not rid:
            raise ParseError("empty id", line=line, field="id")
        if not label:
            raise ParseError("empty category", line=line, field="category")
        if rid in assignments:
            raise DuplicateId(rid, line)
        assignments[rid] = label
    if not assignments:
        raise ParseError("no coded rows")
    return CodedSet(assignments, coder_name)


def build_confusion(a: CodedSet, b: CodedSet) -> ConfusionMatrix:
    """Cross-tabulate two coders over the same ids; labels are the sorted union."""
    if a.ids != b.ids:
        raise IdSetMismatch(a.ids - b.ids, b.ids - a.ids)
    if not a.assignments:
        raise ValueError("coded sets are empty")
    labels = tuple(sorted(set(a.assignments.values()) | set(b.assignments.values())))
    index = {label: i for i, label in enumerate(labels)}
    cells = [[0] * len(labels) for _ in labels]
    for rid, label_a in a.assignments.items():
        cells[index[label_a]][index[b.assignments[rid]]] += 1
    return ConfusionMatrix(labels, tuple(map(tuple, cells)))


def disagreements(a: CodedSet, b: CodedSet) -> list[tuple[str, str, str]]:
    """``(id, label_a, label_b)`` for every id the coders labelled differently, sorted by id."""
    if a.ids != b.ids:
        raise IdSetMismatch(a.ids - b.ids, b.ids - a.ids)
    return sorted(
        (rid, la, b.assignments[rid]) for rid, la in a.assignments.items() if la != b.assignments[rid]
    )


def agreement_terms(m: ConfusionMatrix) -> tuple[Fraction, Fraction]:
    """Exact observed and chance agreement ``(p_o, p_e)``."""
    total = m.total
    p_o = Fraction(sum(m.diagonal), total)
    p_e = Fraction(sum(r * c for r, c in zip(m.row_totals, m.col_totals)), total * total)
    return p_o, p_e


def cohen_kappa(m: ConfusionMatrix) -> KappaReport:
    p_o, p_e = agreement_terms(m)
    if p_e == 1:
        raise DegenerateAgreement(
            "chance agreement p_e = 1 (both coders used one identical label); kappa is undefined"
        )
    kappa = (p_o - p_e) / (1 - p_e)
    return KappaReport(
        observed_agreement=float(p_o),
        expected_agreement=float(p_e),
        kappa=float(kappa),
        band=landis_koch_band(kappa),
        n_items=m.total,
    )


def landis_koch_band(kappa) -> Band:
    """Landis & Koch (1977) label; each cut point belongs to the band below it (0.20 is slight)."""
    if kappa > 1:
        raise ValueError(f"kappa cannot exceed 1, got {kappa}")
    if kappa < 0:
        return Band.POOR
    # compare exactly so 0.2 (float) lands on the 1/5 edge
    k = Fraction(kappa) if not isinstance(kappa, float) else Fraction(repr(kappa))
    for edge, band in _BAND_EDGES:
        if k <= edge:
            return band
    return Band.ALMOST_PERFECT
