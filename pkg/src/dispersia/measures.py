"""Brookes' measure of categorical dispersion and comparative concentration indices.

Ranks, rank components and the weighted mean rank are kept as exact
:class:`fractions.Fraction` values; conversion to ``float`` happens only when a
:class:`DispersionReport` is assembled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DuplicateLabel,
    EmptyDistribution,
    InsufficientCategories,
    NegativeCount,
)

DEFAULT_BALANCED_HALF_WIDTH = 0.05


class Interpretation(str, enum.Enum):
    CONCENTRATION = "concentration_tendency"
    DISPERSION = "dispersion_tendency"
    BALANCED = "balanced"

    @property
    def phrase(self) -> str:
        return self.value.replace("_", " ")


@dataclass(frozen=True)
class CategoryCount:
    label: str
    count: int

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("category label must be a non-empty string")
        if isinstance(self.count, bool) or not isinstance(self.count, int):
            raise TypeError(f"count for {self.label!r} must be an int, got {type(self.count).__name__}")
        if self.count < 0:
            raise NegativeCount(self.label, self.count)


@dataclass(frozen=True)
class Distribution:
    """Labelled category frequencies in a fixed order."""

    categories: tuple[CategoryCount, ...]

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))
        seen = set()
        for c in self.categories:
            if c.label in seen:
                raise DuplicateLabel(c.label)
            seen.add(c.label)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]] | Mapping[str, int]) -> "Distribution":
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        return cls(tuple(CategoryCount(label, count) for label, count in pairs))

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> "Distribution":
        """Unlabelled counts, labelled ``c1``, ``c2``, ..."""
        return cls(tuple(CategoryCount(f"c{i}", n) for i, n in enumerate(counts, start=1)))

    def __len__(self):
        return len(self.categories)

    def __iter__(self):
        return iter(self.categories)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.categories)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(c.count for c in self.categories)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def proportions(self) -> tuple[Fraction, ...]:
        total = self.total
        if total == 0:
            raise EmptyDistribution()
        return tuple(Fraction(n, total) for n in self.counts)


@dataclass(frozen=True)
class RankedCategory:
    label: str
    count: int
    rank: Fraction

    @property
    def component(self) -> Fraction:
        return self.count * self.rank


@dataclass(frozen=True)
class RankedDistribution:
    entries: tuple[RankedCategory, ...]

    @property
    def n_categories(self) -> int:
        return len(self.entries)

    @property
    def total_count(self) -> int:
        return sum(e.count for e in self.entries)

    @property
    def weighted_component_sum(self) -> Fraction:
        return sum((e.component for e in self.entries), Fraction(0))

    @property
    def ranks(self) -> tuple[Fraction, ...]:
        return tuple(e.rank for e in self.entries)

    @property
    def components(self) -> tuple[Fraction, ...]:
        return tuple(e.component for e in self.entries)


@dataclass(frozen=True)
class Comparatives:
    hhi: float
    gini: float
    shannon_evenness: float

    def to_dict(self) -> dict:
        return {"hhi": self.hhi, "gini": self.gini, "shannon_evenness": self.shannon_evenness}


@dataclass(frozen=True)
class DispersionReport:
    n_categories: int
    total_count: int
    weighted_component_sum: Fraction
    weighted_mean_rank: float
    delta: float
    interpretation: Interpretation
    comparatives: Comparatives | None = None
    exact_weighted_mean_rank: Fraction = field(default=None, compare=False, repr=False)
    exact_delta: Fraction = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "n_categories": self.n_categories,
            "total_count": self.total_count,
            "weighted_component_sum": str(self.weighted_component_sum),
            "weighted_mean_rank": self.weighted_mean_rank,
            "delta": self.delta,
            "interpretation": self.interpretation.value,
            "comparatives": self.comparatives.to_dict() if self.comparatives else None,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "DispersionReport":
        comps = data.get("comparatives")
        component_sum = Fraction(data["weighted_component_sum"])
        total = int(data["total_count"])
        n = int(data["n_categories"])
        m = component_sum / total
        return cls(
            n_categories=n,
            total_count=total,
            weighted_component_sum=component_sum,
            weighted_mean_rank=float(data["weighted_mean_rank"]),
            delta=float(data["delta"]),
            interpretation=Interpretation(data["interpretation"]),
            comparatives=Comparatives(**comps) if comps else None,
            exact_weighted_mean_rank=m,
            exact_delta=(m - 1) / (n - 1),
        )


def prune_and_validate(raw, *, prune: bool = True) -> Distribution:
    """Drop zero-count categories and check that Brookes' measure is defined.

    ``raw`` may be a :class:`Distribution`, a mapping or an iterable of
    ``(label, count)`` pairs. With ``prune=False`` zero-count categories stay
    in and count towards N.
    """
    d = raw if isinstance(raw, Distribution) else Distribution.from_pairs(raw)
    if d.total == 0:
        raise EmptyDistribution()
    if prune:
        d = Distribution(tuple(c for c in d.categories if c.count > 0))
    if len(d) < 2:
        raise InsufficientCategories(len(d))
    return d


def rank_by_frequency(d: Distribution) -> RankedDistribution:
    """Rank categories so that the most frequent one gets rank 1.

    Tied counts share the mean of the positions they occupy. Entries come back
    by ascending rank, ties ordered by label.
    """
    if len(d) < 2:
        raise InsufficientCategories(len(d))
    ordered = sorted(d.categories, key=lambda c: (-c.count, c.label))
    entries = []
    i = 0
    while i < len(ordered):
        j = i
        while j + 1 < len(ordered) and ordered[j + 1].count == ordered[i].count:
            j += 1
        # positions i+1 .. j+1 (1-based); their mean
        rank = Fraction(i + j + 2, 2)
        entries.extend(RankedCategory(c.label, c.count, rank) for c in ordered[i : j + 1])
        i = j + 1
    return RankedDistribution(tuple(entries))


def weighted_mean_rank(rd: RankedDistribution) -> Fraction:
    """Frequency-weighted mean rank, sum(f * r) / sum(f), as an exact fraction."""
    total = rd.total_count
    if total == 0:
        raise EmptyDistribution()
    return rd.weighted_component_sum / total


def interpret_delta(delta: float, half_width: float = DEFAULT_BALANCED_HALF_WIDTH) -> Interpretation:
    if not 0 <= delta <= 1:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if not 0 <= half_width < 0.5:
        raise ValueError(f"half_width must lie in [0, 0.5), got {half_width}")
    if delta > 0.5 + half_width:
        return Interpretation.CONCENTRATION
    if delta < 0.5 - half_width:
        return Interpretation.DISPERSION
    return Interpretation.BALANCED


def _positive_counts(d: Distribution) -> list[int]:
    counts = [n for n in d.counts if n > 0]
    if not counts:
        raise EmptyDistribution()
    return counts


def hhi(d: Distribution) -> float:
    """Herfindahl-Hirschman index on the unit scale: sum of squared shares."""
    counts = _positive_counts(d)
    total = sum(counts)
    return float(Fraction(sum(n * n for n in counts), total * total))


def gini(d: Distribution) -> float:
    """Gini coefficient of category shares (mean absolute difference over twice the mean).

    Uses the sorted closed form sum((2i - n - 1) * x_i) / (n * sum(x)), which
    equals the pairwise definition. Zero-count categories are ignored.
    """
    counts = sorted(_positive_counts(d))
    n = len(counts)
    weighted = sum((2 * i - n - 1) * x for i, x in enumerate(counts, start=1))
    return float(Fraction(weighted, n * sum(counts)))


def shannon_evenness(d: Distribution) -> float:
    """Pielou's evenness J = H / ln N over the non-empty categories."""
    counts = _positive_counts(d)
    n = len(counts)
    if n < 2:
        raise InsufficientCategories(n, f"evenness needs N >= 2 (ln N = 0 for N={n})")
    total = sum(counts)
    # H = ln S - sum(f ln f) / S avoids forming the shares
    h = math.log(total) - math.fsum(f * math.log(f) for f in counts) / total
    return min(1.0, max(0.0, h / math.log(n)))


def comparatives(d: Distribution) -> Comparatives:
    return Comparatives(hhi=hhi(d), gini=gini(d), shannon_evenness=shannon_evenness(d))


def brookes_delta(
    d,
    *,
    prune: bool = True,
    with_comparatives: bool = False,
    half_width: float = DEFAULT_BALANCED_HALF_WIDTH,
) -> DispersionReport:
    """Brookes' measure (M - 1) / (N - 1) for a raw or pruned distribution."""
    pruned = prune_and_validate(d, prune=prune)
    rd = rank_by_frequency(pruned)
    m = weighted_mean_rank(rd)
    n = rd.n_categories
    delta = (m - 1) / (n - 1)
    return DispersionReport(
        n_categories=n,
        total_count=rd.total_count,
        weighted_component_sum=rd.weighted_component_sum,
        weighted_mean_rank=float(m),
        delta=float(delta),
        interpretation=interpret_delta(float(delta), half_width),
        comparatives=comparatives(pruned) if with_comparatives else None,
        exact_weighted_mean_rank=m,
        exact_delta=delta,
    )
