"""Reading category counts and publication records, aggregation and year windows."""

from __future__ import annotations

import csv
import enum
import io
import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from . import measures
from .errors import (
    DuplicateId,
    DuplicateLabel,
    EmptyDistribution,
    InsufficientCategories,
    NegativeCount,
    ParseError,
    UnknownCategory,
    YearOutOfRange,
)
from .measures import CategoryCount, Distribution, DispersionReport

YEAR_BOUNDS = (1900, 2100)
COUNTS_HEADER = ["category", "count"]
RECORD_HEADERS = (["id", "year", "category"], ["id", "year", "category", "title"])


class CountsFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


class WindowMode(str, enum.Enum):
    TUMBLING = "tumbling"
    CUMULATIVE = "cumulative"


@dataclass(frozen=True)
class PublicationRecord:
    id: str
    year: int
    category: str
    title: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("record id must be non-empty")
        if not self.category:
            raise ValueError(f"record {self.id!r} has an empty category")
        if not YEAR_BOUNDS[0] <= self.year <= YEAR_BOUNDS[1]:
            raise YearOutOfRange(self.year, YEAR_BOUNDS, self.id)


@dataclass(frozen=True)
class Corpus:
    records: tuple[PublicationRecord, ...]
    declared_period: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen = set()
        for r in self.records:
            if r.id in seen:
                raise DuplicateId(r.id)
            seen.add(r.id)
        if self.declared_period is not None:
            lo, hi = self.declared_period
            if lo > hi:
                raise ValueError(f"declared period {lo}-{hi} is reversed")
            for r in self.records:
                if not lo <= r.year <= hi:
                    raise YearOutOfRange(r.year, self.declared_period, r.id)

    def __len__(self):
        return len(self.records)

    @property
    def years(self) -> tuple[int, int]:
        if not self.records:
            raise EmptyDistribution("corpus has no records")
        ys = [r.year for r in self.records]
        return min(ys), max(ys)


@dataclass(frozen=True)
class WindowSpec:
    start_year: int
    end_year: int
    step: int
    mode: WindowMode = WindowMode.TUMBLING

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError(f"start_year {self.start_year} is after end_year {self.end_year}")
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")
        object.__setattr__(self, "mode", WindowMode(self.mode))

    def windows(self) -> list[tuple[int, int]]:
        out = []
        for lo in range(self.start_year, self.end_year + 1, self.step):
            hi = min(lo + self.step - 1, self.end_year)
            out.append((self.start_year if self.mode is WindowMode.CUMULATIVE else lo, hi))
        return out


@dataclass(frozen=True)
class Skipped:
    """Placeholder for a window where Brookes' measure is undefined."""

    n_categories: int
    total_count: int
    reason: str


def window_label(lo: int, hi: int) -> str:
    return str(lo) if lo == hi else f"{lo}-{hi}"


def _as_text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        try:
            return bytes(data).decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8 ({exc.reason} at byte {exc.start})") from None
    if isinstance(data, str):
        return data
    return _as_text(data.read())


def _csv_rows(text: str, headers, what: str):
    """Yield ``(line_number, row)`` after checking the header; line numbers are 1-based."""
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        header = next(reader, None)
        if header is None:
            raise ParseError(f"empty {what} file, expected header {','.join(headers[0])}", line=1)
        if [h.strip() for h in header] not in headers:
            expected = " or ".join(",".join(h) for h in headers)
            raise ParseError(f"bad header {','.join(header)!r}, expected {expected}", line=1)
        width = len(header)
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != width:
                raise ParseError(f"expected {width} fields, got {len(row)}", line=reader.line_num)
            yield reader.line_num, [cell.strip() for cell in row]
    except csv.Error as exc:
        raise ParseError(str(exc), line=reader.line_num) from None


def _parse_int(value: str, line, field_name) -> int:
    try:
        return int(value, 10)
    except ValueError:
        raise ParseError(f"not an integer: {value!r}", line=line, field=field_name) from None


def _counts_from_csv(text: str) -> Distribution:
    cats = []
    seen = set()
    for line, (label, raw) in _csv_rows(text, [COUNTS_HEADER], "counts"):
        if not label:
            raise ParseError("empty category label", line=line, field="category")
        count = _parse_int(raw, line, "count")
        if count < 0:
            raise NegativeCount(label, count, line)
        if label in seen:
            raise DuplicateLabel(label, line)
        seen.add(label)
        cats.append(CategoryCount(label, count))
    return Distribution(tuple(cats))


def _counts_from_json(text: str) -> Distribution:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("categories"), list):
        raise ParseError('expected an object with a "categories" list')
    cats = []
    seen = set()
    for i, item in enumerate(doc["categories"]):
        where = f"categories[{i}]"
        if not isinstance(item, dict):
            raise ParseError("expected an object with label and count", field=where)
        label, count = item.get("label"), item.get("count")
        if not isinstance(label, str) or not label.strip():
            raise ParseError("label must be a non-empty string", field=f"{where}.label")
        label = label.strip()
        if isinstance(count, bool) or not isinstance(count, int):
            raise ParseError(f"count must be an integer, got {count!r}", field=f"{where}.count")
        if count < 0:
            raise NegativeCount(label, count)
        if label in seen:
            raise DuplicateLabel(label)
        seen.add(label)
        cats.append(CategoryCount(label, count))
    return Distribution(tuple(cats))


def parse_counts(data, fmt: CountsFormat | str = CountsFormat.CSV) -> Distribution:
    """Parse pre-tabulated category counts.

    ``data`` is bytes, text, or a readable file object. Categories keep file
    order. An input with no data rows, or whose counts are all zero, raises
    :class:`EmptyDistribution`.
    """
    text = _as_text(data)
    fmt = CountsFormat(fmt)
    d = _counts_from_csv(text) if fmt is CountsFormat.CSV else _counts_from_json(text)
    if d.total == 0:
        raise EmptyDistribution("no categories with a positive count" if len(d) else "no data rows")
    return d


def write_counts(d: Distribution, fmt: CountsFormat | str = CountsFormat.CSV) -> str:
    fmt = CountsFormat(fmt)
    if fmt is CountsFormat.JSON:
        doc = {"categories": [{"label": c.label, "count": c.count} for c in d]}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COUNTS_HEADER)
    writer.writerows((c.label, c.count) for c in d)
    return buf.getvalue()


def read_counts(path, fmt: CountsFormat | str | None = None) -> Distribution:
    path = Path(path)
    if fmt is None:
        fmt = CountsFormat.JSON if path.suffix.lower() == ".json" else CountsFormat.CSV
    return parse_counts(path.read_bytes(), fmt)


def parse_records(data, declared_period: tuple[int, int] | None = None) -> Corpus:
    """Parse a record-level CSV with header ``id,year,category[,title]``."""
    records = []
    seen = set()
    for line, row in _csv_rows(_as_text(data), RECORD_HEADERS, "records"):
        rid, raw_year, category = row[:3]
        title = row[3] or None if len(row) > 3 else None
        if not rid:
            raise ParseError("empty id", line=line, field="id")
        if not category:
            raise ParseError("empty category", line=line, field="category")
        if rid in seen:
            raise DuplicateId(rid, line)
        seen.add(rid)
        records.append(PublicationRecord(rid, _parse_int(raw_year, line, "year"), category, title))
    return Corpus(tuple(records), declared_period)


def read_records(path, declared_period=None) -> Corpus:
    return parse_records(Path(path).read_bytes(), declared_period)


def write_records(corpus: Corpus) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    with_title = any(r.title for r in corpus.records)
    writer.writerow(RECORD_HEADERS[1] if with_title else RECORD_HEADERS[0])
    for r in corpus.records:
        row = [r.id, r.year, r.category]
        if with_title:
            row.append(r.title or "")
        writer.writerow(row)
    return buf.getvalue()


def check_taxonomy(labels: Iterable[str], taxonomy: Iterable[str]) -> None:
    """Strict mode: raise :class:`UnknownCategory` for labels outside ``taxonomy``."""
    allowed = set(taxonomy)
    unknown = list(dict.fromkeys(label for label in labels if label not in allowed))
    if unknown:
        raise UnknownCategory(unknown)


def parse_taxonomy(data) -> list[str]:
    """One category per line; blank lines and ``#`` comments are ignored."""
    out = []
    for line in _as_text(data).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def aggregate(corpus: Corpus, year_range: tuple[int, int] | None = None) -> Distribution:
    """Count records per category, optionally restricted to an inclusive year range.

    Categories appear in order of first appearance among the selected records.
    """
    if year_range is None:
        selected = corpus.records
    else:
        lo, hi = year_range
        selected = [r for r in corpus.records if lo <= r.year <= hi]
    if not selected:
        raise EmptyDistribution("no records in the selected year range")
    counts = Counter(r.category for r in selected)
    return Distribution(tuple(CategoryCount(label, n) for label, n in counts.items()))


def timeline(corpus: Corpus, spec: WindowSpec, **delta_kwargs) -> list[tuple[str, DispersionReport | Skipped]]:
    """Brookes' measure per year window; windows with N < 2 come back as :class:`Skipped`."""
    rows = []
    for lo, hi in spec.windows():
        label = window_label(lo, hi)
        try:
            d = aggregate(corpus, (lo, hi))
            rows.append((label, measures.brookes_delta(d, **delta_kwargs)))
        except InsufficientCategories as exc:
            total = 0 if isinstance(exc, EmptyDistribution) else d.total
            rows.append((label, Skipped(exc.n_categories, total, str(exc))))
    return rows
