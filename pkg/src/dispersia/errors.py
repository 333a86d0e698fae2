"""Exception hierarchy shared by the library and the CLI.

Every class carries the process exit code the CLI uses for it.
"""


class DispersiaError(Exception):
    exit_code = 1


class ParseError(DispersiaError):
    """Malformed input. ``line`` is 1-based and counts the header."""

    exit_code = 2

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ValidationError(DispersiaError):
    exit_code = 3


class DuplicateLabel(ValidationError):
    def __init__(self, label, line=None):
        self.label = label
        self.line = line
        at = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate category label {label!r}{at}")


class NegativeCount(ValidationError):
    def __init__(self, label, count, line=None):
        self.label = label
        self.count = count
        self.line = line
        at = f"line {line}: " if line is not None else ""
        super().__init__(f"{at}negative count {count} for category {label!r}")


class DuplicateId(ValidationError):
    def __init__(self, record_id, line=None):
        self.record_id = record_id
        self.line = line
        at = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate record id {record_id!r}{at}")


class YearOutOfRange(ValidationError):
    def __init__(self, year, bounds, record_id=None):
        self.year = year
        self.bounds = bounds
        self.record_id = record_id
        who = f"record {record_id!r}: " if record_id is not None else ""
        super().__init__(f"{who}year {year} outside [{bounds[0]}, {bounds[1]}]")


class UnknownCategory(ValidationError):
    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__("categories not in taxonomy: " + ", ".join(map(repr, self.labels)))


class InsufficientCategories(DispersiaError):
    """Fewer than two non-empty categories, so N - 1 = 0 in the denominator."""

    exit_code = 4

    def __init__(self, n_categories, message=None):
        self.n_categories = n_categories
        super().__init__(
            message
            or f"need at least 2 non-empty categories, got N={n_categories} (N-1 would be {n_categories - 1})"
        )


class EmptyDistribution(InsufficientCategories):
    def __init__(self, message="distribution has no positive counts"):
        super().__init__(0, message)


class IdSetMismatch(DispersiaError):
    exit_code = 5

    def __init__(self, only_a, only_b):
        self.only_a = tuple(sorted(only_a))
        self.only_b = tuple(sorted(only_b))
        super().__init__(
            "coders cover different ids; only in A: {}; only in B: {}".format(
                ", ".join(self.only_a) or "-", ", ".join(self.only_b) or "-"
            )
        )

    @property
    def symmetric_difference(self):
        return set(self.only_a) | set(self.only_b)


class DegenerateAgreement(DispersiaError):
    """Chance agreement is 1, so kappa is undefined."""

    exit_code = 6
