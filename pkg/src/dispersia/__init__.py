"""Brookes' measure of categorical dispersion, with concentration indices and intercoder agreement."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateAgreement,
    DispersiaError,
    DuplicateId,
    DuplicateLabel,
    EmptyDistribution,
    IdSetMismatch,
    InsufficientCategories,
    NegativeCount,
    ParseError,
    UnknownCategory,
    ValidationError,
    YearOutOfRange,
)
from .ingest import (  # noqa: E402
    Corpus,
    PublicationRecord,
    Skipped,
    WindowMode,
    WindowSpec,
    aggregate,
    parse_counts,
    parse_records,
    timeline,
    write_counts,
)
from .measures import (  # noqa: E402
    CategoryCount,
    Distribution,
    DispersionReport,
    Interpretation,
    RankedDistribution,
    brookes_delta,
    gini,
    hhi,
    interpret_delta,
    prune_and_validate,
    rank_by_frequency,
    shannon_evenness,
    weighted_mean_rank,
)
from .reliability import (  # noqa: E402
    Band,
    CodedSet,
    ConfusionMatrix,
    KappaReport,
    build_confusion,
    cohen_kappa,
    landis_koch_band,
)
