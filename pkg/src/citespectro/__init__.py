"""citespectro: cited-reference analytics over bibliographic export files.

Ingest Web of Science style exports, parse and disambiguate cited
references, and compute referenced-publication-year spectrograms,
journal impact metrics, per-work citation trajectories, and
concept-symbol reports. The ``citespectro`` command exposes the same
pipeline as subcommands.
"""

from .dedup import RefCluster, cluster_references, levenshtein, ref_similarity, top_cited
from .errors import (
    CiteSpectroError,
    EmptyCorpus,
    EmptyDistribution,
    EmptyInput,
    InsufficientData,
    MalformedFile,
    NoPapers,
    VenueNotFound,
    ZeroTotal,
)
from .ingest import (
    ALL_DOC_TYPES,
    Corpus,
    DocType,
    PublicationRecord,
    corpus_to_test_csv,
    filter_records,
    parse_test_csv,
    parse_wos_plaintext,
    parse_wos_tabfile,
)
from .metrics import (
    CitationAgeDistribution,
    Direction,
    JournalYearMetrics,
    VenueAliases,
    age_distribution,
    half_life,
    immediacy_index,
    journal_year_metrics,
    per_item_impact,
    percent,
    short_term_share,
)
from .refs import CitedRef, extract_all_refs, normalize_name, parse_cited_ref
from .spectroscopy import (
    MultiRpysMatrix,
    RpysCurve,
    heatmap_svg,
    moving_median_deviation,
    multi_rpys,
    rank_transform,
    render_heatmap_svg,
    rpys,
)
from .symbols import SymbolReport, frequent_citers, symbol_report, symbol_trend_csv
from .trajectories import (
    PolynomialFit,
    Trajectory,
    TrajectoryClass,
    TrajectoryLabel,
    TrajectoryThresholds,
    build_trajectory,
    classify_trajectory,
    fit_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_DOC_TYPES",
    "CitationAgeDistribution",
    "CitedRef",
    "CiteSpectroError",
    "Corpus",
    "Direction",
    "DocType",
    "EmptyCorpus",
    "EmptyDistribution",
    "EmptyInput",
    "InsufficientData",
    "JournalYearMetrics",
    "MalformedFile",
    "MultiRpysMatrix",
    "NoPapers",
    "PolynomialFit",
    "PublicationRecord",
    "RefCluster",
    "RpysCurve",
    "SymbolReport",
    "Trajectory",
    "TrajectoryClass",
    "TrajectoryLabel",
    "TrajectoryThresholds",
    "VenueAliases",
    "VenueNotFound",
    "ZeroTotal",
    "age_distribution",
    "build_trajectory",
    "classify_trajectory",
    "cluster_references",
    "corpus_to_test_csv",
    "extract_all_refs",
    "filter_records",
    "fit_polynomial",
    "frequent_citers",
    "half_life",
    "heatmap_svg",
    "immediacy_index",
    "journal_year_metrics",
    "levenshtein",
    "moving_median_deviation",
    "multi_rpys",
    "normalize_name",
    "parse_cited_ref",
    "parse_test_csv",
    "parse_wos_plaintext",
    "parse_wos_tabfile",
    "per_item_impact",
    "percent",
    "rank_transform",
    "ref_similarity",
    "render_heatmap_svg",
    "rpys",
    "short_term_share",
    "symbol_report",
    "symbol_trend_csv",
    "top_cited",
]
