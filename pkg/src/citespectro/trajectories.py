"""Per-work citation trajectories and their classification.

A trajectory counts, per calendar year, how often one disambiguated work
is cited. The classifier separates the two canonical shapes: transitory
curves that peak within a few years and collect most of their citations
early (research-front behavior), and sticky curves whose citations arrive
only after a long delay or keep accelerating decades out (codification
into a concept symbol). Everything is ratio-based, so the label is
invariant under uniform scaling of the counts.

Full mixture-model trajectory estimation is out of scope; a least-squares
polynomial fit per work plus rule-based thresholds covers the distinction.
"""

from __future__ import annotations

import csv
import enum
import io
from collections import Counter
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .dedup import RefCluster, _ranking_key
from .errors import EmptyCorpus, InsufficientData
from .ingest import Corpus
from ._io import atomic_write_text


@dataclass(slots=True)
class Trajectory:
    target: str  # canonical raw string of the cluster
    publication_year: int
    yearly_counts: dict[int, int]
    total: int


class TrajectoryLabel(enum.Enum):
    TRANSITORY = "Transitory"
    STICKY = "Sticky"
    FLAT = "Flat"


@dataclass(frozen=True, slots=True)
class TrajectoryThresholds:
    """Classifier knobs; defaults are calibrated to the canonical shapes."""

    min_total: int = 10
    early_share_5yr: float = 0.5
    peak_offset_max: int = 5
    late_onset_share: float = 0.6
    late_onset_age: int = 8
    growth_factor: float = 2.0


DEFAULT_THRESHOLDS = TrajectoryThresholds()


@dataclass(slots=True)
class TrajectoryClass:
    label: TrajectoryLabel
    early_share_2yr: float
    early_share_5yr: float
    peak_year_offset: int
    late_onset: bool


def build_trajectory(corpus: Corpus, cluster: RefCluster) -> Trajectory:
    """Yearly citation counts for one cluster across the corpus.

    Occurrences are matched on the cluster's raw strings; an occurrence in
    a record older than publication_year - 1 is outside parser tolerance
    and ignored. Zero-count years inside [publication_year, newest citing
    year] are listed explicitly.
    """
    if not cluster.members:
        raise ValueError("cannot build a trajectory for an empty cluster")
    publication_year = cluster.canonical.rpy
    if publication_year is None:
        raise ValueError("cluster has no publication year to anchor a trajectory")
    if not corpus.records:
        raise EmptyCorpus("cannot build a trajectory over an empty corpus")

    member_raws = {m.raw for m in cluster.members}
    counts: Counter[int] = Counter()
    for record in corpus.records:
        if record.citing_year < publication_year - 1:
            continue
        for raw in record.cited_refs_raw:
            if raw in member_raws:
                counts[record.citing_year] += 1

    last_year = max(max(r.citing_year for r in corpus.records), publication_year)
    yearly = {y: counts.get(y, 0) for y in range(publication_year, last_year + 1)}
    if counts.get(publication_year - 1):
        yearly = {publication_year - 1: counts[publication_year - 1], **yearly}
    return Trajectory(
        target=cluster.canonical.raw,
        publication_year=publication_year,
        yearly_counts=yearly,
        total=sum(yearly.values()),
    )


def classify_trajectory(
    trajectory: Trajectory, config: TrajectoryThresholds = DEFAULT_THRESHOLDS
) -> TrajectoryClass:
    """Label a trajectory as Transitory, Sticky, or Flat.

    Windows are lagged like impact-factor windows: the first-two-years
    share covers offsets 1..2 and the five-year share offsets 1..5.
    Transitory needs at least half the citations within five years and a
    peak within ``peak_offset_max``; Sticky needs either a late onset
    (>= 60% of citations more than eight years out) or a final-third
    yearly rate at least double the first third's.
    """
    pub = trajectory.publication_year
    total = trajectory.total
    years = sorted(trajectory.yearly_counts)

    def offset_sum(lo: int, hi: int | None) -> int:
        return sum(
            c
            for y, c in trajectory.yearly_counts.items()
            if y - pub >= lo and (hi is None or y - pub <= hi)
        )

    if total > 0:
        early2 = offset_sum(1, 2) / total
        early5 = offset_sum(1, 5) / total
        late_share = offset_sum(config.late_onset_age + 1, None) / total
        peak_year = max(years, key=lambda y: (trajectory.yearly_counts[y], -y))
        peak_offset = peak_year - pub
    else:
        early2 = early5 = late_share = 0.0
        peak_offset = 0
    late_onset = total > 0 and late_share >= config.late_onset_share

    grows = False
    third = len(years) // 3
    if third >= 1:
        first = [trajectory.yearly_counts[y] for y in years[:third]]
        last = [trajectory.yearly_counts[y] for y in years[-third:]]
        first_rate = sum(first) / len(first)
        last_rate = sum(last) / len(last)
        grows = (first_rate > 0 and last_rate / first_rate >= config.growth_factor) or (
            first_rate == 0 and last_rate > 0
        )

    if total < config.min_total:
        label = TrajectoryLabel.FLAT
    elif early5 >= config.early_share_5yr and peak_offset <= config.peak_offset_max:
        label = TrajectoryLabel.TRANSITORY
    elif late_onset or grows:
        label = TrajectoryLabel.STICKY
    else:
        label = TrajectoryLabel.FLAT
    return TrajectoryClass(
        label=label,
        early_share_2yr=early2,
        early_share_5yr=early5,
        peak_year_offset=peak_offset,
        late_onset=late_onset,
    )


@dataclass(slots=True)
class PolynomialFit:
    coefficients: np.ndarray  # ascending powers
    residual_sum_squares: float
    fitted: dict[int, float]  # year -> fitted value, clamped at 0


def fit_polynomial(trajectory: Trajectory, order: int = 5) -> PolynomialFit:
    """Least-squares polynomial over (year - publication_year, count)."""
    years = sorted(trajectory.yearly_counts)
    if len(years) < order + 1:
        raise InsufficientData(
            f"order-{order} fit needs {order + 1} years, trajectory spans {len(years)}"
        )
    x = np.array([y - trajectory.publication_year for y in years], dtype=float)
    y = np.array([trajectory.yearly_counts[yr] for yr in years], dtype=float)
    coeffs = npoly.polyfit(x, y, order)
    fitted_values = npoly.polyval(x, coeffs)
    residual = float(np.sum((y - fitted_values) ** 2))
    fitted = {yr: float(max(0.0, v)) for yr, v in zip(years, fitted_values)}
    return PolynomialFit(coefficients=coeffs, residual_sum_squares=residual, fitted=fitted)


TRAJECTORY_CSV_HEADER = "target,rpy,year,count,label"


def trajectory_table_csv(
    corpus: Corpus,
    clusters: list[RefCluster],
    top_n: int,
    config: TrajectoryThresholds = DEFAULT_THRESHOLDS,
) -> str:
    """Long-format CSV of the top-n trajectories by total citations.

    Clusters without a publication year cannot be placed on a year axis
    and are skipped.
    """
    if top_n < 0:
        raise ValueError(f"top_n must be >= 0, got {top_n}")
    dated = [c for c in sorted(clusters, key=_ranking_key) if c.canonical.rpy is not None]
    trajectories = [build_trajectory(corpus, c) for c in dated]
    trajectories.sort(key=lambda t: (-t.total, t.publication_year, t.target))
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRAJECTORY_CSV_HEADER.split(","))
    for t in trajectories[:top_n]:
        label = classify_trajectory(t, config).label.value
        for year in sorted(t.yearly_counts):
            writer.writerow([t.target, t.publication_year, year, t.yearly_counts[year], label])
    return out.getvalue()


def export_trajectory_table(
    corpus: Corpus,
    clusters: list[RefCluster],
    top_n: int,
    path,
    config: TrajectoryThresholds = DEFAULT_THRESHOLDS,
) -> None:
    atomic_write_text(path, trajectory_table_csv(corpus, clusters, top_n, config))
