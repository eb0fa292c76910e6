"""Referenced-publication-year spectrograms.

An RPYS curve is the histogram of cited-reference counts by referenced
publication year, normalized as deviations from the five-year moving
median; peaks in the deviation mark works the citing literature keeps
returning to. The multi-year variant computes one such row per citing
year, rank-transforms each row independently, and renders the result as a
heatmap: an oblique trailing edge signals research-front citation, a
vertical band signals a long-lived classic.
"""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass
from typing import Sequence

from .dedup import DEFAULT_THRESHOLD, cluster_references
from .errors import EmptyCorpus, EmptyInput
from .ingest import Corpus
from .refs import extract_all_refs
from ._io import atomic_write_text

DEFAULT_WINDOW = 5


@dataclass(slots=True)
class RpysCurve:
    rpy_range: tuple[int, int]
    counts: dict[int, int]
    deviations: dict[int, float]
    peaks: list[int]

    def median(self, year: int) -> float:
        return self.counts[year] - self.deviations[year]


@dataclass(slots=True)
class MultiRpysMatrix:
    citing_years: list[int]
    rpy_range: tuple[int, int]
    raw: list[list[int]]
    ranked: list[list[float]]


def moving_median_deviation(counts: Sequence[float], window: int = DEFAULT_WINDOW) -> list[float]:
    """Per-position deviation from the centered moving median.

    Windows truncate at the boundaries rather than padding: zero-padding
    would fabricate deviation spikes at the edges. The median of an
    even-sized truncated window is the mean of its two central values.
    """
    if not counts:
        raise EmptyInput("moving_median_deviation needs at least one value")
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be odd and positive, got {window}")
    half = (window - 1) // 2
    n = len(counts)
    out = []
    for i in range(n):
        lo = max(0, i - half)
        hi = min(n - 1, i + half)
        out.append(counts[i] - statistics.median(counts[lo : hi + 1]))
    return out


def rank_transform(row: Sequence[float]) -> list[float]:
    """Ascending ranks 1..n; tied values share the mean of their ranks."""
    if not row:
        raise ValueError("rank_transform needs a non-empty row")
    n = len(row)
    order = sorted(range(n), key=lambda i: row[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and row[order[j + 1]] == row[order[i]]:
            j += 1
        mean_rank = (i + j + 2) / 2  # positions i..j hold ranks i+1..j+1
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def _find_peaks(deviations: list[float], min_deviation: float) -> list[int]:
    peaks = []
    n = len(deviations)
    for i, d in enumerate(deviations):
        if d <= min_deviation:
            continue
        if i > 0 and deviations[i - 1] >= d:
            continue
        if i < n - 1 and deviations[i + 1] >= d:
            continue
        peaks.append(i)
    return peaks


def _dated_rpys(corpus: Corpus, use_clusters: bool, dedup_threshold: float) -> list[tuple[int, int]]:
    """(citing_year, rpy) pairs for every dated reference occurrence."""
    extracted = extract_all_refs(corpus)
    if not use_clusters:
        return [(cy, ref.rpy) for _, cy, ref in extracted if ref.rpy is not None]
    clusters = cluster_references([ref for _, _, ref in extracted], dedup_threshold)
    canonical_rpy = {m: c.canonical.rpy for c in clusters for m in c.members}
    return [
        (cy, canonical_rpy[ref])
        for _, cy, ref in extracted
        if canonical_rpy[ref] is not None
    ]


def _default_range(corpus: Corpus, rpys: list[int]) -> tuple[int, int]:
    if not rpys:
        raise EmptyCorpus("corpus contains no dated cited references")
    lo = min(rpys)
    hi = max(r.citing_year for r in corpus.records)
    return lo, max(lo, hi)


def rpys(
    corpus: Corpus,
    rpy_range: tuple[int, int] | None = None,
    use_clusters: bool = False,
    window: int = DEFAULT_WINDOW,
    dedup_threshold: float = DEFAULT_THRESHOLD,
    min_peak_deviation: float = 0.0,
) -> RpysCurve:
    """Cited-reference counts per referenced publication year, with deviations.

    ``use_clusters`` re-keys each reference occurrence at its cluster's
    canonical year before counting; totals are conserved either way. The
    default range spans the oldest referenced year through the newest
    citing year. Peaks are strict local maxima of the deviation above
    ``min_peak_deviation``.
    """
    if not corpus.records:
        raise EmptyCorpus("cannot compute a spectrogram over an empty corpus")
    pairs = _dated_rpys(corpus, use_clusters, dedup_threshold)
    years = [y for _, y in pairs]
    if rpy_range is None:
        rpy_range = _default_range(corpus, years)
    lo, hi = rpy_range
    if lo > hi:
        raise ValueError(f"rpy_range lower bound {lo} exceeds upper bound {hi}")

    counts = {y: 0 for y in range(lo, hi + 1)}
    for y in years:
        if lo <= y <= hi:
            counts[y] += 1
    series = [counts[y] for y in range(lo, hi + 1)]
    deviations = moving_median_deviation(series, window)
    peak_years = [lo + i for i in _find_peaks(deviations, min_peak_deviation)]
    return RpysCurve(
        rpy_range=(lo, hi),
        counts=counts,
        deviations={lo + i: d for i, d in enumerate(deviations)},
        peaks=peak_years,
    )


def multi_rpys(
    corpus: Corpus,
    rpy_range: tuple[int, int] | None = None,
    use_clusters: bool = False,
    window: int = DEFAULT_WINDOW,
    dedup_threshold: float = DEFAULT_THRESHOLD,
) -> MultiRpysMatrix:
    """One rank-transformed RPYS row per citing year.

    Rows cover the contiguous span of observed citing years so the y-axis
    has no gaps; a year without references yields an all-tied row (every
    rank the mean rank), not a hole.
    """
    if not corpus.records:
        raise EmptyCorpus("cannot compute a spectrogram over an empty corpus")
    pairs = _dated_rpys(corpus, use_clusters, dedup_threshold)
    if rpy_range is None:
        rpy_range = _default_range(corpus, [y for _, y in pairs])
    lo, hi = rpy_range
    if lo > hi:
        raise ValueError(f"rpy_range lower bound {lo} exceeds upper bound {hi}")

    first_cy = min(r.citing_year for r in corpus.records)
    last_cy = max(r.citing_year for r in corpus.records)
    citing_years = list(range(first_cy, last_cy + 1))
    by_year: dict[int, list[int]] = {cy: [] for cy in citing_years}
    for cy, y in pairs:
        if lo <= y <= hi:
            by_year[cy].append(y)

    width = hi - lo + 1
    raw_rows: list[list[int]] = []
    ranked_rows: list[list[float]] = []
    for cy in citing_years:
        row = [0] * width
        for y in by_year[cy]:
            row[y - lo] += 1
        raw_rows.append(row)
        ranked_rows.append(rank_transform(moving_median_deviation(row, window)))
    return MultiRpysMatrix(citing_years=citing_years, rpy_range=(lo, hi), raw=raw_rows, ranked=ranked_rows)


def _fmt(value: float) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def curve_to_csv(curve: RpysCurve) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["rpy", "count", "median", "deviation", "is_peak"])
    peaks = set(curve.peaks)
    for year in range(curve.rpy_range[0], curve.rpy_range[1] + 1):
        writer.writerow(
            [
                year,
                curve.counts[year],
                _fmt(curve.median(year)),
                _fmt(curve.deviations[year]),
                "true" if year in peaks else "false",
            ]
        )
    return out.getvalue()


def export_curve_csv(curve: RpysCurve, path) -> None:
    atomic_write_text(path, curve_to_csv(curve))


def matrix_to_csv(matrix: MultiRpysMatrix) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["citing_year", "rpy", "count", "rank"])
    lo = matrix.rpy_range[0]
    for yi, cy in enumerate(matrix.citing_years):
        for xi in range(len(matrix.raw[yi])):
            writer.writerow([cy, lo + xi, matrix.raw[yi][xi], _fmt(matrix.ranked[yi][xi])])
    return out.getvalue()


def export_matrix_csv(matrix: MultiRpysMatrix, path) -> None:
    atomic_write_text(path, matrix_to_csv(matrix))


# Five-stop scale, lightest to darkest; a cell's stop is the quintile of its
# rank within the row width, so the largest rank always lands on the darkest
# stop regardless of row length.
HEAT_PALETTE = ("#f7fbff", "#c6dbef", "#6baed6", "#2171b5", "#08306b")

_CELL = 12
_LEFT = 52
_TOP = 10
_BOTTOM = 38
_RIGHT = 14


def _stop_for(rank: float, width: int) -> str:
    if width <= 1:
        return HEAT_PALETTE[-1]
    quantile = (rank - 1) / width
    return HEAT_PALETTE[min(4, int(quantile * 5))]


def heatmap_svg(matrix: MultiRpysMatrix) -> str:
    """Standalone SVG 1.1 heatmap: x = referenced year, y = citing year.

    One ``rect.cell`` per matrix cell, a ``text.rowlabel`` per citing year,
    column labels on decade years, and a five-swatch legend.
    """
    lo, hi = matrix.rpy_range
    width = hi - lo + 1
    height = len(matrix.citing_years)
    total_w = _LEFT + width * _CELL + _RIGHT
    total_h = _TOP + height * _CELL + _BOTTOM
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_w}" height="{total_h}">',
        f'<rect x="0" y="0" width="{total_w}" height="{total_h}" fill="#ffffff"/>',
    ]
    for yi, cy in enumerate(matrix.citing_years):
        y = _TOP + yi * _CELL
        for xi in range(width):
            fill = _stop_for(matrix.ranked[yi][xi], width)
            lines.append(
                f'<rect class="cell" x="{_LEFT + xi * _CELL}" y="{y}" '
                f'width="{_CELL}" height="{_CELL}" fill="{fill}"/>'
            )
        lines.append(
            f'<text class="rowlabel" x="{_LEFT - 6}" y="{y + _CELL - 3}" '
            f'text-anchor="end" font-size="9" font-family="sans-serif">{cy}</text>'
        )
    label_y = _TOP + height * _CELL + 12
    for xi in range(width):
        year = lo + xi
        if year % 10 == 0:
            lines.append(
                f'<text class="collabel" x="{_LEFT + xi * _CELL + _CELL // 2}" y="{label_y}" '
                f'text-anchor="middle" font-size="9" font-family="sans-serif">{year}</text>'
            )
    legend_y = label_y + 8
    for i, color in enumerate(HEAT_PALETTE):
        lines.append(
            f'<rect class="legend" x="{_LEFT + i * (_CELL + 2)}" y="{legend_y}" '
            f'width="{_CELL}" height="{_CELL - 4}" fill="{color}"/>'
        )
    lines.append(
        f'<text class="legendlabel" x="{_LEFT + 5 * (_CELL + 2) + 6}" y="{legend_y + _CELL - 6}" '
        f'font-size="9" font-family="sans-serif">rank quantile, low to high</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_heatmap_svg(matrix: MultiRpysMatrix, path) -> None:
    if not matrix.citing_years:
        raise ValueError("cannot render an empty matrix")
    atomic_write_text(path, heatmap_svg(matrix))


def curve_svg(curve: RpysCurve, width: int = 640, height: int = 120) -> str:
    """Compact polyline sparkline of the deviation series."""
    lo, hi = curve.rpy_range
    devs = [curve.deviations[y] for y in range(lo, hi + 1)]
    dmin, dmax = min(devs), max(devs)
    span = (dmax - dmin) or 1
    n = len(devs)
    points = []
    for i, d in enumerate(devs):
        x = 4 + (width - 8) * (i / (n - 1) if n > 1 else 0.5)
        y = 4 + (height - 8) * (1 - (d - dmin) / span)
        points.append(f"{x:.2f},{y:.2f}")
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>\n'
        f'<polyline fill="none" stroke="#2171b5" stroke-width="1.5" points="{" ".join(points)}"/>\n'
        "</svg>\n"
    )


def render_curve_svg(curve: RpysCurve, path) -> None:
    atomic_write_text(path, curve_svg(curve))
