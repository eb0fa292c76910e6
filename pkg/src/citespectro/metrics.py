"""Journal citation-age indicators.

Everything here is built from (citing year, referenced year) pairs for one
venue: the age distribution of citations a venue receives in a reference
year (cited side) and of the references its issues make (citing side).
From those come window shares (the two- and five-year windows behind
impact-factor style indicators, plus the share older than ten years),
interpolated half-lives, and the same-year immediacy index.

Impact is reported as citation *shares* (window count / total count), not
the per-item impact-factor ratio: export files carry no citable-item
denominators. A per-item ratio is available separately when the caller
supplies a publication count.
"""

from __future__ import annotations

import csv
import enum
import io
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyDistribution, NoPapers, VenueNotFound, ZeroTotal
from .ingest import Corpus
from .refs import extract_all_refs, name_match_key, normalize_name
from ._io import atomic_write_text


class Direction(enum.Enum):
    """Which side of the citation the distribution describes.

    The age arithmetic is identical for both; the caller supplies the pairs
    belonging to the chosen side.
    """

    CITED = "cited"
    CITING = "citing"


@dataclass(slots=True)
class CitationAgeDistribution:
    reference_year: int
    counts_by_age: dict[int, int]
    total: int
    excluded: int = 0


@dataclass(slots=True)
class JournalYearMetrics:
    venue: str
    year: int
    total_cites: int
    share_2yr: float
    share_5yr: float
    share_gt10yr: float
    cited_half_life: float
    citing_half_life: float
    immediacy: float


def age_distribution(
    cites: Iterable[tuple[int, int | None]],
    reference_year: int,
    direction: Direction = Direction.CITED,
) -> CitationAgeDistribution:
    """Bucket (citing_year, referenced_year) pairs by age.

    Only pairs whose citing year equals the reference year are counted;
    age 0 means cited in the year of publication. Pairs with an absent
    referenced year or a negative age land in the ``excluded`` counter, so
    total + excluded always equals the input pair count.
    """
    counts: Counter[int] = Counter()
    excluded = 0
    for citing_year, referenced_year in cites:
        if citing_year != reference_year or referenced_year is None:
            excluded += 1
            continue
        age = reference_year - referenced_year
        if age < 0:
            excluded += 1
            continue
        counts[age] += 1
    ordered = {age: counts[age] for age in sorted(counts)}
    return CitationAgeDistribution(
        reference_year=reference_year,
        counts_by_age=ordered,
        total=sum(ordered.values()),
        excluded=excluded,
    )


def half_life(dist: CitationAgeDistribution) -> float:
    """Median citation age with linear interpolation inside the boundary bucket.

    Bucket ``a`` spans [a, a+1), so a distribution concentrated at a single
    age ``a`` has a half-life of a + 0.5.
    """
    if dist.total < 1:
        raise EmptyDistribution("half-life of an empty distribution is undefined")
    half = dist.total / 2
    cumulative = 0
    for age in sorted(dist.counts_by_age):
        count = dist.counts_by_age[age]
        if count == 0:
            continue
        if cumulative + count >= half:
            return age + (half - cumulative) / count
        cumulative += count
    raise AssertionError("unreachable: cumulative never reached half of total")


def short_term_share(cites_in_window: int, total_cites: int) -> float:
    """Exact fraction of total citations falling inside a window."""
    if total_cites == 0:
        raise ZeroTotal("cannot compute a share of zero total citations")
    if cites_in_window < 0 or total_cites < 0:
        raise ValueError("citation counts cannot be negative")
    if cites_in_window > total_cites:
        raise ValueError(f"window count {cites_in_window} exceeds total {total_cites}")
    return cites_in_window / total_cites


def percent(fraction: float) -> float:
    """Fraction as a percentage rounded to one decimal, the reporting unit."""
    return round(fraction * 100, 1)


def per_item_impact(cites_in_window: int, item_count: int) -> float:
    """Classic per-item ratio, for callers who know the publication count."""
    if item_count < 1:
        raise ZeroTotal("per-item impact needs a positive publication count")
    return cites_in_window / item_count


class VenueAliases:
    """Equivalence between venue spellings and their abbreviations.

    Loaded from a plain-text file of ``abbrev = full name`` lines; names
    joined by a line become interchangeable, and matching is always
    case/whitespace-insensitive.
    """

    def __init__(self, pairs: Iterable[tuple[str, str]] = ()):
        self._root: dict[str, str] = {}
        for left, right in pairs:
            self.add(left, right)

    def add(self, left: str, right: str) -> None:
        a, b = normalize_name(left), normalize_name(right)
        root_a = self._root.get(a, a)
        root_b = self._root.get(b, b)
        root = min(root_a, root_b)
        for key, value in self._root.items():
            if value in (root_a, root_b):
                self._root[key] = root
        self._root[a] = root
        self._root[b] = root

    @classmethod
    def load(cls, path: str | Path) -> "VenueAliases":
        aliases = cls()
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            left, _, right = line.partition("=")
            aliases.add(left.strip(), right.strip())
        return aliases

    def same(self, a: str, b: str) -> bool:
        na, nb = normalize_name(a), normalize_name(b)
        if na == nb:
            return True
        ra = self._root.get(na)
        return ra is not None and ra == self._root.get(nb)


def journal_year_metrics(
    corpus: Corpus,
    venue: str,
    year: int,
    aliases: VenueAliases | None = None,
) -> JournalYearMetrics:
    """Assemble the full indicator battery for one venue and reference year.

    The cited side collects references (across the whole corpus) whose
    source matches the venue; only those made in ``year`` enter the
    distribution. The citing side collects the references made by the
    venue's own ``year`` issues. Venue matching goes through the alias
    table, since source abbreviations are not derivable from full titles.
    """
    aliases = aliases or VenueAliases()
    cited_pairs: list[tuple[int, int | None]] = []
    citing_pairs: list[tuple[int, int | None]] = []
    venue_records = {
        r.record_id
        for r in corpus.records
        if r.citing_year == year and r.venue and aliases.same(r.venue, venue)
    }
    for record_id, citing_year, ref in extract_all_refs(corpus):
        if ref.source is not None and aliases.same(ref.source, venue):
            cited_pairs.append((citing_year, ref.rpy))
        if record_id in venue_records:
            citing_pairs.append((citing_year, ref.rpy))

    cited = age_distribution(cited_pairs, year, Direction.CITED)
    citing = age_distribution(citing_pairs, year, Direction.CITING)
    if cited.total == 0:
        raise VenueNotFound(f"no citations received by {venue!r} in {year}")
    if citing.total == 0:
        raise VenueNotFound(f"no dated references made by {venue!r} issues of {year}")

    def window_share(lo_age: int, hi_age: int | None) -> float:
        in_window = sum(
            c
            for age, c in cited.counts_by_age.items()
            if age >= lo_age and (hi_age is None or age <= hi_age)
        )
        return short_term_share(in_window, cited.total)

    return JournalYearMetrics(
        venue=venue,
        year=year,
        total_cites=cited.total,
        share_2yr=window_share(1, 2),
        share_5yr=window_share(1, 5),
        share_gt10yr=window_share(11, None),
        cited_half_life=half_life(cited),
        citing_half_life=half_life(citing),
        immediacy=immediacy_index(corpus, venue, year, aliases),
    )


def immediacy_index(
    corpus: Corpus,
    venue: str,
    year: int,
    aliases: VenueAliases | None = None,
) -> float:
    """Share of the venue's ``year`` papers that receive a same-year citation.

    A venue paper counts as cited when any record of the same year holds a
    reference matching (venue source, referenced year == ``year``, same
    normalized first author). Paper-based, not citation-based: five
    citations to one paper move the index as much as one.
    """
    aliases = aliases or VenueAliases()
    papers = [
        r
        for r in corpus.records
        if r.citing_year == year and r.venue and aliases.same(r.venue, venue)
    ]
    if not papers:
        raise NoPapers(f"{venue!r} published no papers in {year}")
    cited_authors: set[str] = set()
    for _, citing_year, ref in extract_all_refs(corpus):
        if (
            citing_year == year
            and ref.rpy == year
            and ref.source is not None
            and aliases.same(ref.source, venue)
        ):
            cited_authors.add(name_match_key(ref.first_author))
    hit = sum(
        1
        for p in papers
        if p.first_author is not None and name_match_key(p.first_author) in cited_authors
    )
    return hit / len(papers)


METRICS_CSV_HEADER = (
    "venue,year,total_cites,share_2yr,share_5yr,share_gt10yr,"
    "cited_half_life,citing_half_life,immediacy"
)


def metrics_to_csv(rows: Sequence[JournalYearMetrics], per_item: float | None = None) -> str:
    """Metrics table as CSV; shares and immediacy as one-decimal percents.

    When a per-item ratio was requested it is appended as an extra
    ``jif_per_item`` column.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = METRICS_CSV_HEADER.split(",")
    if per_item is not None:
        header.append("jif_per_item")
    writer.writerow(header)
    for m in rows:
        row = [
            m.venue,
            m.year,
            m.total_cites,
            f"{percent(m.share_2yr):.1f}",
            f"{percent(m.share_5yr):.1f}",
            f"{percent(m.share_gt10yr):.1f}",
            f"{m.cited_half_life:.2f}",
            f"{m.citing_half_life:.2f}",
            f"{percent(m.immediacy):.1f}",
        ]
        if per_item is not None:
            row.append(f"{per_item:.3f}")
        writer.writerow(row)
    return out.getvalue()


def export_metrics_csv(rows: Sequence[JournalYearMetrics], path, per_item: float | None = None) -> None:
    atomic_write_text(path, metrics_to_csv(rows, per_item))
