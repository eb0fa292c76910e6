"""Concept-symbol tracking: references to one first author across a corpus.

Export files carry only first authors of cited references, so a "symbol"
here is a first-author name. Matching is prefix-based on the normalized
name — a bare surname matches every initials variant — with an exact mode
for disambiguating common surnames.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass

from .ingest import Corpus
from .refs import extract_all_refs, name_match_key
from ._io import atomic_write_text


@dataclass(slots=True)
class SymbolReport:
    author_query: str
    n_refs: int
    n_citing_docs: int
    corpus_docs: int
    doc_share: float
    per_year_per_venue: dict[tuple[int, str], int]
    citing_authors: dict[str, int]


def author_matches(author: str, query: str, exact: bool = False) -> bool:
    """True when the cited author name matches the query.

    Comparison is case- and period-insensitive. In prefix mode the query's
    surname must match whole; a query that stops inside the initials still
    matches ("merton r" matches "merton rk", "mer" does not match
    "merton").
    """
    a = name_match_key(author)
    q = name_match_key(query)
    if a == q:
        return True
    if exact or not a.startswith(q):
        return False
    rest = a[len(q) :]
    return rest.startswith(" ") or " " not in rest


def symbol_report(corpus: Corpus, author_query: str, exact: bool = False) -> SymbolReport:
    """Count references to one first author, per year and venue.

    ``n_refs`` counts reference occurrences; ``n_citing_docs`` counts
    distinct citing documents; ``citing_authors`` tallies, per citing first
    author, how many of their documents cite the symbol (documents, not
    references). A query with no matches yields an all-zero report.
    """
    if not author_query.strip():
        raise ValueError("author query must be non-empty")
    n_refs = 0
    per_cell: Counter[tuple[int, str]] = Counter()
    citing_doc_ids: set[str] = set()
    records_by_id = {r.record_id: r for r in corpus.records}
    for record_id, citing_year, ref in extract_all_refs(corpus):
        if author_matches(ref.first_author, author_query, exact):
            n_refs += 1
            per_cell[(citing_year, records_by_id[record_id].venue)] += 1
            citing_doc_ids.add(record_id)
    author_docs: Counter[str] = Counter()
    for record_id in citing_doc_ids:
        author = records_by_id[record_id].first_author
        if author:
            author_docs[author] += 1
    corpus_docs = len(corpus.records)
    return SymbolReport(
        author_query=author_query,
        n_refs=n_refs,
        n_citing_docs=len(citing_doc_ids),
        corpus_docs=corpus_docs,
        doc_share=len(citing_doc_ids) / corpus_docs if corpus_docs else 0.0,
        per_year_per_venue={k: per_cell[k] for k in sorted(per_cell)},
        citing_authors=dict(author_docs),
    )


def frequent_citers(report: SymbolReport, min_count: int = 3) -> list[tuple[str, int]]:
    """Citing authors with at least min_count documents, most prolific first."""
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    qualified = [(a, c) for a, c in report.citing_authors.items() if c >= min_count]
    return sorted(qualified, key=lambda item: (-item[1], item[0]))


def symbol_trend_to_csv(report: SymbolReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["citing_year", "venue", "count"])
    for (year, venue), count in sorted(report.per_year_per_venue.items()):
        writer.writerow([year, venue, count])
    return out.getvalue()


def symbol_trend_csv(report: SymbolReport, path) -> None:
    atomic_write_text(path, symbol_trend_to_csv(report))


def citers_to_csv(report: SymbolReport, min_count: int = 1) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["author", "documents"])
    for author, count in frequent_citers(report, min_count):
        writer.writerow([author, count])
    return out.getvalue()


def export_citers_csv(report: SymbolReport, path, min_count: int = 1) -> None:
    atomic_write_text(path, citers_to_csv(report, min_count))
