"""Cited-reference string parsing.

A cited reference is a comma-separated string in the database's layout:
``first author, year, source[, vVOL][, pPAGE][, doi DOI]``, for example
``hirsch je, 2005, p natl acad sci usa, v102, p16569``. Parsing is total:
defective strings never raise, they just leave fields absent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .ingest import Corpus

RPY_MIN = 1500


def normalize_name(raw: str) -> str:
    """Lowercase, collapse whitespace, strip trailing periods."""
    return " ".join(raw.split()).lower().rstrip(". ")


def name_match_key(raw: str) -> str:
    """Normalization for name comparison: also drops every period."""
    return " ".join(raw.replace(".", "").split()).lower()


@dataclass(frozen=True, slots=True)
class CitedRef:
    """One parsed cited reference; ``raw`` is preserved byte-for-byte."""

    raw: str
    first_author: str
    rpy: int | None = None
    source: str | None = None
    volume: str | None = None
    page: str | None = None
    doi: str | None = None


def parse_cited_ref(raw: str, citing_year: int) -> CitedRef:
    """Parse one raw cited-reference string.

    The referenced publication year is the leftmost segment that is a bare
    4-digit number inside [1500, citing_year + 1]; the +1 tolerates
    citations of in-press work. The segment after the year is the source;
    later segments are scanned for volume (``v`` + digits), page (``p`` +
    alphanumerics) and ``doi `` prefixes. Unmatched segments are ignored.
    """
    segments = raw.split(", ")
    first_author = normalize_name(segments[0]) or "anonymous"

    rpy: int | None = None
    year_idx: int | None = None
    upper = citing_year + 1
    for i, seg in enumerate(segments):
        if len(seg) == 4 and seg.isdigit():
            year = int(seg)
            if RPY_MIN <= year <= upper:
                rpy = year
                year_idx = i
                break

    source: str | None = None
    rest_start = 1
    if year_idx is not None:
        rest_start = year_idx + 1
        if year_idx + 1 < len(segments):
            source = normalize_name(segments[year_idx + 1]) or None
            rest_start = year_idx + 2

    volume = page = doi = None
    for seg in segments[rest_start:]:
        seg = seg.strip()
        low = seg.casefold()
        if volume is None and len(low) > 1 and low[0] == "v" and low[1:].isdigit():
            volume = low[1:]
        elif page is None and len(low) > 1 and low[0] == "p" and low[1:].isalnum():
            page = low[1:]
        elif doi is None and low.startswith("doi "):
            doi = seg[4:].strip()

    return CitedRef(
        raw=raw,
        first_author=first_author,
        rpy=rpy,
        source=source,
        volume=volume,
        page=page,
        doi=doi,
    )


def extract_all_refs(corpus: "Corpus") -> list[tuple[str, int, CitedRef]]:
    """Flatten a corpus into (record_id, citing_year, parsed ref) tuples.

    One tuple per raw reference, in corpus order; the result length equals
    the corpus's total raw-reference count.
    """
    out: list[tuple[str, int, CitedRef]] = []
    for record in corpus.records:
        for raw in record.cited_refs_raw:
            out.append((record.record_id, record.citing_year, parse_cited_ref(raw, record.citing_year)))
    return out
