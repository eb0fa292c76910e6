"""Bibliographic export ingestion.

Three input formats are supported:

* Web of Science tagged plaintext ("FN" preamble, records spanning a
  ``PT`` line through an ``ER`` line, two-character field tags at column 0,
  continuation lines indented by three spaces; each ``CR`` value line holds
  one cited reference).
* Web of Science tab-delimited exports (header row of field tags; the CR
  cell packs cited references separated by "; ").
* A compact CSV test format (columns record_id, venue, citing_year,
  doc_type, cited_refs with "|" between references; optional times_cited
  and first_author columns make serialization lossless).

Parsing is strict about structure and lenient about content: unknown tags
are ignored, but a record without a usable publication year is dropped and
logged, because every downstream analysis is keyed on years.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

from .errors import MalformedFile
from .refs import normalize_name

YEAR_MIN = 1500
YEAR_MAX = 2100


class DocType(enum.Enum):
    ARTICLE = "Article"
    REVIEW = "Review"
    LETTER = "Letter"
    OTHER = "Other"

    @classmethod
    def from_string(cls, raw: str) -> "DocType":
        """Map an export's document-type string, case-insensitively."""
        key = raw.strip().casefold()
        return _DOC_TYPE_BY_NAME.get(key, cls.OTHER)


_DOC_TYPE_BY_NAME = {
    "article": DocType.ARTICLE,
    "review": DocType.REVIEW,
    "letter": DocType.LETTER,
}

ALL_DOC_TYPES = frozenset(DocType)


@dataclass(frozen=True, slots=True)
class PublicationRecord:
    """One citing document as carried by an export file."""

    record_id: str
    venue: str
    citing_year: int
    doc_type: DocType
    cited_refs_raw: tuple[str, ...]
    times_cited: int | None = None
    first_author: str | None = None


@dataclass(frozen=True, slots=True)
class Corpus:
    """An immutable set of publication records plus ingest diagnostics."""

    records: tuple[PublicationRecord, ...]
    source_description: str = ""
    ingest_warnings: tuple[tuple[int, str], ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    @property
    def total_refs(self) -> int:
        return sum(len(r.cited_refs_raw) for r in self.records)

    def citing_years(self) -> list[int]:
        return sorted({r.citing_year for r in self.records})


def _decode(data: bytes | str | BinaryIO) -> tuple[str, list[tuple[int, str]]]:
    """Decode input bytes as UTF-8, replacing invalid sequences with a warning."""
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, str):
        return data, []
    try:
        return data.decode("utf-8"), []
    except UnicodeDecodeError:
        text = data.decode("utf-8", errors="replace")
        return text, [(0, "invalid UTF-8 byte sequences replaced")]


def _parse_year(text: str) -> int | None:
    text = text.strip()
    if len(text) == 4 and text.isdigit():
        year = int(text)
        if YEAR_MIN <= year <= YEAR_MAX:
            return year
    return None


class _IdAllocator:
    """Hands out record ids, keeping them unique within one corpus."""

    def __init__(self, warnings: list[tuple[int, str]]):
        self._seen: set[str] = set()
        self._warnings = warnings
        self._seq = 0

    def take(self, candidate: str, line: int) -> str:
        self._seq += 1
        rid = candidate.strip() or f"rec{self._seq:06d}"
        if rid in self._seen:
            self._warnings.append((line, f"duplicate record id {rid!r} renamed"))
            rid = f"{rid}#{self._seq}"
        self._seen.add(rid)
        return rid


def _is_tag_line(line: str) -> bool:
    # two-character tag at column 0 (letter + letter/digit), then space or EOL
    if len(line) < 2 or not (line[0].isalpha() and line[0].isupper()):
        return False
    if not (line[1].isupper() or line[1].isdigit()):
        return False
    return len(line) == 2 or line[2] == " "


def parse_wos_plaintext(data: bytes | str | BinaryIO, source_description: str = "wos-plaintext") -> Corpus:
    """Parse a WoS tagged plaintext export into a Corpus.

    Records with an unparseable or out-of-range PY are dropped and noted in
    ``ingest_warnings``. Raises MalformedFile when neither an FN preamble
    nor any PT record start is present.
    """
    text, warnings = _decode(data)
    lines = text.splitlines()
    if not any(l.startswith("FN") for l in lines) and not any(l.startswith("PT ") for l in lines):
        raise MalformedFile("no FN/PT header found", source=source_description)

    records: list[PublicationRecord] = []
    ids = _IdAllocator(warnings)
    fields: dict[str, list[str]] | None = None
    tag: str | None = None
    block_line = 0

    for lineno, line in enumerate(lines, start=1):
        if fields is None:
            if line.startswith("PT "):
                fields = {"PT": [line[3:].strip()]}
                tag = "PT"
                block_line = lineno
            continue
        if line.rstrip() == "ER":
            record = _build_wos_record(fields, block_line, ids, warnings)
            if record is not None:
                records.append(record)
            fields = None
            tag = None
            continue
        if line.startswith("   ") and tag is not None:
            value = line[3:].strip()
            if value:
                fields[tag].append(value)
            continue
        if _is_tag_line(line):
            tag = line[:2]
            fields.setdefault(tag, [])
            value = line[3:].strip() if len(line) > 3 else ""
            if value:
                fields[tag].append(value)
        # anything else inside a record is ignored

    if fields is not None:
        warnings.append((block_line, "record without ER terminator dropped"))

    return Corpus(tuple(records), source_description, tuple(warnings))


def _build_wos_record(
    fields: dict[str, list[str]],
    block_line: int,
    ids: _IdAllocator,
    warnings: list[tuple[int, str]],
) -> PublicationRecord | None:
    py_text = " ".join(fields.get("PY", ())).strip()
    year = _parse_year(py_text)
    if year is None:
        warnings.append((block_line, f"record dropped: unusable PY {py_text!r}"))
        return None
    refs = tuple(v for v in fields.get("CR", ()) if v)
    tc_text = " ".join(fields.get("TC", ())).strip()
    times_cited = int(tc_text) if tc_text.isdigit() else None
    au = fields.get("AU", ())
    first_author = normalize_name(au[0].replace(",", " ")) if au else None
    return PublicationRecord(
        record_id=ids.take(" ".join(fields.get("UT", ())), block_line),
        venue=" ".join(fields.get("SO", ())).strip(),
        citing_year=year,
        doc_type=DocType.from_string(" ".join(fields.get("DT", ()))),
        cited_refs_raw=refs,
        times_cited=times_cited,
        first_author=first_author or None,
    )


def parse_wos_tabfile(data: bytes | str | BinaryIO, source_description: str = "wos-tab") -> Corpus:
    """Parse a WoS tab-delimited export (header row of field tags)."""
    text, warnings = _decode(data)
    lines = text.splitlines()
    header_idx = next((i for i, l in enumerate(lines) if l.strip()), None)
    if header_idx is None:
        raise MalformedFile("missing header row", source=source_description)
    header = [h.strip() for h in lines[header_idx].lstrip("﻿").split("\t")]
    col = {name: i for i, name in enumerate(header)}
    if "PY" not in col:
        raise MalformedFile("missing PY column", source=source_description)

    records: list[PublicationRecord] = []
    ids = _IdAllocator(warnings)
    for lineno in range(header_idx + 1, len(lines)):
        line = lines[lineno]
        if not line.strip():
            continue
        cells = line.split("\t")

        def cell(tag: str) -> str:
            i = col.get(tag)
            return cells[i].strip() if i is not None and i < len(cells) else ""

        year = _parse_year(cell("PY"))
        if year is None:
            warnings.append((lineno + 1, f"row dropped: unusable PY {cell('PY')!r}"))
            continue
        refs = tuple(p.strip() for p in cell("CR").split("; ") if p.strip())
        tc_text = cell("TC")
        au_cell = cell("AU").split(";")[0]
        first_author = normalize_name(au_cell.replace(",", " ")) if au_cell.strip() else None
        records.append(
            PublicationRecord(
                record_id=ids.take(cell("UT"), lineno + 1),
                venue=cell("SO"),
                citing_year=year,
                doc_type=DocType.from_string(cell("DT")),
                cited_refs_raw=refs,
                times_cited=int(tc_text) if tc_text.isdigit() else None,
                first_author=first_author or None,
            )
        )
    return Corpus(tuple(records), source_description, tuple(warnings))


_TEST_CSV_COLUMNS = ("record_id", "venue", "citing_year", "doc_type", "cited_refs")


def parse_test_csv(data: bytes | str | BinaryIO, source_description: str = "test-csv") -> Corpus:
    """Parse the compact CSV test format (RFC-4180, header row required)."""
    text, warnings = _decode(data)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise MalformedFile("missing header row", source=source_description)
    header = [h.strip() for h in rows[0]]
    missing = [c for c in _TEST_CSV_COLUMNS if c not in header]
    if missing:
        raise MalformedFile(f"missing columns: {', '.join(missing)}", source=source_description)
    col = {name: i for i, name in enumerate(header)}

    records: list[PublicationRecord] = []
    ids = _IdAllocator(warnings)
    for rownum, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue

        def cell(name: str) -> str:
            i = col.get(name)
            return row[i].strip() if i is not None and i < len(row) else ""

        year = _parse_year(cell("citing_year"))
        if year is None:
            warnings.append((rownum, f"row dropped: unusable citing_year {cell('citing_year')!r}"))
            continue
        refs = tuple(p.strip() for p in cell("cited_refs").split("|") if p.strip())
        tc_text = cell("times_cited")
        author = cell("first_author")
        records.append(
            PublicationRecord(
                record_id=ids.take(cell("record_id"), rownum),
                venue=cell("venue"),
                citing_year=year,
                doc_type=DocType.from_string(cell("doc_type")),
                cited_refs_raw=refs,
                times_cited=int(tc_text) if tc_text.isdigit() else None,
                first_author=normalize_name(author.replace(",", " ")) or None if author else None,
            )
        )
    return Corpus(tuple(records), source_description, tuple(warnings))


def corpus_to_test_csv(corpus: Corpus) -> str:
    """Serialize a corpus to the CSV test format (lossless round-trip)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_TEST_CSV_COLUMNS + ("times_cited", "first_author"))
    for r in corpus.records:
        writer.writerow(
            [
                r.record_id,
                r.venue,
                r.citing_year,
                r.doc_type.value,
                "|".join(r.cited_refs_raw),
                "" if r.times_cited is None else r.times_cited,
                r.first_author or "",
            ]
        )
    return out.getvalue()


def filter_records(
    corpus: Corpus,
    doc_types: Iterable[DocType] | None = None,
    year_range: tuple[int, int] | None = None,
) -> Corpus:
    """Return a new corpus holding exactly the records matching both predicates."""
    if year_range is not None:
        lo, hi = year_range
        if lo > hi:
            raise ValueError(f"year_range lower bound {lo} exceeds upper bound {hi}")
    types = frozenset(doc_types) if doc_types is not None else None
    kept = tuple(
        r
        for r in corpus.records
        if (types is None or r.doc_type in types)
        and (year_range is None or year_range[0] <= r.citing_year <= year_range[1])
    )
    return Corpus(kept, corpus.source_description, corpus.ingest_warnings)
