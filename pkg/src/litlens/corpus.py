"""Data model and parsers for the enriched bibliographic dataset.

Two input files make up a corpus:

* a field-delimited record file (a superset of the classic two-letter-tag
  export format: ``PY 2020`` lines, indented continuation lines, records
  terminated by ``ER``), and
* a tab-separated citation-context sidecar, one context per line.

Parsers never raise on malformed content; every skipped block or line is
reported as a diagnostic so that ``#parsed + #skipped == #blocks`` always
holds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

MONTH_ABBR = ["JAN", "FEB", "MAR", "APR", "MAY", "JUN",
              "JUL", "AUG", "SEP", "OCT", "NOV", "DEC"]
_MONTH_INDEX = {abbr: i + 1 for i, abbr in enumerate(MONTH_ABBR)}

# Tags mapped onto Record fields. Anything else round-trips through extras.
_SCALAR_TAGS = {"UT", "MG", "TI", "SO", "AB", "PY", "PM", "DI", "TC"}
_LIST_TAGS = {"CR"}

END_OF_RECORD = "ER"
END_OF_FILE = "EF"


def month_label(year: int, month: int) -> str:
    """Render a (year, month) pair as the canonical slice label, e.g. 2020-FEB."""
    return f"{year}-{MONTH_ABBR[month - 1]}"


def parse_month_token(token: str) -> int | None:
    """Accept FEB / feb / 02 / 2 as month designators."""
    token = token.strip()
    if not token:
        return None
    upper = token.upper()[:3]
    if upper in _MONTH_INDEX:
        return _MONTH_INDEX[upper]
    if token.isdigit():
        m = int(token)
        if 1 <= m <= 12:
            return m
    return None


def parse_month_arg(text: str) -> tuple[int, int]:
    """Parse a month argument like 2020-06 or 2020-JUN into (year, month)."""
    m = re.fullmatch(r"(\d{4})-(\w+)", text.strip())
    if m:
        month = parse_month_token(m.group(2))
        if month is not None:
            return int(m.group(1)), month
    raise ValueError(f"not a month: {text!r} (expected YYYY-MM or YYYY-MMM)")


def months_between(start: tuple[int, int], end: tuple[int, int]) -> list[tuple[int, int]]:
    """Inclusive list of (year, month) pairs from start to end."""
    if start > end:
        raise ValueError(f"month range start {start} after end {end}")
    out = []
    y, m = start
    while (y, m) <= end:
        out.append((y, m))
        m += 1
        if m > 12:
            y, m = y + 1, 1
    return out


def prev_month(ym: tuple[int, int]) -> tuple[int, int]:
    y, m = ym
    return (y - 1, 12) if m == 1 else (y, m - 1)


@dataclass
class Record:
    """One citing publication."""

    id: str
    year: int
    title: str = ""
    month: int | None = None  # None: unknown, slices as December of `year`
    venue: str | None = None
    abstract: str | None = None
    doi: str | None = None
    refs: list[str] = field(default_factory=list)
    citation_count: int | None = None
    extras: dict[str, list[str]] = field(default_factory=dict)

    @property
    def month_imputed(self) -> bool:
        return self.month is None

    def date_key(self) -> tuple[int, int]:
        """The (year, month) this record slices into."""
        return (self.year, self.month if self.month is not None else 12)


@dataclass
class CitationContext:
    """One text passage in which `citing_id` cites `cited_id`."""

    citing_id: str
    cited_id: str
    text: str
    ordinal: int = 0


@dataclass
class TimeSlice:
    label: str
    year: int
    month: int
    record_ids: list[str] = field(default_factory=list)


@dataclass
class Diagnostic:
    """A non-fatal parse or validation problem."""

    kind: str  # MalformedRecord | MalformedLine | UnresolvedCiting | YearOutOfWindow | OutOfRange
    message: str
    location: str = ""

    def __str__(self) -> str:
        where = f" at {self.location}" if self.location else ""
        return f"{self.kind}{where}: {self.message}"


@dataclass
class RecordParseResult:
    records: list[Record]
    diagnostics: list[Diagnostic]
    block_count: int


@dataclass
class SidecarParseResult:
    contexts: list[CitationContext]
    raw_count: int
    unique_count: int
    diagnostics: list[Diagnostic]


@dataclass
class Corpus:
    """Immutable bundle of records plus citation contexts.

    Every context's citing_id resolves to a record; cited ids may point
    outside the corpus (references beyond the retrieved set are legal).
    """

    records: dict[str, Record]
    contexts: list[CitationContext]

    @property
    def coverage(self) -> float:
        """Fraction of citing records (records with >=1 reference) having >=1 context."""
        citing = [r for r in self.records.values() if r.refs]
        if not citing:
            return 0.0
        with_ctx = {c.citing_id for c in self.contexts}
        return sum(1 for r in citing if r.id in with_ctx) / len(citing)

    def contexts_by_citing(self) -> dict[str, list[CitationContext]]:
        out: dict[str, list[CitationContext]] = {}
        for c in self.contexts:
            out.setdefault(c.citing_id, []).append(c)
        return out

    def contexts_by_cited(self) -> dict[str, list[CitationContext]]:
        out: dict[str, list[CitationContext]] = {}
        for c in self.contexts:
            out.setdefault(c.cited_id, []).append(c)
        return out

    def date_span(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """(earliest, latest) slice month across records."""
        if not self.records:
            raise ValueError("empty corpus has no date span")
        keys = [r.date_key() for r in self.records.values()]
        return min(keys), max(keys)


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def parse_field_records(text: str, year_window: tuple[int, int] = (1900, 2100)) -> RecordParseResult:
    """Parse a field-delimited record document.

    Field tags are two uppercase characters at line start followed by a space;
    continuation lines are indented. ``ER`` ends a record, ``EF`` ends the
    file. Records missing an id or a parsable year are skipped with a
    MalformedRecord diagnostic. Unknown tags are preserved verbatim in
    Record.extras.
    """
    records: list[Record] = []
    diagnostics: list[Diagnostic] = []
    block_count = 0

    fields: dict[str, list[str]] = {}
    current_tag: str | None = None
    block_start_line = 0
    in_block = False

    def flush(end_line: int) -> None:
        nonlocal fields, current_tag, in_block, block_count
        if not in_block:
            return
        block_count += 1
        rec, diag = _record_from_fields(fields, f"line {block_start_line}", year_window)
        if rec is not None:
            records.append(rec)
        if diag is not None:
            diagnostics.append(diag)
        fields = {}
        current_tag = None
        in_block = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        tag_match = re.match(r"^([A-Z0-9]{2})( |$)", raw)
        if tag_match and not raw.startswith(" "):
            tag = tag_match.group(1)
            value = raw[3:].strip() if len(raw) > 3 else ""
            if tag == END_OF_FILE:
                flush(lineno)
                break
            if tag == END_OF_RECORD:
                flush(lineno)
                continue
            if not in_block:
                in_block = True
                block_start_line = lineno
            current_tag = tag
            fields.setdefault(tag, []).append(value)
        else:
            # continuation line: new item for list tags, text extension otherwise
            value = raw.strip()
            if current_tag is None or not in_block:
                continue
            if current_tag in _LIST_TAGS:
                fields[current_tag].append(value)
            else:
                fields[current_tag][-1] += " " + value
    flush(len(text.splitlines()))

    return RecordParseResult(records, diagnostics, block_count)


def _record_from_fields(fields: dict[str, list[str]], location: str,
                        year_window: tuple[int, int]) -> tuple[Record | None, Diagnostic | None]:
    def first(tag: str) -> str | None:
        vals = fields.get(tag)
        return vals[0] if vals else None

    rec_id = first("UT") or first("MG")
    if not rec_id:
        return None, Diagnostic("MalformedRecord", "missing id (UT/MG)", location)

    year_text = first("PY")
    if year_text is None or not year_text.strip().lstrip("-").isdigit():
        return None, Diagnostic("MalformedRecord", f"missing or bad year {year_text!r}", location)
    year = int(year_text)

    month = parse_month_token(first("PM") or "")

    refs: list[str] = []
    seen = set()
    for line in fields.get("CR", []):
        for token in line.split():
            if token and token not in seen:
                seen.add(token)
                refs.append(token)

    tc_text = first("TC")
    citation_count = int(tc_text) if tc_text and tc_text.isdigit() else None

    extras = {tag: list(vals) for tag, vals in fields.items()
              if tag not in _SCALAR_TAGS and tag not in _LIST_TAGS}

    rec = Record(
        id=rec_id.strip(),
        year=year,
        month=month,
        title=first("TI") or "",
        venue=first("SO"),
        abstract=first("AB"),
        doi=first("DI"),
        refs=refs,
        citation_count=citation_count,
        extras=extras,
    )
    diag = None
    lo, hi = year_window
    if not lo <= year <= hi:
        diag = Diagnostic("YearOutOfWindow",
                          f"record {rec.id} year {year} outside plausible window {lo}..{hi}",
                          location)
    return rec, diag


def serialize_records(records: list[Record]) -> str:
    """Canonical serialization; parse(serialize(rs)) == rs for canonical records."""
    lines: list[str] = []
    for rec in records:
        lines.append(f"UT {_oneline(rec.id)}")
        if rec.title:
            lines.append(f"TI {_oneline(rec.title)}")
        if rec.venue:
            lines.append(f"SO {_oneline(rec.venue)}")
        if rec.abstract:
            lines.append(f"AB {_oneline(rec.abstract)}")
        lines.append(f"PY {rec.year}")
        if rec.month is not None:
            lines.append(f"PM {MONTH_ABBR[rec.month - 1]}")
        if rec.doi:
            lines.append(f"DI {_oneline(rec.doi)}")
        if rec.citation_count is not None:
            lines.append(f"TC {rec.citation_count}")
        if rec.refs:
            lines.append(f"CR {rec.refs[0]}")
            for ref in rec.refs[1:]:
                lines.append(f"   {ref}")
        for tag in sorted(rec.extras):
            for value in rec.extras[tag]:
                lines.append(f"{tag} {_oneline(value)}".rstrip())
        lines.append(END_OF_RECORD)
    lines.append(END_OF_FILE)
    return "\n".join(lines) + "\n"


def _oneline(text: str) -> str:
    return " ".join(str(text).split())


def parse_context_sidecar(text: str) -> SidecarParseResult:
    """Parse the tab-separated context sidecar: citing<TAB>cited<TAB>passage.

    Exact duplicates (same citing, cited and whitespace-normalized passage)
    are dropped; the result tracks raw vs unique counts. Ordinals number the
    kept contexts of each (citing, cited) pair in file order.
    """
    contexts: list[CitationContext] = []
    diagnostics: list[Diagnostic] = []
    seen: set[tuple[str, str, str]] = set()
    pair_counts: dict[tuple[str, str], int] = {}
    raw_count = 0

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            diagnostics.append(Diagnostic(
                "MalformedLine", f"expected 3 tab-separated fields, got {len(parts)}",
                f"line {lineno}"))
            continue
        citing, cited, passage = (p.strip() for p in parts)
        if not citing or not cited or not passage:
            diagnostics.append(Diagnostic(
                "MalformedLine", "empty field", f"line {lineno}"))
            continue
        raw_count += 1
        key = (citing, cited, _normalize_ws(passage))
        if key in seen:
            continue
        seen.add(key)
        pair = (citing, cited)
        ordinal = pair_counts.get(pair, 0)
        pair_counts[pair] = ordinal + 1
        contexts.append(CitationContext(citing, cited, passage, ordinal))

    return SidecarParseResult(contexts, raw_count, len(contexts), diagnostics)


def serialize_contexts(contexts: list[CitationContext]) -> str:
    """Write the sidecar; tabs inside passages become spaces."""
    lines = []
    for c in contexts:
        passage = c.text.replace("\t", " ")
        lines.append(f"{c.citing_id}\t{c.cited_id}\t{passage}")
    return "\n".join(lines) + ("\n" if lines else "")


def assemble_corpus(records: list[Record],
                    contexts: list[CitationContext]) -> tuple[Corpus, list[Diagnostic]]:
    """Build a Corpus, dropping contexts whose citing article is unknown."""
    by_id: dict[str, Record] = {}
    diagnostics: list[Diagnostic] = []
    for rec in records:
        if rec.id in by_id:
            diagnostics.append(Diagnostic("MalformedRecord", f"duplicate record id {rec.id}"))
            continue
        by_id[rec.id] = rec
    kept = []
    for c in contexts:
        if c.citing_id not in by_id:
            diagnostics.append(Diagnostic(
                "UnresolvedCiting", f"context cites from unknown record {c.citing_id}"))
            continue
        kept.append(c)
    return Corpus(by_id, kept), diagnostics


def slice_by_month(corpus: Corpus, start: tuple[int, int],
                   end: tuple[int, int]) -> tuple[list[TimeSlice], list[Diagnostic]]:
    """Partition corpus records into one slice per month of [start, end].

    Slices are emitted for empty months too, so downstream merging stays
    positional. Records outside the range are reported in an OutOfRange
    diagnostic, never silently dropped.
    """
    slices = [TimeSlice(month_label(y, m), y, m) for y, m in months_between(start, end)]
    index = {(s.year, s.month): s for s in slices}
    diagnostics: list[Diagnostic] = []
    for rec_id in sorted(corpus.records):
        rec = corpus.records[rec_id]
        key = rec.date_key()
        if key in index:
            index[key].record_ids.append(rec_id)
        else:
            diagnostics.append(Diagnostic(
                "OutOfRange", f"record {rec_id} dated {month_label(*key)} outside slicing range"))
    return slices, diagnostics
