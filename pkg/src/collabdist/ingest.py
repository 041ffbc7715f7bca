"""Corpus parsing, record filtering, and affiliation flagging.

Input formats (tab-separated, UTF-8, header row required):

papers.tsv
    paper_id, year, doc_type, citation_count, affiliation_ids
    (affiliation_ids is a semicolon-separated list; one entry per authorship)

affiliations.tsv
    affiliation_id, name, latitude, longitude, iso3
    (iso3 may be empty; rows with a pre-resolved iso3 bypass geocoding)

industrial_ids.txt
    one affiliation_id per line
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field, replace

from .geo import CountryBoundary, GeoPoint, resolve_country

ADMITTED_DOC_TYPES = frozenset({"journal", "conference", "patent"})
YEAR_MIN = 1950
YEAR_MAX = 2019

PAPER_COLUMNS = ("paper_id", "year", "doc_type", "citation_count", "affiliation_ids")
AFFILIATION_COLUMNS = ("affiliation_id", "name", "latitude", "longitude", "iso3")


@dataclass(frozen=True)
class PublicationRecord:
    paper_id: str
    year: int
    doc_type: str
    citation_count: int
    affiliation_ids: tuple[str, ...]


@dataclass(frozen=True)
class Affiliation:
    affiliation_id: str
    name: str
    location: GeoPoint | None
    country: str | None
    industrial: bool = False


@dataclass
class ParsedCorpus:
    records: list[PublicationRecord]
    affiliations: list[Affiliation]
    paper_drops: Counter = field(default_factory=Counter)
    affiliation_drops: Counter = field(default_factory=Counter)

    @property
    def n_raw_papers(self) -> int:
        return len(self.records) + sum(self.paper_drops.values())


def filter_record(row: dict[str, str]) -> tuple[PublicationRecord | None, str | None]:
    """Apply the admission rules to one parsed row.

    Total function: returns (record, None) on keep or (None, reason) on drop.
    Unparseable numeric fields are the caller's concern ("malformed"); a field
    that is absent or empty counts as missing metadata.
    """
    for column in PAPER_COLUMNS:
        if not (row.get(column) or "").strip():
            return None, "missing_metadata"
    try:
        year = int(row["year"])
        citations = int(row["citation_count"])
    except ValueError:
        return None, "malformed"
    if citations < 0:
        return None, "malformed"
    if row["doc_type"] not in ADMITTED_DOC_TYPES:
        return None, "doc_type"
    if not YEAR_MIN <= year <= YEAR_MAX:
        return None, "year_out_of_range"
    affiliation_ids = tuple(a.strip() for a in row["affiliation_ids"].split(";") if a.strip())
    if len(affiliation_ids) < 2:
        return None, "single_author"
    record = PublicationRecord(
        paper_id=row["paper_id"],
        year=year,
        doc_type=row["doc_type"],
        citation_count=citations,
        affiliation_ids=affiliation_ids,
    )
    return record, None


def _read_tsv(path: str, required: tuple[str, ...]):
    """Yield (row_dict, None) or (None, drop_reason) per data row."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, header row required") from None
        missing = [c for c in required if c not in header]
        if missing:
            raise ValueError(f"{path}: missing required columns {missing}")
        for raw in reader:
            if not raw:
                continue
            if len(raw) != len(header):
                yield None, "malformed"
                continue
            yield dict(zip(header, raw)), None


def parse_corpus(papers_file: str, affiliations_file: str) -> ParsedCorpus:
    """Parse both input files, filter papers, and count every dropped row."""
    records: list[PublicationRecord] = []
    paper_drops: Counter = Counter()
    for row, reason in _read_tsv(papers_file, PAPER_COLUMNS):
        if row is None:
            paper_drops[reason] += 1
            continue
        record, drop = filter_record(row)
        if record is None:
            paper_drops[drop] += 1
        else:
            records.append(record)

    affiliations: list[Affiliation] = []
    affiliation_drops: Counter = Counter()
    for row, reason in _read_tsv(affiliations_file, AFFILIATION_COLUMNS):
        if row is None:
            affiliation_drops[reason] += 1
            continue
        iso3 = row["iso3"].strip() or None
        lat_s, lon_s = row["latitude"].strip(), row["longitude"].strip()
        location: GeoPoint | None = None
        if lat_s or lon_s:
            try:
                location = GeoPoint(latitude=float(lat_s), longitude=float(lon_s))
            except ValueError:
                affiliation_drops["malformed"] += 1
                continue
        elif iso3 is None:
            affiliation_drops["missing_location"] += 1
            continue
        affiliations.append(
            Affiliation(
                affiliation_id=row["affiliation_id"],
                name=row["name"],
                location=location,
                country=iso3,
            )
        )
    return ParsedCorpus(
        records=records,
        affiliations=affiliations,
        paper_drops=paper_drops,
        affiliation_drops=affiliation_drops,
    )


def resolve_affiliation_countries(
    affiliations: list[Affiliation],
    boundaries: list[CountryBoundary],
) -> tuple[list[Affiliation], int]:
    """Fill in missing country codes by point-in-polygon lookup.

    Rows that already carry an iso3 code are untouched. Returns the updated
    list and the number of affiliations left unresolved.
    """
    out: list[Affiliation] = []
    unresolved = 0
    for aff in affiliations:
        if aff.country is None and aff.location is not None:
            code = resolve_country(aff.location, boundaries)
            if code is None:
                unresolved += 1
            aff = replace(aff, country=code)
        elif aff.country is None:
            unresolved += 1
        out.append(aff)
    return out, unresolved


def flag_industrial(
    affiliations: list[Affiliation],
    industrial_ids_file: str,
) -> tuple[list[Affiliation], int]:
    """Set the industrial flag for affiliations listed in the id file.

    Returns the updated list and a count of listed ids that match no
    affiliation (warning, not fatal).
    """
    with open(industrial_ids_file, encoding="utf-8") as fh:
        listed = {line.strip() for line in fh if line.strip()}
    known = {a.affiliation_id for a in affiliations}
    unknown = len(listed - known)
    out = [replace(a, industrial=a.affiliation_id in listed) for a in affiliations]
    return out, unknown
