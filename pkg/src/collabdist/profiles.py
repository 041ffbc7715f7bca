"""Per-country aggregation of the filtered corpus and country metadata.

country_metadata.csv columns: iso3, gdp_per_capita, po, ua, ic, mf, lt, ir,
english (0/1). An empty cell means the value is unknown and every indicator
that needs it is masked downstream.

conferences.tsv columns: conference_id, latitude, longitude.
"""

from __future__ import annotations

import csv
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .geo import CountryBoundary, GeoPoint, resolve_country
from .ingest import Affiliation, PublicationRecord

HOFSTEDE_DIMENSIONS = ("PO", "UA", "IC", "MF", "LT", "IR")


@dataclass(frozen=True)
class CountryMetadata:
    country: str
    gdp_per_capita: float | None
    hofstede: dict[str, float | None]
    english_official: bool | None


@dataclass
class CountryProfile:
    country: str
    centroid: GeoPoint | None
    gdp_per_capita: float | None
    hofstede: dict[str, float | None]
    english_official: bool | None
    n_papers: int = 0
    n_international: int = 0
    n_citations: int = 0
    n_intl_citations: int = 0
    n_affiliations: int = 0
    n_conferences: int = 0
    industry_share: float = 0.0
    warnings: list[str] = field(default_factory=list)


def country_centroid(weighted_points: list[tuple[GeoPoint, int]]) -> GeoPoint:
    """Paper-count-weighted mean coordinate of a country's affiliations.

    Longitudes are unwrapped to the shortest arc around their weighted
    circular mean before averaging, so clusters straddling the antimeridian
    average correctly.
    """
    if not weighted_points:
        raise ValueError("no_affiliations")
    total = float(sum(w for _, w in weighted_points))
    if total <= 0:
        raise ValueError("no_affiliations")
    lat = sum(p.latitude * w for p, w in weighted_points) / total
    sin_sum = sum(math.sin(math.radians(p.longitude)) * w for p, w in weighted_points)
    cos_sum = sum(math.cos(math.radians(p.longitude)) * w for p, w in weighted_points)
    anchor = math.degrees(math.atan2(sin_sum, cos_sum))
    lon = (
        sum((anchor + ((p.longitude - anchor + 180.0) % 360.0 - 180.0)) * w for p, w in weighted_points)
        / total
    )
    if lon > 180.0:
        lon -= 360.0
    elif lon < -180.0:
        lon += 360.0
    return GeoPoint(latitude=lat, longitude=lon)


def load_country_metadata(path: str) -> dict[str, CountryMetadata]:
    def parse(cell: str) -> float | None:
        cell = cell.strip()
        return float(cell) if cell else None

    out: dict[str, CountryMetadata] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            iso3 = row["iso3"].strip()
            english_cell = row.get("english", "").strip()
            out[iso3] = CountryMetadata(
                country=iso3,
                gdp_per_capita=parse(row.get("gdp_per_capita", "")),
                hofstede={
                    dim: parse(row.get(dim.lower(), "")) for dim in HOFSTEDE_DIMENSIONS
                },
                english_official=bool(int(english_cell)) if english_cell else None,
            )
    return out


def conferences_per_country(
    conferences_file: str,
    boundaries: list[CountryBoundary],
) -> tuple[dict[str, int], int]:
    """Attribute each conference row to a country; returns (counts, unresolved)."""
    counts: Counter = Counter()
    unresolved = 0
    with open(conferences_file, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter="\t")
        for row in reader:
            try:
                point = GeoPoint(latitude=float(row["latitude"]), longitude=float(row["longitude"]))
            except (ValueError, KeyError):
                unresolved += 1
                continue
            code = resolve_country(point, boundaries)
            if code is None:
                unresolved += 1
            else:
                counts[code] += 1
    return dict(counts), unresolved


def paper_countries(
    record: PublicationRecord,
    affiliations_by_id: dict[str, Affiliation],
) -> frozenset[str]:
    """Distinct resolved countries of one paper's affiliations."""
    return frozenset(
        aff.country
        for aid in record.affiliation_ids
        if (aff := affiliations_by_id.get(aid)) is not None and aff.country is not None
    )


def build_profiles(
    records: list[PublicationRecord],
    affiliations: list[Affiliation],
    metadata: dict[str, CountryMetadata],
    conference_counts: dict[str, int] | None = None,
) -> list[CountryProfile]:
    """One profile per country appearing in the filtered corpus.

    A paper counts once per country regardless of how many of its
    affiliations sit there; an international paper is one spanning at least
    two countries.
    """
    affiliations_by_id = {a.affiliation_id: a for a in affiliations}
    conference_counts = conference_counts or {}

    papers: dict[str, set[str]] = defaultdict(set)
    intl_papers: dict[str, set[str]] = defaultdict(set)
    citations: Counter = Counter()
    intl_citations: Counter = Counter()
    country_affils: dict[str, set[str]] = defaultdict(set)
    industry_papers: dict[str, set[str]] = defaultdict(set)
    affil_paper_count: Counter = Counter()

    for record in records:
        countries = paper_countries(record, affiliations_by_id)
        international = len(countries) >= 2
        seen_affils = set()
        for aid in record.affiliation_ids:
            aff = affiliations_by_id.get(aid)
            if aff is None or aff.country is None:
                continue
            country_affils[aff.country].add(aid)
            if aid not in seen_affils:
                affil_paper_count[aid] += 1
                seen_affils.add(aid)
            if aff.industrial:
                industry_papers[aff.country].add(record.paper_id)
        for country in countries:
            papers[country].add(record.paper_id)
            citations[country] += record.citation_count
            if international:
                intl_papers[country].add(record.paper_id)
                intl_citations[country] += record.citation_count

    profiles: list[CountryProfile] = []
    for country in sorted(papers):
        meta = metadata.get(country)
        warnings: list[str] = []
        if meta is None:
            warnings.append("missing_metadata")
        weighted = [
            (aff.location, affil_paper_count[aid])
            for aid in sorted(country_affils[country])
            if (aff := affiliations_by_id[aid]).location is not None
            and affil_paper_count[aid] > 0
        ]
        centroid = country_centroid(weighted) if weighted else None
        if centroid is None:
            warnings.append("no_located_affiliations")
        n_papers = len(papers[country])
        profiles.append(
            CountryProfile(
                country=country,
                centroid=centroid,
                gdp_per_capita=meta.gdp_per_capita if meta else None,
                hofstede=dict(meta.hofstede)
                if meta
                else {dim: None for dim in HOFSTEDE_DIMENSIONS},
                english_official=meta.english_official if meta else None,
                n_papers=n_papers,
                n_international=len(intl_papers[country]),
                n_citations=citations[country],
                n_intl_citations=intl_citations[country],
                n_affiliations=len(country_affils[country]),
                n_conferences=conference_counts.get(country, 0),
                industry_share=len(industry_papers[country]) / n_papers if n_papers else 0.0,
                warnings=warnings,
            )
        )
    return profiles
