"""Annual collaboration shares, mean separations, trend correlations, and
distance-binned co-publication densities."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .distances import DISTANCE_COLUMNS, PairFeatures
from .ingest import Affiliation, PublicationRecord
from .profiles import paper_countries


@dataclass
class AnnualSeries:
    year: int
    intl_paper_share: float
    intl_citation_share: float
    mean_distance: dict[str, float]


@dataclass
class CorrelationReport:
    indicator: str
    pearson_r: float
    pearson_p: float
    spearman_rho: float
    spearman_p: float
    n_years: int

    @property
    def pearson_stars(self) -> str:
        return significance_stars(self.pearson_p)

    @property
    def spearman_stars(self) -> str:
        return significance_stars(self.spearman_p)


def significance_stars(p: float) -> str:
    if math.isnan(p):
        return ""
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def annual_shares(
    records: list[PublicationRecord],
    affiliations_by_id: dict[str, Affiliation],
) -> list[AnnualSeries]:
    """Per year: share of papers spanning >= 2 countries and share of
    citations received by those papers. Years without papers are omitted."""
    papers: dict[int, int] = defaultdict(int)
    intl: dict[int, int] = defaultdict(int)
    citations: dict[int, int] = defaultdict(int)
    intl_citations: dict[int, int] = defaultdict(int)
    for record in records:
        papers[record.year] += 1
        citations[record.year] += record.citation_count
        if len(paper_countries(record, affiliations_by_id)) >= 2:
            intl[record.year] += 1
            intl_citations[record.year] += record.citation_count
    series = []
    for year in sorted(papers):
        series.append(
            AnnualSeries(
                year=year,
                intl_paper_share=intl[year] / papers[year],
                intl_citation_share=(
                    intl_citations[year] / citations[year] if citations[year] else 0.0
                ),
                mean_distance={},
            )
        )
    return series


def annual_mean_distances(
    records: list[PublicationRecord],
    affiliations_by_id: dict[str, Affiliation],
    pair_features: list[PairFeatures],
    indicators: tuple[str, ...] = DISTANCE_COLUMNS,
) -> list[AnnualSeries]:
    """Fill the mean_distance maps of annual_shares' output.

    Each international paper first averages every indicator over all distinct
    country pairs it spans (masked pairs skipped); the per-year value is the
    mean over that year's papers.
    """
    lookup = {pf.pair: pf for pf in pair_features}
    per_year: dict[int, dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    for record in records:
        countries = sorted(paper_countries(record, affiliations_by_id))
        if len(countries) < 2:
            continue
        per_indicator: dict[str, list[float]] = defaultdict(list)
        for i, a in enumerate(countries):
            for b in countries[i + 1 :]:
                pf = lookup.get((a, b))
                if pf is None:
                    continue
                for name in indicators:
                    value = pf.get(name)
                    if value is not None:
                        per_indicator[name].append(value)
        for name, values in per_indicator.items():
            per_year[record.year][name].append(sum(values) / len(values))

    series = annual_shares(records, affiliations_by_id)
    for entry in series:
        entry.mean_distance = {
            name: sum(vals) / len(vals)
            for name, vals in sorted(per_year[entry.year].items())
            if vals
        }
    return series


def _pearson_with_p(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    n = len(x)
    sx, sy = x.std(), y.std()
    if sx == 0 or sy == 0:
        return float("nan"), float("nan")
    r = float(np.corrcoef(x, y)[0, 1])
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return r, 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    p = 2.0 * stats.t.sf(abs(t), df=n - 2)
    return r, float(p)


def year_correlations(
    series: list[AnnualSeries],
    indicators: tuple[str, ...] = DISTANCE_COLUMNS,
) -> list[CorrelationReport]:
    """Pearson and Spearman correlation of each indicator's annual mean with
    the year, with two-sided p-values from the t transform (df = n-2).
    Spearman is Pearson on mid-ranks. Constant series report NaN."""
    reports = []
    for name in indicators:
        points = [
            (entry.year, entry.mean_distance[name])
            for entry in series
            if name in entry.mean_distance
        ]
        if len(points) < 3:
            continue
        years = np.array([p[0] for p in points], dtype=float)
        values = np.array([p[1] for p in points], dtype=float)
        r, p_r = _pearson_with_p(years, values)
        rho, p_rho = _pearson_with_p(stats.rankdata(years), stats.rankdata(values))
        reports.append(
            CorrelationReport(
                indicator=name,
                pearson_r=r,
                pearson_p=p_r,
                spearman_rho=rho,
                spearman_p=p_rho,
                n_years=len(points),
            )
        )
    return reports


def copub_distance_density(
    pair_features: list[PairFeatures],
    indicator: str,
    bins: int = 30,
    exclude: str | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Joint-paper-weighted histogram of an indicator over country pairs,
    normalized to unit mass. Returns (bin_edges, masses).

    ``exclude`` drops every pair containing that country before normalizing.
    """
    if bins < 2:
        raise ValueError("bins must be >= 2")
    values, weights = [], []
    for pf in pair_features:
        if exclude is not None and exclude in pf.pair:
            continue
        value = pf.get(indicator)
        if value is None:
            continue
        values.append(value)
        weights.append(pf.joint_papers)
    total = sum(weights)
    if total <= 0:
        raise ValueError("no_copublications")
    masses, edges = np.histogram(values, bins=bins, weights=weights)
    return edges, masses / total
