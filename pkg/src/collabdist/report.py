"""Writers for every delimited output and the regression report.

All CSVs are UTF-8 with a header row, '.' decimal separator, and numbers
rendered to 10 significant digits, so repeated runs are byte-comparable.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

import numpy as np

from .distances import FEATURE_COLUMNS, PairFeatures
from .ingest import Affiliation, PublicationRecord
from .network import CollabNetwork
from .profiles import HOFSTEDE_DIMENSIONS, CountryProfile
from .regression import FitResult, PeriodReport
from .trends import AnnualSeries, CorrelationReport


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        if value != value:  # NaN
            return "nan"
        return format(value, ".10g")
    return str(value)


def write_csv(path: Path, header: Iterable[str], rows: Iterable[Iterable]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def write_tsv(path: Path, header: Iterable[str], rows: Iterable[Iterable]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def write_corpus(path: Path, records: list[PublicationRecord]) -> None:
    # same columns as papers.tsv so the intermediate can be re-ingested
    write_tsv(
        path,
        ("paper_id", "year", "doc_type", "citation_count", "affiliation_ids"),
        (
            (r.paper_id, r.year, r.doc_type, r.citation_count, ";".join(r.affiliation_ids))
            for r in records
        ),
    )


def write_affiliations(path: Path, affiliations: list[Affiliation]) -> None:
    write_tsv(
        path,
        ("affiliation_id", "name", "latitude", "longitude", "iso3", "industrial"),
        (
            (
                a.affiliation_id,
                a.name,
                a.location.latitude if a.location else None,
                a.location.longitude if a.location else None,
                a.country or "",
                a.industrial,
            )
            for a in affiliations
        ),
    )


def write_drop_report(path: Path, paper_drops: dict, affiliation_drops: dict) -> None:
    rows = [("paper", reason, count) for reason, count in sorted(paper_drops.items())]
    rows += [("affiliation", reason, count) for reason, count in sorted(affiliation_drops.items())]
    write_csv(path, ("kind", "reason", "count"), rows)


def write_profiles(path: Path, profiles: list[CountryProfile]) -> None:
    header = (
        ("country", "centroid_lat", "centroid_lon", "gdp_per_capita")
        + tuple(d.lower() for d in HOFSTEDE_DIMENSIONS)
        + (
            "english",
            "n_papers",
            "n_international",
            "n_citations",
            "n_intl_citations",
            "n_affiliations",
            "n_conferences",
            "industry_share",
        )
    )
    rows = []
    for p in sorted(profiles, key=lambda q: q.country):
        rows.append(
            (
                p.country,
                p.centroid.latitude if p.centroid else None,
                p.centroid.longitude if p.centroid else None,
                p.gdp_per_capita,
            )
            + tuple(p.hofstede[d] for d in HOFSTEDE_DIMENSIONS)
            + (
                p.english_official,
                p.n_papers,
                p.n_international,
                p.n_citations,
                p.n_intl_citations,
                p.n_affiliations,
                p.n_conferences,
                p.industry_share,
            )
        )
    write_csv(path, header, rows)


def write_pair_features(path: Path, pairs: list[PairFeatures]) -> None:
    header = ("iso_a", "iso_b") + FEATURE_COLUMNS + ("joint_papers", "DIC", "missing_mask")
    rows = []
    for pf in sorted(pairs, key=lambda q: q.pair):
        rows.append(
            (pf.pair[0], pf.pair[1])
            + tuple(pf.features.get(name) for name in FEATURE_COLUMNS)
            + (pf.joint_papers, pf.dic, ";".join(sorted(pf.missing)))
        )
    write_csv(path, header, rows)


def read_pair_features(path: Path) -> list[PairFeatures]:
    pairs: list[PairFeatures] = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            features = {
                name: float(row[name]) for name in FEATURE_COLUMNS if row[name] != ""
            }
            missing = frozenset(m for m in row["missing_mask"].split(";") if m)
            pairs.append(
                PairFeatures(
                    pair=(row["iso_a"], row["iso_b"]),
                    features=features,
                    missing=missing,
                    joint_papers=int(row["joint_papers"]),
                    dic=float(row["DIC"]),
                )
            )
    return pairs


def write_network(path: Path, network: CollabNetwork) -> None:
    write_csv(
        path,
        ("iso_a", "iso_b", "joint_papers"),
        ((a, b, c) for (a, b), c in sorted(network.edges.items())),
    )


def write_centrality(path: Path, scores: dict[str, dict[str, float]]) -> None:
    countries = sorted(scores["rdc"])
    write_csv(
        path,
        ("country", "rdc", "betweenness", "closeness"),
        (
            (c, scores["rdc"][c], scores["betweenness"][c], scores["closeness"][c])
            for c in countries
        ),
    )


def write_trends(path: Path, series: list[AnnualSeries], indicators: tuple[str, ...]) -> None:
    header = ("year", "intl_paper_share", "intl_citation_share") + tuple(
        f"mean_{name}" for name in indicators
    )
    rows = (
        (s.year, s.intl_paper_share, s.intl_citation_share)
        + tuple(s.mean_distance.get(name) for name in indicators)
        for s in series
    )
    write_csv(path, header, rows)


def write_correlations(path: Path, reports: list[CorrelationReport]) -> None:
    write_csv(
        path,
        (
            "indicator",
            "pearson_r",
            "pearson_p",
            "pearson_stars",
            "spearman_rho",
            "spearman_p",
            "spearman_stars",
            "n_years",
        ),
        (
            (
                r.indicator,
                r.pearson_r,
                r.pearson_p,
                r.pearson_stars,
                r.spearman_rho,
                r.spearman_p,
                r.spearman_stars,
                r.n_years,
            )
            for r in reports
        ),
    )


def write_density(path: Path, edges: np.ndarray, masses: np.ndarray) -> None:
    write_csv(
        path,
        ("bin_left", "bin_right", "mass"),
        ((edges[i], edges[i + 1], masses[i]) for i in range(len(masses))),
    )


def _fit_to_dict(fit: FitResult | None) -> dict | None:
    if fit is None:
        return None
    out = {
        "model": fit.model,
        "coefficients": [
            {
                "name": c.name,
                "estimate": c.estimate,
                "se": c.se,
                "p": c.p_value,
                "stars": c.stars,
            }
            for c in fit.coefficients
        ],
        "log_likelihood": fit.log_likelihood,
        "aic": fit.aic,
        "pseudo_r2": fit.pseudo_r2,
        "n": fit.n_rows,
        "converged": fit.converged,
        "warnings": fit.warnings,
    }
    if fit.zero_coefficients is not None:
        out["zero_coefficients"] = [
            {
                "name": c.name,
                "estimate": c.estimate,
                "se": c.se,
                "p": c.p_value,
                "stars": c.stars,
            }
            for c in fit.zero_coefficients
        ]
    if fit.phi is not None:
        out["phi"] = fit.phi
        out["log_phi_se"] = fit.log_phi_se
    return out


def write_regression_report(
    path: Path,
    ols: FitResult | None,
    zibeta: FitResult | None,
    vif_table: dict[str, float],
    dropped_columns: tuple[str, ...],
    n_masked_rows: int,
    panel: list[PeriodReport] | None = None,
    skipped: dict[str, str] | None = None,
) -> None:
    doc = {
        "ols": _fit_to_dict(ols),
        "zibeta": _fit_to_dict(zibeta),
        "vif": {k: (v if v == v and v != float("inf") else str(v)) for k, v in vif_table.items()},
        "dropped_columns": list(dropped_columns),
        "n_masked_rows": n_masked_rows,
        "skipped": skipped or {},
    }
    if panel is not None:
        doc["panel"] = {
            rep.label: {
                "start_year": rep.start_year,
                "end_year": rep.end_year,
                "n_papers": rep.n_papers,
                "n_international": rep.n_international,
                "intl_share": rep.intl_share,
                "ols": _fit_to_dict(rep.ols),
                "zibeta": _fit_to_dict(rep.zibeta),
                "skipped": rep.skipped,
            }
            for rep in panel
        }
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
