"""End-to-end orchestration shared by the CLI and the panel replication."""

from __future__ import annotations

from dataclasses import dataclass, field

from .distances import FEATURE_COLUMNS, PairFeatures, build_pair_table
from .geo import load_boundaries
from .ingest import (
    Affiliation,
    ParsedCorpus,
    PublicationRecord,
    flag_industrial,
    parse_corpus,
    resolve_affiliation_countries,
)
from .network import CollabNetwork, build_network, joint_counts
from .profiles import (
    CountryMetadata,
    CountryProfile,
    build_profiles,
    conferences_per_country,
    load_country_metadata,
)
from .regression import (
    DEFAULT_PERIODS,
    FitResult,
    PeriodReport,
    build_design,
    fit_ols,
    fit_zibeta,
    validate_partition,
)


@dataclass
class IngestResult:
    records: list[PublicationRecord]
    affiliations: list[Affiliation]
    metadata: dict[str, CountryMetadata]
    conference_counts: dict[str, int]
    paper_drops: dict[str, int]
    affiliation_drops: dict[str, int]
    unresolved_affiliations: int = 0
    unknown_industrial_ids: int = 0
    unresolved_conferences: int = 0

    @property
    def affiliations_by_id(self) -> dict[str, Affiliation]:
        return {a.affiliation_id: a for a in self.affiliations}


def run_ingest(
    papers_file: str,
    affiliations_file: str,
    metadata_file: str,
    conferences_file: str | None = None,
    boundaries_file: str | None = None,
    industrial_ids_file: str | None = None,
) -> IngestResult:
    parsed: ParsedCorpus = parse_corpus(papers_file, affiliations_file)
    affiliations = parsed.affiliations
    boundaries = load_boundaries(boundaries_file) if boundaries_file else []
    affiliations, unresolved = resolve_affiliation_countries(affiliations, boundaries)
    unknown_industrial = 0
    if industrial_ids_file:
        affiliations, unknown_industrial = flag_industrial(affiliations, industrial_ids_file)
    conference_counts: dict[str, int] = {}
    unresolved_conferences = 0
    if conferences_file:
        conference_counts, unresolved_conferences = conferences_per_country(
            conferences_file, boundaries
        )
    metadata = load_country_metadata(metadata_file)
    return IngestResult(
        records=parsed.records,
        affiliations=affiliations,
        metadata=metadata,
        conference_counts=conference_counts,
        paper_drops=dict(parsed.paper_drops),
        affiliation_drops=dict(parsed.affiliation_drops),
        unresolved_affiliations=unresolved,
        unknown_industrial_ids=unknown_industrial,
        unresolved_conferences=unresolved_conferences,
    )


@dataclass
class PairStage:
    profiles: list[CountryProfile]
    counts: dict[tuple[str, str], int]
    pair_features: list[PairFeatures]
    network: CollabNetwork = field(init=False)

    def __post_init__(self) -> None:
        nodes = [p.country for p in self.profiles if p.n_papers >= 1]
        self.network = build_network(self.counts, nodes=nodes)


def build_pairs(
    records: list[PublicationRecord],
    affiliations: list[Affiliation],
    metadata: dict[str, CountryMetadata],
    conference_counts: dict[str, int],
    log_base: float = 10.0,
) -> PairStage:
    profiles = build_profiles(records, affiliations, metadata, conference_counts)
    counts = joint_counts(records, {a.affiliation_id: a for a in affiliations})
    pair_features = build_pair_table(profiles, counts, log_base=log_base)
    return PairStage(profiles=profiles, counts=counts, pair_features=pair_features)


def fit_models(
    pair_features: list[PairFeatures],
    columns: tuple[str, ...] = FEATURE_COLUMNS,
    response_scale: float = 1.0,
) -> tuple[FitResult | None, FitResult | None, dict[str, str]]:
    """Fit OLS (response optionally scaled) and ZIBeta on the same covariates;
    a model that cannot be fit is skipped with a reason instead of aborting."""
    skipped: dict[str, str] = {}
    ols_fit = zibeta_fit = None
    try:
        design = build_design(pair_features, columns=columns, response_scale=response_scale)
        ols_fit = fit_ols(design)
    except ValueError as exc:
        skipped["OLS"] = str(exc)
    try:
        design = build_design(pair_features, columns=columns, response_scale=1.0)
        zibeta_fit = fit_zibeta(design)
    except ValueError as exc:
        skipped["ZIBeta"] = str(exc)
    return ols_fit, zibeta_fit, skipped


def fit_panel(
    ingest: IngestResult,
    partition: tuple[tuple[str, int, int], ...] = DEFAULT_PERIODS,
    columns: tuple[str, ...] = FEATURE_COLUMNS,
    log_base: float = 10.0,
) -> list[PeriodReport]:
    """Rebuild the pair table per period and fit both models on each, with
    OLS on a response scaled by 100."""
    validate_partition(partition)
    affiliations_by_id = ingest.affiliations_by_id
    reports: list[PeriodReport] = []
    for label, start, end in partition:
        records = [r for r in ingest.records if start <= r.year <= end]
        n_intl = 0
        for record in records:
            countries = {
                aff.country
                for aid in record.affiliation_ids
                if (aff := affiliations_by_id.get(aid)) and aff.country
            }
            if len(countries) >= 2:
                n_intl += 1
        ols_fit = zibeta_fit = None
        skipped: dict[str, str] = {}
        if not records:
            skipped["OLS"] = skipped["ZIBeta"] = "no papers in period"
        elif n_intl == 0:
            skipped["ZIBeta"] = "no international papers in period"
            skipped["OLS"] = "no international papers in period"
        else:
            stage = build_pairs(
                records,
                ingest.affiliations,
                ingest.metadata,
                ingest.conference_counts,
                log_base=log_base,
            )
            ols_fit, zibeta_fit, skipped = fit_models(
                stage.pair_features, columns=columns, response_scale=100.0
            )
        reports.append(
            PeriodReport(
                label=label,
                start_year=start,
                end_year=end,
                n_papers=len(records),
                n_international=n_intl,
                intl_share=n_intl / len(records) if records else 0.0,
                ols=ols_fit,
                zibeta=zibeta_fit,
                skipped=skipped,
            )
        )
    return reports
