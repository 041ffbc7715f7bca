"""Distance factors and international research collaboration.

Library + CLI pipeline: corpus ingestion, country profiles, pairwise
distance indicators, collaboration networks, trend statistics, and OLS /
zero-inflated-beta regression.
"""

from .distances import (
    FEATURE_COLUMNS,
    PairFeatures,
    academic_distances,
    build_pair_table,
    cultural_distance,
    dummies,
    eco_distance,
    industrial_distance,
)
from .geo import GeoPoint, geo_distance, resolve_country
from .ingest import Affiliation, PublicationRecord, filter_record, parse_corpus
from .network import CollabNetwork, betweenness, closeness, dic, joint_counts, rdc
from .profiles import CountryProfile, build_profiles, country_centroid
from .regression import (
    DesignMatrix,
    FitResult,
    build_design,
    fit_ols,
    fit_zibeta,
    minmax_rescale,
    vif,
    zibeta_loglik,
)
from .trends import annual_mean_distances, annual_shares, copub_distance_density, year_correlations

__version__ = "0.1.0"

__all__ = [
    "Affiliation",
    "CollabNetwork",
    "CountryProfile",
    "DesignMatrix",
    "FEATURE_COLUMNS",
    "FitResult",
    "GeoPoint",
    "PairFeatures",
    "PublicationRecord",
    "academic_distances",
    "annual_mean_distances",
    "annual_shares",
    "betweenness",
    "build_design",
    "build_pair_table",
    "build_profiles",
    "closeness",
    "copub_distance_density",
    "country_centroid",
    "cultural_distance",
    "dic",
    "dummies",
    "eco_distance",
    "filter_record",
    "fit_ols",
    "fit_zibeta",
    "geo_distance",
    "industrial_distance",
    "joint_counts",
    "minmax_rescale",
    "parse_corpus",
    "rdc",
    "resolve_country",
    "vif",
    "year_correlations",
    "zibeta_loglik",
]
