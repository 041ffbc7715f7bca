"""Country-pair distance indicators and dummy variables.

The per-pair feature set, in the fixed column order used everywhere
downstream (reports, design matrices):

    dGEO   great-circle distance between country centroids (km)
    dECO   |log GDP per capita difference| (default base 10)
    dPO, dUA, dIC, dMF, dLT, dIR
           absolute Hofstede index differences
    ENG    number of pair members with English as primary/official language
    dAP    |papers per affiliation difference|
    dAI    |citations per paper difference|
    dAC    |conferences per affiliation difference|
    dIND   |industry-involved paper share difference|
    CoUS   1 if the pair contains the United States
    CoCN   1 if the pair contains China

An indicator that cannot be computed for a pair (missing GDP, missing
Hofstede index, zero denominator) is recorded in the pair's missing set
instead of being silently zeroed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geo import GeoPoint, geo_distance
from .network import dic
from .profiles import HOFSTEDE_DIMENSIONS, CountryProfile

FEATURE_COLUMNS = (
    "dGEO",
    "dECO",
    "dPO",
    "dUA",
    "dIC",
    "dMF",
    "dLT",
    "dIR",
    "ENG",
    "dAP",
    "dAI",
    "dAC",
    "dIND",
    "CoUS",
    "CoCN",
)

DISTANCE_COLUMNS = tuple(c for c in FEATURE_COLUMNS if c.startswith("d"))


@dataclass
class PairFeatures:
    pair: tuple[str, str]
    features: dict[str, float]
    missing: frozenset[str]
    joint_papers: int
    dic: float

    def get(self, name: str) -> float | None:
        return self.features.get(name)


def eco_distance(gdp_a: float, gdp_b: float, base: float = 10.0) -> float:
    """Absolute log-difference of GDP per capita, in the given log base."""
    if gdp_a <= 0 or gdp_b <= 0:
        raise ValueError("invalid_gdp")
    return abs(math.log(gdp_a) - math.log(gdp_b)) / math.log(base)


def cultural_distance(idx_a: float, idx_b: float) -> float:
    return abs(idx_a - idx_b)


def academic_distances(
    a: CountryProfile, b: CountryProfile
) -> tuple[float | None, float | None, float | None]:
    """(dAP, dAI, dAC); a component is None when a denominator is zero."""
    dap = dai = dac = None
    if a.n_affiliations > 0 and b.n_affiliations > 0:
        dap = abs(a.n_papers / a.n_affiliations - b.n_papers / b.n_affiliations)
        dac = abs(a.n_conferences / a.n_affiliations - b.n_conferences / b.n_affiliations)
    if a.n_papers > 0 and b.n_papers > 0:
        dai = abs(a.n_citations / a.n_papers - b.n_citations / b.n_papers)
    return dap, dai, dac


def industrial_distance(share_a: float, share_b: float) -> float:
    return abs(share_a - share_b)


def dummies(pair: tuple[str, str], english_a: bool, english_b: bool) -> tuple[int, int, int]:
    """(ENG, CoUS, CoCN) for a country pair with known English flags."""
    eng = int(english_a) + int(english_b)
    return eng, int("USA" in pair), int("CHN" in pair)


def build_pair_table(
    profiles: list[CountryProfile],
    collab_counts: dict[tuple[str, str], int],
    log_base: float = 10.0,
) -> list[PairFeatures]:
    """One feature row per unordered pair of countries with at least one paper.

    Output order is lexicographic by the (sorted) ISO code pair, so repeated
    runs are byte-comparable.
    """
    active = sorted(p.country for p in profiles if p.n_papers >= 1)
    by_country = {p.country: p for p in profiles}
    rows: list[PairFeatures] = []
    for i, ca in enumerate(active):
        for cb in active[i + 1 :]:
            a, b = by_country[ca], by_country[cb]
            features: dict[str, float] = {}
            missing: set[str] = set()

            if a.centroid is not None and b.centroid is not None:
                features["dGEO"] = geo_distance(a.centroid, b.centroid)
            else:
                missing.add("dGEO")

            if a.gdp_per_capita and b.gdp_per_capita:
                features["dECO"] = eco_distance(a.gdp_per_capita, b.gdp_per_capita, base=log_base)
            else:
                missing.add("dECO")

            for dim in HOFSTEDE_DIMENSIONS:
                va, vb = a.hofstede.get(dim), b.hofstede.get(dim)
                name = f"d{dim}"
                if va is None or vb is None:
                    missing.add(name)
                else:
                    features[name] = cultural_distance(va, vb)

            if a.english_official is None or b.english_official is None:
                missing.add("ENG")
                features["CoUS"] = float("USA" in (ca, cb))
                features["CoCN"] = float("CHN" in (ca, cb))
            else:
                eng, cous, cocn = dummies((ca, cb), a.english_official, b.english_official)
                features["ENG"] = float(eng)
                features["CoUS"] = float(cous)
                features["CoCN"] = float(cocn)

            dap, dai, dac = academic_distances(a, b)
            for name, value in (("dAP", dap), ("dAI", dai), ("dAC", dac)):
                if value is None:
                    missing.add(name)
                else:
                    features[name] = value

            features["dIND"] = industrial_distance(a.industry_share, b.industry_share)

            c_ij = collab_counts.get((ca, cb), 0)
            rows.append(
                PairFeatures(
                    pair=(ca, cb),
                    features=features,
                    missing=frozenset(missing),
                    joint_papers=c_ij,
                    dic=dic(a.n_papers, b.n_papers, c_ij),
                )
            )
    return rows
