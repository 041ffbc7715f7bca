import csv
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from collabdist.trends import (
    AnnualSeries,
    annual_mean_distances,
    annual_shares,
    copub_distance_density,
    significance_stars,
    year_correlations,
)


def test_significance_star_thresholds():
    assert significance_stars(0.0005) == "***"
    assert significance_stars(0.005) == "**"
    assert significance_stars(0.04) == "*"
    assert significance_stars(0.05) == ""
    assert significance_stars(0.9) == ""
    assert significance_stars(float("nan")) == ""


def test_toy_shares_match_golden(toy_ingest, golden_dir):
    series = annual_shares(toy_ingest.records, toy_ingest.affiliations_by_id)
    got = {s.year: (s.intl_paper_share, s.intl_citation_share) for s in series}
    with open(golden_dir / "trend_shares.csv", encoding="utf-8") as fh:
        golden = {
            int(r["year"]): (float(r["intl_paper_share"]), float(r["intl_citation_share"]))
            for r in csv.DictReader(fh)
        }
    assert set(got) == set(golden)
    for year in golden:
        assert got[year][0] == pytest.approx(golden[year][0], abs=1e-12)
        assert got[year][1] == pytest.approx(golden[year][1], abs=1e-12)


def test_annual_mean_distances_single_pair():
    # one international paper in one year: the annual mean equals that
    # pair's indicator values
    from collabdist.ingest import Affiliation, PublicationRecord
    from collabdist.distances import PairFeatures
    from collabdist.geo import GeoPoint

    affs = {
        "A1": Affiliation("A1", "x", GeoPoint(latitude=0, longitude=0), "AAA"),
        "A2": Affiliation("A2", "y", GeoPoint(latitude=1, longitude=1), "BBB"),
    }
    record = PublicationRecord("P1", 2001, "journal", 4, ("A1", "A2"))
    pf = PairFeatures(
        pair=("AAA", "BBB"),
        features={"dGEO": 1234.5, "dECO": 0.25},
        missing=frozenset({"dPO"}),
        joint_papers=1,
        dic=0.5,
    )
    series = annual_mean_distances([record], affs, [pf], indicators=("dGEO", "dECO", "dPO"))
    assert len(series) == 1
    assert series[0].mean_distance == {"dGEO": 1234.5, "dECO": 0.25}


def test_year_correlations_perfect_trend():
    series = [
        AnnualSeries(year=2000 + i, intl_paper_share=0, intl_citation_share=0,
                     mean_distance={"dGEO": 10.0 + 2.0 * i})
        for i in range(6)
    ]
    (report,) = year_correlations(series, indicators=("dGEO",))
    assert report.pearson_r == pytest.approx(1.0)
    assert report.pearson_p == 0.0
    assert report.spearman_rho == pytest.approx(1.0)
    assert report.pearson_stars == "***"
    assert report.n_years == 6


def test_year_correlations_closed_form():
    # five points, r computed independently from the definition
    years = [1, 2, 3, 4, 5]
    values = [2.0, 1.0, 4.0, 3.0, 5.0]
    n = 5
    mx, my = sum(years) / n, sum(values) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(years, values))
    sxx = sum((x - mx) ** 2 for x in years)
    syy = sum((y - my) ** 2 for y in values)
    r_expected = sxy / math.sqrt(sxx * syy)

    series = [
        AnnualSeries(year=x, intl_paper_share=0, intl_citation_share=0,
                     mean_distance={"dECO": v})
        for x, v in zip(years, values)
    ]
    (report,) = year_correlations(series, indicators=("dECO",))
    assert report.pearson_r == pytest.approx(r_expected, abs=1e-10)
    t = r_expected * math.sqrt((n - 2) / (1 - r_expected**2))
    from scipy import stats

    assert report.pearson_p == pytest.approx(2 * stats.t.sf(abs(t), df=n - 2), abs=1e-12)
    # ranks of these values equal the values themselves shifted, so the
    # Spearman coefficient equals the Pearson coefficient here
    assert report.spearman_rho == pytest.approx(r_expected, abs=1e-10)


def test_year_correlations_need_three_years():
    series = [
        AnnualSeries(year=y, intl_paper_share=0, intl_citation_share=0,
                     mean_distance={"dGEO": float(y)})
        for y in (2000, 2001)
    ]
    assert year_correlations(series, indicators=("dGEO",)) == []


def test_year_correlations_constant_series_nan():
    series = [
        AnnualSeries(year=y, intl_paper_share=0, intl_citation_share=0,
                     mean_distance={"dGEO": 7.0})
        for y in (2000, 2001, 2002, 2003)
    ]
    (report,) = year_correlations(series, indicators=("dGEO",))
    assert math.isnan(report.pearson_r)
    assert report.pearson_stars == ""


def make_pairs(values, weights, countries=None):
    from collabdist.distances import PairFeatures

    pairs = []
    for i, (v, w) in enumerate(zip(values, weights)):
        pair = countries[i] if countries else (f"X{i}", f"Y{i}")
        pairs.append(
            PairFeatures(pair=pair, features={"dGEO": v}, missing=frozenset(),
                         joint_papers=w, dic=0.1)
        )
    return pairs


def test_density_masses_sum_to_one():
    pairs = make_pairs([1.0, 2.0, 3.0, 10.0], [5, 1, 3, 11])
    edges, masses = copub_distance_density(pairs, "dGEO", bins=4)
    assert len(edges) == 5
    assert masses.sum() == pytest.approx(1.0, abs=1e-12)
    # bins span [1, 10]; 1, 2 and 3 all fall in the first quarter
    assert masses[0] == pytest.approx((5 + 1 + 3) / 20)
    assert masses[-1] == pytest.approx(11 / 20)


def test_density_exclusion_drops_country():
    pairs = make_pairs([1.0, 2.0], [3, 7], countries=[("USA", "GBR"), ("CHN", "DEU")])
    edges, masses = copub_distance_density(pairs, "dGEO", bins=2, exclude="USA")
    assert masses.sum() == pytest.approx(1.0)
    assert masses[-1] == pytest.approx(1.0)  # only the CHN-DEU pair remains


def test_density_error_cases():
    pairs = make_pairs([1.0, 2.0], [0, 0])
    with pytest.raises(ValueError, match="no_copublications"):
        copub_distance_density(pairs, "dGEO", bins=2)
    with pytest.raises(ValueError):
        copub_distance_density(make_pairs([1.0], [1]), "dGEO", bins=1)


@given(
    st.lists(
        st.tuples(st.floats(0, 1e4, allow_nan=False), st.integers(0, 50)),
        min_size=2,
        max_size=40,
    ).filter(lambda rows: sum(w for _, w in rows) > 0)
)
def test_density_mass_conservation_property(rows):
    pairs = make_pairs([v for v, _ in rows], [w for _, w in rows])
    _, masses = copub_distance_density(pairs, "dGEO", bins=5)
    assert masses.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.all(masses >= 0)


def test_toy_density_over_dic_weights(toy_stage):
    edges, masses = copub_distance_density(toy_stage.pair_features, "dGEO", bins=6)
    total = sum(pf.joint_papers for pf in toy_stage.pair_features)
    assert total > 0
    assert masses.sum() == pytest.approx(1.0, abs=1e-12)
