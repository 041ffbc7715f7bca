import csv

import pytest

from collabdist.geo import GeoPoint
from collabdist.profiles import (
    build_profiles,
    country_centroid,
    load_country_metadata,
)


def test_centroid_weighted_mean():
    points = [(GeoPoint(latitude=0, longitude=0), 3), (GeoPoint(latitude=0, longitude=30), 1)]
    c = country_centroid(points)
    assert c.latitude == pytest.approx(0.0, abs=1e-12)
    assert c.longitude == pytest.approx(7.5, abs=1e-9)


def test_centroid_unweighted_latitude():
    points = [(GeoPoint(latitude=10, longitude=5), 1), (GeoPoint(latitude=30, longitude=5), 1)]
    c = country_centroid(points)
    assert c.latitude == pytest.approx(20.0)
    assert c.longitude == pytest.approx(5.0)


def test_centroid_across_antimeridian():
    # affiliations straddling +/-180 must average near the antimeridian,
    # not near longitude 0
    points = [
        (GeoPoint(latitude=0, longitude=179), 1),
        (GeoPoint(latitude=0, longitude=-179), 1),
    ]
    c = country_centroid(points)
    assert abs(abs(c.longitude) - 180.0) == pytest.approx(0.0, abs=1e-9)


def test_centroid_requires_positive_weight():
    with pytest.raises(ValueError, match="no_affiliations"):
        country_centroid([])
    with pytest.raises(ValueError, match="no_affiliations"):
        country_centroid([(GeoPoint(latitude=0, longitude=0), 0)])


def test_load_country_metadata(tmp_path):
    path = tmp_path / "meta.csv"
    path.write_text(
        "iso3,gdp_per_capita,po,ua,ic,mf,lt,ir,english\n"
        "USA,60000,40,46,91,62,26,68,1\n"
        "XXX,,50,,20,30,40,50,\n"
    )
    meta = load_country_metadata(str(path))
    assert meta["USA"].gdp_per_capita == 60000
    assert meta["USA"].english_official is True
    assert meta["XXX"].gdp_per_capita is None
    assert meta["XXX"].hofstede["UA"] is None
    assert meta["XXX"].english_official is None


def test_toy_profile_counts_match_golden(toy_stage, golden_dir):
    with open(golden_dir / "profile_counts.csv", encoding="utf-8") as fh:
        golden = {
            r["country"]: (int(r["n_papers"]), int(r["n_international"]))
            for r in csv.DictReader(fh)
        }
    got = {p.country: (p.n_papers, p.n_international) for p in toy_stage.profiles}
    assert got == golden


def test_toy_profiles_have_full_metadata(toy_stage):
    for profile in toy_stage.profiles:
        assert profile.gdp_per_capita is not None
        assert profile.centroid is not None
        assert all(v is not None for v in profile.hofstede.values())
        assert not profile.warnings


def test_toy_industry_share_bounds(toy_stage):
    for profile in toy_stage.profiles:
        assert 0.0 <= profile.industry_share <= 1.0
    assert any(p.industry_share > 0 for p in toy_stage.profiles)


def test_paper_counts_once_per_country(toy_ingest):
    # a paper with two affiliations in the same country adds one paper there
    from collabdist.ingest import PublicationRecord

    by_id = toy_ingest.affiliations_by_id
    usa_affils = [a.affiliation_id for a in toy_ingest.affiliations if a.country == "USA"][:2]
    record = PublicationRecord(
        paper_id="X1",
        year=2010,
        doc_type="journal",
        citation_count=0,
        affiliation_ids=tuple(usa_affils),
    )
    profiles = build_profiles([record], toy_ingest.affiliations, toy_ingest.metadata)
    (usa,) = [p for p in profiles if p.country == "USA"]
    assert usa.n_papers == 1
    assert usa.n_international == 0
    assert usa.n_affiliations == 2
    assert by_id[usa_affils[0]].country == "USA"


def test_missing_metadata_warning():
    from collabdist.ingest import Affiliation, PublicationRecord

    affs = [
        Affiliation("A1", "X", GeoPoint(latitude=1, longitude=1), "ZZZ"),
        Affiliation("A2", "Y", GeoPoint(latitude=2, longitude=2), "ZZZ"),
    ]
    record = PublicationRecord("P1", 2000, "journal", 1, ("A1", "A2"))
    profiles = build_profiles([record], affs, metadata={})
    assert profiles[0].warnings == ["missing_metadata"]
    assert profiles[0].gdp_per_capita is None
