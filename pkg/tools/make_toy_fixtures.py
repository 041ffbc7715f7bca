#!/usr/bin/env python3
"""Generate the committed toy input fixtures under tests/data/toy/.

Deterministic (fixed seed); rerunning reproduces the committed files
byte-for-byte. The expected counts asserted in the test suite were computed
from these files by the independent scripts in tests/oracles/.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "toy"

# lat_min, lat_max, lon_min, lon_max
BOXES = {
    "USA": (28.0, 48.0, -124.0, -70.0),
    "CHN": (21.0, 45.0, 80.0, 122.0),
    "GBR": (50.0, 58.0, -7.0, 1.0),
    "FRA": (43.0, 50.0, -4.0, 6.5),
    "DEU": (47.0, 55.0, 7.0, 15.0),
    "JPN": (31.0, 45.0, 130.0, 145.0),
}

AFFIL_COUNTS = {"USA": 12, "CHN": 8, "GBR": 6, "FRA": 5, "DEU": 5, "JPN": 4}
INDUSTRIAL = ["A003", "A005", "A014", "A015", "A022", "A033", "A038"]

COUNTRY_WEIGHTS = {"USA": 30, "CHN": 22, "GBR": 13, "FRA": 12, "DEU": 12, "JPN": 11}
# pairs that never collaborate, so the toy DIC column contains zeros
FORBIDDEN_PAIRS = {("FRA", "JPN"), ("DEU", "JPN"), ("GBR", "JPN")}

PERIOD_QUOTA = [((1950, 1999), 40), ((2000, 2007), 40), ((2008, 2013), 50), ((2014, 2019), 53)]

METADATA = [
    ("USA", 60000, 40, 46, 91, 62, 26, 68, 1),
    ("CHN", 10000, 80, 30, 20, 66, 87, 24, 0),
    ("GBR", 42000, 35, 35, 89, 66, 51, 69, 1),
    ("FRA", 39000, 68, 86, 71, 43, 63, 48, 0),
    ("DEU", 46000, 35, 65, 67, 66, 83, 40, 0),
    ("JPN", 40000, 54, 92, 46, 95, 88, 42, 0),
]


def make_affiliations(rng: random.Random):
    rows = []
    pools: dict[str, list[str]] = {}
    idx = 1
    for country, count in AFFIL_COUNTS.items():
        lat_min, lat_max, lon_min, lon_max = BOXES[country]
        pools[country] = []
        for _ in range(count):
            aid = f"A{idx:03d}"
            idx += 1
            lat = round(rng.uniform(lat_min + 0.5, lat_max - 0.5), 4)
            lon = round(rng.uniform(lon_min + 0.5, lon_max - 0.5), 4)
            # roughly half the rows carry a pre-resolved code
            iso3 = country if rng.random() < 0.5 else ""
            rows.append((aid, f"Institute {aid}", lat, lon, iso3))
            pools[country].append(aid)
    return rows, pools


def make_papers(rng: random.Random, pools):
    countries = list(COUNTRY_WEIGHTS)
    weights = list(COUNTRY_WEIGHTS.values())
    valid = []
    pid = 1
    for (start, end), quota in PERIOD_QUOTA:
        for _ in range(quota):
            year = rng.randint(start, end)
            primary = rng.choices(countries, weights=weights, k=1)[0]
            chosen = [primary]
            if rng.random() < 0.35:
                while True:
                    partner = rng.choices(countries, weights=weights, k=1)[0]
                    pair = tuple(sorted((primary, partner)))
                    if partner != primary and pair not in FORBIDDEN_PAIRS:
                        chosen.append(partner)
                        break
            n_authors = rng.randint(2, 4)
            affils = [rng.choice(pools[c]) for c in chosen]
            while len(affils) < n_authors:
                affils.append(rng.choice(pools[rng.choice(chosen)]))
            doc_type = rng.choices(["journal", "conference", "patent"], weights=[6, 3, 1], k=1)[0]
            citations = int(rng.expovariate(1 / 12.0))
            valid.append((f"P{pid:04d}", year, doc_type, citations, ";".join(affils)))
            pid += 1

    invalid = [
        ("B0001", 1990, "book", 4, "A001;A002"),
        ("B0002", 2001, "book", 2, "A013;A014"),
        ("B0003", 2010, "thesis", 0, "A021;A022"),
        ("B0004", 2015, "other", 1, "A027;A028"),
        ("B0005", 1988, "dataset", 3, "A032;A033"),
        ("Y0001", 2025, "journal", 0, "A001;A003"),
        ("Y0002", 1949, "journal", 9, "A013;A016"),
        ("Y0003", 2020, "conference", 2, "A021;A023"),
        ("Y0004", 1900, "patent", 0, "A037;A038"),
        ("S0001", 1995, "journal", 5, "A001"),
        ("S0002", 2003, "conference", 1, "A014"),
        ("S0003", 2011, "journal", 0, "A022"),
        ("S0004", 2016, "patent", 7, "A029"),
        ("S0005", 2018, "journal", 2, "A034"),
        ("M0001", "", "journal", 4, "A001;A002"),
        ("M0002", 2005, "", 1, "A013;A015"),
        ("M0003", 2012, "conference", 0, ""),
    ]
    rows = list(valid)
    positions = sorted(rng.sample(range(len(valid) + len(invalid)), len(invalid)))
    for pos, row in zip(positions, invalid):
        rows.insert(pos, row)
    return rows


def make_conferences(rng: random.Random):
    placements = ["USA"] * 3 + ["CHN"] * 2 + ["GBR"] * 2 + ["FRA", "DEU", "JPN"]
    rows = []
    for i, country in enumerate(placements, start=1):
        lat_min, lat_max, lon_min, lon_max = BOXES[country]
        rows.append(
            (
                f"C{i:03d}",
                round(rng.uniform(lat_min + 0.5, lat_max - 0.5), 4),
                round(rng.uniform(lon_min + 0.5, lon_max - 0.5), 4),
            )
        )
    rows.append(("C011", 0.0, -40.0))  # mid-Atlantic
    rows.append(("C012", -30.0, -150.0))  # mid-Pacific
    return rows


def write_tsv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(str(v) for v in row) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(42)

    affil_rows, pools = make_affiliations(rng)
    write_tsv(
        OUT / "affiliations.tsv",
        ["affiliation_id", "name", "latitude", "longitude", "iso3"],
        affil_rows,
    )

    paper_rows = make_papers(rng, pools)
    write_tsv(
        OUT / "papers.tsv",
        ["paper_id", "year", "doc_type", "citation_count", "affiliation_ids"],
        paper_rows,
    )

    write_tsv(OUT / "conferences.tsv", ["conference_id", "latitude", "longitude"], make_conferences(rng))

    with open(OUT / "industrial_ids.txt", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(INDUSTRIAL) + "\n")

    with open(OUT / "country_metadata.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("iso3,gdp_per_capita,po,ua,ic,mf,lt,ir,english\n")
        for row in METADATA:
            fh.write(",".join(str(v) for v in row) + "\n")

    features = []
    for iso3, (lat_min, lat_max, lon_min, lon_max) in BOXES.items():
        ring = [
            [lon_min, lat_min],
            [lon_max, lat_min],
            [lon_max, lat_max],
            [lon_min, lat_max],
            [lon_min, lat_min],
        ]
        features.append(
            {
                "type": "Feature",
                "properties": {"iso3": iso3},
                "geometry": {"type": "Polygon", "coordinates": [ring]},
            }
        )
    with open(OUT / "boundaries.geojson", "w", encoding="utf-8", newline="\n") as fh:
        json.dump({"type": "FeatureCollection", "features": features}, fh, indent=1)
        fh.write("\n")

    print(f"wrote fixtures to {OUT} ({len(paper_rows)} paper rows)")


if __name__ == "__main__":
    main()
