#!/usr/bin/env python3
"""Independent tally over the toy fixtures.

Deliberately avoids the collabdist package: plain line filtering, bounding-box
country lookup (the toy boundaries are axis-aligned rectangles, so a bbox test
is exact), and dict arithmetic. Writes golden files under tests/data/golden/
and prints the headline counts frozen into the test suite.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from pathlib import Path

TOY = Path(__file__).resolve().parent.parent / "data" / "toy"
GOLDEN = Path(__file__).resolve().parent.parent / "data" / "golden"

ADMITTED = {"journal", "conference", "patent"}


def read_tsv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split("\t")
    return [dict(zip(header, line.split("\t"))) for line in lines[1:] if line]


def country_boxes():
    doc = json.loads((TOY / "boundaries.geojson").read_text(encoding="utf-8"))
    boxes = {}
    for feature in doc["features"]:
        ring = feature["geometry"]["coordinates"][0]
        lons = [p[0] for p in ring]
        lats = [p[1] for p in ring]
        boxes[feature["properties"]["iso3"]] = (min(lats), max(lats), min(lons), max(lons))
    return boxes


def locate(lat, lon, boxes):
    for iso3, (lat_min, lat_max, lon_min, lon_max) in boxes.items():
        if lat_min <= lat <= lat_max and lon_min <= lon <= lon_max:
            return iso3
    return None


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    boxes = country_boxes()

    affil_country = {}
    for row in read_tsv(TOY / "affiliations.tsv"):
        iso3 = row["iso3"].strip()
        if not iso3:
            iso3 = locate(float(row["latitude"]), float(row["longitude"]), boxes)
        affil_country[row["affiliation_id"]] = iso3

    industrial = set((TOY / "industrial_ids.txt").read_text().split())
    n_industrial = sum(1 for a in affil_country if a in industrial)

    kept = []
    drops = Counter()
    for row in read_tsv(TOY / "papers.tsv"):
        if any(not row[c].strip() for c in row):
            drops["missing_metadata"] += 1
            continue
        if row["doc_type"] not in ADMITTED:
            drops["doc_type"] += 1
            continue
        year = int(row["year"])
        if not 1950 <= year <= 2019:
            drops["year_out_of_range"] += 1
            continue
        authors = [a for a in row["affiliation_ids"].split(";") if a]
        if len(authors) < 2:
            drops["single_author"] += 1
            continue
        kept.append(row)

    # per-country and pairwise tallies
    papers = defaultdict(set)
    intl = defaultdict(set)
    pair_counts = Counter()
    year_papers = Counter()
    year_intl = Counter()
    year_cites = Counter()
    year_intl_cites = Counter()
    for row in kept:
        countries = sorted({affil_country[a] for a in row["affiliation_ids"].split(";") if a})
        year = int(row["year"])
        cites = int(row["citation_count"])
        year_papers[year] += 1
        year_cites[year] += cites
        if len(countries) >= 2:
            year_intl[year] += 1
            year_intl_cites[year] += cites
            for i, a in enumerate(countries):
                for b in countries[i + 1 :]:
                    pair_counts[(a, b)] += 1
        for c in countries:
            papers[c].add(row["paper_id"])
            if len(countries) >= 2:
                intl[c].add(row["paper_id"])

    # conferences
    conf_attributed = 0
    for row in read_tsv(TOY / "conferences.tsv"):
        if locate(float(row["latitude"]), float(row["longitude"]), boxes):
            conf_attributed += 1

    with open(GOLDEN / "network.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("iso_a,iso_b,joint_papers\n")
        for (a, b), count in sorted(pair_counts.items()):
            fh.write(f"{a},{b},{count}\n")

    with open(GOLDEN / "trend_shares.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("year,intl_paper_share,intl_citation_share\n")
        for year in sorted(year_papers):
            share = year_intl[year] / year_papers[year]
            cshare = year_intl_cites[year] / year_cites[year] if year_cites[year] else 0.0
            fh.write(f"{year},{share!r},{cshare!r}\n")

    with open(GOLDEN / "profile_counts.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("country,n_papers,n_international\n")
        for c in sorted(papers):
            fh.write(f"{c},{len(papers[c])},{len(intl[c])}\n")

    with open(GOLDEN / "drop_report.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("reason,count\n")
        for reason, count in sorted(drops.items()):
            fh.write(f"{reason},{count}\n")

    summary = {
        "n_raw": len(read_tsv(TOY / "papers.tsv")),
        "n_kept": len(kept),
        "drops": dict(sorted(drops.items())),
        "n_countries": len(papers),
        "n_pairs_possible": len(papers) * (len(papers) - 1) // 2,
        "n_collaborating_pairs": len(pair_counts),
        "zero_pairs": len(papers) * (len(papers) - 1) // 2 - len(pair_counts),
        "n_affiliations": len(affil_country),
        "n_industrial_affiliations": n_industrial,
        "conferences_attributed": conf_attributed,
        "profile_counts": {c: [len(papers[c]), len(intl[c])] for c in sorted(papers)},
    }
    print(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()
