from pathlib import Path

import pytest

from collabdist.pipeline import build_pairs, run_ingest

DATA = Path(__file__).parent / "data"
TOY = DATA / "toy"
GOLDEN = DATA / "golden"


@pytest.fixture(scope="session")
def toy_paths():
    return {
        "papers": TOY / "papers.tsv",
        "affiliations": TOY / "affiliations.tsv",
        "conferences": TOY / "conferences.tsv",
        "metadata": TOY / "country_metadata.csv",
        "boundaries": TOY / "boundaries.geojson",
        "industrial_ids": TOY / "industrial_ids.txt",
    }


@pytest.fixture(scope="session")
def toy_ingest(toy_paths):
    return run_ingest(
        papers_file=str(toy_paths["papers"]),
        affiliations_file=str(toy_paths["affiliations"]),
        metadata_file=str(toy_paths["metadata"]),
        conferences_file=str(toy_paths["conferences"]),
        boundaries_file=str(toy_paths["boundaries"]),
        industrial_ids_file=str(toy_paths["industrial_ids"]),
    )


@pytest.fixture(scope="session")
def toy_stage(toy_ingest):
    return build_pairs(
        toy_ingest.records,
        toy_ingest.affiliations,
        toy_ingest.metadata,
        toy_ingest.conference_counts,
    )


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN
