import csv

import pytest
from hypothesis import given, strategies as st

from collabdist.network import (
    CollabNetwork,
    betweenness,
    build_network,
    closeness,
    dic,
    joint_counts,
    rdc,
    top_k_subnetwork,
)


def net(edges, nodes=None):
    counts = {pair: 1 for pair in edges}
    return build_network(counts, nodes=nodes)


PATH3 = net([("a", "b"), ("b", "c")])
STAR5 = net([("hub", x) for x in "abcd"])
COMPLETE4 = net([(a, b) for i, a in enumerate("abcd") for b in "abcd"[i + 1 :]])


def test_dic_reference_value():
    assert dic(100, 50, 10) == pytest.approx(10 / 140, abs=1e-15)
    assert dic(10, 10, 0) == 0.0
    assert dic(5, 5, 5) == 1.0


def test_dic_rejects_inconsistent_counts():
    for args in [(5, 5, 6), (0, 0, 0), (5, 5, -1), (3, 10, 4)]:
        with pytest.raises(ValueError, match="inconsistent_counts"):
            dic(*args)


@given(st.integers(1, 1000), st.integers(1, 1000))
def test_dic_monotone_in_joint_count(ci, cj):
    upper = min(ci, cj)
    values = [dic(ci, cj, c) for c in range(upper + 1)]
    assert values == sorted(values)
    assert 0.0 <= values[0] and values[-1] <= 1.0


def test_rdc_values():
    assert rdc(PATH3, "b") == 1.0
    assert rdc(PATH3, "a") == 0.5
    assert all(rdc(COMPLETE4, node) == 1.0 for node in COMPLETE4.nodes)
    assert rdc(STAR5, "hub") == 1.0
    assert rdc(STAR5, "a") == 0.25


def test_rdc_needs_two_nodes():
    single = CollabNetwork(nodes=("a",), edges={})
    with pytest.raises(ValueError):
        rdc(single, "a")


def test_betweenness_star_center():
    scores = betweenness(STAR5)
    assert scores["hub"] == pytest.approx(1.0, abs=1e-12)
    assert all(scores[leaf] == 0.0 for leaf in "abcd")


def test_betweenness_path():
    scores = betweenness(PATH3)
    assert scores["b"] == pytest.approx(1.0, abs=1e-12)
    assert scores["a"] == scores["c"] == 0.0
    # 4-node path: inner nodes each sit on 2 of the 3 pairs
    p4 = net([("a", "b"), ("b", "c"), ("c", "d")])
    scores = betweenness(p4)
    assert scores["b"] == pytest.approx(2 / 3, abs=1e-12)
    assert scores["c"] == pytest.approx(2 / 3, abs=1e-12)


def test_betweenness_complete_graph_zero():
    scores = betweenness(COMPLETE4)
    assert all(v == pytest.approx(0.0, abs=1e-12) for v in scores.values())


def test_closeness_path():
    scores = closeness(PATH3)
    assert scores["b"] == pytest.approx(1.0)
    assert scores["a"] == pytest.approx(2 / 3)
    assert scores["c"] == pytest.approx(2 / 3)


def test_disconnected_nodes_score_zero():
    network = build_network({("a", "b"): 1, ("b", "c"): 2}, nodes=["a", "b", "c", "z"])
    assert betweenness(network)["z"] == 0.0
    assert closeness(network)["z"] == 0.0
    assert rdc(network, "z") == 0.0
    # scores inside the component use the component size, not the full node count
    assert closeness(network)["b"] == pytest.approx(1.0)


def test_network_validation():
    with pytest.raises(ValueError):
        CollabNetwork(nodes=("a", "b"), edges={("a", "a"): 1})
    with pytest.raises(ValueError):
        CollabNetwork(nodes=("a", "b"), edges={("a", "c"): 1})
    with pytest.raises(ValueError):
        CollabNetwork(nodes=("a", "b"), edges={("a", "b"): 0})


def test_joint_counts_once_per_paper(toy_ingest):
    from collabdist.ingest import PublicationRecord

    by_id = toy_ingest.affiliations_by_id
    usa = [a.affiliation_id for a in toy_ingest.affiliations if a.country == "USA"]
    chn = [a.affiliation_id for a in toy_ingest.affiliations if a.country == "CHN"]
    # two USA affiliations and one Chinese one still count the pair once
    record = PublicationRecord("X", 2010, "journal", 0, (usa[0], usa[1], chn[0]))
    assert joint_counts([record], by_id) == {("CHN", "USA"): 1}


def test_toy_network_matches_golden(toy_stage, golden_dir):
    with open(golden_dir / "network.csv", encoding="utf-8") as fh:
        golden = {
            (r["iso_a"], r["iso_b"]): int(r["joint_papers"]) for r in csv.DictReader(fh)
        }
    assert toy_stage.network.edges == golden
    assert len(toy_stage.network.nodes) == 6
    assert len(golden) == 11


def test_top_k_subnetwork(toy_stage):
    sub = top_k_subnetwork(toy_stage.network, toy_stage.profiles, 3)
    assert sub.nodes == ("CHN", "GBR", "USA")  # three most productive countries
    assert all(a in sub.nodes and b in sub.nodes for a, b in sub.edges)
    full = top_k_subnetwork(toy_stage.network, toy_stage.profiles, 100)
    assert full.edges == toy_stage.network.edges
