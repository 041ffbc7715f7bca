"""Country collaboration network: joint counts, Jaccard overlap, centralities.

Edges carry the number of jointly authored papers; all centralities use the
binary adjacency (edge present or not). The network is small (at most a few
hundred countries), so shortest-path centralities are computed exactly.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .ingest import Affiliation, PublicationRecord
from .profiles import CountryProfile, paper_countries


@dataclass(frozen=True)
class CollabNetwork:
    nodes: tuple[str, ...]
    edges: dict[tuple[str, str], int]

    def __post_init__(self) -> None:
        node_set = set(self.nodes)
        for (a, b), count in self.edges.items():
            if a == b:
                raise ValueError(f"self-edge on {a}")
            if a not in node_set or b not in node_set:
                raise ValueError(f"edge ({a}, {b}) references unknown node")
            if count <= 0:
                raise ValueError(f"edge ({a}, {b}) has non-positive count")

    def neighbors(self, node: str) -> list[str]:
        out = []
        for a, b in self.edges:
            if a == node:
                out.append(b)
            elif b == node:
                out.append(a)
        return sorted(out)

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {n: [] for n in self.nodes}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for lst in adj.values():
            lst.sort()
        return adj


def joint_counts(
    records: list[PublicationRecord],
    affiliations_by_id: dict[str, Affiliation],
) -> dict[tuple[str, str], int]:
    """C_ij per unordered country pair: each paper increments every pair among
    its distinct countries exactly once."""
    counts: Counter = Counter()
    for record in records:
        countries = sorted(paper_countries(record, affiliations_by_id))
        for i, a in enumerate(countries):
            for b in countries[i + 1 :]:
                counts[(a, b)] += 1
    return dict(counts)


def build_network(
    counts: dict[tuple[str, str], int],
    nodes: list[str] | None = None,
) -> CollabNetwork:
    if nodes is None:
        nodes = sorted({c for pair in counts for c in pair})
    edges = {tuple(sorted(pair)): c for pair, c in counts.items() if c > 0}
    return CollabNetwork(nodes=tuple(sorted(nodes)), edges=edges)


def dic(c_i: int, c_j: int, c_ij: int) -> float:
    """Jaccard degree of collaboration: C_ij / (C_i + C_j - C_ij)."""
    if c_ij < 0 or c_i < c_ij or c_j < c_ij or c_i + c_j - c_ij <= 0:
        raise ValueError("inconsistent_counts")
    return c_ij / (c_i + c_j - c_ij)


def rdc(network: CollabNetwork, country: str) -> float:
    """Relative degree centrality: degree / (N - 1)."""
    n = len(network.nodes)
    if n < 2:
        raise ValueError("network needs at least 2 nodes")
    return len(network.neighbors(country)) / (n - 1)


def _largest_component(adj: dict[str, list[str]]) -> set[str]:
    seen: set[str] = set()
    best: set[str] = set()
    for start in adj:
        if start in seen:
            continue
        component = {start}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in adj[node]:
                if nxt not in component:
                    component.add(nxt)
                    queue.append(nxt)
        seen |= component
        if len(component) > len(best):
            best = component
    return best


def betweenness(network: CollabNetwork) -> dict[str, float]:
    """Exact shortest-path betweenness on the largest connected component,
    normalized by (N-1)(N-2)/2 with N the component size. Nodes outside the
    component score 0."""
    adj = network.adjacency()
    component = _largest_component(adj)
    scores = {node: 0.0 for node in network.nodes}
    n = len(component)
    if n < 3:
        return scores
    for source in sorted(component):
        # single-source shortest paths with dependency accumulation
        stack: list[str] = []
        preds: dict[str, list[str]] = {v: [] for v in component}
        sigma = {v: 0.0 for v in component}
        dist = {v: -1 for v in component}
        sigma[source] = 1.0
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: 0.0 for v in component}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != source:
                scores[w] += delta[w]
        # undirected: every pair visited from both endpoints
    norm = (n - 1) * (n - 2)  # == 2 * (n-1)(n-2)/2, absorbs the double count
    for node in component:
        scores[node] /= norm
    return scores


def closeness(network: CollabNetwork) -> dict[str, float]:
    """Classic closeness (N-1)/sum(distances) on the largest connected
    component; nodes outside the component score 0."""
    adj = network.adjacency()
    component = _largest_component(adj)
    scores = {node: 0.0 for node in network.nodes}
    n = len(component)
    if n < 2:
        return scores
    for source in component:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        total = sum(dist.values())
        if total > 0:
            scores[source] = (n - 1) / total
    return scores


def top_k_subnetwork(
    network: CollabNetwork,
    profiles: list[CountryProfile],
    k: int,
) -> CollabNetwork:
    """Induced subgraph on the k most productive countries (ties: lexicographic)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    papers = {p.country: p.n_papers for p in profiles}
    ranked = sorted(network.nodes, key=lambda c: (-papers.get(c, 0), c))
    keep = set(ranked[:k])
    edges = {pair: c for pair, c in network.edges.items() if pair[0] in keep and pair[1] in keep}
    return CollabNetwork(nodes=tuple(sorted(keep)), edges=edges)
