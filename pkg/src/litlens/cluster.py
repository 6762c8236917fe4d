"""Cluster decomposition of the co-citation network.

Greedy modularity agglomeration (CNM-style): repeatedly merge the pair of
communities with the largest modularity gain until no merge improves Q.
Deterministic by construction - ties break on the lexicographically smallest
community pair - so golden tests stay stable. Cluster quality is reported as
Q, per-cluster silhouettes under 1 - cosine over adjacency profiles, and the
cluster-size weighted silhouette mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import concepts
from .cocite import CoCitationNetwork
from .corpus import Corpus

UNLABELED = "(unlabeled)"


class EmptyNetworkError(ValueError):
    """Raised when an operation needs nodes/edges the network does not have."""


@dataclass
class Partition:
    assignment: dict[str, int]
    modularity: float
    silhouettes: dict[int, float] = field(default_factory=dict)
    weighted_silhouette: float = 0.0
    labels: dict[int, str] = field(default_factory=dict)

    def cluster_count(self) -> int:
        return len(set(self.assignment.values()))

    def members(self, k: int) -> list[str]:
        return sorted(n for n, c in self.assignment.items() if c == k)

    def clusters(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for node in sorted(self.assignment):
            out.setdefault(self.assignment[node], []).append(node)
        return out


def modularity(network: CoCitationNetwork, assignment: dict[str, int]) -> float:
    """Newman weighted modularity Q = sum_c [w_c/W - (d_c/2W)^2]."""
    return modularity_from_edges(network.edges, assignment)


def modularity_from_edges(edges: dict[tuple[str, str], float],
                          assignment: dict[str, int]) -> float:
    total = sum(edges.values())
    if total <= 0:
        raise EmptyNetworkError("modularity needs at least one edge")
    intra: dict[int, float] = {}
    cluster_degree: dict[int, float] = {}
    for (a, b), w in edges.items():
        ca, cb = assignment[a], assignment[b]
        cluster_degree[ca] = cluster_degree.get(ca, 0.0) + w
        cluster_degree[cb] = cluster_degree.get(cb, 0.0) + w
        if ca == cb:
            intra[ca] = intra.get(ca, 0.0) + w
    q = 0.0
    for c in set(assignment.values()):
        w_c = intra.get(c, 0.0)
        d_c = cluster_degree.get(c, 0.0)
        q += w_c / total - (d_c / (2.0 * total)) ** 2
    return q


def cluster_network(network: CoCitationNetwork) -> Partition:
    """Greedy modularity agglomeration with deterministic tie-breaking.

    Cluster indices are assigned by descending size (ties: smallest member
    id), so cluster 0 is always the largest. An edgeless network degenerates
    to singletons with Q defined as 0.
    """
    if not network.nodes:
        raise EmptyNetworkError("cannot cluster an empty network")

    total = float(network.total_weight())
    if total == 0:
        communities = [[n] for n in sorted(network.nodes)]
        assignment = _index_clusters(communities)
        part = Partition(assignment, 0.0)
        _attach_silhouettes(part, network)
        return part

    # community key: lexicographically smallest member id
    members: dict[str, set[str]] = {n: {n} for n in network.nodes}
    comm_degree: dict[str, float] = dict.fromkeys(network.nodes, 0.0)
    between: dict[tuple[str, str], float] = {}
    for (a, b), w in network.edges.items():
        comm_degree[a] += w
        comm_degree[b] += w
        key = (a, b) if a <= b else (b, a)
        between[key] = between.get(key, 0.0) + w

    while True:
        best_pair = None
        best_dq = 0.0
        for (a, b), w_ab in between.items():
            dq = w_ab / total - comm_degree[a] * comm_degree[b] / (2.0 * total * total)
            if dq > best_dq or (dq == best_dq and best_pair is not None and (a, b) < best_pair):
                if dq > 0:
                    best_pair, best_dq = (a, b), dq
        if best_pair is None:
            break
        a, b = best_pair  # a < b; a absorbs b
        members[a] |= members.pop(b)
        comm_degree[a] += comm_degree.pop(b)
        merged_between: dict[tuple[str, str], float] = {}
        for (x, y), w in between.items():
            if (x, y) == (a, b):
                continue
            x = a if x == b else x
            y = a if y == b else y
            if x == y:
                continue
            key = (x, y) if x <= y else (y, x)
            merged_between[key] = merged_between.get(key, 0.0) + w
        between = merged_between

    assignment = _index_clusters([sorted(m) for m in members.values()])
    part = Partition(assignment, modularity(network, assignment))
    _attach_silhouettes(part, network)
    return part


def _index_clusters(communities: list[list[str]]) -> dict[str, int]:
    ordered = sorted(communities, key=lambda ms: (-len(ms), min(ms)))
    return {node: idx for idx, ms in enumerate(ordered) for node in ms}


def silhouette(network: CoCitationNetwork,
               assignment: dict[str, int]) -> tuple[dict[int, float], float]:
    """Per-cluster silhouette means and the size-weighted mean.

    Node profiles are weighted adjacency rows with a self-weight equal to the
    node's degree; distance is 1 - cosine. Singleton clusters score 0, as
    does everything when only one cluster exists (no separation term).
    """
    nodes = sorted(network.nodes)
    if not nodes:
        return {}, 0.0
    adj = network.adjacency()
    degree = network.degree()
    profiles: dict[str, dict[str, float]] = {}
    norms: dict[str, float] = {}
    for n in nodes:
        prof = dict(adj[n])
        prof[n] = float(degree[n])
        profiles[n] = prof
        norms[n] = math.sqrt(sum(v * v for v in prof.values()))

    def distance(i: str, j: str) -> float:
        if i == j:
            return 0.0
        ni, nj = norms[i], norms[j]
        if ni == 0.0 or nj == 0.0:
            return 1.0
        pi, pj = profiles[i], profiles[j]
        if len(pj) < len(pi):
            pi, pj = pj, pi
        dot = sum(w * pj[k] for k, w in pi.items() if k in pj)
        cos = max(-1.0, min(1.0, dot / (ni * nj)))
        return 1.0 - cos

    clusters: dict[int, list[str]] = {}
    for n in nodes:
        clusters.setdefault(assignment[n], []).append(n)

    scores: dict[str, float] = {}
    for c, ms in clusters.items():
        for i in ms:
            if len(ms) == 1 or len(clusters) == 1:
                scores[i] = 0.0
                continue
            a = sum(distance(i, j) for j in ms if j != i) / (len(ms) - 1)
            b = min(sum(distance(i, j) for j in other) / len(other)
                    for oc, other in clusters.items() if oc != c)
            denom = max(a, b)
            scores[i] = (b - a) / denom if denom > 0 else 0.0

    per_cluster = {c: sum(scores[i] for i in ms) / len(ms) for c, ms in clusters.items()}
    total = sum(len(ms) for ms in clusters.values())
    weighted = sum(len(ms) * per_cluster[c] for c, ms in clusters.items()) / total
    return per_cluster, weighted


def _attach_silhouettes(part: Partition, network: CoCitationNetwork) -> None:
    part.silhouettes, part.weighted_silhouette = silhouette(network, part.assignment)


def label_clusters(partition: Partition, corpus: Corpus,
                   stopwords: set[str] | None = None,
                   max_len: int = concepts.DEFAULT_MAX_PHRASE_LEN) -> dict[int, str]:
    """Label each cluster by the phrase most over-represented in its text.

    Text units are the titles of the cluster's citing articles plus the
    citation contexts targeting cluster members. Candidates are ranked by
    the Dunning log-likelihood ratio of in-cluster vs out-of-cluster unit
    frequency, ties broken by raw frequency then lexicographically.
    """
    if stopwords is None:
        stopwords = set(concepts.load_default_stopwords())
    clusters = partition.clusters()

    unit_phrases: dict[int, list[set[str]]] = {}
    for k, members in clusters.items():
        member_set = set(members)
        units: list[str] = []
        for rec in corpus.records.values():
            if any(ref in member_set for ref in rec.refs) and rec.title:
                units.append(rec.title)
        for c in corpus.contexts:
            if c.cited_id in member_set:
                units.append(c.text)
        unit_phrases[k] = [concepts.phrases_in_text(u, stopwords, max_len) for u in units]

    cluster_df: dict[int, dict[str, int]] = {}
    for k, units in unit_phrases.items():
        df: dict[str, int] = {}
        for phrases in units:
            for p in phrases:
                df[p] = df.get(p, 0) + 1
        cluster_df[k] = df

    labels: dict[int, str] = {}
    for k in clusters:
        n1 = len(unit_phrases[k])
        if n1 == 0:
            labels[k] = UNLABELED
            continue
        n2 = sum(len(unit_phrases[j]) for j in clusters if j != k)
        scored = []
        for phrase, k1 in cluster_df[k].items():
            k2 = sum(cluster_df[j].get(phrase, 0) for j in clusters if j != k)
            score = _llr(k1, n1, k2, n2)
            scored.append((score, k1, phrase))
        # exact LLR+frequency ties go to the longer phrase: a phrase always
        # ties its own sub-phrases when they only ever co-occur with it
        scored.sort(key=lambda t: (-t[0], -t[1], -len(t[2].split()), t[2]))
        labels[k] = scored[0][2] if scored else UNLABELED
    return labels


def _llr(k1: int, n1: int, k2: int, n2: int) -> float:
    """Dunning log-likelihood ratio; 0 unless the phrase is over-represented."""

    def ll(k: int, n: int, p: float) -> float:
        if n == 0:
            return 0.0
        out = 0.0
        if k > 0 and p > 0:
            out += k * math.log(p)
        if n - k > 0 and p < 1:
            out += (n - k) * math.log(1 - p)
        return out

    if n2 == 0:
        return float(k1)  # single text-bearing cluster: rank by frequency
    p1 = k1 / n1
    p2 = k2 / n2
    if p1 <= p2:
        return 0.0
    p = (k1 + k2) / (n1 + n2)
    return 2.0 * (ll(k1, n1, p1) + ll(k2, n2, p2) - ll(k1, n1, p) - ll(k2, n2, p))
