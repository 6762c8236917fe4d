"""Weighted document co-citation network construction.

Per slice, the top-N most cited references become nodes; each citing record
contributes one co-citation per unordered pair of its (optionally filtered)
references that are both nodes. Slice networks merge by uniting node sets and
summing edge weights, so merging is associative and commutative.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .corpus import CitationContext, Corpus, Record, TimeSlice


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass
class NodeInfo:
    citations: int = 0
    slice_counts: dict[str, int] = field(default_factory=dict)


@dataclass
class CoCitationNetwork:
    nodes: dict[str, NodeInfo] = field(default_factory=dict)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)
    slices: list[str] = field(default_factory=list)

    def adjacency(self) -> dict[str, dict[str, int]]:
        adj: dict[str, dict[str, int]] = {node: {} for node in self.nodes}
        for (a, b), w in self.edges.items():
            adj[a][b] = w
            adj[b][a] = w
        return adj

    def degree(self) -> dict[str, int]:
        deg = dict.fromkeys(self.nodes, 0)
        for (a, b), w in self.edges.items():
            deg[a] += w
            deg[b] += w
        return deg

    def total_weight(self) -> int:
        return sum(self.edges.values())


@dataclass
class CociteParams:
    top_n: int = 50
    context_filter: bool = False


def select_top_cited(time_slice: TimeSlice, corpus: Corpus, n: int) -> set[str]:
    """The n references most cited within the slice; ties at the cutoff kept."""
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = _slice_citation_counts(time_slice, corpus)
    if not counts:
        return set()
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    if len(ranked) <= n:
        return {ref for ref, _ in ranked}
    cutoff = ranked[n - 1][1]
    return {ref for ref, count in ranked if count >= cutoff}


def _slice_citation_counts(time_slice: TimeSlice, corpus: Corpus) -> Counter:
    counts: Counter = Counter()
    for rec_id in time_slice.record_ids:
        for ref in corpus.records[rec_id].refs:
            counts[ref] += 1
    return counts


def filter_below_average_refs(record: Record,
                              contexts: list[CitationContext]) -> list[str]:
    """Keep references cited at least the record-average number of times.

    The per-reference count is the number of this record's contexts citing
    it; references without contexts count zero. A record with no contexts at
    all keeps every reference (the filter is only meaningful with contexts).
    """
    if not record.refs:
        return []
    own = [c for c in contexts if c.citing_id == record.id]
    if not own:
        return list(record.refs)
    counts = Counter(c.cited_id for c in own)
    mean = sum(counts.get(r, 0) for r in record.refs) / len(record.refs)
    return [r for r in record.refs if counts.get(r, 0) >= mean]


def build_slice_network(time_slice: TimeSlice, corpus: Corpus,
                        params: CociteParams,
                        contexts_by_citing: dict[str, list[CitationContext]] | None = None) -> CoCitationNetwork:
    """Co-citation network of a single slice."""
    if contexts_by_citing is None:
        contexts_by_citing = corpus.contexts_by_citing()
    node_set = select_top_cited(time_slice, corpus, params.top_n)
    counts = _slice_citation_counts(time_slice, corpus)
    net = CoCitationNetwork(slices=[time_slice.label])
    for ref in sorted(node_set):
        net.nodes[ref] = NodeInfo(citations=counts[ref],
                                  slice_counts={time_slice.label: counts[ref]})
    for rec_id in time_slice.record_ids:
        rec = corpus.records[rec_id]
        refs = rec.refs
        if params.context_filter:
            refs = filter_below_average_refs(rec, contexts_by_citing.get(rec_id, []))
        eligible = sorted({r for r in refs if r in node_set})
        for a, b in combinations(eligible, 2):
            key = edge_key(a, b)
            net.edges[key] = net.edges.get(key, 0) + 1
    return net


def merge_networks(networks: list[CoCitationNetwork]) -> CoCitationNetwork:
    """Union nodes (summing citation counts) and sum edge weights."""
    merged = CoCitationNetwork()
    for net in networks:
        for label in net.slices:
            if label not in merged.slices:
                merged.slices.append(label)
        for ref, info in net.nodes.items():
            target = merged.nodes.setdefault(ref, NodeInfo())
            target.citations += info.citations
            for label, count in info.slice_counts.items():
                target.slice_counts[label] = target.slice_counts.get(label, 0) + count
        for key, w in net.edges.items():
            merged.edges[key] = merged.edges.get(key, 0) + w
    return merged


def build_cocitation(slices: list[TimeSlice], corpus: Corpus,
                     params: CociteParams) -> CoCitationNetwork:
    """Per-slice networks merged over the whole range."""
    if not slices:
        raise ValueError("no slices to build from")
    by_citing = corpus.contexts_by_citing()
    nets = [build_slice_network(s, corpus, params, by_citing) for s in slices]
    return merge_networks(nets)
