"""Structural Variation Analysis.

Each candidate article is compared against a baseline co-citation network
built from the literature published strictly before it. Three metrics
capture how much the article's co-citation links would restructure that
baseline:

* M   - modularity change: relative drop of baseline-partition modularity
        after overlaying the article's links, in percent;
* CL  - cluster linkage: fraction of the article's baseline-node reference
        pairs that are novel cross-cluster connections;
* CKL - centrality divergence: KL divergence between the baseline
        betweenness distribution and the overlaid one.

The Harmonic column is the harmonic mean of the raw metric triple, which
reproduces the published ranking tables; a min-max-normalized variant is
available behind the `harmonic` strategy switch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cluster import Partition, cluster_network, modularity_from_edges
from .cocite import CoCitationNetwork, CociteParams, build_cocitation, edge_key
from .corpus import Corpus, Record, month_label, months_between, prev_month, slice_by_month
from .metrics import betweenness_from_adjacency

SVA_COLUMNS = ["M", "C-L", "C-D", "Harmonic", "Citations", "NR"]
DEFAULT_EPSILON = 1e-6


class EmptyBaselineError(ValueError):
    """No usable literature exists before the requested month."""


@dataclass
class SvaParams:
    cocite: CociteParams = field(default_factory=CociteParams)
    epsilon: float = DEFAULT_EPSILON
    harmonic: str = "raw"  # raw | minmax


@dataclass
class BaselineSnapshot:
    as_of: tuple[int, int]
    network: CoCitationNetwork
    partition: Partition
    centrality: dict[str, float]


@dataclass
class SvaScores:
    article_id: str
    m: float
    cl: float
    ckl: float
    harmonic: float
    citations: int
    nr: int


@dataclass
class SvaTable:
    rows: list[SvaScores]
    skipped: list[tuple[str, str]]  # (article id, reason)
    window: tuple[tuple[int, int], tuple[int, int]]


def baseline_snapshot(corpus: Corpus, as_of: tuple[int, int],
                      params: SvaParams) -> BaselineSnapshot:
    """Network/partition/centrality of everything published before `as_of`."""
    earlier = [r for r in corpus.records.values() if r.date_key() < as_of]
    if not earlier:
        raise EmptyBaselineError(f"no records earlier than {month_label(*as_of)}")
    earlier_ids = {r.id for r in earlier}
    base_corpus = Corpus({r.id: r for r in earlier},
                         [c for c in corpus.contexts if c.citing_id in earlier_ids])
    start = min(r.date_key() for r in earlier)
    slices, _ = slice_by_month(base_corpus, start, prev_month(as_of))
    network = build_cocitation(slices, base_corpus, params.cocite)
    if not network.nodes:
        raise EmptyBaselineError(
            f"baseline before {month_label(*as_of)} has no co-citation nodes")
    partition = cluster_network(network)
    centrality = betweenness_from_adjacency(
        {n: sorted(nbrs) for n, nbrs in network.adjacency().items()})
    return BaselineSnapshot(as_of, network, partition, centrality)


def article_pairs(article: Record, base: BaselineSnapshot) -> list[tuple[str, str]]:
    """Unordered pairs of the article's references that are baseline nodes."""
    refs = sorted({r for r in article.refs if r in base.network.nodes})
    return [(refs[i], refs[j]) for i in range(len(refs)) for j in range(i + 1, len(refs))]


def modularity_change(article: Record, base: BaselineSnapshot) -> float:
    """Percent drop of baseline modularity after overlaying the article's links."""
    pairs = article_pairs(article, base)
    if not pairs:
        return 0.0
    assignment = base.partition.assignment
    q_before = modularity_from_edges(base.network.edges, assignment)
    if q_before == 0.0:
        return 0.0
    edges = dict(base.network.edges)
    for a, b in pairs:
        key = edge_key(a, b)
        edges[key] = edges.get(key, 0) + 1
    q_after = modularity_from_edges(edges, assignment)
    return 100.0 * (q_before - q_after) / abs(q_before)


def cluster_linkage(article: Record, base: BaselineSnapshot) -> float:
    """Fraction of baseline-node pairs that are novel cross-cluster links."""
    pairs = article_pairs(article, base)
    if not pairs:
        return 0.0
    assignment = base.partition.assignment
    novel_cross = sum(
        1 for a, b in pairs
        if assignment[a] != assignment[b] and edge_key(a, b) not in base.network.edges)
    return novel_cross / len(pairs)


def centrality_divergence(article: Record, base: BaselineSnapshot,
                          epsilon: float = DEFAULT_EPSILON) -> float:
    """KL divergence of baseline betweenness vs the article-overlaid one."""
    pairs = article_pairs(article, base)
    new_links = [p for p in pairs if edge_key(*p) not in base.network.edges]
    if not new_links:
        return 0.0
    adj = {n: set(nbrs) for n, nbrs in base.network.adjacency().items()}
    for a, b in new_links:
        adj[a].add(b)
        adj[b].add(a)
    after = betweenness_from_adjacency({n: sorted(ns) for n, ns in adj.items()})

    nodes = sorted(base.network.nodes)
    p_raw = [base.centrality[n] + epsilon for n in nodes]
    q_raw = [after[n] + epsilon for n in nodes]
    p_sum, q_sum = sum(p_raw), sum(q_raw)
    ckl = 0.0
    for p_i, q_i in zip(p_raw, q_raw):
        p_n, q_n = p_i / p_sum, q_i / q_sum
        ckl += p_n * math.log(p_n / q_n)
    return max(ckl, 0.0)


def harmonic_raw(m: float, cl: float, ckl: float) -> float:
    """Harmonic mean of the raw metric triple; 0 when any metric is <= 0."""
    if m <= 0 or cl <= 0 or ckl <= 0:
        return 0.0
    return 3.0 / (1.0 / m + 1.0 / cl + 1.0 / ckl)


def _harmonic_minmax(rows: list[SvaScores]) -> None:
    """Alternate strategy: harmonic mean of min-max normalized metrics."""

    def scale(values: list[float]) -> list[float]:
        lo, hi = min(values), max(values)
        if hi == lo:
            return [1.0 if v > 0 else 0.0 for v in values]
        return [(v - lo) / (hi - lo) for v in values]

    ms = scale([r.m for r in rows])
    cls_ = scale([r.cl for r in rows])
    ckls = scale([r.ckl for r in rows])
    for row, m_n, cl_n, ckl_n in zip(rows, ms, cls_, ckls):
        row.harmonic = harmonic_raw(m_n, cl_n, ckl_n)


class SvaEngine:
    """Caches one baseline snapshot per month over a fixed corpus and params."""

    def __init__(self, corpus: Corpus, params: SvaParams | None = None):
        self.corpus = corpus
        self.params = params or SvaParams()
        self._cache: dict[tuple[int, int], BaselineSnapshot] = {}

    def baseline(self, as_of: tuple[int, int]) -> BaselineSnapshot:
        if as_of not in self._cache:
            self._cache[as_of] = baseline_snapshot(self.corpus, as_of, self.params)
        return self._cache[as_of]

    def score_article(self, article: Record) -> SvaScores:
        base = self.baseline(article.date_key())
        m = modularity_change(article, base)
        cl = cluster_linkage(article, base)
        ckl = centrality_divergence(article, base, self.params.epsilon)
        return SvaScores(article.id, m, cl, ckl, harmonic_raw(m, cl, ckl),
                         article.citation_count or 0, len(article.refs))


def rank_articles(corpus: Corpus, window: tuple[tuple[int, int], tuple[int, int]],
                  params: SvaParams | None = None) -> SvaTable:
    """Score every article published inside the window, sorted by M descending."""
    params = params or SvaParams()
    engine = SvaEngine(corpus, params)
    months = set(months_between(*window))
    rows: list[SvaScores] = []
    skipped: list[tuple[str, str]] = []
    for rec_id in sorted(corpus.records):
        rec = corpus.records[rec_id]
        if rec.date_key() not in months:
            continue
        try:
            rows.append(engine.score_article(rec))
        except EmptyBaselineError as exc:
            skipped.append((rec_id, str(exc)))
    if params.harmonic == "minmax" and rows:
        _harmonic_minmax(rows)
    rows.sort(key=lambda r: (-r.m, -r.ckl, r.article_id))
    return SvaTable(rows, skipped, window)


def format_sva_table(table: SvaTable, corpus: Corpus | None = None,
                     top: int | None = None) -> str:
    """Fixed-width text table in the published column order."""
    rows = table.rows[:top] if top is not None else table.rows
    header = ["MAG ID"] + SVA_COLUMNS + ["Title"]
    body = []
    for r in rows:
        title = ""
        if corpus is not None and r.article_id in corpus.records:
            title = corpus.records[r.article_id].title
        body.append([r.article_id, f"{r.m:.3f}", f"{r.cl:.3f}", f"{r.ckl:.3f}",
                     f"{r.harmonic:.3f}", str(r.citations), str(r.nr), title])
    widths = [max(len(header[i]), *(len(row[i]) for row in body)) if body else len(header[i])
              for i in range(len(header))]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
    for row in body:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)
