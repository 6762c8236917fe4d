"""Pipeline orchestration and the versioned analysis snapshot.

`run_pipeline` executes slicing -> co-citation -> clustering -> metrics ->
uncertainty -> SVA over a parsed corpus and assembles everything into one
immutable, JSON-serializable document. The same (corpus, params) pair always
yields a byte-identical snapshot file: dict keys are emitted sorted and the
corpus digest pins the input content. Concept trees are computed on demand
through SnapshotStore and cached under their scope key.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from xml.etree import ElementTree as ET

from . import concepts
from .cluster import Partition, cluster_network, label_clusters
from .cocite import CociteParams, CoCitationNetwork, NodeInfo, build_cocitation
from .corpus import (CitationContext, Corpus, Record, month_label, parse_month_arg,
                     serialize_contexts, serialize_records, slice_by_month)
from .metrics import compute_node_metrics
from .sva import SvaParams, rank_articles
from .uncertainty import (CueLexicon, aggregate_values, lexicons_from_doc,
                          lexicons_to_doc, load_lexicons, score_context)

SCHEMA_VERSION = 1


class PipelineStageError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


class UnsupportedFormatError(ValueError):
    pass


class SnapshotVersionMismatchError(RuntimeError):
    pass


def _month_str(ym: tuple[int, int] | None) -> str | None:
    return f"{ym[0]:04d}-{ym[1]:02d}" if ym else None


def _month_from_str(text: str | None) -> tuple[int, int] | None:
    return parse_month_arg(text) if text else None


@dataclass
class PipelineParams:
    """Fully resolved configuration; everything the pipeline depends on."""

    start: tuple[int, int] | None = None  # None: derived from the corpus
    end: tuple[int, int] | None = None
    top_n: int = 50
    context_filter: bool = False
    burst_s: float = 2.0
    burst_gamma: float = 1.0
    min_phrase_freq: int = 2
    max_phrase_len: int = 4
    epsilon: float = 1e-6
    harmonic: str = "raw"
    sva_from: tuple[int, int] | None = None
    sva_to: tuple[int, int] | None = None
    link_template: str = ""
    year_window: tuple[int, int] = (1900, 2100)
    lexicons: dict[str, CueLexicon] | None = None  # None: packaged defaults
    stopwords: list[str] | None = None             # None: packaged defaults

    def resolved_lexicons(self) -> dict[str, CueLexicon]:
        return self.lexicons if self.lexicons is not None else load_lexicons()

    def resolved_stopwords(self) -> list[str]:
        return self.stopwords if self.stopwords is not None else concepts.load_default_stopwords()

    def to_doc(self) -> dict:
        return {
            "start": _month_str(self.start),
            "end": _month_str(self.end),
            "top_n": self.top_n,
            "context_filter": self.context_filter,
            "burst_s": self.burst_s,
            "burst_gamma": self.burst_gamma,
            "min_phrase_freq": self.min_phrase_freq,
            "max_phrase_len": self.max_phrase_len,
            "epsilon": self.epsilon,
            "harmonic": self.harmonic,
            "sva_from": _month_str(self.sva_from),
            "sva_to": _month_str(self.sva_to),
            "link_template": self.link_template,
            "year_window": list(self.year_window),
            "lexicons": lexicons_to_doc(self.resolved_lexicons()),
            "stopwords": sorted(self.resolved_stopwords()),
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "PipelineParams":
        return cls(
            start=_month_from_str(doc.get("start")),
            end=_month_from_str(doc.get("end")),
            top_n=doc["top_n"],
            context_filter=doc["context_filter"],
            burst_s=doc["burst_s"],
            burst_gamma=doc["burst_gamma"],
            min_phrase_freq=doc["min_phrase_freq"],
            max_phrase_len=doc["max_phrase_len"],
            epsilon=doc["epsilon"],
            harmonic=doc["harmonic"],
            sva_from=_month_from_str(doc.get("sva_from")),
            sva_to=_month_from_str(doc.get("sva_to")),
            link_template=doc.get("link_template", ""),
            year_window=tuple(doc.get("year_window", (1900, 2100))),
            lexicons=lexicons_from_doc(doc["lexicons"]),
            stopwords=list(doc["stopwords"]),
        )


def corpus_digest(corpus: Corpus) -> str:
    """Content hash over the canonical serialization of records and contexts."""
    records = [corpus.records[k] for k in sorted(corpus.records)]
    payload = serialize_records(records) + "\x00" + serialize_contexts(corpus.contexts)
    return "sha256:" + hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass
class AnalysisSnapshot:
    doc: dict

    @property
    def schema_version(self) -> int:
        return self.doc["schema_version"]

    @property
    def params(self) -> PipelineParams:
        return PipelineParams.from_doc(self.doc["params"])

    def to_corpus(self) -> Corpus:
        records = {}
        for rec_id, r in self.doc["records"].items():
            records[rec_id] = Record(
                id=rec_id, year=r["year"], month=r["month"], title=r["title"],
                venue=r["venue"], doi=r["doi"], refs=list(r["refs"]),
                citation_count=r["citation_count"])
        contexts = [CitationContext(c["citing"], c["cited"], c["text"], c["ordinal"])
                    for c in self.doc["contexts"]]
        return Corpus(records, contexts)

    def network(self) -> CoCitationNetwork:
        net_doc = self.doc["network"]
        net = CoCitationNetwork(slices=list(net_doc["slices"]))
        for node, info in net_doc["nodes"].items():
            net.nodes[node] = NodeInfo(info["citations"], dict(info["slice_counts"]))
        for a, b, w in net_doc["edges"]:
            net.edges[(a, b)] = w
        return net

    def partition(self) -> Partition:
        p = self.doc["partition"]
        return Partition(
            assignment=dict(p["assignment"]),
            modularity=p["modularity"],
            silhouettes={int(k): v for k, v in p["silhouettes"].items()},
            weighted_silhouette=p["weighted_silhouette"],
            labels={int(k): v for k, v in p["labels"].items()},
        )


def run_pipeline(corpus: Corpus, params: PipelineParams | None = None) -> AnalysisSnapshot:
    """Execute the full analysis and assemble the snapshot document."""
    params = params or PipelineParams()

    # slicing
    if not corpus.records:
        raise PipelineStageError("slicing", "empty corpus")
    try:
        span = corpus.date_span()
        start = params.start or span[0]
        end = params.end or span[1]
        slices, slice_diags = slice_by_month(corpus, start, end)
    except PipelineStageError:
        raise
    except Exception as exc:
        raise PipelineStageError("slicing", str(exc)) from exc

    # co-citation network
    try:
        network = build_cocitation(slices, corpus, CociteParams(params.top_n, params.context_filter))
    except Exception as exc:
        raise PipelineStageError("cocitation", str(exc)) from exc

    # clustering + labels
    try:
        partition = cluster_network(network)
        stopwords = set(params.resolved_stopwords())
        partition.labels = label_clusters(partition, corpus, stopwords, params.max_phrase_len)
    except Exception as exc:
        raise PipelineStageError("clustering", str(exc)) from exc

    # node metrics
    try:
        node_metrics = compute_node_metrics(network, params.burst_s, params.burst_gamma)
    except Exception as exc:
        raise PipelineStageError("metrics", str(exc)) from exc

    # uncertainty scoring + aggregates
    try:
        lexicons = params.resolved_lexicons()
        scores = [score_context(c.text, lexicons) for c in corpus.contexts]
        ref_scores: dict[str, list] = {}
        art_scores: dict[str, list] = {}
        for ctx, sc in zip(corpus.contexts, scores):
            ref_scores.setdefault(ctx.cited_id, []).append(sc.as_dict())
            art_scores.setdefault(ctx.citing_id, []).append(sc.as_dict())
        ref_agg = {ref: aggregate_values(vals) for ref, vals in ref_scores.items()}
        art_agg = {art: aggregate_values(vals) for art, vals in art_scores.items()}
        cluster_agg = {}
        for k, members in partition.clusters().items():
            cluster_agg[str(k)] = aggregate_values(
                [ref_agg[m] for m in members if m in ref_agg])
    except Exception as exc:
        raise PipelineStageError("uncertainty", str(exc)) from exc

    # structural variation
    try:
        window = (params.sva_from or start, params.sva_to or end)
        sva_table = rank_articles(
            corpus, window,
            SvaParams(CociteParams(params.top_n, params.context_filter),
                      params.epsilon, params.harmonic))
    except Exception as exc:
        raise PipelineStageError("sva", str(exc)) from exc

    doc = {
        "schema_version": SCHEMA_VERSION,
        "corpus_digest": corpus_digest(corpus),
        "params": params.to_doc(),
        "records": {
            rec.id: {
                "year": rec.year, "month": rec.month,
                "month_imputed": rec.month_imputed, "title": rec.title,
                "venue": rec.venue, "doi": rec.doi,
                "citation_count": rec.citation_count, "refs": list(rec.refs),
            } for rec in corpus.records.values()
        },
        "contexts": [
            {"citing": c.citing_id, "cited": c.cited_id, "ordinal": c.ordinal,
             "text": c.text, "scores": sc.as_dict(),
             "spans": [sp.to_doc() for sp in sc.spans]}
            for c, sc in zip(corpus.contexts, scores)
        ],
        "slices": [{"label": s.label, "year": s.year, "month": s.month,
                    "records": list(s.record_ids)} for s in slices],
        "network": {
            "nodes": {n: {"citations": info.citations,
                          "slice_counts": dict(sorted(info.slice_counts.items()))}
                      for n, info in sorted(network.nodes.items())},
            "edges": [[a, b, w] for (a, b), w in sorted(network.edges.items())],
            "slices": list(network.slices),
        },
        "partition": {
            "assignment": dict(sorted(partition.assignment.items())),
            "modularity": partition.modularity,
            "silhouettes": {str(k): v for k, v in sorted(partition.silhouettes.items())},
            "weighted_silhouette": partition.weighted_silhouette,
            "labels": {str(k): v for k, v in sorted(partition.labels.items())},
        },
        "metrics": {
            "betweenness": dict(sorted(node_metrics.betweenness.items())),
            "bursts": {
                node: [{"start": network.slices[b.start], "end": network.slices[b.end],
                        "weight": b.weight} for b in bursts]
                for node, bursts in sorted(node_metrics.bursts.items())
            },
        },
        "uncertainty": {
            "references": dict(sorted(ref_agg.items())),
            "articles": dict(sorted(art_agg.items())),
            "clusters": dict(sorted(cluster_agg.items())),
        },
        "sva": {
            "window": [month_label(*window[0]), month_label(*window[1])],
            "rows": [{"id": r.article_id, "M": r.m, "C-L": r.cl, "C-D": r.ckl,
                      "Harmonic": r.harmonic, "Citations": r.citations, "NR": r.nr}
                     for r in sva_table.rows],
            "skipped": [[rec_id, reason] for rec_id, reason in sva_table.skipped],
        },
        "concept_trees": {},
        "diagnostics": {"out_of_range": [str(d) for d in slice_diags]},
    }
    return AnalysisSnapshot(doc)


def dumps_snapshot(snapshot: AnalysisSnapshot) -> str:
    """Canonical snapshot-doc serialization (sorted keys, compact, ASCII)."""
    return json.dumps(snapshot.doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True) + "\n"


def save_snapshot(snapshot: AnalysisSnapshot, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_snapshot(snapshot))


def loads_snapshot(text: str) -> AnalysisSnapshot:
    doc = json.loads(text)
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SnapshotVersionMismatchError(
            f"snapshot schema version {version!r}, this build reads {SCHEMA_VERSION}")
    return AnalysisSnapshot(doc)


def load_snapshot(path: str) -> AnalysisSnapshot:
    with open(path, encoding="utf-8") as fh:
        return loads_snapshot(fh.read())


def export(snapshot: AnalysisSnapshot, fmt: str) -> str:
    if fmt == "graphml":
        return to_graphml(snapshot)
    if fmt == "snapshot-doc":
        return dumps_snapshot(snapshot)
    raise UnsupportedFormatError(f"unsupported export format {fmt!r}")


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"

_NODE_KEYS = [
    ("label", "string"), ("citations", "int"), ("cluster", "int"),
    ("betweenness", "double"), ("uncertainty_e", "double"),
    ("slice_histogram", "string"),
]


def to_graphml(snapshot: AnalysisSnapshot) -> str:
    """GraphML with per-node label/citations/cluster/betweenness/E and edge weights."""
    doc = snapshot.doc
    root = ET.Element("graphml", xmlns=_GRAPHML_NS)
    key_ids: dict[str, str] = {}
    for i, (name, gtype) in enumerate(_NODE_KEYS):
        key_ids[name] = f"d{i}"
        ET.SubElement(root, "key", id=key_ids[name], attrib={
            "for": "node", "attr.name": name, "attr.type": gtype})
    weight_id = f"d{len(_NODE_KEYS)}"
    ET.SubElement(root, "key", id=weight_id, attrib={
        "for": "edge", "attr.name": "weight", "attr.type": "double"})

    graph = ET.SubElement(root, "graph", id="cocitation", edgedefault="undirected")
    records = doc["records"]
    assignment = doc["partition"]["assignment"]
    betweenness = doc["metrics"]["betweenness"]
    e_agg = doc["uncertainty"]["references"]
    for node_id, info in sorted(doc["network"]["nodes"].items()):
        node = ET.SubElement(graph, "node", id=node_id)
        label = records[node_id]["title"] if node_id in records and records[node_id]["title"] else node_id
        values = {
            "label": label,
            "citations": str(info["citations"]),
            "cluster": str(assignment[node_id]),
            "betweenness": repr(betweenness[node_id]),
            "uncertainty_e": repr(e_agg.get(node_id, {}).get("E", 0.0)),
            "slice_histogram": ";".join(
                f"{lab}:{count}" for lab, count in sorted(info["slice_counts"].items())),
        }
        for name, _ in _NODE_KEYS:
            data = ET.SubElement(node, "data", key=key_ids[name])
            data.text = values[name]
    for i, (a, b, w) in enumerate(sorted(doc["network"]["edges"])):
        edge = ET.SubElement(graph, "edge", id=f"e{i}", source=a, target=b)
        data = ET.SubElement(edge, "data", key=weight_id)
        data.text = repr(float(w))

    ET.indent(root)
    body = ET.tostring(root, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"


class SnapshotStore:
    """Read-mostly accessor over a loaded snapshot with memoized derivations.

    Concept trees are computed lazily per scope and cached into the
    snapshot's concept_trees map; the persisted file is only affected if the
    caller re-saves the snapshot afterwards.
    """

    def __init__(self, snapshot: AnalysisSnapshot):
        self.snapshot = snapshot
        self._corpus: Corpus | None = None
        self._partition: Partition | None = None

    @property
    def doc(self) -> dict:
        return self.snapshot.doc

    def corpus(self) -> Corpus:
        if self._corpus is None:
            self._corpus = self.snapshot.to_corpus()
        return self._corpus

    def partition(self) -> Partition:
        if self._partition is None:
            self._partition = self.snapshot.partition()
        return self._partition

    def cluster_members(self, k: int) -> list[str]:
        return self.partition().members(k)

    def scope_key(self, *, cluster: int | None = None, ref: str | None = None,
                  seed: str | None = None) -> str:
        if cluster is not None:
            return f"cluster:{cluster}"
        if ref is not None:
            return f"ref:{ref}"
        return "seed:" + " ".join(concepts.tokenize(seed or ""))

    def scope_contexts(self, *, cluster: int | None = None, ref: str | None = None,
                       seed: str | None = None) -> list[CitationContext]:
        if cluster is not None:
            members = set(self.cluster_members(cluster))
            return concepts.resolve_scope(self.corpus(), cluster_members=members)
        if ref is not None:
            return concepts.resolve_scope(self.corpus(), ref=ref)
        return concepts.resolve_scope(self.corpus(), seed=seed)

    def concept_tree(self, *, cluster: int | None = None, ref: str | None = None,
                     seed: str | None = None) -> concepts.ConceptTree:
        key = self.scope_key(cluster=cluster, ref=ref, seed=seed)
        cached = self.doc["concept_trees"].get(key)
        if cached is not None:
            return concepts.ConceptTree.from_doc(cached)
        params = self.snapshot.params
        ctxs = self.scope_contexts(cluster=cluster, ref=ref, seed=seed)
        stopwords = set(params.resolved_stopwords())
        phrases = concepts.extract_phrases(ctxs, stopwords, params.max_phrase_len)
        tree = concepts.build_concept_tree(
            phrases, key, params.min_phrase_freq,
            seed=seed if seed is not None else None)
        self.doc["concept_trees"][key] = tree.to_doc()
        return tree
