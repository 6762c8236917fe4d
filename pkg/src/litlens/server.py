"""Read-only HTTP API over a loaded analysis snapshot.

Every endpoint is a pure function of (snapshot, query params): the server
performs no re-analysis beyond lazily materializing concept trees from data
already inside the snapshot. Malformed parameters produce 400 responses with
a diagnostic body; unknown routes fall through to 404.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import concepts
from .corpus import month_label, parse_month_arg
from .snapshot import AnalysisSnapshot, SnapshotStore
from .uncertainty import filter_contexts

DEFAULT_LINK_TEMPLATE = "https://doi.org/{doi}"


def _bad_request(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail=message)


def _parse_int(value: str, name: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise _bad_request(f"parameter {name!r} must be an integer, got {value!r}") from None


def create_app(store: SnapshotStore, *, cors_origins: tuple[str, ...] = ("*",),
               static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="litlens snapshot API", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=list(cors_origins),
        allow_methods=["GET"], allow_headers=["*"])

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    doc = store.doc
    link_template = doc["params"].get("link_template", "")

    def record_link(rec_id: str) -> str | None:
        rec = doc["records"].get(rec_id)
        if rec and rec.get("doi"):
            return DEFAULT_LINK_TEMPLATE.format(doi=rec["doi"])
        if link_template and rec is not None:
            return link_template.format(id=rec_id)
        return None

    def context_row(ctx: dict) -> dict:
        rec = doc["records"].get(ctx["citing"])
        date = month_label(rec["year"], rec["month"] or 12) if rec else None
        return {
            "citing_id": ctx["citing"], "cited_id": ctx["cited"],
            "ordinal": ctx["ordinal"], "text": ctx["text"], "date": date,
            "scores": ctx["scores"], "spans": ctx["spans"],
            "link": record_link(ctx["citing"]),
        }

    @app.get("/meta")
    def meta() -> dict:
        return {
            "schema_version": doc["schema_version"],
            "corpus_digest": doc["corpus_digest"],
            "records": len(doc["records"]),
            "contexts": len(doc["contexts"]),
            "nodes": len(doc["network"]["nodes"]),
            "edges": len(doc["network"]["edges"]),
            "clusters": len(doc["partition"]["labels"]),
            "slices": [s["label"] for s in doc["slices"]],
            "params": doc["params"],
        }

    @app.get("/network")
    def network() -> dict:
        assignment = doc["partition"]["assignment"]
        betweenness = doc["metrics"]["betweenness"]
        e_agg = doc["uncertainty"]["references"]
        nodes = []
        for node_id, info in sorted(doc["network"]["nodes"].items()):
            rec = doc["records"].get(node_id)
            nodes.append({
                "id": node_id,
                "label": rec["title"] if rec and rec["title"] else node_id,
                "citations": info["citations"],
                "cluster": assignment[node_id],
                "betweenness": betweenness[node_id],
                "uncertainty": e_agg.get(node_id, {"E": 0.0, "H": 0.0, "T": 0.0}),
            })
        edges = [{"source": a, "target": b, "weight": w}
                 for a, b, w in doc["network"]["edges"]]
        return {"nodes": nodes, "edges": edges,
                "slices": doc["network"]["slices"],
                "labels": doc["partition"]["labels"],
                "modularity": doc["partition"]["modularity"],
                "weighted_silhouette": doc["partition"]["weighted_silhouette"]}

    def cluster_summary(k: int) -> dict:
        members = store.cluster_members(k)
        return {
            "index": k,
            "label": doc["partition"]["labels"][str(k)],
            "size": len(members),
            "silhouette": doc["partition"]["silhouettes"][str(k)],
            "uncertainty": doc["uncertainty"]["clusters"].get(
                str(k), {"E": 0.0, "H": 0.0, "T": 0.0}),
        }

    @app.get("/clusters")
    def clusters() -> dict:
        ks = sorted(int(k) for k in doc["partition"]["labels"])
        return {"modularity": doc["partition"]["modularity"],
                "weighted_silhouette": doc["partition"]["weighted_silhouette"],
                "clusters": [cluster_summary(k) for k in ks]}

    @app.get("/clusters/{k}")
    def cluster_detail(k: str) -> dict:
        idx = _parse_int(k, "k")
        if str(idx) not in doc["partition"]["labels"]:
            raise HTTPException(status_code=404, detail=f"no cluster {idx}")
        betweenness = doc["metrics"]["betweenness"]
        summary = cluster_summary(idx)
        summary["members"] = [{
            "id": m,
            "label": (doc["records"][m]["title"]
                      if m in doc["records"] and doc["records"][m]["title"] else m),
            "citations": doc["network"]["nodes"][m]["citations"],
            "betweenness": betweenness[m],
        } for m in store.cluster_members(idx)]
        return summary

    def parse_scope(cluster: str | None, ref: str | None, seed: str | None):
        given = sum(v is not None for v in (cluster, ref, seed))
        if given != 1:
            raise _bad_request("give exactly one of cluster=, ref=, seed=")
        if cluster is not None:
            idx = _parse_int(cluster, "cluster")
            if str(idx) not in doc["partition"]["labels"]:
                raise HTTPException(status_code=404, detail=f"no cluster {idx}")
            return {"cluster": idx}
        if ref is not None:
            return {"ref": ref}
        return {"seed": seed}

    @app.get("/concept-tree")
    def concept_tree(cluster: str | None = None, ref: str | None = None,
                     seed: str | None = None) -> dict:
        scope = parse_scope(cluster, ref, seed)
        tree = store.concept_tree(**scope)
        return tree.to_doc()

    @app.get("/contexts")
    def contexts(concept: str | None = None, cluster: str | None = None,
                 ref: str | None = None, seed: str | None = None) -> dict:
        if concept is None and ref is not None and cluster is None and seed is None:
            # all contexts citing one reference, date-ordered
            def date_key(c: dict):
                rec = doc["records"].get(c["citing"])
                return ((rec["year"], rec["month"] or 12) if rec else (9999, 12),
                        c["citing"], c["ordinal"])

            ordered = sorted((c for c in doc["contexts"] if c["cited"] == ref), key=date_key)
            return {"concept": None, "contexts": [context_row(c) for c in ordered]}
        if concept is None:
            raise _bad_request("concept= is required unless filtering by ref= alone")
        scope = parse_scope(cluster, ref, seed)
        scope_ctxs = store.scope_contexts(**scope)
        hits = concepts.contexts_for_concept(concept, scope_ctxs, store.corpus())
        keys = {(c.citing_id, c.cited_id, c.ordinal) for c in hits}
        ordered = []
        for c in hits:
            for ctx in doc["contexts"]:
                if (ctx["citing"], ctx["cited"], ctx["ordinal"]) == (c.citing_id, c.cited_id, c.ordinal):
                    ordered.append(context_row(ctx))
                    break
        return {"concept": concept, "contexts": ordered}

    @app.get("/uncertainty")
    def uncertainty_view(kind: str = "E", cues: str | None = None,
                         rhetorical: str | None = None, top: str | None = None) -> dict:
        if kind not in ("E", "H", "T"):
            raise _bad_request(f"kind must be one of E, H, T; got {kind!r}")
        limit = _parse_int(top, "top") if top is not None else None
        cue_list = [c for c in (cues.split(",") if cues else []) if c.strip()] or None
        rhet_list = [r for r in (rhetorical.split(",") if rhetorical else []) if r.strip()]
        params = store.snapshot.params
        rows = filter_contexts(store.corpus(), kind, rhet_list,
                               params.resolved_lexicons(), cue_list)
        if limit is not None:
            rows = rows[:limit]
        return {"kind": kind, "rows": [{
            "citing_id": r.citing_id, "cited_id": r.cited_id, "ordinal": r.ordinal,
            "score": r.score, "text": r.text,
            "cue_spans": [s.to_doc() for s in r.cue_spans],
            "rhetorical_spans": [s.to_doc() for s in r.rhetorical_spans],
            "link": record_link(r.citing_id),
        } for r in rows]}

    @app.get("/sva")
    def sva(raw_from: str | None = Query(default=None, alias="from"),
            to: str | None = None, top: str | None = None) -> dict:
        limit = _parse_int(top, "top") if top is not None else None
        rows = doc["sva"]["rows"]
        if raw_from or to:
            months = {}
            for rec_id, rec in doc["records"].items():
                months[rec_id] = (rec["year"], rec["month"] or 12)
            try:
                lo = parse_month_arg(raw_from) if raw_from else None
                hi = parse_month_arg(to) if to else None
            except ValueError as exc:
                raise _bad_request(str(exc)) from None
            rows = [r for r in rows
                    if (lo is None or months.get(r["id"], (0, 0)) >= lo)
                    and (hi is None or months.get(r["id"], (9999, 12)) <= hi)]
        if limit is not None:
            rows = rows[:limit]
        titles = {rec_id: rec["title"] for rec_id, rec in doc["records"].items()}
        return {"window": doc["sva"]["window"], "columns": ["M", "C-L", "C-D",
                "Harmonic", "Citations", "NR"],
                "rows": [dict(r, Title=titles.get(r["id"], "")) for r in rows],
                "skipped": doc["sva"]["skipped"]}

    if static_dir:
        app.mount("/app", StaticFiles(directory=static_dir, html=True), name="app")

    return app


def serve(snapshot: AnalysisSnapshot, bind: str = "127.0.0.1:8000",
          cors_origins: tuple[str, ...] = ("*",), static_dir: str | None = None) -> None:
    """Run the API with uvicorn until interrupted."""
    import uvicorn

    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"bind address must be host:port, got {bind!r}")
    app = create_app(SnapshotStore(snapshot), cors_origins=cors_origins,
                     static_dir=static_dir)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
