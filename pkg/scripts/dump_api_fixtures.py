"""Record real API payloads from the fixture snapshot for the explorer tests.

Runs the actual server over the covid-mini corpus and saves each endpoint's
JSON response under explorer/test/fixtures/, so the explorer e2e tests
intercept genuine payloads rather than hand-written ones.

Run: python3 scripts/dump_api_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from litlens.corpus import assemble_corpus, parse_context_sidecar, parse_field_records
from litlens.server import create_app
from litlens.snapshot import PipelineParams, SnapshotStore, run_pipeline

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "explorer" / "test" / "fixtures"

CALLS = {
    "meta": ("/meta", {}),
    "network": ("/network", {}),
    "clusters": ("/clusters", {}),
    "cluster-0": ("/clusters/0", {}),
    "concept-tree-ref-9050": ("/concept-tree", {"ref": "9050"}),
    "concept-tree-cluster-0": ("/concept-tree", {"cluster": "0"}),
    "contexts-mean-incubation-period": (
        "/contexts", {"concept": "mean incubation period", "ref": "9050"}),
    "contexts-incubation-period": (
        "/contexts", {"concept": "incubation period", "ref": "9050"}),
    "uncertainty-E": ("/uncertainty", {"kind": "E"}),
    "uncertainty-E-conclude": (
        "/uncertainty", {"kind": "E", "rhetorical": "conclude,conclusion"}),
    "sva": ("/sva", {}),
    "sva-top-5": ("/sva", {"top": "5"}),
}


def main() -> None:
    fixture_dir = ROOT / "tests" / "fixtures" / "covid-mini"
    records = parse_field_records((fixture_dir / "records.txt").read_text("utf-8"))
    contexts = parse_context_sidecar((fixture_dir / "contexts.tsv").read_text("utf-8"))
    corpus, _ = assemble_corpus(records.records, contexts.contexts)
    snapshot = run_pipeline(corpus, PipelineParams())
    client = TestClient(create_app(SnapshotStore(snapshot)))

    OUT.mkdir(parents=True, exist_ok=True)
    for name, (path, params) in CALLS.items():
        response = client.get(path, params=params)
        response.raise_for_status()
        payload = {
            "path": path,
            "params": params,
            "body": response.json(),
        }
        (OUT / f"{name}.json").write_text(json.dumps(payload, indent=1), "utf-8")
        print(f"recorded {name}: {path} {params}")


if __name__ == "__main__":
    main()
