import random
from pathlib import Path

import pytest

from litlens.cocite import CoCitationNetwork, NodeInfo
from litlens.corpus import assemble_corpus, parse_context_sidecar, parse_field_records

FIXTURES = Path(__file__).parent / "fixtures"

# acceptance criterion outcomes collected for the terminal summary
ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def network_from_edges(edges: dict[tuple[str, str], int],
                       extra_nodes: list[str] | None = None) -> CoCitationNetwork:
    net = CoCitationNetwork()
    for (a, b), w in edges.items():
        for n in (a, b):
            if n not in net.nodes:
                net.nodes[n] = NodeInfo()
        key = (a, b) if a <= b else (b, a)
        net.edges[key] = net.edges.get(key, 0) + w
    for n in extra_nodes or []:
        if n not in net.nodes:
            net.nodes[n] = NodeInfo()
    return net


def random_graph(rng: random.Random, n_nodes: int, edge_prob: float = 0.5,
                 max_weight: int = 5) -> dict[tuple[str, str], int]:
    nodes = [f"n{i}" for i in range(n_nodes)]
    edges = {}
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < edge_prob:
                edges[(nodes[i], nodes[j])] = rng.randint(1, max_weight)
    return edges


@pytest.fixture
def two_triangles() -> CoCitationNetwork:
    return network_from_edges({
        ("A", "B"): 1, ("A", "C"): 1, ("B", "C"): 1,
        ("D", "E"): 1, ("D", "F"): 1, ("E", "F"): 1,
    })


@pytest.fixture(scope="session")
def covid_mini_corpus():
    records = parse_field_records((FIXTURES / "covid-mini" / "records.txt").read_text("utf-8"))
    contexts = parse_context_sidecar((FIXTURES / "covid-mini" / "contexts.tsv").read_text("utf-8"))
    corpus, diags = assemble_corpus(records.records, contexts.contexts)
    assert not diags
    return corpus


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{outcome:>4}  {name}")


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    ACCEPTANCE_RESULTS.append((name, "PASS" if report.passed else "FAIL"))
