import random

import pytest

from litlens.metrics import (betweenness, betweenness_from_adjacency, compute_node_metrics,
                             detect_bursts, sequence_cost)

from conftest import network_from_edges, random_graph
from oracles import betweenness_pathcount, burst_exhaustive


def adjacency(edges, extra_nodes=None):
    return {n: sorted(nbrs)
            for n, nbrs in network_from_edges(edges, extra_nodes).adjacency().items()}


def test_path_center():
    net = network_from_edges({("A", "B"): 1, ("B", "C"): 1})
    assert betweenness(net) == {"A": 0.0, "B": 1.0, "C": 0.0}


def test_complete_graph_zero():
    nodes = ["A", "B", "C", "D"]
    edges = {(a, b): 1 for i, a in enumerate(nodes) for b in nodes[i + 1:]}
    assert all(v == 0.0 for v in betweenness(network_from_edges(edges)).values())


def test_star_center_normalized_one():
    edges = {("C", leaf): 1 for leaf in ["L1", "L2", "L3", "L4"]}
    result = betweenness(network_from_edges(edges))
    assert result["C"] == 1.0  # raw 6 == C(4,2), normalized by (5-1)(5-2)/2
    assert all(result[leaf] == 0.0 for leaf in ["L1", "L2", "L3", "L4"])


def test_disconnected_components_normalized_separately():
    # path of 3 + isolated pair: B central within its component only
    adj = adjacency({("A", "B"): 1, ("B", "C"): 1, ("X", "Y"): 1})
    result = betweenness_from_adjacency(adj)
    assert result["B"] == 1.0
    assert result["X"] == result["Y"] == 0.0


def test_betweenness_matches_pathcount_oracle():
    rng = random.Random(31)
    for _ in range(30):
        n = rng.randint(2, 25)
        edges = random_graph(rng, n, edge_prob=rng.uniform(0.05, 0.4))
        adj = adjacency(edges, extra_nodes=[f"n{i}" for i in range(n)])
        mine = betweenness_from_adjacency(adj)
        ref = betweenness_pathcount(adj)
        for node in adj:
            assert mine[node] == pytest.approx(ref[node], abs=1e-9)


def test_burst_spec_example():
    bursts = detect_bursts([1, 1, 10, 12, 1], s=2, gamma=1)
    assert len(bursts) == 1
    assert (bursts[0].start, bursts[0].end) == (2, 3)
    assert bursts[0].weight > 0


def test_burst_constant_series_none():
    assert detect_bursts([3, 3, 3, 3], s=2, gamma=1) == []


def test_burst_empty_and_zero_series():
    assert detect_bursts([], s=2, gamma=1) == []
    assert detect_bursts([0, 0, 0], s=2, gamma=1) == []


def test_burst_param_validation():
    with pytest.raises(ValueError):
        detect_bursts([1, 2], s=1.0)
    with pytest.raises(ValueError):
        detect_bursts([1, 2], s=2.0, gamma=-1)


def test_burst_dp_equals_exhaustive():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(1, 10)
        series = [float(rng.randint(0, 12)) for _ in range(n)]
        if sum(series) == 0:
            continue
        s = rng.choice([1.5, 2.0, 3.0])
        gamma = rng.choice([0.0, 0.5, 1.0, 2.0])
        bursts = detect_bursts(series, s, gamma)
        states = [0] * n
        for b in bursts:
            for t in range(b.start, b.end + 1):
                states[t] = 1
        best_cost, best_seqs = burst_exhaustive(series, s, gamma)
        assert sequence_cost(series, states, s, gamma) == pytest.approx(best_cost, abs=1e-9)
        assert tuple(states) in best_seqs


def test_burst_scale_invariance_gamma_zero():
    rng = random.Random(17)
    for _ in range(20):
        series = [float(rng.randint(0, 9)) for _ in range(8)]
        if sum(series) == 0:
            continue
        plain = detect_bursts(series, s=2.0, gamma=0.0)
        scaled = detect_bursts([x * 5 for x in series], s=2.0, gamma=0.0)
        assert [(b.start, b.end) for b in plain] == [(b.start, b.end) for b in scaled]


def test_burst_intervals_disjoint_and_in_range():
    rng = random.Random(19)
    for _ in range(25):
        n = rng.randint(1, 12)
        series = [float(rng.randint(0, 8)) for _ in range(n)]
        bursts = detect_bursts(series, 2.0, 1.0) if sum(series) else []
        last_end = -1
        for b in bursts:
            assert 0 <= b.start <= b.end < n
            assert b.start > last_end
            last_end = b.end


def test_compute_node_metrics_series_alignment():
    net = network_from_edges({("A", "B"): 1})
    net.slices = ["2020-JAN", "2020-FEB", "2020-MAR", "2020-APR"]
    net.nodes["A"].slice_counts = {"2020-JAN": 1, "2020-MAR": 9, "2020-APR": 9}
    net.nodes["B"].slice_counts = {"2020-JAN": 2, "2020-FEB": 2, "2020-MAR": 2, "2020-APR": 2}
    nm = compute_node_metrics(net, burst_s=2.0, burst_gamma=1.0)
    assert "A" in nm.bursts and "B" not in nm.bursts
    [burst] = nm.bursts["A"]
    assert (burst.start, burst.end) == (2, 3)
