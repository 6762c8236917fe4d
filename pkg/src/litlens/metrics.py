"""Node-level navigation indicators: betweenness centrality and citation bursts.

Betweenness runs Brandes' accumulation over the unweighted skeleton
(co-citation weights are similarities, not path costs) and is normalized per
connected component. Bursts come from a two-state rate model (baseline vs
s-times-elevated) fitted with a minimum-cost dynamic program.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .cocite import CoCitationNetwork


@dataclass
class Burst:
    start: int  # slice index, inclusive
    end: int    # slice index, inclusive
    weight: float


@dataclass
class NodeMetrics:
    betweenness: dict[str, float] = field(default_factory=dict)
    bursts: dict[str, list[Burst]] = field(default_factory=dict)


def betweenness(network: CoCitationNetwork) -> dict[str, float]:
    """Normalized shortest-path betweenness over the unweighted skeleton."""
    adj = {n: sorted(nbrs) for n, nbrs in network.adjacency().items()}
    return betweenness_from_adjacency(adj)


def betweenness_from_adjacency(adj: dict[str, list[str]]) -> dict[str, float]:
    nodes = sorted(adj)
    raw = dict.fromkeys(nodes, 0.0)

    for source in nodes:
        # Brandes: single-source shortest paths + dependency accumulation
        dist = {source: 0}
        sigma = dict.fromkeys(nodes, 0.0)
        sigma[source] = 1.0
        preds: dict[str, list[str]] = {n: [] for n in nodes}
        order: list[str] = []
        queue = deque([source])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(nodes, 0.0)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != source:
                raw[w] += delta[w]

    component = _component_sizes(adj)
    out = {}
    for n in nodes:
        size = component[n]
        denom = (size - 1) * (size - 2) / 2.0
        # raw counts each unordered pair twice (once per endpoint as source)
        out[n] = (raw[n] / 2.0) / denom if denom > 0 else 0.0
    return out


def _component_sizes(adj: dict[str, list[str]]) -> dict[str, int]:
    sizes: dict[str, int] = {}
    seen: set[str] = set()
    for start in sorted(adj):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        for n in comp:
            sizes[n] = len(comp)
    return sizes


def detect_bursts(series: list[float], s: float = 2.0, gamma: float = 1.0) -> list[Burst]:
    """Maximal elevated-state runs of the two-state burst model.

    State 0 emits at the series mean rate, state 1 at s times that; entering
    state 1 costs gamma. The optimal state sequence minimizes the summed
    per-slice negative log rate terms plus transition costs. A burst's weight
    is the cost reduction of the elevated state over the baseline across its
    interval. All-zero or empty series have no bursts.
    """
    if s <= 1:
        raise ValueError("state ratio s must be > 1")
    if gamma < 0:
        raise ValueError("transition cost gamma must be >= 0")
    n = len(series)
    if n == 0:
        return []
    total = float(sum(series))
    if total <= 0:
        return []  # degenerate series: nothing to elevate

    base = total / n
    rates = (base, s * base)
    log_rates = (math.log(rates[0]), math.log(rates[1]))

    def state_cost(t: int, q: int) -> float:
        return rates[q] - series[t] * log_rates[q]

    INF = float("inf")
    cost = [state_cost(0, 0), state_cost(0, 1) + gamma]  # implicit initial state 0
    parent: list[tuple[int, int]] = []
    for t in range(1, n):
        row: list[float] = []
        par: list[int] = []
        for q in (0, 1):
            best_cost, best_prev = INF, 0
            for prev in (0, 1):
                c = cost[prev] + (gamma if prev == 0 and q == 1 else 0.0)
                # ties prefer the baseline predecessor for determinism
                if c < best_cost:
                    best_cost, best_prev = c, prev
            row.append(best_cost + state_cost(t, q))
            par.append(best_prev)
        cost = row
        parent.append((par[0], par[1]))

    final = 0 if cost[0] <= cost[1] else 1
    states = [0] * n
    states[n - 1] = final
    for t in range(n - 2, -1, -1):
        states[t] = parent[t][states[t + 1]]

    bursts: list[Burst] = []
    t = 0
    while t < n:
        if states[t] == 1:
            start = t
            while t + 1 < n and states[t + 1] == 1:
                t += 1
            weight = sum(state_cost(i, 0) - state_cost(i, 1) for i in range(start, t + 1))
            bursts.append(Burst(start, t, weight))
        t += 1
    return bursts


def sequence_cost(series: list[float], states: list[int], s: float, gamma: float) -> float:
    """Cost of an explicit state sequence; the DP minimizes exactly this."""
    n = len(series)
    base = sum(series) / n
    rates = (base, s * base)
    total = 0.0
    prev = 0
    for t, q in enumerate(states):
        total += rates[q] - series[t] * math.log(rates[q])
        if prev == 0 and q == 1:
            total += gamma
        prev = q
    return total


def compute_node_metrics(network: CoCitationNetwork, burst_s: float = 2.0,
                         burst_gamma: float = 1.0) -> NodeMetrics:
    """Betweenness plus per-node burst intervals over the network's slices."""
    result = NodeMetrics(betweenness=betweenness(network))
    labels = network.slices
    for node in sorted(network.nodes):
        series = [float(network.nodes[node].slice_counts.get(lab, 0)) for lab in labels]
        found = detect_bursts(series, burst_s, burst_gamma) if series else []
        if found:
            result.bursts[node] = found
    return result
