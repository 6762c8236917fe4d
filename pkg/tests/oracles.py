"""Independent reference implementations used as test oracles.

Each oracle recomputes a quantity from first principles along a different
path than the production code: pairwise-sum modularity, path-counting
betweenness, exhaustive state sequences for bursts, exhaustive set
partitions for clustering. They are deliberately slow and simple.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations, product


def modularity_pairwise(edges: dict[tuple[str, str], float],
                        assignment: dict[str, int]) -> float:
    """Q via the node-pair formulation (1/2W) sum_ij (A_ij - d_i d_j / 2W) delta."""
    nodes = sorted(assignment)
    w = {n: {} for n in nodes}
    for (a, b), wt in edges.items():
        w[a][b] = w[a].get(b, 0.0) + wt
        w[b][a] = w[b].get(a, 0.0) + wt
    degree = {n: sum(w[n].values()) for n in nodes}
    total2 = sum(degree.values())  # 2W
    q = 0.0
    for i in nodes:
        for j in nodes:
            if assignment[i] != assignment[j]:
                continue
            a_ij = w[i].get(j, 0.0) if i != j else 0.0
            q += a_ij - degree[i] * degree[j] / total2
    return q / total2


def betweenness_pathcount(adj: dict[str, list[str]]) -> dict[str, float]:
    """Normalized betweenness via per-pair path counting (no Brandes recursion)."""
    nodes = sorted(adj)

    def bfs(src: str) -> tuple[dict[str, int], dict[str, float]]:
        dist = {src: 0}
        sigma = {n: 0.0 for n in nodes}
        sigma[src] = 1.0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
                if dist[u] == dist[v] + 1:
                    sigma[u] += sigma[v]
        return dist, sigma

    dists = {}
    sigmas = {}
    for n in nodes:
        dists[n], sigmas[n] = bfs(n)

    raw = dict.fromkeys(nodes, 0.0)
    for s, t in combinations(nodes, 2):
        if t not in dists[s]:
            continue
        d_st = dists[s][t]
        total = sigmas[s][t]
        for v in nodes:
            if v in (s, t) or v not in dists[s] or v not in dists[t]:
                continue
            if dists[s][v] + dists[t][v] == d_st:
                raw[v] += sigmas[s][v] * sigmas[t][v] / total

    comp_size = {}
    seen = set()
    for start in nodes:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    queue.append(u)
        for n in comp:
            comp_size[n] = len(comp)

    out = {}
    for n in nodes:
        denom = (comp_size[n] - 1) * (comp_size[n] - 2) / 2.0
        out[n] = raw[n] / denom if denom > 0 else 0.0
    return out


def burst_exhaustive(series: list[float], s: float, gamma: float,
                     tol: float = 1e-9) -> tuple[float, list[tuple[int, ...]]]:
    """(min cost, all optimal state sequences) by enumerating every sequence."""
    n = len(series)
    base = sum(series) / n
    rates = (base, s * base)
    logs = (math.log(rates[0]), math.log(rates[1]))
    per_slice = [(rates[0] - c * logs[0], rates[1] - c * logs[1]) for c in series]
    best_cost = float("inf")
    best: list[tuple[int, ...]] = []
    for states in product((0, 1), repeat=n):
        cost = 0.0
        prev = 0
        for t, q in enumerate(states):
            cost += per_slice[t][q]
            if prev == 0 and q == 1:
                cost += gamma
            prev = q
        if cost < best_cost - tol:
            best_cost = cost
            best = [states]
        elif abs(cost - best_cost) <= tol:
            best.append(states)
    return best_cost, best


def set_partitions(items: list[str]):
    """All set partitions of the items (restricted-growth enumeration)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
        yield [[first]] + sub


def best_partition_exhaustive(nodes: list[str],
                              edges: dict[tuple[str, str], float]) -> float:
    """Maximum modularity over every possible partition."""
    best = -math.inf
    for parts in set_partitions(nodes):
        assignment = {n: i for i, ms in enumerate(parts) for n in ms}
        q = modularity_pairwise(edges, assignment)
        best = max(best, q)
    return best


def cocitation_bruteforce(citing_refs: dict[str, list[str]],
                          node_set: set[str]) -> dict[tuple[str, str], int]:
    """Edge weights by scanning every citing record's reference pairs."""
    weights: dict[tuple[str, str], int] = {}
    for refs in citing_refs.values():
        eligible = sorted({r for r in refs if r in node_set})
        for a, b in combinations(eligible, 2):
            weights[(a, b)] = weights.get((a, b), 0) + 1
    return weights
