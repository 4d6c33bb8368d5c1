"""Transmission load: shortest paths passing through each node.

Three conventions, selected per experiment:

* "count" (default): the number of shortest paths, over all unordered
  pairs of distinct alive nodes s,t (both different from i), on which i
  sits as an interior vertex. Integer-valued by construction; carried as
  float64, exact up to 2**53, checked against an all-integer oracle.
* "fractional": each pair's contribution is divided by the pair's total
  path count (classic betweenness), so a pair contributes 1 split across
  its routes.
* "endpoint": fractional, plus each node also carries the pairs it
  terminates; equivalently fractional betweenness plus (component size
  minus one). No node in a non-trivial component has zero load under
  this convention.

Pairs in different components contribute nothing, so every convention is
well-defined on any alive mask.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

import numpy as np

from . import _kernels
from .graph import Graph, components

__all__ = ["CONVENTIONS", "compute_load", "oracle_load", "warm_up"]

CONVENTIONS = ("count", "fractional", "endpoint")


def compute_load(g: Graph, alive: np.ndarray | None = None, convention: str = "count") -> np.ndarray:
    """Per-node load on the alive subgraph (float64 vector, zeros for dead nodes)."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown load convention {convention!r}")
    if alive is None:
        alive = np.ones(g.n, dtype=bool)
    alive = np.ascontiguousarray(alive, dtype=bool)
    if alive.shape != (g.n,):
        raise ValueError(f"alive mask must have shape ({g.n},)")
    load = _kernels.load_pass(g.indptr, g.indices, alive, convention != "count")
    if convention == "endpoint":
        for comp in components(g, alive):
            load[comp] += comp.size - 1
    return load


def oracle_load(
    g: Graph,
    alive: np.ndarray | None = None,
    convention: str = "count",
    max_nodes: int = 200,
) -> np.ndarray:
    """Reference load via explicit all-pairs enumeration in exact arithmetic.

    Distances come from one BFS per source; path counts follow from a
    dynamic program over nodes sorted by distance; every (source, target,
    interior) triple is then checked directly. Counts stay integers and
    the fractional conventions use exact rationals. Deliberately slow and
    independent of the compiled kernel; guarded to small instances.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown load convention {convention!r}")
    if alive is None:
        alive = np.ones(g.n, dtype=bool)
    alive = np.asarray(alive, dtype=bool)
    nodes = [v for v in range(g.n) if alive[v]]
    if len(nodes) > max_nodes:
        raise ValueError(f"oracle limited to {max_nodes} alive nodes, got {len(nodes)}")

    adj = {v: [int(w) for w in g.neighbors(v) if alive[w]] for v in nodes}
    dist: dict[int, dict[int, int]] = {}
    sigma: dict[int, dict[int, int]] = {}
    for s in nodes:
        d = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in d:
                    d[w] = d[v] + 1
                    queue.append(w)
        counts = {v: 0 for v in d}
        counts[s] = 1
        for v in sorted(d, key=d.get):
            if v == s:
                continue
            counts[v] = sum(counts[u] for u in adj[v] if d.get(u) == d[v] - 1)
        dist[s] = d
        sigma[s] = counts

    load = [Fraction(0)] * g.n
    for i, s in enumerate(nodes):
        for t in nodes[i + 1 :]:
            if t not in dist[s]:
                continue
            d_st = dist[s][t]
            for v in nodes:
                if v == s or v == t or v not in dist[s] or v not in dist[t]:
                    continue
                if dist[s][v] + dist[t][v] == d_st:
                    paths = sigma[s][v] * sigma[t][v]
                    if convention == "count":
                        load[v] += paths
                    else:
                        load[v] += Fraction(paths, sigma[s][t])
    if convention == "endpoint":
        seen: set[int] = set()
        for s in nodes:
            if s in seen:
                continue
            comp = set(dist[s])
            seen |= comp
            for v in comp:
                load[v] += len(comp) - 1
    return np.array([float(x) for x in load], dtype=np.float64)


def warm_up() -> None:
    """Trigger kernel compilation so later timings measure the algorithm only."""
    g = Graph(3, np.array([[0, 1], [1, 2]]))
    compute_load(g)
    compute_load(g, convention="fractional")
