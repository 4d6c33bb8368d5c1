"""Compiled single-source accumulation kernel for shortest-path loads."""

import numpy as np
from numba import njit


@njit(cache=True)
def load_pass(indptr, indices, alive, fractional):
    """Sum per-source shortest-path contributions over the alive subgraph.

    For every alive source s, a BFS yields distances, path counts sigma,
    and the visitation order; a reverse sweep then accumulates either the
    count of paths to downstream targets (count convention) or the Brandes
    dependency (fractional convention). The final halving converts ordered
    source/target pairs to unordered ones.
    """
    n = alive.size
    load = np.zeros(n, np.float64)
    dist = np.empty(n, np.int64)
    sigma = np.empty(n, np.float64)
    acc = np.empty(n, np.float64)
    order = np.empty(n, np.int64)
    for s in range(n):
        if not alive[s]:
            continue
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = order[head]
            head += 1
            dv1 = dist[v] + 1
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if not alive[w]:
                    continue
                if dist[w] < 0:
                    dist[w] = dv1
                    sigma[w] = 0.0
                    order[tail] = w
                    tail += 1
                if dist[w] == dv1:
                    sigma[w] += sigma[v]
        for idx in range(tail - 1, -1, -1):
            v = order[idx]
            total = 0.0
            dv1 = dist[v] + 1
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if alive[w] and dist[w] == dv1:
                    if fractional:
                        total += sigma[v] / sigma[w] * (1.0 + acc[w])
                    else:
                        total += 1.0 + acc[w]
            acc[v] = total
        if fractional:
            for idx in range(1, tail):
                v = order[idx]
                load[v] += acc[v]
        else:
            for idx in range(1, tail):
                v = order[idx]
                load[v] += sigma[v] * acc[v]
    return load * 0.5
