"""Undirected simple graphs: generators, file ingestion, connectivity.

Node ids are dense integers 0..n-1 and never change after construction.
Node removal is always expressed through an external boolean "alive" mask
so that per-node quantities (capacities, defense) stay aligned during a
cascade.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "GeneratorConfig",
    "generate",
    "load_edge_list",
    "components",
    "largest_component_size",
]


class Graph:
    """Immutable undirected simple graph over nodes 0..n-1.

    Adjacency is stored in CSR form (``indptr``, ``indices``) with each
    neighbor list sorted, plus a canonical edge array (u < v, sorted
    lexicographically) used for serialization and equality checks.
    """

    __slots__ = (
        "n",
        "indptr",
        "indices",
        "edges",
        "original_ids",
        "dropped_self_loops",
        "dropped_duplicates",
        "requested_n",
    )

    def __init__(self, n: int, edges: np.ndarray):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n <= 0:
            raise ValueError(f"graph needs at least one node, got n={n}")
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError("edge endpoint out of range 0..n-1")
        if edges.size and np.any(edges[:, 0] == edges[:, 1]):
            raise ValueError("self-loops are not allowed")
        # canonical form: u < v, unique, lexicographically sorted
        lo = edges.min(axis=1)
        hi = edges.max(axis=1)
        canon = np.stack([lo, hi], axis=1)
        if canon.shape[0]:
            order = np.lexsort((canon[:, 1], canon[:, 0]))
            canon = canon[order]
            dup = np.all(canon[1:] == canon[:-1], axis=1)
            if np.any(dup):
                raise ValueError("duplicate edges are not allowed")
        self.n = int(n)
        self.edges = canon
        both = np.concatenate([canon, canon[:, ::-1]], axis=0) if canon.size else canon
        deg = np.bincount(both[:, 0], minlength=n) if both.size else np.zeros(n, dtype=np.int64)
        self.indptr = np.concatenate([[0], np.cumsum(deg)]).astype(np.int64)
        indices = np.zeros(both.shape[0], dtype=np.int64)
        if both.size:
            order = np.lexsort((both[:, 1], both[:, 0]))
            indices = both[order, 1].astype(np.int64)
        self.indices = indices
        # ingestion / generator metadata, set by the constructing helper
        self.original_ids: np.ndarray | None = None
        self.dropped_self_loops = 0
        self.dropped_duplicates = 0
        self.requested_n: int | None = None

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def mean_degree(self) -> float:
        return 2.0 * self.num_edges / self.n

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def to_canonical_text(self) -> str:
        """Serialize as a '# n m' comment header plus one 'u v' line per
        edge (u < v, rows sorted), so the text is also a plain edge list."""
        lines = [f"# {self.n} {self.num_edges}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_canonical_text(cls, text: str) -> "Graph":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("#"):
            raise ValueError("canonical graph text needs a '# n m' header")
        n, m = (int(tok) for tok in lines[0].lstrip("#").split())
        body = [ln for ln in lines[1:] if not ln.startswith(("#", "%"))]
        if len(body) != m:
            raise ValueError(f"header claims {m} edges, found {len(body)}")
        edges = np.array(
            [[int(a), int(b)] for a, b in (ln.split() for ln in body)],
            dtype=np.int64,
        ).reshape(-1, 2)
        return cls(n, edges)


@dataclass(frozen=True)
class GeneratorConfig:
    """Synthetic-network recipe.

    model: "ba" (preferential attachment) or "er" (uniform random baseline).
    mean_degree: target average degree; for "ba" it must be an even integer
    >= 2 since each new node attaches with m = mean_degree/2 edges.
    """

    model: str
    n: int
    mean_degree: float
    seed: int

    def validate(self) -> None:
        if self.model not in ("ba", "er"):
            raise ValueError(f"unknown model {self.model!r}, expected 'ba' or 'er'")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.model == "ba":
            k = self.mean_degree
            if k < 2 or k != int(k) or int(k) % 2 != 0:
                raise ValueError(
                    f"ba model needs an even integer mean_degree >= 2, got {k}"
                )
            m = int(k) // 2
            if self.n < m + 1:
                raise ValueError(f"ba model needs n >= m+1 = {m + 1}, got n={self.n}")
        else:
            if self.mean_degree <= 0:
                raise ValueError(f"mean_degree must be positive, got {self.mean_degree}")
            if self.n >= 2 and self.mean_degree / (self.n - 1) > 1.0:
                raise ValueError("mean_degree implies edge probability > 1")


def generate(config: GeneratorConfig) -> Graph:
    """Generate a synthetic graph; the seed fully determines the result.

    "ba": start from a complete nucleus on m+1 nodes, then attach each new
    node to m distinct existing nodes drawn with probability proportional
    to current degree (redrawing duplicates within a step). Connected by
    construction.

    "er": G(n, p) with p = mean_degree/(n-1); if disconnected, the largest
    component is kept and re-indexed, with the requested size recorded in
    ``requested_n``.
    """
    config.validate()
    rng = np.random.default_rng(config.seed)
    if config.model == "ba":
        return _generate_ba(config.n, int(config.mean_degree) // 2, rng)
    return _generate_er(config.n, config.mean_degree / (config.n - 1), rng)


def _generate_ba(n: int, m: int, rng: np.random.Generator) -> Graph:
    num_edges = m * (m + 1) // 2 + m * (n - m - 1)
    pool = np.empty(2 * num_edges, dtype=np.int64)  # one entry per degree unit
    edges = np.empty((num_edges, 2), dtype=np.int64)
    k = 0
    e = 0
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            edges[e] = (i, j)
            e += 1
            pool[k] = i
            pool[k + 1] = j
            k += 2
    for v in range(m + 1, n):
        chosen: list[int] = []
        while len(chosen) < m:
            cand = int(pool[rng.integers(0, k)])
            if cand not in chosen:
                chosen.append(cand)
        for t in sorted(chosen):
            edges[e] = (t, v)
            e += 1
            pool[k] = t
            pool[k + 1] = v
            k += 2
    return Graph(n, edges)


def _generate_er(n: int, p: float, rng: np.random.Generator) -> Graph:
    if n == 1 or p == 0.0:
        g = Graph(n, np.empty((0, 2), dtype=np.int64))
        g.requested_n = n
        return g
    # skip-sampling over the flattened upper triangle (one uniform per edge)
    edges = []
    lp = math.log1p(-p) if p < 1.0 else None
    v, w = 1, -1
    while v < n:
        if lp is None:
            w += 1
        else:
            w += 1 + int(math.log1p(-rng.random()) / lp)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            edges.append((w, v))
    g = Graph(n, np.array(edges, dtype=np.int64).reshape(-1, 2))
    comps = components(g)
    if len(comps) > 1:
        keep = comps[0]
        remap = -np.ones(n, dtype=np.int64)
        remap[keep] = np.arange(keep.size)
        mask = np.isin(g.edges[:, 0], keep) & np.isin(g.edges[:, 1], keep)
        sub_edges = remap[g.edges[mask]]
        g = Graph(keep.size, sub_edges)
    g.requested_n = n
    return g


def load_edge_list(path: str, expect_header: bool = False) -> Graph:
    """Read a whitespace-separated edge list; '#'/'%' lines are comments.

    Node ids in the file may be arbitrary integers; they are re-indexed
    densely with the original ids kept in ``original_ids``. Self-loops and
    duplicate edges are dropped, with counts recorded on the graph. With
    ``expect_header`` the first data line is read as an 'n m' count header
    (the canonical serialized form).
    """
    pairs: list[tuple[int, int]] = []
    header: tuple[int, int] | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped[0] in "#%":
                continue
            tokens = stripped.split()
            if len(tokens) != 2:
                raise ValueError(f"{path}:{lineno}: expected two tokens, got {len(tokens)}")
            try:
                a, b = int(tokens[0]), int(tokens[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer token") from exc
            if expect_header and header is None:
                header = (a, b)
                continue
            pairs.append((a, b))
    if not pairs:
        raise ValueError(f"{path}: no edges found")
    if header is not None and header[1] != len(pairs):
        raise ValueError(f"{path}: header claims {header[1]} edges, found {len(pairs)}")

    raw = np.array(pairs, dtype=np.int64)
    self_loops = raw[:, 0] == raw[:, 1]
    dropped_self = int(self_loops.sum())
    raw = raw[~self_loops]
    if raw.shape[0] == 0:
        raise ValueError(f"{path}: no edges left after dropping self-loops")
    if header is not None and raw.min() >= 0 and raw.max() < header[0]:
        # ids already dense per the header; keep them (isolated nodes allowed)
        n = header[0]
        dense = raw
        original_ids = None
    else:
        original_ids, flat = np.unique(raw, return_inverse=True)
        dense = flat.reshape(-1, 2)
        n = original_ids.size
    lo = dense.min(axis=1)
    hi = dense.max(axis=1)
    canon = np.unique(np.stack([lo, hi], axis=1), axis=0)
    dropped_dup = int(dense.shape[0] - canon.shape[0])
    g = Graph(n, canon)
    g.original_ids = original_ids
    g.dropped_self_loops = dropped_self
    g.dropped_duplicates = dropped_dup
    return g


def components(g: Graph, alive: np.ndarray | None = None) -> list[np.ndarray]:
    """Connected components of the alive subgraph, largest first.

    Returns sorted node-id arrays; ties in size break by smallest member.
    Dead nodes belong to no component.
    """
    if alive is None:
        alive = np.ones(g.n, dtype=bool)
    alive = np.asarray(alive, dtype=bool)
    if alive.shape != (g.n,):
        raise ValueError(f"alive mask must have shape ({g.n},)")
    seen = ~alive.copy()
    indptr, indices = g.indptr, g.indices
    comps: list[np.ndarray] = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        members = [s]
        while stack:
            v = stack.pop()
            for w in indices[indptr[v] : indptr[v + 1]]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
                    members.append(int(w))
        members.sort()
        comps.append(np.array(members, dtype=np.int64))
    comps.sort(key=lambda c: (-c.size, int(c[0])))
    return comps


def largest_component_size(g: Graph, alive: np.ndarray | None = None) -> int:
    comps = components(g, alive)
    return int(comps[0].size) if comps else 0
