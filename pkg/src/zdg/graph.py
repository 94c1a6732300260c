"""Zero-divisor graphs with self-adjacency loops, metrics and file formats."""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyGraphError, GraphFormatError
from .ring import FiniteRing, zero_divisor_set

INF = math.inf


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass
class LoopGraph:
    """Undirected simple graph plus a loop flag per vertex.

    ``adj[v]`` is a bitmask of neighbours of v (never containing v itself);
    ``loops`` has bit v set when v is self-adjacent.  ``elements`` maps vertices
    back to ring elements when the graph was built from a ring.
    """

    n: int
    adj: list[int]
    loops: int = 0
    labels: list[str] = field(default_factory=list)
    elements: list[int] | None = None

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency rows do not match vertex count")
        if not self.labels:
            self.labels = [str(v) for v in range(self.n)]
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"adjacency diagonal set at vertex {v}; use loops")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges, loops=(), labels=None) -> "LoopGraph":
        adj = [0] * n
        loop_bits = 0
        for u, v in edges:
            if u == v:
                loop_bits |= 1 << u
            else:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        for v in loops:
            loop_bits |= 1 << v
        return cls(n, adj, loop_bits, list(labels) if labels else [])

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_loop(self, v: int) -> bool:
        return bool(self.loops >> v & 1)

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def total_neighborhood(self, v: int) -> int:
        return self.adj[v] | (self.loops & (1 << v))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def loop_list(self) -> list[int]:
        return list(iter_bits(self.loops))

    def induced(self, vertices: list[int]) -> "LoopGraph":
        pos = {v: i for i, v in enumerate(vertices)}
        adj = []
        loops = 0
        for i, v in enumerate(vertices):
            row = 0
            for u in iter_bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            adj.append(row)
            if self.has_loop(v):
                loops |= 1 << i
        elements = [self.elements[v] for v in vertices] if self.elements is not None else None
        return LoopGraph(len(vertices), adj, loops, [self.labels[v] for v in vertices], elements)


def build_zdg(ring: FiniteRing) -> LoopGraph:
    """Gamma(R) on Z(R)* with an edge u-v iff uv = 0 and a loop at v iff v^2 = 0."""
    verts = zero_divisor_set(ring).to_list()
    if not verts:
        raise EmptyGraphError(f"{ring.label} has no nonzero zero-divisors; its zero-divisor graph is empty")
    pos = np.full(ring.order, -1, dtype=np.int64)
    pos[verts] = np.arange(len(verts))
    vert_arr = np.array(verts, dtype=np.int64)
    adj = []
    loops = 0
    for i, a in enumerate(verts):
        hits = pos[vert_arr[ring.mul_row(a)[vert_arr] == 0]]
        row = 0
        for j in hits:
            row |= 1 << int(j)
        if row >> i & 1:
            loops |= 1 << i
            row &= ~(1 << i)
        adj.append(row)
    labels = [ring.element_label(a) for a in verts]
    return LoopGraph(len(verts), adj, loops, labels, verts)


# ---------------------------------------------------------------------------
# Metrics (loops ignored throughout)


def _bfs(g: LoopGraph, src: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in iter_bits(g.adj[u]):
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: LoopGraph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == g.full


def diameter(g: LoopGraph) -> float:
    if not is_connected(g):
        return INF
    return max((max(_bfs(g, v)) for v in range(g.n)), default=0)


def girth(g: LoopGraph) -> float:
    """Shortest simple cycle length, or inf for a forest."""
    best = INF
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in iter_bits(g.adj[u]):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def universal_vertex(g: LoopGraph) -> int | None:
    full = g.full
    for v in range(g.n):
        if g.closed_neighborhood(v) == full:
            return v
    return None


# ---------------------------------------------------------------------------
# Export / import

_DOT_ID = re.compile(r"^(?:[A-Za-z_][A-Za-z_0-9]*|-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))$")


def _dot_id(label: str) -> str:
    if _DOT_ID.match(label):
        return label
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: LoopGraph, name: str = "G") -> str:
    ids = [_dot_id(lab) for lab in g.labels]
    pairs = sorted(g.edges() + [(v, v) for v in g.loop_list()])
    lines = [f"graph {_dot_id(name)} {{"]
    lines += [f"  {ids[v]};" for v in range(g.n)]
    lines += [f"  {ids[u]} -- {ids[v]};" for u, v in pairs]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: LoopGraph) -> str:
    payload = {
        "n": g.n,
        "edges": [[u, v] for u, v in sorted(g.edges())],
        "loops": g.loop_list(),
        "labels": list(g.labels),
    }
    return json.dumps(payload) + "\n"


def read_graph(text: str) -> LoopGraph:
    """Parse ``n <count>`` followed by ``u v`` edge lines (``u u`` is a loop)."""
    n = None
    edges = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                raise GraphFormatError(no, "expected header 'n <count>'")
            n = int(parts[1])
            if n < 1:
                raise GraphFormatError(no, "vertex count must be at least 1")
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(no, "expected edge 'u v' with 0-based vertex indices")
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise GraphFormatError(no, f"vertex index out of range for n = {n}")
        edges.append((u, v))
    if n is None:
        raise GraphFormatError(1, "missing header 'n <count>'")
    return LoopGraph.from_edges(n, edges)
