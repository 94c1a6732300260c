from __future__ import annotations

import itertools
import random

import numpy as np

from zdg.graph import LoopGraph


def brute_min_cover(n: int, demand_sets: list[set[int]]):
    """Minimum size and lexicographically least minimum set, scanning all 2^n subsets.

    Returns (inf, None) when some demand set is empty.
    """
    if any(not s for s in demand_sets):
        return float("inf"), None
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for s in demand_sets:
        m = sum(1 << v for v in s)
        ok &= (masks & m) != 0
    sizes = np.array([bin(int(x)).count("1") for x in range(1 << n)])
    best = int(sizes[ok].min())
    winners = [tuple(v for v in range(n) if x >> v & 1) for x in np.flatnonzero(ok & (sizes == best))]
    return best, min(winners)


def closed_sets(n, edges):
    nb = [{v} for v in range(n)]
    for u, v in edges:
        nb[u].add(v)
        nb[v].add(u)
    return nb


def total_sets(n, edges):
    nb = [set() for _ in range(n)]
    for u, v in edges:
        nb[u].add(v)
        nb[v].add(u)
    return nb


def random_loop_graph(rng: random.Random, n: int, p: float | None = None, loop_p: float | None = None):
    p = rng.uniform(0.1, 0.8) if p is None else p
    loop_p = rng.uniform(0.0, 0.5) if loop_p is None else loop_p
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    edges += [(v, v) for v in range(n) if rng.random() < loop_p]
    return LoopGraph.from_edges(n, edges), edges
