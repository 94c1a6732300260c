"""Exact domination and total domination numbers on loop-annotated graphs.

Both problems are minimum hitting-set instances: every vertex v demands a
chosen vertex inside S(v), where S is the closed neighbourhood N[v] for
domination and the total neighbourhood N_t(v) (N(v), plus v itself when v is
looped) for total domination.  Because S is symmetric, picking x satisfies
exactly the demands of the vertices in S(x).

The search is a depth-first branch and bound over bitmasks.  Witnesses are the
lexicographically least minimum sets, fixed one position at a time with
feasibility queries against the same search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .graph import LoopGraph, iter_bits

INF = math.inf
ENUMERATION_CAP = 10_000


@dataclass(frozen=True)
class DominationResult:
    value: float | int
    witness: tuple[int, ...] | None
    all_minimum_sets: tuple[tuple[int, ...], ...] | None = None

    @property
    def finite(self) -> bool:
        return self.value != INF

    def labels(self, g: LoopGraph) -> tuple[str, ...] | None:
        if self.witness is None:
            return None
        return tuple(g.labels[v] for v in self.witness)


class Enumeration(NamedTuple):
    sets: list[tuple[int, ...]]
    truncated: bool


class CoverInstance:
    """Hitting-set instance over one graph's vertices.

    ``demands`` and ``candidates`` are bitmasks of live constraints and live
    choices; ``hitters[v]`` lists the choices satisfying demand v and
    ``covers[x]`` the demands satisfied by choice x.
    """

    def __init__(self, sets: list[int], reduce: bool = True):
        n = len(sets)
        self.n = n
        self.covers = list(sets)
        self.hitters = list(sets)
        self.candidates = (1 << n) - 1
        self.demands = (1 << n) - 1
        self._failed: dict[tuple[int, int], int] = {}
        if reduce:
            self._reduce()

    def _reduce(self) -> None:
        # choices with identical coverage: keep the least index
        seen: dict[int, int] = {}
        for x in range(self.n):
            if self.covers[x] in seen:
                self.candidates &= ~(1 << x)
            else:
                seen[self.covers[x]] = x
        live = [self.hitters[v] & self.candidates for v in range(self.n)]
        # demands implied by another demand with a subset of hitters
        order = sorted(range(self.n), key=lambda v: (live[v].bit_count(), v))
        kept: list[int] = []
        for v in order:
            if any(live[u] & ~live[v] == 0 for u in kept):
                self.demands &= ~(1 << v)
            else:
                kept.append(v)

    # -- bounds ---------------------------------------------------------

    def lower_bound(self, uncovered: int, allowed: int) -> int:
        if not uncovered:
            return 0
        best = 0
        for x in iter_bits(allowed):
            c = (self.covers[x] & uncovered).bit_count()
            if c > best:
                best = c
        if best == 0:
            return self.n + 1
        ceil_bound = -(-uncovered.bit_count() // best)
        rows = sorted(
            ((self.hitters[v] & allowed).bit_count(), v) for v in iter_bits(uncovered)
        )
        used = 0
        packed = 0
        for _, v in rows:
            h = self.hitters[v] & allowed
            if not h & used:
                used |= h
                packed += 1
        return max(ceil_bound, packed)

    def greedy(self, uncovered: int, allowed: int) -> list[int] | None:
        chosen = []
        while uncovered:
            best, best_x = 0, -1
            for x in iter_bits(allowed):
                c = (self.covers[x] & uncovered).bit_count()
                if c > best:
                    best, best_x = c, x
            if best_x < 0:
                return None
            chosen.append(best_x)
            uncovered &= ~self.covers[best_x]
            allowed &= ~(1 << best_x)
        return chosen

    # -- search ---------------------------------------------------------

    def feasible(self, uncovered: int, allowed: int, budget: int) -> bool:
        """Is there a set of at most ``budget`` allowed choices covering ``uncovered``?"""
        if not uncovered:
            return True
        if budget <= 0:
            return False
        key = (uncovered, allowed)
        if self._failed.get(key, -1) >= budget:
            return False
        pick, pick_count = -1, self.n + 1
        for v in iter_bits(uncovered):
            c = (self.hitters[v] & allowed).bit_count()
            if c < pick_count:
                pick, pick_count = v, c
                if c == 0:
                    break
        if pick_count == 0 or self.lower_bound(uncovered, allowed) > budget:
            self._failed[key] = max(self._failed.get(key, -1), budget)
            return False
        rest = allowed
        for x in iter_bits(self.hitters[pick] & allowed):
            rest &= ~(1 << x)
            if self.feasible(uncovered & ~self.covers[x], rest, budget - 1):
                return True
        self._failed[key] = max(self._failed.get(key, -1), budget)
        return False

    def minimum(self) -> int | float:
        uncovered, allowed = self.demands, self.candidates
        upper = self.greedy(uncovered, allowed)
        if upper is None:
            return INF
        k = self.lower_bound(uncovered, allowed)
        while k < len(upper) and not self.feasible(uncovered, allowed, k):
            k += 1
        return k

    def least_witness(self, k: int) -> tuple[int, ...]:
        chosen: list[int] = []
        uncovered, allowed = self.demands, self.candidates
        for slot in range(k):
            for x in iter_bits(allowed):
                above = allowed & ~((1 << (x + 1)) - 1)
                if self.feasible(uncovered & ~self.covers[x], above, k - slot - 1):
                    chosen.append(x)
                    uncovered &= ~self.covers[x]
                    allowed = above
                    break
            else:
                raise AssertionError("no feasible extension; minimum value is inconsistent")
            if not uncovered:
                break
        return tuple(chosen)

    def enumerate(self, k: int, cap: int) -> Enumeration:
        """All covers of size k in lexicographic order; stops after cap + 1."""
        found: list[tuple[int, ...]] = []

        def walk(prefix: list[int], uncovered: int, allowed: int) -> bool:
            if len(prefix) == k:
                if not uncovered:
                    found.append(tuple(prefix))
                return len(found) > cap
            for x in iter_bits(allowed):
                above = allowed & ~((1 << (x + 1)) - 1)
                left = uncovered & ~self.covers[x]
                if not self.feasible(left, above, k - len(prefix) - 1):
                    continue
                prefix.append(x)
                stop = walk(prefix, left, above)
                prefix.pop()
                if stop:
                    return True
            return False

        walk([], self.demands, self.candidates)
        return Enumeration(found[:cap], len(found) > cap)


# ---------------------------------------------------------------------------
# Public API


def _closed_sets(g: LoopGraph) -> list[int]:
    return [g.closed_neighborhood(v) for v in range(g.n)]


def _total_sets(g: LoopGraph) -> list[int]:
    return [g.total_neighborhood(v) for v in range(g.n)]


def _solve(g: LoopGraph, sets: list[int], reduce: bool) -> DominationResult:
    if g.n == 0:
        return DominationResult(0, ())
    if any(s == 0 for s in sets):
        return DominationResult(INF, None)
    inst = CoverInstance(sets, reduce=reduce)
    k = inst.minimum()
    if k == INF:
        return DominationResult(INF, None)
    return DominationResult(int(k), inst.least_witness(int(k)))


def domination_number(g: LoopGraph, reduce: bool = True) -> DominationResult:
    return _solve(g, _closed_sets(g), reduce)


def total_domination_number(g: LoopGraph, reduce: bool = True) -> DominationResult:
    """Minimum X with a member of X in N_t(v) for every v; inf if some N_t(v) is empty."""
    return _solve(g, _total_sets(g), reduce)


def _hits_all(sets: list[int], chosen) -> bool:
    mask = 0
    for x in chosen:
        mask |= 1 << x
    return all(s & mask for s in sets)


def is_dominating_set(g: LoopGraph, chosen) -> bool:
    return _hits_all(_closed_sets(g), chosen)


def is_total_dominating_set(g: LoopGraph, chosen) -> bool:
    return _hits_all(_total_sets(g), chosen)


def enumerate_minimum_total_dominating_sets(g: LoopGraph, cap: int = ENUMERATION_CAP) -> Enumeration:
    """All minimum total dominating sets in lexicographic order, at most ``cap``."""
    sets = _total_sets(g)
    if any(s == 0 for s in sets):
        raise ValueError("total domination number is infinite; nothing to enumerate")
    value = CoverInstance(sets).minimum()
    # identical-coverage choices are distinct sets here, so keep every vertex
    inst = CoverInstance(sets, reduce=False)
    return inst.enumerate(int(value), cap)


def twin_reduce(g: LoopGraph) -> tuple[LoopGraph, list[int]]:
    """Collapse vertices sharing both N[v] and N_t(v) to their least member.

    Returns the reduced graph and ``class_map`` sending each original vertex to
    its class index (the vertex index in the reduced graph).
    """
    reps: dict[tuple[int, int], int] = {}
    class_map = []
    keep = []
    for v in range(g.n):
        key = (g.closed_neighborhood(v), g.total_neighborhood(v))
        if key not in reps:
            reps[key] = len(keep)
            keep.append(v)
        class_map.append(reps[key])
    return g.induced(keep), class_map


def representatives(class_map: list[int]) -> list[int]:
    """Original vertex standing for each class (its least member)."""
    out: dict[int, int] = {}
    for v, c in enumerate(class_map):
        out.setdefault(c, v)
    return [out[c] for c in range(len(out))]


def lift_witness(witness, class_map: list[int]) -> tuple[int, ...]:
    reps = representatives(class_map)
    return tuple(sorted(reps[c] for c in witness))
