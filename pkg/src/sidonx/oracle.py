"""Exact maximum Sidon / B2[g] subsets of small sets by branch and bound.

Meant for |A| up to ~40; serves as ground truth against which the
extraction pipeline is measured.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: list[int]
    nodes_explored: int
    exhausted: bool


def _fits(x, chosen, counts, g):
    if counts.get(2 * x, 0) >= g:
        return False
    return all(counts.get(x + c, 0) < g for c in chosen)


def _push(x, chosen, counts):
    for c in chosen:
        counts[x + c] = counts.get(x + c, 0) + 1
    counts[2 * x] = counts.get(2 * x, 0) + 1
    chosen.append(x)


def _pop(chosen, counts):
    x = chosen.pop()
    for c in chosen:
        counts[x + c] -= 1
    counts[2 * x] -= 1


def greedy(vals, g=1) -> list[int]:
    """Ascending scan keeping each element that preserves the B2[g] property."""
    chosen, counts = [], {}
    for x in vals:
        if _fits(x, chosen, counts, g):
            _push(x, chosen, counts)
    return chosen


def _size_cap(span, g):
    """Largest k a B2[g] set of integers inside an interval of length ``span`` can have."""
    if g == 1:
        # k(k-1)/2 distinct positive differences, all <= span
        k = (1 + isqrt(1 + 8 * span)) // 2
        while k * (k - 1) // 2 > span:
            k -= 1
        return k
    # k(k+1)/2 sums in [2 lo, 2 hi], at most g each
    cap = g * (2 * span + 1)
    k = isqrt(2 * cap)
    while k * (k + 1) // 2 > cap:
        k -= 1
    return k


def max_b2g(A, g: int = 1, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Maximum B2[g] subset of A by depth-first branch and bound.

    Suffixes of the sorted input are solved from the right (Russian-doll
    order): ``opt[i]`` is the optimum over ``vals[i:]``, and while solving
    suffix i a node holding ``size`` elements whose next candidate is
    ``vals[j]`` is pruned unless ``size + opt[j]`` can beat the incumbent.
    The span cap and the count of remaining elements prune further. Elements
    are branched in ascending order. When ``budget`` nodes are exhausted the
    better of the greedy set and the best set found so far is returned with
    ``exhausted=False`` (still a valid set).
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    vals = sorted(set(A))
    n = len(vals)
    seed = greedy(vals, g)
    if n == 0:
        return OracleResult(0, [], 0, True)
    top = vals[-1]
    opt = [0] * (n + 1)
    best_set: list[int] = []
    chosen, counts = [], {}
    nodes = 0

    class _Found(Exception):
        pass

    class _Budget(Exception):
        pass

    def dfs(j, goal):
        nonlocal nodes
        for t in range(j, n):
            size = len(chosen)
            if size + opt[t] < goal or size + (n - t) < goal:
                return
            if _size_cap(top - chosen[0], g) < goal:
                return
            x = vals[t]
            if not _fits(x, chosen, counts, g):
                continue
            nodes += 1
            if nodes > budget:
                raise _Budget
            _push(x, chosen, counts)
            if len(chosen) >= goal:
                raise _Found
            dfs(t + 1, goal)
            _pop(chosen, counts)

    exhausted = True
    try:
        for i in range(n - 1, -1, -1):
            goal = opt[i + 1] + 1
            opt[i] = opt[i + 1]
            chosen.clear()
            counts.clear()
            nodes += 1
            if nodes > budget:
                raise _Budget
            _push(vals[i], chosen, counts)
            try:
                if goal == 1:
                    raise _Found
                dfs(i + 1, goal)
            except _Found:
                opt[i] = goal
                best_set = list(chosen)
    except _Budget:
        exhausted = False
    best = best_set if len(best_set) >= len(seed) or exhausted else seed
    return OracleResult(len(best), sorted(best), nodes, exhausted)


def max_sidon(A, budget: int = DEFAULT_BUDGET) -> OracleResult:
    return max_b2g(A, 1, budget)
