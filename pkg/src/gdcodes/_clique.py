"""Maximum clique by branch and bound with a greedy colouring bound, plus
a tabu swap local search for large independent sets. Graphs are given as
adjacency bitsets (Python ints)."""
from __future__ import annotations

import random
from typing import Sequence


class BudgetExhausted(Exception):
    pass


def _colour_sort(cand: int, adj: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of the candidate set. Returns vertices in
    colouring order and the colour number of each (nondecreasing)."""
    order, colours = [], []
    colour = 0
    uncoloured = cand
    while uncoloured:
        colour += 1
        avail = uncoloured
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~low
            avail &= ~adj[v]
            uncoloured &= ~low
            order.append(v)
            colours.append(colour)
    return order, colours


def max_clique(adj: Sequence[int], lower: list[int] | None = None,
               node_budget: int | None = None) -> tuple[list[int], bool]:
    """Return (clique, exact). ``exact`` is False when the node budget ran out
    before the search space was exhausted; the clique is then the best found."""
    n = len(adj)
    best: list[int] = list(lower or [])
    nodes = 0

    def expand(current: list[int], cand: int):
        nonlocal best, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExhausted
        order, colours = _colour_sort(cand, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(current) + colours[i] <= len(best):
                return
            v = order[i]
            current.append(v)
            sub = cand & adj[v]
            if sub:
                expand(current, sub)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            cand &= ~(1 << v)

    try:
        expand([], (1 << n) - 1)
    except BudgetExhausted:
        return sorted(best), False
    return sorted(best), True


def tabu_independent_set(conflicts: Sequence[Sequence[int]], target: int, iters: int,
                         rng: random.Random, tabu_tenure: int = 7,
                         start: Sequence[int] = ()) -> list[int]:
    """Grow an independent set in the conflict graph by random additions and
    one-for-one swaps, stopping once ``target`` vertices are chosen.

    A vertex with no chosen neighbour is added; a vertex with exactly one is
    swapped in for that neighbour unless it was recently swapped out.
    """
    m = len(conflicts)
    chosen = [False] * m
    count = [0] * m
    tabu = [-1] * m
    size = 0
    best: list[int] = []

    def add(i):
        nonlocal size
        chosen[i] = True
        size += 1
        for j in conflicts[i]:
            count[j] += 1

    def remove(i):
        nonlocal size
        chosen[i] = False
        size -= 1
        for j in conflicts[i]:
            count[j] -= 1

    for i in start:
        if not chosen[i] and count[i] == 0:
            add(i)
    if m == 0:
        return []
    for it in range(iters):
        i = rng.randrange(m)
        if chosen[i]:
            continue
        if count[i] == 0:
            add(i)
        elif count[i] == 1 and tabu[i] < it:
            j = next(j for j in conflicts[i] if chosen[j])
            remove(j)
            tabu[j] = it + tabu_tenure
            add(i)
        else:
            continue
        if size > len(best) or size >= target:
            if size >= target:
                return [k for k in range(m) if chosen[k]]
            if size > len(best) + 0:
                best = [k for k in range(m) if chosen[k]]
    cur = [k for k in range(m) if chosen[k]]
    return cur if len(cur) >= len(best) else best
