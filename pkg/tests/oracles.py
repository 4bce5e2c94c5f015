"""Independent checks used by the tests.

These deliberately avoid the package's verifier: distances come from a
one-hot matrix product instead of key bucketing, and design checks count
pairs directly.
"""
from collections import Counter
from itertools import combinations
from math import comb

import numpy as np


def dense_matrix(words, n):
    m = np.zeros((len(words), n), dtype=np.int8)
    for i, u in enumerate(words):
        for p, s in u.support:
            m[i, p] = s
    return m


def min_distance(words, n, chunk=2048):
    """Minimum pairwise Hamming distance of equal-weight words, or None."""
    if len(words) < 2:
        return None
    m = dense_matrix(words, n)
    w = int((m[0] != 0).sum())
    if not np.all((m != 0).sum(1) == w):
        raise AssertionError("words do not share a weight")
    q = int(m.max()) + 1
    supp = (m != 0).astype(np.float32)
    onehot = [(m == s).astype(np.float32) for s in range(1, q)]
    best = None
    for a in range(0, len(words), chunk):
        sl = slice(a, a + chunk)
        overlap = supp[sl] @ supp.T
        equal = sum(h[sl] @ h.T for h in onehot)
        # d(u, v) = 2w - |both nonzero| - |both nonzero and equal|
        dist = 2 * w - overlap - equal
        rows = np.arange(dist.shape[0])
        dist[rows, rows + a] = np.inf
        lo = float(dist.min())
        best = lo if best is None else min(best, lo)
    return int(best)


def compositions_ok(words, comp):
    want = sorted(comp.weights, reverse=True)
    return all(sorted(Counter(s for _, s in u.support).values(), reverse=True) == want
               for u in words)


def distinct(words):
    return len(set(words)) == len(words)


def check_code(code, d):
    """Raise AssertionError unless ``code`` has distance >= d and the right
    composition, checked independently of the package."""
    words = list(code.words)
    assert distinct(words), "duplicate words"
    assert compositions_ok(words, code.comp), "composition mismatch"
    md = min_distance(words, code.n)
    assert md is None or md >= d, f"minimum distance {md} < {d}"
    return len(words)


def check_gdc(g, d):
    check_code(g.code, d)
    gi = {}
    for k, grp in enumerate(g.partition.groups):
        for x in grp:
            gi[x] = k
    for u in g.code.words:
        hit = [gi[p] for p in u.positions]
        assert len(set(hit)) == len(hit), f"word {u} meets a group twice"
    return len(g)


def check_gdd(b):
    """Every cross pair covered exactly once, no block meets a group twice."""
    gi = {}
    for k, grp in enumerate(b.partition.groups):
        for x in grp:
            gi[x] = k
    seen = Counter()
    for blk in b.blocks:
        assert len(blk) in b.K, f"block {blk} size not in K"
        assert len({gi[x] for x in blk}) == len(blk), f"block {blk} meets a group twice"
        seen.update(combinations(sorted(blk), 2))
    assert all(v == 1 for v in seen.values()), "pair covered twice"
    sizes = [len(g) for g in b.partition.groups]
    cross = comb(sum(sizes), 2) - sum(comb(s, 2) for s in sizes)
    assert len(seen) == cross, f"{cross - len(seen)} cross pairs uncovered"
    return True


def triples_by_pair_count(sizes, quads):
    """Triples needed to complete a {3,4}-GDD holding ``quads`` quadruples."""
    cross = comb(sum(sizes), 2) - sum(comb(s, 2) for s in sizes)
    rest = cross - 6 * quads
    assert rest % 3 == 0
    return rest // 3
