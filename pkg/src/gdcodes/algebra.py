"""Finite fields, Latin squares and transversal designs, plus the truncation
operators that turn transversal designs into smaller GDDs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .core import BlockDesign, GroupPartition, PreconditionError, make_design, node


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None."""
    if q < 2:
        return None
    p = next(p for p in range(2, q + 1) if q % p == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def _poly_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Irreducibility of the monic polynomial sum coeffs[i] x^i over GF(p),
    by trial division."""
    k = len(coeffs) - 1
    if k == 1:
        return True
    # trial division by every monic polynomial of degree 1..k//2
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            div = tuple(low) + (1,)
            if _poly_mod(coeffs, div, p) == (0,) * deg:
                return False
    return True


def _poly_mod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    r = list(a)
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return tuple(x % p for x in r[:db])


@dataclass(frozen=True)
class FiniteField:
    """GF(p^k). Element ``e`` encodes the polynomial sum digit_i(e) x^i with
    base-p digits; for k = 1 this is ordinary arithmetic mod p."""

    p: int
    k: int
    modulus: tuple[int, ...]  # low-order first, monic, length k+1

    @property
    def q(self) -> int:
        return self.p ** self.k

    def _digits(self, e: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(e % self.p)
            e //= self.p
        return out

    def _encode(self, digits) -> int:
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + d % self.p
        return v

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        q, p = self.q, self.p
        if self.k == 1:
            return tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
        digs = [self._digits(e) for e in range(q)]
        return tuple(tuple(self._encode([x + y for x, y in zip(digs[a], digs[b])]) for b in range(q))
                     for a in range(q))

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        q, p, k = self.q, self.p, self.k
        if k == 1:
            return tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
        digs = [self._digits(e) for e in range(q)]
        rows = []
        for a in range(q):
            row = []
            for b in range(q):
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(digs[a]):
                    if x:
                        for j, y in enumerate(digs[b]):
                            prod[i + j] += x * y
                row.append(self._encode(_poly_mod(tuple(prod), self.modulus, p)))
            rows.append(tuple(row))
        return tuple(rows)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.add_table[a].index(0)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.mul_table[a].index(1)

    def pow(self, a: int, e: int) -> int:
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def is_generator(self, a: int) -> bool:
        return a != 0 and self.order(a) == self.q - 1

    @cached_property
    def generator(self) -> int:
        return next(a for a in range(1, self.q) if self.is_generator(a))

    def elements(self) -> range:
        return range(self.q)


def make_field(q: int) -> FiniteField:
    """GF(q) with the lexicographically smallest monic irreducible modulus."""
    pk = factor_prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    p, k = pk
    if k == 1:
        f = FiniteField(p, 1, (0, 1))
    else:
        for low in itertools.product(range(p), repeat=k):
            poly = tuple(low) + (1,)
            if poly[0] != 0 and _poly_irreducible(poly, p):
                f = FiniteField(p, k, poly)
                break
    _spot_check(f)
    return f


def _spot_check(f: FiniteField) -> None:
    q = f.q
    sample = range(q) if q <= 32 else range(0, q, max(1, q // 16))
    for a in sample:
        if f.mul(a, 1) != a or f.add(a, 0) != a:
            raise AssertionError("identity failure")
        if a and f.mul(a, f.inv(a)) != 1:
            raise AssertionError("inverse failure")
        for b in sample:
            for c in sample:
                if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)):
                    raise AssertionError("distributivity failure")
    if not f.is_generator(f.generator):
        raise AssertionError("no generator")


def quadratic_residues(f: FiniteField) -> frozenset[int]:
    if f.p == 2:
        raise ValueError("quadratic residues are only used in odd characteristic")
    return frozenset(f.mul(a, a) for a in range(1, f.q))


# ---------------------------------------------------------------------------
# Latin squares and transversal designs


@dataclass(frozen=True)
class LatinSquare:
    m: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = self.m
        for r in self.cells:
            if sorted(r) != list(range(m)):
                raise ValueError("row is not a permutation")
        for c in range(m):
            if sorted(r[c] for r in self.cells) != list(range(m)):
                raise ValueError("column is not a permutation")

    @classmethod
    def cyclic(cls, m: int) -> "LatinSquare":
        return cls(m, tuple(tuple((r + c) % m for c in range(m)) for r in range(m)))

    def to_td(self) -> "TransversalDesign":
        m = self.m
        blocks = [(r, m + c, 2 * m + self.cells[r][c]) for r in range(m) for c in range(m)]
        return _td(3, m, blocks, node("latin-square-td", m=m))


@dataclass(frozen=True)
class TransversalDesign:
    """TD(k, m). Point ``i*m + v`` is value ``v`` of coordinate ``i``; group i
    is ``{i*m, ..., i*m + m - 1}``."""

    k: int
    m: int
    design: BlockDesign

    @property
    def blocks(self):
        return self.design.blocks

    def point(self, i: int, v: int) -> int:
        return i * self.m + v

    def coords(self, x: int) -> tuple[int, int]:
        return divmod(x, self.m)


def _td(k: int, m: int, blocks, prov) -> TransversalDesign:
    part = GroupPartition.consecutive([m] * k)
    return TransversalDesign(k, m, make_design(part, blocks, {k}, provenance=prov))


def td_from_design(b: BlockDesign) -> TransversalDesign:
    """Wrap a verified design of type m^k whose groups are consecutive."""
    sizes = [len(g) for g in b.partition.groups]
    if len(set(sizes)) != 1 or b.K != frozenset({len(sizes)}):
        raise PreconditionError("not a transversal design")
    m = sizes[0]
    if b.partition != GroupPartition.consecutive(sizes):
        raise PreconditionError("groups must be consecutive ranges")
    return TransversalDesign(len(sizes), m, b)


def td_from_field(k: int, q: int) -> TransversalDesign:
    """Blocks {(i, a + b*x_i)} over a, b in GF(q), with x_i the i-th element;
    when k = q+1 the last coordinate records the slope b."""
    f = make_field(q)
    if k > q + 1:
        raise ValueError(f"TD({k},{q}) needs k <= q+1")
    cols = min(k, q)
    blocks = []
    for a in range(q):
        for b in range(q):
            blk = [i * q + f.add(a, f.mul(b, i)) for i in range(cols)]
            if k == q + 1:
                blk.append(q * q + b)
            blocks.append(tuple(blk))
    return _td(k, q, blocks, node("td-from-field", "finite field", k=k, q=q))


def td_product(t1: TransversalDesign, t2: TransversalDesign) -> TransversalDesign:
    if t1.k != t2.k:
        raise ValueError(f"block size mismatch {t1.k} != {t2.k}")
    k, m, n = t1.k, t1.m, t2.m
    mn = m * n
    blocks = []
    for b1 in t1.blocks:
        c1 = [t1.coords(x)[1] for x in b1]
        for b2 in t2.blocks:
            c2 = [t2.coords(x)[1] for x in b2]
            blocks.append(tuple(i * mn + c1[i] * n + c2[i] for i in range(k)))
    prov = node("td-product", "direct product", t1.design.provenance, t2.design.provenance, k=k, m=mn)
    return _td(k, mn, blocks, prov)


def rtd_from_td(td: TransversalDesign) -> BlockDesign:
    """Drop the last group of a TD(k+1, m) to get a resolvable TD(k, m): the
    blocks through each deleted point form a parallel class."""
    k, m = td.k - 1, td.m
    classes: list[list[int]] = [[] for _ in range(m)]
    blocks = []
    for blk in td.blocks:
        last = next(x for x in blk if x >= k * m)
        classes[last - k * m].append(len(blocks))
        blocks.append(tuple(x for x in blk if x < k * m))
    part = GroupPartition.consecutive([m] * k)
    prov = node("resolvable-td", "drop a group", td.design.provenance, k=k, m=m)
    return make_design(part, blocks, {k}, resolution=tuple(tuple(c) for c in classes), provenance=prov)


def _compact(b_points: list[int], groups, blocks, K, prov, min_block: int = 2) -> BlockDesign:
    """Renumber surviving points 0..n'-1 in increasing order."""
    keep = sorted(b_points)
    rel = {x: i for i, x in enumerate(keep)}
    new_groups = [tuple(rel[x] for x in g if x in rel) for g in groups]
    new_groups = [g for g in new_groups if g]
    new_blocks = []
    for blk in blocks:
        nb = tuple(rel[x] for x in blk if x in rel)
        if len(nb) >= min_block:
            new_blocks.append(nb)
    part = GroupPartition(len(keep), tuple(new_groups))
    sizes = {len(b) for b in new_blocks}
    return make_design(part, new_blocks, set(K) & sizes if sizes else set(K), provenance=prov)


def _as_td(td) -> TransversalDesign:
    return td if isinstance(td, TransversalDesign) else td_from_design(td)


def truncate_groups(td, keep: int, sizes) -> BlockDesign:
    """From a TD(keep+s, m) keep the first ``keep`` groups whole and only the
    first ``sizes[j]`` points of each later group."""
    td = _as_td(td)
    sizes = list(sizes)
    if keep + len(sizes) != td.k:
        raise ValueError(f"keep + len(sizes) must equal k={td.k}")
    if any(g < 0 or g > td.m for g in sizes):
        raise ValueError(f"truncated sizes must lie in 0..{td.m}")
    m = td.m
    alive = [x for x in range(td.k * m)
             if x // m < keep or x % m < sizes[x // m - keep]]
    K = range(keep, td.k + 1)
    prov = node("truncate-groups", "group truncation", td.design.provenance,
                k=td.k, m=m, keep=keep, sizes="/".join(map(str, sizes)))
    return _compact(alive, td.design.partition.groups, td.blocks, K, prov)


def truncate_block(td, s: int, block_index: int = 0) -> BlockDesign:
    """Delete ``s`` points of one block (those in the first s groups)."""
    td = _as_td(td)
    if not 0 <= s <= td.k:
        raise ValueError(f"s must lie in 0..{td.k}")
    blk = sorted(td.blocks[block_index])
    dropped = set(blk[:s])
    alive = [x for x in range(td.k * td.m) if x not in dropped]
    K = {td.k - s, td.k - 1, td.k}
    prov = node("truncate-block", "block truncation", td.design.provenance, k=td.k, m=td.m, s=s)
    return _compact(alive, td.design.partition.groups, td.blocks, K, prov)


def remove_block_and_points(td, block, drop) -> BlockDesign:
    """Remove ``block`` outright and delete the three points ``drop`` of it."""
    td = _as_td(td)
    block = tuple(sorted(block))
    drop = set(drop)
    if block not in td.blocks:
        raise PreconditionError("block is not in the design")
    if len(drop) != 3 or not drop <= set(block):
        raise PreconditionError("drop must be three points of the block")
    alive = [x for x in range(td.k * td.m) if x not in drop]
    blocks = [b for b in td.blocks if b != block]
    prov = node("remove-block", "block removal", td.design.provenance, k=td.k, m=td.m)
    return _compact(alive, td.design.partition.groups, blocks, {td.k - 1, td.k}, prov)
