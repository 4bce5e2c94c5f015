"""Manufacture of group divisible designs: hill-climbing completion of a
prestructure with triples, resolution extraction, frame and resolvable-GDD
operators, Wilson's Fundamental Construction, and the ingredient resolver."""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import algebra
from .bounds import Verdict, design_exists
from .core import (BlockDesign, GddType, GdcError, GroupPartition, PreconditionError,
                   make_design, node, resolution_kind, verify_design)


class NoCompletion(GdcError):
    def __init__(self, best_ratio: float, detail: str = ""):
        self.best_ratio = best_ratio
        super().__init__(f"no completion found (best pair coverage {best_ratio:.4f}){detail}")


class Unresolved(GdcError):
    def __init__(self, spec, attempts: Sequence[str] = ()):
        self.spec = spec
        self.attempts = list(attempts)
        msg = f"could not resolve {spec}"
        if self.attempts:
            msg += ": " + "; ".join(self.attempts)
        super().__init__(msg)


@dataclass(frozen=True)
class SearchBudget:
    max_iterations: int = 2_000_000
    max_restarts: int = 10
    seed: int = 0
    wall_clock: float | None = 60.0

    def __post_init__(self):
        if self.max_iterations <= 0 or self.max_restarts <= 0:
            raise ValueError("budget must be positive")

    def restart_seeds(self) -> list[int]:
        return [self.seed * 1000 + r for r in range(self.max_restarts)]


@dataclass(frozen=True)
class Prestructure:
    blocks: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks))


@dataclass(frozen=True)
class IngredientSpec:
    """What the resolver should produce.

    kind: "TD" (k, m), "GDD" (K, type), "RGDD3" (g, t), "KirkmanFrame" (g, t).
    """

    kind: str
    params: tuple[tuple[str, object], ...] = field(default=())

    @classmethod
    def of(cls, kind: str, **params) -> "IngredientSpec":
        return cls(kind, tuple(sorted(params.items())))

    @property
    def p(self) -> dict:
        return dict(self.params)

    def __str__(self) -> str:
        return f"{self.kind}(" + ", ".join(f"{k}={v}" for k, v in self.params) + ")"


# ---------------------------------------------------------------------------
# hill climbing


def _pair_parity_check(partition: GroupPartition, fixed: Sequence[Sequence[int]]) -> None:
    n = partition.n
    gi = partition.group_index()
    deg = [n - len(partition.groups[gi[x]]) for x in range(n)]
    covered: set[tuple[int, int]] = set()
    for blk in fixed:
        for x, y in itertools.combinations(sorted(blk), 2):
            if gi[x] == gi[y]:
                raise PreconditionError(f"prestructure block {blk} meets a group twice")
            if (x, y) in covered:
                raise PreconditionError(f"prestructure covers pair {(x, y)} twice")
            covered.add((x, y))
            deg[x] -= 1
            deg[y] -= 1
    odd = [x for x in range(n) if deg[x] % 2]
    if odd:
        raise PreconditionError(f"point {odd[0]} has an odd number of pairs left for triples")
    if sum(deg) // 2 % 3:
        raise PreconditionError("remaining pair count is not divisible by 3")


def hill_climb_gdd(gdd_type: GddType | str | None, K: Sequence[int] = (3,),
                   pre: Prestructure | Sequence[Sequence[int]] = (), budget: SearchBudget | None = None,
                   partition: GroupPartition | None = None) -> BlockDesign:
    """Complete ``pre`` with triples to a K-GDD.

    Each step picks a random uncovered cross-group pair {x, y} and a random
    point z outside both groups. The triple {x, y, z} is added, evicting the
    searched triple that already covers xz or yz if there is exactly one.
    Pairs covered by the prestructure are never touched.
    """
    budget = budget or SearchBudget()
    if partition is None:
        if gdd_type is None:
            raise ValueError("need a type or a partition")
        t = GddType.parse(gdd_type) if isinstance(gdd_type, str) else gdd_type
        partition = GroupPartition.consecutive(t.sizes())
    fixed = pre.blocks if isinstance(pre, Prestructure) else tuple(tuple(sorted(b)) for b in pre)
    K = frozenset(K)
    if 3 not in K:
        raise PreconditionError("hill climbing adds triples, so K must contain 3")
    bad = [b for b in fixed if len(b) not in K]
    if bad:
        raise PreconditionError(f"prestructure block {bad[0]} has a size outside K")
    _pair_parity_check(partition, fixed)

    n = partition.n
    gi = partition.group_index()
    t0 = time.monotonic()
    best_ratio = 0.0
    for seed in budget.restart_seeds():
        rng = random.Random(seed)
        result = _climb(n, gi, fixed, rng, budget.max_iterations, t0, budget.wall_clock)
        if isinstance(result, float):
            best_ratio = max(best_ratio, result)
            if budget.wall_clock is not None and time.monotonic() - t0 > budget.wall_clock:
                break
            continue
        prov = node("hill-climb", "triple completion", type=partition.type, seed=seed,
                    prestructure=len(fixed))
        return make_design(partition, list(fixed) + result, K, provenance=prov)
    raise NoCompletion(best_ratio)


def _climb(n, gi, fixed, rng, max_iter, t0, wall):
    # owner[x][y]: -1 uncovered, -2 fixed, else triple id
    owner = [[-1] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if gi[x] == gi[y]:
                owner[x][y] = -2
    for blk in fixed:
        for x, y in itertools.permutations(blk, 2):
            owner[x][y] = -2
    uncovered = [(x, y) for x in range(n) for y in range(x + 1, n) if owner[x][y] == -1]
    total = len(uncovered)
    pos = {pr: i for i, pr in enumerate(uncovered)}
    triples: dict[int, tuple[int, int, int]] = {}
    next_id = 0
    outside = {}

    def cover(x, y, tid):
        owner[x][y] = owner[y][x] = tid
        pr = (x, y) if x < y else (y, x)
        i = pos.pop(pr)
        last = uncovered.pop()
        if i < len(uncovered):
            uncovered[i] = last
            pos[last] = i

    def uncover(x, y):
        owner[x][y] = owner[y][x] = -1
        pr = (x, y) if x < y else (y, x)
        pos[pr] = len(uncovered)
        uncovered.append(pr)

    for it in range(max_iter):
        if not uncovered:
            return [triples[k] for k in sorted(triples)]
        if wall is not None and it % 4096 == 0 and time.monotonic() - t0 > wall:
            break
        x, y = uncovered[rng.randrange(len(uncovered))]
        key = (gi[x], gi[y])
        cand = outside.get(key)
        if cand is None:
            cand = outside[key] = [z for z in range(n) if gi[z] != gi[x] and gi[z] != gi[y]]
        if not cand:
            continue
        z = cand[rng.randrange(len(cand))]
        ox, oy = owner[x][z], owner[y][z]
        if ox == -2 or oy == -2:
            continue
        if ox >= 0 and oy >= 0:
            continue
        old = ox if ox >= 0 else oy
        if old >= 0:
            a, b, c = triples.pop(old)
            for u, v in ((a, b), (a, c), (b, c)):
                uncover(u, v)
        tid = next_id
        next_id += 1
        triples[tid] = tuple(sorted((x, y, z)))
        cover(x, y, tid)
        cover(x, z, tid)
        cover(y, z, tid)
    return 1.0 - len(uncovered) / total if total else 1.0


# ---------------------------------------------------------------------------
# resolutions


def extract_resolution(d: BlockDesign, mode: str = "parallel", node_limit: int = 2_000_000):
    """Partition the blocks into parallel classes (``mode="parallel"``) or
    holey parallel classes (``mode="holey"``). Returns the design with the
    resolution attached, or None when none exists (or the search limit hit)."""
    if mode not in ("parallel", "holey"):
        raise ValueError(f"unknown mode {mode!r}")
    n = d.n
    groups = [frozenset(g) for g in d.partition.groups]
    if mode == "parallel":
        sizes = {len(b) for b in d.blocks}
        if len(sizes) != 1 or n % next(iter(sizes)) or len(d.blocks) % (n // next(iter(sizes))):
            return None
    blocks = [frozenset(b) for b in d.blocks]
    through: list[list[int]] = [[] for _ in range(n)]
    for i, b in enumerate(blocks):
        for x in b:
            through[x].append(i)
    used = [False] * len(blocks)
    classes: list[list[int]] = []
    budget = [node_limit]

    def fill(target: set[int], cls: list[int]) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            return False
        if not target:
            classes.append(list(cls))
            if place():
                return True
            classes.pop()
            return False
        x = min(target, key=lambda p: sum(1 for i in through[p] if not used[i] and blocks[i] <= target))
        for i in through[x]:
            if not used[i] and blocks[i] <= target:
                used[i] = True
                cls.append(i)
                if fill(target - blocks[i], cls):
                    return True
                cls.pop()
                used[i] = False
        return False

    def place() -> bool:
        first = next((i for i, u in enumerate(used) if not u), None)
        if first is None:
            return True
        b = blocks[first]
        if mode == "parallel":
            targets = [set(range(n))]
        else:
            targets = [set(range(n)) - g for g in groups if not (g & b)]
        for tgt in targets:
            used[first] = True
            if fill(tgt - b, [first]):
                return True
            used[first] = False
        return False

    if not place() or budget[0] < 0:
        return None
    out = d.replace(resolution=tuple(tuple(sorted(c)) for c in classes))
    verify_design(out).require("resolved design")
    return out


def _classes_missing(f: BlockDesign, group: int) -> list[int]:
    kinds = resolution_kind(f)
    return [i for i, k in enumerate(kinds) if k == f"holey:{group}"]


def add_points_to_frame(f: BlockDesign, y: int, group: int | None = None) -> BlockDesign:
    """Append y new points to one group; each of y holey classes missing that
    group gains one of the new points in all of its blocks."""
    if f.resolution is None:
        raise PreconditionError("frame needs its holey resolution attached")
    if group is None:
        group = 0
    missing = _classes_missing(f, group)
    if len(missing) < y:
        raise PreconditionError(f"only {len(missing)} holey classes miss group {group}, need {y}")
    n = f.n
    new_pts = list(range(n, n + y))
    blocks = [list(b) for b in f.blocks]
    for inf, ci in zip(new_pts, missing[:y]):
        for bi in f.resolution[ci]:
            blocks[bi].append(inf)
    groups = [list(g) for g in f.partition.groups]
    groups[group] += new_pts
    K = {len(b) for b in blocks}
    prov = node("frame-add-points", "adding points to a frame", f.provenance, y=y)
    return make_design(GroupPartition(n + y, tuple(map(tuple, groups))), blocks, K | set(f.K), provenance=prov)


def complete_rgdd(r: BlockDesign, u: int, variant: str = "append") -> BlockDesign:
    """Complete parallel classes of a resolvable design with new points.

    ``append``: the blocks of class i gain point inf_i (i < u) and the new
    points form a new group. ``group-class``: the last class becomes the
    group set, the other classes each gain one new point, and every old
    group plus the final new point becomes a block.
    """
    if r.resolution is None:
        raise PreconditionError("design needs a resolution")
    c = len(r.resolution)
    n = r.n
    if variant == "append":
        if u > c:
            raise PreconditionError(f"only {c} classes, cannot complete {u}")
        blocks = [list(b) for b in r.blocks]
        for i in range(u):
            for bi in r.resolution[i]:
                blocks[bi].append(n + i)
        groups = list(r.partition.groups) + ([tuple(range(n, n + u))] if u else [])
        K = {len(b) for b in blocks}
        prov = node("complete-classes", "parallel class completion", r.provenance, u=u)
        return make_design(GroupPartition(n + u, tuple(groups)), blocks, K, provenance=prov)
    if variant == "group-class":
        new = list(range(n, n + c))
        last = r.resolution[-1]
        groups = [r.blocks[i] for i in last] + [tuple(new)]
        blocks = []
        for i, cls in enumerate(r.resolution[:-1]):
            for bi in cls:
                blocks.append(tuple(r.blocks[bi]) + (new[i],))
        for g in r.partition.groups:
            blocks.append(tuple(g) + (new[-1],))
        K = {len(b) for b in blocks}
        prov = node("complete-classes", "class-to-group completion", r.provenance, variant=variant)
        return make_design(GroupPartition(n + c, tuple(groups)), blocks, K, provenance=prov)
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# Wilson's Fundamental Construction for designs


def weighted_partition(master_partition: GroupPartition, weights: Sequence[int]):
    """Points x x {0..w(x)-1} numbered consecutively, groups unioned per
    master group. Returns (partition, copies) with copies[x] the new points."""
    copies = []
    nxt = 0
    for x in range(master_partition.n):
        copies.append(list(range(nxt, nxt + weights[x])))
        nxt += weights[x]
    groups = []
    for g in master_partition.groups:
        pts = tuple(p for x in g for p in copies[x])
        if pts:
            groups.append(pts)
    return GroupPartition(nxt, tuple(groups)), copies


def _weights(master: BlockDesign, omega) -> list[int]:
    if callable(omega):
        return [int(omega(x)) for x in range(master.n)]
    if isinstance(omega, int):
        return [omega] * master.n
    w = [int(v) for v in omega]
    if len(w) != master.n:
        raise ValueError("weight vector length must match the master")
    return w


def wfc_gdd(master: BlockDesign, omega, ingredients: Callable[[tuple[int, ...]], BlockDesign | None]
            | Mapping[tuple[int, ...], BlockDesign]) -> BlockDesign:
    """Inflate each master block A by an ingredient GDD of type [w(a): a in A].

    ``ingredients`` maps the weight tuple of a block (in block order) to a
    design whose groups, in order, have exactly those sizes.
    """
    w = _weights(master, omega)
    part, copies = weighted_partition(master.partition, w)
    get = ingredients.get if isinstance(ingredients, Mapping) else ingredients
    blocks = []
    K: set[int] = set()
    used = {}
    for blk in master.blocks:
        key = tuple(w[a] for a in blk)
        ing = get(key)
        if ing is None:
            raise Unresolved(IngredientSpec.of("GDD", type=str(GddType.from_sizes(k for k in key if k))))
        sizes = [len(g) for g in ing.partition.groups]
        live = [a for a in blk if w[a]]
        if sizes != [w[a] for a in live]:
            raise PreconditionError(f"ingredient groups {sizes} do not match weights {key}")
        rel = {}
        for a, g in zip(live, ing.partition.groups):
            for p, q in zip(g, copies[a]):
                rel[p] = q
        for b in ing.blocks:
            blocks.append(tuple(rel[x] for x in b))
        K |= set(ing.K)
        used[key] = ing.provenance
    prov = node("wfc-gdd", "fundamental construction", master.provenance, *used.values(),
                weights=",".join(map(str, sorted(set(w)))))
    return make_design(part, blocks, K, provenance=prov)


def inflate_frame(f: BlockDesign, m: int) -> BlockDesign:
    """Inflate a Kirkman frame by m using a resolvable TD(3, m): each master
    holey class yields m holey classes of the result."""
    if f.resolution is None or f.K != frozenset({3}):
        raise PreconditionError("need a Kirkman frame with its resolution")
    rtd = algebra.rtd_from_td(algebra.td_from_field(4, m)) if m > 1 else None
    part, copies = weighted_partition(f.partition, [m] * f.n)
    blocks: list[tuple[int, ...]] = []
    block_class: list[tuple[int, int]] = []
    for ci, cls in enumerate(f.resolution):
        for bi in cls:
            a = f.blocks[bi]
            if rtd is None:
                blocks.append(tuple(copies[x][0] for x in a))
                block_class.append((ci, 0))
                continue
            for j, rcls in enumerate(rtd.resolution):
                for rb in rcls:
                    blocks.append(tuple(copies[a[p // m]][p % m] for p in rtd.blocks[rb]))
                    block_class.append((ci, j))
    keys = sorted(set(block_class))
    index = {k: i for i, k in enumerate(keys)}
    res = [[] for _ in keys]
    for bi, k in enumerate(block_class):
        res[index[k]].append(bi)
    prov = node("inflate-frame", "frame inflation", f.provenance, m=m)
    return make_design(part, blocks, {3}, resolution=tuple(map(tuple, res)), provenance=prov)


def _is_odd_prime(p: int) -> bool:
    return p > 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _rotational_key(a: int, b: int, p: int):
    """Translation orbit of the pair {a, b}; None for pairs inside a group."""
    inf = 2 * p
    if a >= inf or b >= inf:
        if a < inf:
            a, b = b, a
        return None if b >= inf else ("inf", a - inf, b // p)
    (la, xa), (lb, xb) = divmod(a, p), divmod(b, p)
    if la == lb:
        d = (xb - xa) % p
        return ("pure", la, min(d, p - d)) if d else None
    if la == 1:
        xa, xb = xb, xa
    d = (xb - xa) % p
    return ("mixed", d) if d else None


def rotational_rgdd3_pairs(p: int, node_limit: int = 2_000_000) -> BlockDesign | None:
    """Resolvable {3}-GDD of type 2^(p+1) on Z_p x {0,1} plus two fixed points.

    Point ``x + p*l`` is (x, l); the fixed points 2p and 2p+1 form a group,
    as do (x, 0) and (x, 1). A depth-first search finds one parallel class
    whose translates cover every pair orbit exactly once, so its p
    translates are the resolution.
    """
    if not _is_odd_prime(p) or (2 * p + 2) % 3:
        raise PreconditionError(f"need an odd prime p with 3 | 2p+2, got {p}")
    n = 2 * p + 2
    used: set = set()
    free = set(range(n))
    base: list[tuple[int, int, int]] = []
    nodes = [0]

    def rec() -> bool:
        nodes[0] += 1
        if nodes[0] > node_limit:
            return False
        if not free:
            return True
        a = min(free)
        rest = sorted(free - {a})
        for i, b in enumerate(rest):
            kab = _rotational_key(a, b, p)
            if kab is None or kab in used:
                continue
            used.add(kab)
            for c in rest[i + 1:]:
                kac, kbc = _rotational_key(a, c, p), _rotational_key(b, c, p)
                if kac is None or kbc is None or kac == kbc or kac in used or kbc in used:
                    continue
                used.update((kac, kbc))
                free.difference_update((a, b, c))
                base.append((a, b, c))
                if rec():
                    return True
                base.pop()
                free.update((a, b, c))
                used.difference_update((kac, kbc))
            used.discard(kab)
        return False

    if not rec():
        return None

    def shift(x: int, s: int) -> int:
        if x >= 2 * p:
            return x
        lvl, v = divmod(x, p)
        return lvl * p + (v + s) % p

    blocks = [tuple(shift(x, s) for x in blk) for s in range(p) for blk in base]
    k = len(base)
    resolution = tuple(tuple(range(s * k, (s + 1) * k)) for s in range(p))
    groups = tuple((x, x + p) for x in range(p)) + ((2 * p, 2 * p + 1),)
    prov = node("rotational-rgdd", "one-rotational base class", g=2, t=p + 1)
    return make_design(GroupPartition(n, groups), blocks, {3}, resolution=resolution, provenance=prov)


def kirkman_frame(g: int, t: int, budget: SearchBudget | None = None) -> BlockDesign:
    """Kirkman frame of type g^t: for g = 2 by search (hill climbing plus
    holey resolution), otherwise by inflating a type 2^t frame by g/2."""
    verdict = design_exists("KirkmanFrame", g=g, t=t)
    if verdict.verdict is Verdict.NOT_EXISTS:
        raise PreconditionError(f"no Kirkman frame of type {g}^{t}")
    budget = budget or SearchBudget()
    if g == 2:
        for seed in range(budget.seed, budget.seed + 200):
            d = hill_climb_gdd(f"2^{t}", (3,), budget=SearchBudget(budget.max_iterations, 1, seed, budget.wall_clock))
            f = extract_resolution(d, "holey")
            if f is not None:
                return f.replace(provenance=node("kirkman-frame", "search", d.provenance, g=g, t=t))
        raise NoCompletion(0.0, " (no holey resolution found)")
    if g % 2 == 0 and design_exists("KirkmanFrame", g=2, t=t):
        return inflate_frame(kirkman_frame(2, t, budget), g // 2)
    raise Unresolved(IngredientSpec.of("KirkmanFrame", g=g, t=t), ["only inflation of type 2^t frames is built"])


# ---------------------------------------------------------------------------
# resolver


_LIBRARY_CACHE: dict[str, BlockDesign] = {}


def _from_library(spec: IngredientSpec) -> BlockDesign | None:
    from . import formats
    for d in formats.library_designs():
        if _matches(d, spec):
            return d
    return None


def _matches(d: BlockDesign, spec: IngredientSpec) -> bool:
    p = spec.p
    if spec.kind == "TD":
        return d.K == frozenset({p["k"]}) and str(d.type) == f"{p['m']}^{p['k']}"
    if spec.kind == "GDD":
        return d.K <= frozenset(p["K"]) and str(d.type) == str(GddType.parse(p["type"]))
    if spec.kind == "RGDD3":
        return d.resolution is not None and d.K == frozenset({3}) and str(d.type) == f"{p['g']}^{p['t']}" \
            and all(k == "parallel" for k in resolution_kind(d))
    if spec.kind == "KirkmanFrame":
        return d.resolution is not None and d.K == frozenset({3}) and str(d.type) == f"{p['g']}^{p['t']}" \
            and all(k != "parallel" for k in resolution_kind(d))
    return False


def resolve_ingredient(spec: IngredientSpec, budget: SearchBudget | None = None) -> BlockDesign:
    """Catalog, then algebraic construction, then search, then the design
    library on disk. The first verified hit wins."""
    budget = budget or SearchBudget()
    key = str(spec)
    if key in _LIBRARY_CACHE:
        return _LIBRARY_CACHE[key]
    attempts: list[str] = []
    p = spec.p
    result = None

    if spec.kind == "TD":
        k, m = p["k"], p["m"]
        v = design_exists("TDk", k=k, m=m)
        if v.verdict is Verdict.NOT_EXISTS:
            raise Unresolved(spec, [f"{v.theorem}: does not exist"])
        if algebra.factor_prime_power(m) and k <= m + 1:
            result = algebra.td_from_field(k, m).design
        else:
            facs = _prime_power_factorization(m)
            if facs and all(k <= q + 1 for q in facs):
                td = algebra.td_from_field(k, facs[0])
                for q in facs[1:]:
                    td = algebra.td_product(td, algebra.td_from_field(k, q))
                result = td.design
            else:
                attempts.append("no field or product construction")
    elif spec.kind == "GDD":
        t = GddType.parse(p["type"])
        K = frozenset(p["K"])
        sizes = t.sizes()
        if K == frozenset({4}) and len(set(sizes)) == 1:
            v = design_exists("GDD4_gt", g=sizes[0], t=len(sizes))
            if v.verdict is Verdict.NOT_EXISTS:
                raise Unresolved(spec, [f"{v.theorem}: does not exist"])
        if 3 in K:
            try:
                result = hill_climb_gdd(t, K, (), budget)
            except (NoCompletion, PreconditionError) as e:
                attempts.append(f"hill-climb: {e}")
        else:
            attempts.append("search only adds triples")
    elif spec.kind == "RGDD3":
        g, t = p["g"], p["t"]
        v = design_exists("RGDD3", g=g, t=t)
        if v.verdict is Verdict.NOT_EXISTS:
            raise Unresolved(spec, [f"{v.theorem}: does not exist"])
        if g == 2 and t % 3 == 0 and _is_odd_prime(t - 1):
            result = rotational_rgdd3_pairs(t - 1)
            if result is None:
                attempts.append("rotational base class search exhausted")
        elif t == 3 and design_exists("TDk", k=4, m=g):
            try:
                td = resolve_ingredient(IngredientSpec.of("TD", k=4, m=g), budget)
                result = algebra.rtd_from_td(algebra.td_from_design(td))
            except Unresolved as e:
                attempts.append(str(e))
        else:
            try:
                d = hill_climb_gdd(f"{g}^{t}", (3,), (), budget)
                result = extract_resolution(d, "parallel")
                if result is None:
                    attempts.append("hill-climbed design has no parallel resolution")
            except (NoCompletion, PreconditionError) as e:
                attempts.append(f"hill-climb: {e}")
    elif spec.kind == "KirkmanFrame":
        try:
            result = kirkman_frame(p["g"], p["t"], budget)
        except GdcError as e:
            attempts.append(str(e))
    else:
        raise ValueError(f"unknown ingredient kind {spec.kind!r}")

    if result is None:
        result = _from_library(spec)
        if result is None:
            attempts.append("not in design library")
            raise Unresolved(spec, attempts)
    if isinstance(result, algebra.TransversalDesign):
        result = result.design
    _LIBRARY_CACHE[key] = result
    return result


def _prime_power_factorization(m: int) -> list[int]:
    out = []
    p = 2
    while m > 1:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            out.append(q)
        p += 1
    return out
