"""Constructions of constant-composition codes and group divisible codes:
development of base words, the Latin-square and prime-power codes,
Wilson's Fundamental Construction for codes, filling groups, adjoining
points, tripling, shortening, subcode excision, and small searches."""
from __future__ import annotations

import itertools
import random
from collections import defaultdict
from typing import Callable, Mapping, Sequence

from . import _clique, algebra
from .bounds import COMP111
from .core import (BlockDesign, Codeword, Composition, ConstantCompositionCode, GroupDivisibleCode,
                   GroupPartition, PreconditionError, GdcError, code_as_gdc, hamming_distance,
                   make_code, make_gdc, node)
from .designs import Unresolved, IngredientSpec, weighted_partition
from .formats import BaseCodewordSet

AnyCode = ConstantCompositionCode | GroupDivisibleCode


def _code(c: AnyCode) -> ConstantCompositionCode:
    return c.code if isinstance(c, GroupDivisibleCode) else c


def _partition(c: AnyCode) -> GroupPartition:
    return c.partition if isinstance(c, GroupDivisibleCode) else GroupPartition.singletons(c.n)


def _prov(c: AnyCode):
    return c.provenance if c.provenance is not None else _code(c).provenance


def _check_distance(d: int, comp: Composition) -> None:
    if d > 2 * (comp.w - 1):
        raise PreconditionError(f"needs d <= 2(w-1) = {2 * (comp.w - 1)}, got d={d}")


# ---------------------------------------------------------------------------
# development


def multiplier_subgroup(f: algebra.FiniteField, order: int) -> list[int]:
    if (f.q - 1) % order:
        raise PreconditionError(f"{order} does not divide {f.q - 1}")
    g = f.pow(f.generator, (f.q - 1) // order)
    return [f.pow(g, i) for i in range(order)]


def develop(b: BaseCodewordSet) -> AnyCode:
    """All images of the base words under the set's group action."""
    n, words, origin = b.n, [], {}
    if b.multiplier_order is not None:
        f = algebra.make_field(n)
        mults = multiplier_subgroup(f, b.multiplier_order)
        images = [[(lambda p, m=m, x=x: f.add(f.mul(m, p), x)) for x in range(n)] for m in mults]
        maps = [mp for row in images for mp in row]
    else:
        maps = [(lambda p, k=k: (p + k * b.step) % n) for k in range(b.orbit_length)]
    for j, base in enumerate(b.bases):
        for k, mp in enumerate(maps):
            u = Codeword(n, tuple((mp(p), s) for p, s in base.support))
            if u in origin:
                raise GdcError(f"developed words collide: base {origin[u]} and base {j} both give {u}")
            origin[u] = j
            words.append(u)
    prov = node("develop", b.cite, n=n, bases=len(b.bases), step=b.step,
                mult=b.multiplier_order or 1)
    code = make_code(n, b.comp, words, b.d, prov)
    if b.group_stride is None:
        return code
    t = b.group_stride
    if n % t:
        raise PreconditionError(f"stride {t} does not divide n={n}")
    part = GroupPartition(n, tuple(tuple(range(i, n, t)) for i in range(t)))
    return make_gdc(part, code, prov)


def _from_tuples(n: int, comp: Composition, tuples) -> list[Codeword]:
    return [Codeword.from_tuple(n, t, comp) for t in tuples]


def single_word_code(n: int, comp: Composition, d: int) -> ConstantCompositionCode:
    """The trivial code of length w with one word (or empty below w)."""
    words = [Codeword.from_tuple(n, tuple(range(comp.w)), comp)] if n >= comp.w else []
    return make_code(n, comp, words, d, node("trivial-code", n=n))


# ---------------------------------------------------------------------------
# algebraic codes


def latin_gdc(g: int) -> GroupDivisibleCode:
    """[1,1,1]-GDC(4) of type g^3 and size 3g^2 from three disjoint Latin
    squares L_i(r, c) = r + c + i (mod g), one per cyclic orientation."""
    if g < 3:
        raise PreconditionError("latin_gdc needs g >= 3")
    tuples = []
    for r in range(g):
        for c in range(g):
            s0, s1, s2 = ((r + c + i) % g for i in range(3))
            tuples.append((r, c + g, s0 + 2 * g))
            tuples.append((s1 + 2 * g, r, c + g))
            tuples.append((c + g, s2 + 2 * g, r))
    prov = node("latin-gdc", "three disjoint Latin squares", g=g)
    code = make_code(3 * g, COMP111, _from_tuples(3 * g, COMP111, tuples), 4, prov)
    return make_gdc(GroupPartition.consecutive([g] * 3), code, prov)


def gdc3_type_2cubed() -> GroupDivisibleCode:
    """[1,1,1]-GDC(3) of type 2^3 and size 24: each of the eight transversals
    carries the three symbol arrangements of one permutation parity, the
    parity being that of the transversal."""
    even = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
    odd = [(1, 3, 2), (3, 2, 1), (2, 1, 3)]
    words = []
    for bits in itertools.product((0, 1), repeat=3):
        pos = [2 * i + b for i, b in enumerate(bits)]
        for perm in (odd if sum(bits) % 2 else even):
            words.append(Codeword(6, tuple(zip(pos, perm))))
    prov = node("gdc3-2cubed", "parity-split transversals")
    code = make_code(6, COMP111, words, 3, prov)
    return make_gdc(GroupPartition.consecutive([2, 2, 2]), code, prov)


def _prime_power_field(n: int, residue: int) -> algebra.FiniteField:
    if algebra.factor_prime_power(n) is None:
        raise PreconditionError(f"{n} is not a prime power")
    if n % 4 != residue:
        raise PreconditionError(f"{n} is not {residue} mod 4")
    return algebra.make_field(n)


def generator_conditions(f: algebra.FiniteField, alpha: int) -> list[str]:
    """Names of the failed conditions (empty when alpha is usable)."""
    failed = []
    if not f.is_generator(alpha):
        failed.append("alpha is not a generator")
    if f.sub(alpha, 1) not in algebra.quadratic_residues(f):
        failed.append("alpha - 1 is not a quadratic residue")
    if f.add(f.sub(f.mul(alpha, alpha), alpha), 1) == 0:
        failed.append("alpha^2 - alpha + 1 = 0")
    return failed


def prime_power_code(n: int, alpha: int) -> ConstantCompositionCode:
    """{alpha^(2i) <0, 1, alpha> + x}: an (n, 4, [1,1,1]) code of size n(n-1)/2."""
    if n < 11:
        raise PreconditionError("prime_power_code needs n >= 11")
    f = _prime_power_field(n, 3)
    failed = generator_conditions(f, alpha)
    if failed:
        raise PreconditionError(f"alpha={alpha} unusable for n={n}: " + "; ".join(failed))
    tuples = []
    for i in range((n - 1) // 2):
        a = f.pow(alpha, 2 * i)
        b = f.mul(a, alpha)
        for x in range(n):
            tuples.append((x, f.add(a, x), f.add(b, x)))
    prov = node("prime-power-code", "quadratic residue orbit", n=n, alpha=alpha)
    words = _from_tuples(n, COMP111, tuples)
    if len(set(words)) != len(words):
        raise GdcError("prime power construction produced repeated words")
    return make_code(n, COMP111, words, 4, prov)


def find_generator(n: int) -> int | None:
    """Smallest element (in the field's integer encoding) meeting the
    prime-power conditions, or None."""
    if n < 11:
        raise PreconditionError("find_generator needs n >= 11")
    f = _prime_power_field(n, 3)
    return next((a for a in range(2, n) if not generator_conditions(f, a)), None)


def _quasigroup_lambda(f: algebra.FiniteField) -> int | None:
    """An element outside {0, 1, -1, 2, 1/2}; None for GF(2), GF(3), GF(5)."""
    bad = {0, 1, f.neg(1), f.add(1, 1)}
    if f.add(1, 1) != 0:
        bad.add(f.inv(f.add(1, 1)))
    return next((x for x in range(f.q) if x not in bad), None)


def quasigroup_code(n: int) -> ConstantCompositionCode:
    """(n, 3, [1,1,1]) code of size n(n-1) for prime powers n not in {2, 3, 5}.

    Words are <a, b, a*b> for a != b with a*b = la + (1-l)b. Excluding
    l in {0, 1, -1, 2, 1/2} makes a*b = c rule out b*a = c, a*c = b and
    c*b = a, which are exactly the word pairs at distance 2."""
    f = algebra.make_field(n)
    lam = _quasigroup_lambda(f)
    if lam is None:
        raise PreconditionError(f"GF({n}) has no usable multiplier")
    mu = f.sub(1, lam)
    tuples = [(a, b, f.add(f.mul(lam, a), f.mul(mu, b)))
              for a in range(n) for b in range(n) if a != b]
    prov = node("quasigroup-code", "affine idempotent quasigroup", n=n, lam=lam)
    return make_code(n, COMP111, _from_tuples(n, COMP111, tuples), 3, prov)


def cyclic_d5_code(n: int) -> ConstantCompositionCode:
    """n shifts of <0, 1, 3>: supports meet in at most one point, where the
    symbols differ, so the distance is at least 5 (n >= 7)."""
    if n < 7:
        raise PreconditionError("the cyclic distance-5 code needs n >= 7")
    tuples = [(x, (x + 1) % n, (x + 3) % n) for x in range(n)]
    prov = node("cyclic-d5", "perfect difference triple", n=n)
    return make_code(n, COMP111, _from_tuples(n, COMP111, tuples), 5, prov)


# ---------------------------------------------------------------------------
# searches


def _pair_keys(u: Codeword):
    """Two weight-3 words are closer than 4 exactly when they share one of
    these keys: the support, or (x, symbol at x, y) for x, y in the support."""
    sup = u.support
    yield ("S",) + tuple(p for p, _ in sup)
    for (x, sx), (y, sy) in itertools.permutations(sup, 2):
        yield (x, sx, y)


def search_base_codewords(n: int, t: int, seed: int = 0, iters: int = 200_000,
                          restarts: int = 20) -> BaseCodewordSet | None:
    """Search for t base words whose images under x -> hx + s (h in the
    multiplicative subgroup of order (n-1)/2t) form an (n,4,[1,1,1]) code
    of size n(n-1)/2. Returns None when the budget runs out."""
    f = _prime_power_field(n, 1)
    if (n - 1) % (2 * t):
        raise PreconditionError(f"2t={2 * t} does not divide n-1={n - 1}")
    order = (n - 1) // (2 * t)
    mults = multiplier_subgroup(f, order)
    seen: set[tuple[int, int]] = set()
    orbits, keysets = [], []
    for b in range(1, n):
        for c in range(1, n):
            if b == c or (b, c) in seen:
                continue
            reps = {(f.mul(m, b), f.mul(m, c)) for m in mults}
            seen |= reps
            keys, ok = set(), True
            for m in mults:
                for x in range(n):
                    u = Codeword.from_tuple(n, (x, f.add(f.mul(m, b), x), f.add(f.mul(m, c), x)), COMP111)
                    for k in _pair_keys(u):
                        if k in keys:
                            ok = False
                            break
                        keys.add(k)
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                orbits.append((0, b, c))
                keysets.append(keys)
    owner = defaultdict(list)
    for i, ks in enumerate(keysets):
        for k in ks:
            owner[k].append(i)
    conflicts = [set() for _ in orbits]
    for idx in owner.values():
        for i, j in itertools.combinations(idx, 2):
            conflicts[i].add(j)
            conflicts[j].add(i)
    conflicts = [sorted(c) for c in conflicts]
    for r in range(restarts):
        rng = random.Random(seed * restarts + r)
        chosen = _clique.tabu_independent_set(conflicts, t, iters, rng)
        if len(chosen) >= t:
            bases = tuple(Codeword.from_tuple(n, orbits[i], COMP111) for i in chosen[:t])
            return BaseCodewordSet(n, COMP111, 4, bases, multiplier_order=order,
                                   expected_size=n * (n - 1) // 2, cite=f"base search seed {seed}")
    return None


def cyclic_orbit_search(n: int, t: int, seed: int = 0, iters: int = 200_000,
                        restarts: int = 50) -> BaseCodewordSet | None:
    """t full Z_n-orbits of [1,1,1] words forming an (n, 4, [1,1,1]) code of
    size tn, by tabu search over orbits that are internally at distance 4."""
    from .bounds import all_words
    orbits, keysets, seen = [], [], set()
    for u in all_words(n, COMP111):
        if 0 not in u.positions or u in seen:
            continue
        orb = [u.shifted(k, n) for k in range(n)]
        seen.update(orb)
        keys: set = set()
        ok = len(set(orb)) == n
        for v in orb if ok else ():
            for k in _pair_keys(v):
                if k in keys:
                    ok = False
                    break
                keys.add(k)
            if not ok:
                break
        if ok:
            orbits.append(u)
            keysets.append(keys)
    owner = defaultdict(list)
    for i, ks in enumerate(keysets):
        for k in ks:
            owner[k].append(i)
    conflicts = [set() for _ in orbits]
    for idx in owner.values():
        for i, j in itertools.combinations(idx, 2):
            conflicts[i].add(j)
            conflicts[j].add(i)
    conflicts = [sorted(c) for c in conflicts]
    for r in range(restarts):
        rng = random.Random(seed * restarts + r)
        chosen = _clique.tabu_independent_set(conflicts, t, iters, rng)
        if len(chosen) >= t:
            bases = tuple(orbits[i] for i in sorted(chosen[:t]))
            return BaseCodewordSet(n, COMP111, 4, bases, expected_size=t * n,
                                   cite=f"cyclic orbit search, seed {seed * restarts + r}")
    return None


def cyclic_difference_bases(n: int, node_limit: int = 5_000_000) -> BaseCodewordSet | None:
    """Cyclic (n, 4, [1,1,1]) codes of size n(n-1)/2 for odd n.

    Such a code is a regular tournament on Z_n (difference set D, D and -D
    partitioning the nonzero residues) plus (n-1)/2 base triangles
    (x, y, z) in D^3 with x + y + z = 0, each element of D occurring once in
    every coordinate and no two triangles rotations of each other. The
    base word of (x, y, z) is <0, x, x + y>. Exhaustive over D up to the
    node limit."""
    if n % 2 == 0 or n < 3:
        raise PreconditionError("cyclic difference search needs odd n")
    half = list(range(1, (n - 1) // 2 + 1))
    budget = [node_limit]

    def rot_key(tr):
        return min(tr[i:] + tr[:i] for i in range(3))

    def solve(D):
        Ds = set(D)
        by_x = defaultdict(list)
        for x in D:
            for y in D:
                z = (-x - y) % n
                if z in Ds:
                    by_x[x].append((x, y, z))
        order = sorted(D, key=lambda x: len(by_x[x]))
        used_y, used_z, keys, chosen = set(), set(), set(), []

        def bt(i):
            budget[0] -= 1
            if budget[0] < 0:
                return False
            if i == len(order):
                return True
            for tr in by_x[order[i]]:
                k = rot_key(tr)
                if tr[1] in used_y or tr[2] in used_z or k in keys:
                    continue
                used_y.add(tr[1]); used_z.add(tr[2]); keys.add(k); chosen.append(tr)
                if bt(i + 1):
                    return True
                used_y.discard(tr[1]); used_z.discard(tr[2]); keys.discard(k); chosen.pop()
            return False

        return list(chosen) if bt(0) else None

    for mask in range(1 << max(len(half) - 1, 0)):
        D = [half[0]] + [half[i] if mask >> (i - 1) & 1 else n - half[i] for i in range(1, len(half))]
        sol = solve(D)
        if budget[0] < 0:
            return None
        if sol:
            bases = tuple(Codeword.from_tuple(n, (0, x, (x + y) % n), COMP111) for x, y, _ in sol)
            return BaseCodewordSet(n, COMP111, 4, bases, expected_size=n * (n - 1) // 2,
                                   cite="cyclic difference search")
    return None


def _word_conflicts(words: Sequence[Codeword], d: int) -> list[list[int]]:
    by_pos = defaultdict(list)
    for i, u in enumerate(words):
        for p in u.positions:
            by_pos[p].append(i)
    conf = [set() for _ in words]
    for idx in by_pos.values():
        for a, b in itertools.combinations(idx, 2):
            if b not in conf[a] and hamming_distance(words[a], words[b]) < d:
                conf[a].add(b)
                conf[b].add(a)
    return [sorted(c) for c in conf]


def local_search_code(n: int, d: int, comp: Composition, target: int, seed: int = 0,
                      iters: int = 2_000_000, restarts: int = 5) -> ConstantCompositionCode:
    """Tabu local search over all words of the composition. Returns the
    largest code found (verified); it may be smaller than ``target``."""
    from .bounds import all_words
    words = all_words(n, comp)
    if 2 * comp.w < d:
        raise PreconditionError("distance exceeds 2w")
    conf = _word_conflicts(words, d)
    best: list[int] = []
    used_seed = seed
    for r in range(restarts):
        rng = random.Random(seed * restarts + r)
        found = _clique.tabu_independent_set(conf, target, iters, rng)
        if len(found) > len(best):
            best, used_seed = found, seed * restarts + r
        if len(best) >= target:
            break
    prov = node("local-search", "seeded tabu search", n=n, d=d, comp=comp, seed=used_seed)
    return make_code(n, comp, [words[i] for i in best], d, prov)


# ---------------------------------------------------------------------------
# recursive constructions


def _match_groups(ingredient: GroupDivisibleCode, block: Sequence[int], weights: Sequence[int]):
    """Pair each ingredient group with a block point of the same weight."""
    groups = sorted(ingredient.partition.groups, key=len)
    pts = sorted((a for a in block if weights[a]), key=lambda a: weights[a])
    if [len(g) for g in groups] != [weights[a] for a in pts]:
        raise PreconditionError(f"ingredient type {ingredient.type} does not match weights "
                                f"{sorted(weights[a] for a in block)}")
    return list(zip(pts, groups))


def wfc_gdc(master: BlockDesign, omega, ingredients: Callable[[tuple[int, ...]], AnyCode | None]
            | Mapping[tuple[int, ...], AnyCode]) -> GroupDivisibleCode:
    """Fundamental Construction: every master block A becomes a copy of the
    ingredient GDC of type [w(a) : a in A] on the weighted copies of A.

    ``ingredients`` is keyed by the sorted tuple of block weights."""
    if callable(omega):
        w = [int(omega(x)) for x in range(master.n)]
    elif isinstance(omega, int):
        w = [omega] * master.n
    else:
        w = list(omega)
    part, copies = weighted_partition(master.partition, w)
    get = ingredients.get if isinstance(ingredients, Mapping) else ingredients
    words = []
    used = {}
    comp = d = None
    for blk in master.blocks:
        key = tuple(sorted(w[a] for a in blk if w[a]))
        ing = get(key)
        if ing is None:
            raise Unresolved(IngredientSpec.of("GDC", type=" ".join(map(str, key))))
        if not isinstance(ing, GroupDivisibleCode):
            ing = code_as_gdc(ing)
        if comp is None:
            comp, d = ing.code.comp, ing.d
            _check_distance(d, comp)
        elif (ing.code.comp, ing.d) != (comp, d):
            raise PreconditionError("ingredients disagree on composition or distance")
        rel = {}
        for a, g in _match_groups(ing, blk, w):
            for p, q in zip(g, copies[a]):
                rel[p] = q
        for u in ing.code.words:
            words.append(Codeword(part.n, tuple((rel[p], s) for p, s in u.support)))
        used.setdefault(key, _prov(ing))
    if comp is None:
        raise PreconditionError("master design has no blocks")
    prov = node("wfc-gdc", "fundamental construction", master.provenance, *used.values(),
                weights="/".join(map(str, sorted(set(w)))))
    code = make_code(part.n, comp, words, d, prov)
    return make_gdc(part, code, prov)


def _embed(c: ConstantCompositionCode, points: Sequence[int], n: int) -> list[Codeword]:
    if c.n != len(points):
        raise PreconditionError(f"code of length {c.n} cannot fill {len(points)} points")
    return [Codeword(n, tuple((points[p], s) for p, s in u.support)) for u in c.words]


def fill_groups(g: GroupDivisibleCode, fillers: Callable[[int], AnyCode] | Mapping[int, AnyCode],
                which: Sequence[int] | None = None) -> AnyCode:
    """Place a code on each selected group (all groups by default).

    ``fillers`` maps a group size to a code of that length. Filling every
    group gives a code; otherwise the unfilled groups survive in a GDC."""
    _check_distance(g.d, g.code.comp)
    groups = g.partition.groups
    chosen = set(range(len(groups))) if which is None else set(which)
    get = fillers.get if isinstance(fillers, Mapping) else fillers
    words = list(g.code.words)
    kids = {}
    for i in sorted(chosen):
        f = get(len(groups[i]))
        if f is None:
            raise Unresolved(IngredientSpec.of("Code", n=len(groups[i]), d=g.d, comp=str(g.code.comp)))
        fc = _code(f)
        if fc.comp != g.code.comp or fc.d_claimed < g.d:
            raise PreconditionError("filler composition or distance does not match")
        words += _embed(fc, groups[i], g.n)
        kids.setdefault(len(groups[i]), _prov(f))
    prov = node("fill-groups", "filling in groups", _prov(g), *kids.values(), filled=len(chosen))
    code = make_code(g.n, g.code.comp, words, g.d, prov)
    if len(chosen) == len(groups):
        return code
    new_groups = [(x,) for i in sorted(chosen) for x in groups[i]]
    new_groups += [groups[i] for i in range(len(groups)) if i not in chosen]
    return make_gdc(GroupPartition(g.n, tuple(new_groups)), code, prov)


def _arm_layout(arm: AnyCode, y: int) -> tuple[list[int], list[int]]:
    """Split an arm's points into (singletons, Y) with Y the size-y group
    (or the last y points when every group is a singleton)."""
    part = _partition(arm)
    if y > 1:
        big = [grp for grp in part.groups if len(grp) == y]
        if len(big) != 1 or any(len(grp) not in (1, y) for grp in part.groups):
            raise PreconditionError(f"arm must be a GDC of type 1^g {y}^1, got {part.type}")
        ys = list(big[0])
    else:
        ys = list(range(arm.n - y, arm.n))
    rest = [x for x in range(arm.n) if x not in set(ys)]
    return rest, ys


def adjoin_points(g: GroupDivisibleCode, y: int, cap: AnyCode | None,
                  arms: Callable[[int], AnyCode] | Mapping[int, AnyCode], cap_group: int = 0
                  ) -> AnyCode:
    """Add y new points Y. The cap code covers the chosen group plus Y; every
    other group G gets an arm, a GDC of type 1^|G| y^1 whose big group is Y.

    With ``cap=None`` the chosen group plus Y is left as a group and the
    result is a GDC of type 1^(n - |G|) (|G| + y)^1."""
    _check_distance(g.d, g.code.comp)
    n = g.n
    Y = list(range(n, n + y))
    total = n + y
    groups = g.partition.groups
    words = [Codeword(total, u.support) for u in g.code.words]
    g1 = list(groups[cap_group])
    if cap is not None:
        cc = _code(cap)
        if cc.n != len(g1) + y:
            raise PreconditionError(f"cap must have length {len(g1) + y}, got {cc.n}")
        words += _embed(cc, g1 + Y, total)
    get = arms.get if isinstance(arms, Mapping) else arms
    kids = {}
    for i, grp in enumerate(groups):
        if i == cap_group:
            continue
        arm = get(len(grp))
        if arm is None:
            raise Unresolved(IngredientSpec.of("GDC", type=f"1^{len(grp)} {y}^1"))
        if arm.n != len(grp) + y:
            raise PreconditionError(f"arm for group of size {len(grp)} has length {arm.n}")
        rest, ys = _arm_layout(arm, y)
        mapping = {}
        for a, x in zip(rest, grp):
            mapping[a] = x
        for a, x in zip(ys, Y):
            mapping[a] = x
        for u in _code(arm).words:
            words.append(Codeword(total, tuple((mapping[p], s) for p, s in u.support)))
        kids.setdefault(len(grp), _prov(arm))
    prov = node("adjoin-points", "adjoining points", _prov(g), _prov(cap) if cap is not None else None,
                *kids.values(), y=y)
    code = make_code(total, g.code.comp, words, g.d, prov)
    if cap is not None:
        return code
    rest = [(x,) for i, grp in enumerate(groups) if i != cap_group for x in grp]
    return make_gdc(GroupPartition(total, tuple(rest + [tuple(g1 + Y)])), code, prov)


def triple(c: ConstantCompositionCode) -> tuple[ConstantCompositionCode, ConstantCompositionCode]:
    """Odd length n code -> codes of lengths 3n and 3n-2.

    Their sizes are 3n^2 + 3|c| and 3(n-1)^2 + 3|c|, optimal exactly when
    ``c`` is; a smaller ``c`` still gives valid codes."""
    n = c.n
    if n % 2 == 0:
        raise PreconditionError("tripling needs odd n")
    if c.comp != COMP111 or c.d_claimed != 4:
        raise PreconditionError("tripling needs an (n,4,[1,1,1]) code")
    big = fill_groups(latin_gdc(n), {n: c})
    small = adjoin_points(latin_gdc(n - 1), 1, c, {n - 1: c})
    return big, small


def shorten(c: ConstantCompositionCode) -> ConstantCompositionCode:
    """Delete the least used coordinate together with the words using it."""
    n = c.n
    if n % 2 == 0 or len(c) != n * (n - 1) // 2:
        raise PreconditionError("shortening needs an odd length code of size n(n-1)/2")
    use = [0] * n
    for u in c.words:
        for p in u.positions:
            use[p] += 1
    x = min(range(n), key=lambda p: (use[p], p))
    assert use[x] * 2 <= 3 * (n - 1), "averaging bound violated"
    words = [Codeword(n - 1, tuple((p - (p > x), s) for p, s in u.support))
             for u in c.words if x not in u.positions]
    prov = node("shorten", "coordinate deletion", c.provenance, coordinate=x)
    return make_code(n - 1, c.comp, words, c.d_claimed, prov)


def excise_subcode(c: AnyCode, S: Sequence[int]) -> GroupDivisibleCode:
    """Drop the words inside S and make S a group."""
    S = sorted(set(S))
    inside = set(S)
    code = _code(c)
    words = [u for u in code.words if not set(u.positions) <= inside]
    groups = [(x,) for x in range(code.n) if x not in inside]
    if S:
        groups.append(tuple(S))
    prov = node("excise", "subcode removal", _prov(c), size=len(S))
    new = make_code(code.n, code.comp, words, code.d_claimed, prov)
    return make_gdc(GroupPartition(code.n, tuple(groups)), new, prov)
