"""Domain types for constant-composition codes, group divisible codes and
group divisible designs, together with the exhaustive verifiers that every
construction in the package runs on its own output.

Points are 0-based integers ``0..n-1`` everywhere. Codewords are stored
sparsely as ``(position, symbol)`` pairs sorted by position.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class GdcError(Exception):
    """Base class for errors raised by this package."""


class VerificationError(GdcError):
    """A constructed object failed its own verification."""

    def __init__(self, report: "VerificationReport", what: str = "object"):
        self.report = report
        super().__init__(f"{what} failed verification: {report.summary()}")


class PreconditionError(GdcError, ValueError):
    """Inputs violate an operation's stated preconditions."""


# ---------------------------------------------------------------------------
# provenance


@dataclass(frozen=True)
class ConstructionNode:
    """One step of a construction: operator, parameters, inputs, citation."""

    op: str
    params: tuple[tuple[str, str], ...] = ()
    children: tuple["ConstructionNode", ...] = ()
    cite: str = ""

    def leaves(self) -> list["ConstructionNode"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def render(self, indent: int = 0) -> str:
        ps = ", ".join(f"{k}={v}" for k, v in self.params)
        head = "  " * indent + self.op + (f"({ps})" if ps else "")
        if self.cite:
            head += f"  [{self.cite}]"
        return "\n".join([head] + [c.render(indent + 1) for c in self.children])

    def to_dict(self) -> dict:
        return {
            "op": self.op,
            "params": dict(self.params),
            "cite": self.cite,
            "children": [c.to_dict() for c in self.children],
        }


def node(op: str, cite: str = "", *children: ConstructionNode | None, **params) -> ConstructionNode:
    kids = tuple(c for c in children if c is not None)
    return ConstructionNode(op, tuple((k, str(v)) for k, v in params.items()), kids, cite)


# ---------------------------------------------------------------------------
# compositions and codewords


@dataclass(frozen=True)
class Composition:
    """Canonical (nonincreasing, all positive) symbol counts ``[w1, ..., w_{q-1}]``."""

    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w or any(x < 1 for x in w):
            raise ValueError(f"composition entries must be positive: {w}")
        if list(w) != sorted(w, reverse=True):
            raise ValueError(f"composition must be nonincreasing: {w}")

    @classmethod
    def of(cls, *weights: int) -> "Composition":
        if len(weights) == 1 and not isinstance(weights[0], int):
            weights = tuple(weights[0])
        return cls(tuple(weights))

    @property
    def q(self) -> int:
        return len(self.weights) + 1

    @property
    def w(self) -> int:
        return sum(self.weights)

    def symbols(self) -> tuple[int, ...]:
        """Symbol of each slot of the w-tuple form, e.g. [2,1] -> (1, 1, 2)."""
        return tuple(s for s, k in enumerate(self.weights, start=1) for _ in range(k))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.weights)) + "]"


def canonicalize(counts: Sequence[int]) -> Composition:
    """Reorder and drop zero entries of a raw count vector."""
    return Composition(tuple(sorted((c for c in counts if c), reverse=True)))


@dataclass(frozen=True, order=True)
class Codeword:
    """A length-``n`` word stored as its support ``((pos, sym), ...)``."""

    n: int
    support: tuple[tuple[int, int], ...]

    def __post_init__(self):
        sup = tuple(sorted((int(p), int(s)) for p, s in self.support))
        object.__setattr__(self, "support", sup)
        pos = [p for p, _ in sup]
        if len(set(pos)) != len(pos):
            raise ValueError(f"repeated position in support {sup}")
        if any(p < 0 or p >= self.n for p in pos):
            raise ValueError(f"position out of range 0..{self.n - 1}: {sup}")
        if any(s <= 0 for _, s in sup):
            raise ValueError(f"support symbols must be nonzero: {sup}")

    @classmethod
    def from_tuple(cls, n: int, points: Sequence[int], comp: Composition) -> "Codeword":
        """Build from the w-tuple form <a1, ..., aw>: the first w1 points carry
        symbol 1, the next w2 symbol 2, and so on."""
        if len(points) != comp.w:
            raise ValueError(f"expected {comp.w} points, got {len(points)}")
        return cls(n, tuple(zip(points, comp.symbols())))

    @classmethod
    def from_vector(cls, vec: str | Sequence[int]) -> "Codeword":
        vals = [int(c) for c in vec]
        return cls(len(vals), tuple((i, v) for i, v in enumerate(vals) if v))

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.support)

    def symbol_at(self, pos: int) -> int:
        for p, s in self.support:
            if p == pos:
                return s
        return 0

    def as_tuple(self) -> tuple[int, ...]:
        """The w-tuple form: positions ordered by symbol, then by position."""
        return tuple(p for p, s in sorted(self.support, key=lambda ps: (ps[1], ps[0])))

    def dense(self) -> list[int]:
        v = [0] * self.n
        for p, s in self.support:
            v[p] = s
        return v

    def shifted(self, step: int, modulus: int | None = None) -> "Codeword":
        m = self.n if modulus is None else modulus
        return Codeword(self.n, tuple(((p + step) % m, s) for p, s in self.support))

    def __str__(self) -> str:
        return " ".join(f"{p}:{s}" for p, s in self.support)


def hamming_distance(u: Codeword, v: Codeword) -> int:
    if u.n != v.n:
        raise ValueError(f"length mismatch: {u.n} != {v.n}")
    du = dict(u.support)
    dv = dict(v.support)
    return sum(1 for x in du.keys() | dv.keys() if du.get(x, 0) != dv.get(x, 0))


def composition_of(u: Codeword, q: int) -> tuple[int, ...]:
    """Raw counts ``(w1, ..., w_{q-1})`` of symbols 1..q-1 in ``u``."""
    counts = [0] * (q - 1)
    for _, s in u.support:
        if s >= q:
            raise ValueError(f"symbol {s} not below q={q}")
        counts[s - 1] += 1
    return tuple(counts)


def restrict(u: Codeword, points: Iterable[int]) -> Codeword:
    keep = set(points)
    return Codeword(u.n, tuple((p, s) for p, s in u.support if p in keep))


# ---------------------------------------------------------------------------
# codes, partitions, GDCs, designs


@dataclass(frozen=True)
class ConstantCompositionCode:
    n: int
    comp: Composition
    words: tuple[Codeword, ...]
    d_claimed: int
    provenance: ConstructionNode | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(sorted(self.words)))

    @property
    def q(self) -> int:
        return self.comp.q

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def with_provenance(self, prov: ConstructionNode) -> "ConstantCompositionCode":
        return ConstantCompositionCode(self.n, self.comp, self.words, self.d_claimed, prov)


@dataclass(frozen=True)
class GddType:
    """Multiset of group sizes, e.g. ``GddType.parse("6^5 4^1")``."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged: Counter = Counter()
        for g, t in self.entries:
            if g < 0 or t < 0:
                raise ValueError(f"bad type entry {g}^{t}")
            if g and t:
                merged[int(g)] += int(t)
        object.__setattr__(self, "entries", tuple(sorted(merged.items(), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "GddType":
        entries = []
        for tok in text.split():
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise ValueError(f"cannot parse type token {tok!r}")
            entries.append((int(m.group(1)), int(m.group(2) or 1)))
        return cls(tuple(entries))

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "GddType":
        return cls(tuple(Counter(sizes).items()))

    def sizes(self) -> list[int]:
        return [g for g, t in self.entries for _ in range(t)]

    @property
    def n(self) -> int:
        return sum(g * t for g, t in self.entries)

    @property
    def num_groups(self) -> int:
        return sum(t for _, t in self.entries)

    def internal_pairs(self) -> int:
        return sum(t * math.comb(g, 2) for g, t in self.entries)

    def cross_pairs(self) -> int:
        return math.comb(self.n, 2) - self.internal_pairs()

    def __str__(self) -> str:
        return " ".join(f"{g}^{t}" for g, t in self.entries)


@dataclass(frozen=True)
class GroupPartition:
    n: int
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(sorted(int(x) for x in g)) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        seen: set[int] = set()
        for g in groups:
            if not g:
                raise ValueError("empty group")
            for x in g:
                if x in seen:
                    raise ValueError(f"point {x} lies in two groups")
                seen.add(x)
        if seen != set(range(self.n)):
            missing = sorted(set(range(self.n)) - seen)[:5]
            raise ValueError(f"groups do not cover 0..{self.n - 1} (e.g. missing {missing})")

    @classmethod
    def singletons(cls, n: int) -> "GroupPartition":
        return cls(n, tuple((i,) for i in range(n)))

    @classmethod
    def consecutive(cls, sizes: Sequence[int]) -> "GroupPartition":
        groups, start = [], 0
        for g in sizes:
            groups.append(tuple(range(start, start + g)))
            start += g
        return cls(start, tuple(groups))

    @property
    def type(self) -> GddType:
        return GddType.from_sizes(len(g) for g in self.groups)

    def group_index(self) -> list[int]:
        idx = [0] * self.n
        for i, g in enumerate(self.groups):
            for x in g:
                idx[x] = i
        return idx


@dataclass(frozen=True)
class GroupDivisibleCode:
    partition: GroupPartition
    code: ConstantCompositionCode
    provenance: ConstructionNode | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.partition.n != self.code.n:
            raise ValueError(f"partition has {self.partition.n} points, code length {self.code.n}")

    @property
    def d(self) -> int:
        return self.code.d_claimed

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def type(self) -> GddType:
        return self.partition.type

    def __len__(self) -> int:
        return len(self.code)


def code_as_gdc(code: ConstantCompositionCode) -> GroupDivisibleCode:
    """An (n, d, comp)-code is the same thing as a GDC of type 1^n."""
    return GroupDivisibleCode(GroupPartition.singletons(code.n), code, code.provenance)


def gdc_as_code(g: GroupDivisibleCode) -> ConstantCompositionCode:
    return g.code if g.provenance is None else g.code.with_provenance(g.provenance)


@dataclass(frozen=True)
class BlockDesign:
    """A K-GDD (TDs, frames, RGDDs and ITDs are special cases).

    ``resolution`` is an optional partition of the block indices into
    parallel or holey parallel classes; ``hole`` marks an ITD.
    """

    partition: GroupPartition
    blocks: tuple[tuple[int, ...], ...]
    K: frozenset[int]
    resolution: tuple[tuple[int, ...], ...] | None = None
    hole: frozenset[int] | None = None
    provenance: ConstructionNode | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "K", frozenset(self.K))
        if self.resolution is not None:
            object.__setattr__(self, "resolution", tuple(tuple(c) for c in self.resolution))
        if self.hole is not None:
            object.__setattr__(self, "hole", frozenset(self.hole))

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def type(self) -> GddType:
        return self.partition.type

    def block_census(self) -> dict[int, int]:
        return dict(sorted(Counter(len(b) for b in self.blocks).items()))

    def replace(self, **kw) -> "BlockDesign":
        fields = dict(partition=self.partition, blocks=self.blocks, K=self.K,
                      resolution=self.resolution, hole=self.hole, provenance=self.provenance)
        fields.update(kw)
        return BlockDesign(**fields)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: object = None


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def summary(self) -> str:
        if self.passed:
            return "passed (" + ", ".join(c.name for c in self.checks) + ")"
        return "; ".join(f"{c.name}: {c.witness!r}" for c in self.failures())

    def __add__(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks)

    def require(self, what: str = "object") -> None:
        if not self.passed:
            raise VerificationError(self, what)


def find_close_pair(words: Sequence[Codeword], d: int) -> tuple[Codeword, Codeword] | None:
    """Return some pair of words at distance < d, or None.

    Two words of weights w, w' sharing k support positions are at distance at
    least w + w' - 2k, so only pairs sharing more than (w + w' - d)/2
    positions can violate ``d``. Words are bucketed by their k-subsets of
    positions for the smallest such k; the search is exhaustive.
    """
    if len(words) < 2 or d <= 0:
        return None
    wmax = max(w.weight for w in words)
    kmin = (2 * wmax - d) // 2 + 1
    if kmin <= 0:
        return words[0], words[1]
    buckets: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for i, u in enumerate(words):
        for sub in itertools.combinations(u.positions, kmin):
            buckets[sub].append(i)
    seen: set[tuple[int, int]] = set()
    for idx in buckets.values():
        for a, b in itertools.combinations(idx, 2):
            if (a, b) in seen:
                continue
            seen.add((a, b))
            if hamming_distance(words[a], words[b]) < d:
                return words[a], words[b]
    # words too light to share kmin positions
    light = [u for u in words if u.weight < kmin]
    for u, v in itertools.combinations(light, 2):
        if hamming_distance(u, v) < d:
            return u, v
    return None


def minimum_distance(words: Sequence[Codeword]) -> int | None:
    """Exact minimum distance by brute force over all pairs (oracle use)."""
    best = None
    for u, v in itertools.combinations(words, 2):
        dd = hamming_distance(u, v)
        if best is None or dd < best:
            best = dd
    return best


def verify_code(c: ConstantCompositionCode) -> VerificationReport:
    bad_len = next((u for u in c.words if u.n != c.n), None)
    checks = [Check("length", bad_len is None, bad_len)]
    target = c.comp.weights
    bad_comp = None
    for u in c.words:
        if max((s for _, s in u.support), default=0) >= c.q or composition_of(u, c.q) != target:
            bad_comp = u
            break
    checks.append(Check("composition", bad_comp is None, bad_comp))
    dup = next((u for u, v in zip(c.words, c.words[1:]) if u == v), None)
    checks.append(Check("distinct", dup is None, dup))
    if bad_len is None:
        pair = find_close_pair(c.words, c.d_claimed)
        wit = None if pair is None else (pair[0], pair[1], hamming_distance(*pair))
        checks.append(Check(f"distance>={c.d_claimed}", pair is None, wit))
    return VerificationReport(tuple(checks))


def verify_gdc(g: GroupDivisibleCode) -> VerificationReport:
    rep = verify_code(g.code)
    gi = g.partition.group_index()
    bad = None
    for u in g.code.words:
        hit: dict[int, int] = {}
        for p in u.positions:
            if p >= len(gi):
                bad = (u, None)
                break
            if gi[p] in hit:
                bad = (u, g.partition.groups[gi[p]])
                break
            hit[gi[p]] = p
        if bad:
            break
    return rep + VerificationReport((Check("group-condition", bad is None, bad),))


def verify_design(b: BlockDesign) -> VerificationReport:
    """Block sizes, group transversality, exact pair coverage and (when
    present) the resolution. With a hole set the ITD rule applies: pairs
    inside the hole are uncovered too."""
    checks = []
    bad_size = next((blk for blk in b.blocks if len(blk) not in b.K), None)
    checks.append(Check("block-sizes", bad_size is None, bad_size))
    n = b.n
    bad_pt = next((blk for blk in b.blocks if any(x < 0 or x >= n for x in blk) or len(set(blk)) != len(blk)), None)
    checks.append(Check("block-points", bad_pt is None, bad_pt))
    if bad_pt is not None:
        return VerificationReport(tuple(checks))
    gi = b.partition.group_index()
    bad_meet = next((blk for blk in b.blocks if len({gi[x] for x in blk}) != len(blk)), None)
    checks.append(Check("block-meets-group<=1", bad_meet is None, bad_meet))

    hole = b.hole or frozenset()
    cover: Counter = Counter()
    for blk in b.blocks:
        cover.update(itertools.combinations(blk, 2))
    over = next((pr for pr, c in cover.items() if c > 1), None)
    checks.append(Check("pair-covered-at-most-once", over is None, over))
    forbidden = next((pr for pr in cover if gi[pr[0]] == gi[pr[1]] or (pr[0] in hole and pr[1] in hole)), None)
    checks.append(Check("no-forbidden-pair", forbidden is None, forbidden))
    expected = b.partition.type.cross_pairs()
    if hole:
        hole_groups = Counter(gi[x] for x in hole)
        hole_cross = math.comb(len(hole), 2) - sum(math.comb(c, 2) for c in hole_groups.values())
        expected -= hole_cross
    uncovered = None
    if len(cover) != expected:
        for x, y in itertools.combinations(range(n), 2):
            if gi[x] != gi[y] and not (x in hole and y in hole) and (x, y) not in cover:
                uncovered = (x, y)
                break
    checks.append(Check("every-pair-covered", uncovered is None and len(cover) == expected,
                        uncovered if uncovered else (len(cover), expected)))

    if b.resolution is not None:
        checks.append(_check_resolution(b, gi))
    return VerificationReport(tuple(checks))


def _check_resolution(b: BlockDesign, gi: list[int]) -> Check:
    used = Counter(i for cls in b.resolution for i in cls)
    if any(c != 1 for c in used.values()) or set(used) != set(range(len(b.blocks))):
        return Check("resolution", False, "classes do not partition the blocks")
    everything = set(range(b.n))
    groups = [set(g) for g in b.partition.groups]
    for k, cls in enumerate(b.resolution):
        pts: list[int] = [x for i in cls for x in b.blocks[i]]
        covered = set(pts)
        if len(covered) != len(pts):
            return Check("resolution", False, ("class repeats a point", k))
        if covered == everything:
            continue
        if any(covered == everything - g for g in groups):
            continue
        return Check("resolution", False, ("class is neither parallel nor holey", k))
    return Check("resolution", True)


def resolution_kind(b: BlockDesign) -> list[str]:
    """For each class: 'parallel' or 'holey:<group index>'."""
    out = []
    everything = set(range(b.n))
    for cls in b.resolution or ():
        covered = {x for i in cls for x in b.blocks[i]}
        if covered == everything:
            out.append("parallel")
        else:
            gi = next(j for j, g in enumerate(b.partition.groups) if covered == everything - set(g))
            out.append(f"holey:{gi}")
    return out


# ---------------------------------------------------------------------------
# relabeling


def _as_map(mapping: Mapping[int, int] | Sequence[int], n: int) -> dict[int, int]:
    m = dict(mapping) if isinstance(mapping, Mapping) else dict(enumerate(mapping))
    if set(m) != set(range(n)):
        raise ValueError(f"map must be defined on all {n} points")
    if len(set(m.values())) != len(m):
        raise ValueError("map is not injective")
    return m


def relabel_points(obj, mapping: Mapping[int, int] | Sequence[int], n: int | None = None):
    """Apply an injective point map to a word, code, GDC or design.

    Words and codes may be embedded into a longer length ``n``; objects with a
    group partition need a bijection onto ``0..n-1``.
    """
    if isinstance(obj, Codeword):
        m = _as_map(mapping, obj.n)
        new_n = n if n is not None else max(m.values(), default=-1) + 1
        return Codeword(new_n, tuple((m[p], s) for p, s in obj.support))
    if isinstance(obj, ConstantCompositionCode):
        m = _as_map(mapping, obj.n)
        new_n = n if n is not None else max(m.values(), default=-1) + 1
        words = tuple(Codeword(new_n, tuple((m[p], s) for p, s in u.support)) for u in obj.words)
        return ConstantCompositionCode(new_n, obj.comp, words, obj.d_claimed, obj.provenance)
    if isinstance(obj, (GroupDivisibleCode, BlockDesign)):
        m = _as_map(mapping, obj.n)
        if set(m.values()) != set(range(obj.n)):
            raise ValueError("objects with groups need a bijection onto 0..n-1")
        part = GroupPartition(obj.n, tuple(tuple(m[x] for x in g) for g in obj.partition.groups))
        if isinstance(obj, GroupDivisibleCode):
            return GroupDivisibleCode(part, relabel_points(obj.code, m, obj.n), obj.provenance)
        hole = None if obj.hole is None else frozenset(m[x] for x in obj.hole)
        blocks = tuple(tuple(m[x] for x in blk) for blk in obj.blocks)
        return BlockDesign(part, blocks, obj.K, obj.resolution, hole, obj.provenance)
    raise TypeError(f"cannot relabel {type(obj).__name__}")


def make_code(n: int, comp: Composition, words: Iterable[Codeword], d: int,
              provenance: ConstructionNode | None = None, check: bool = True) -> ConstantCompositionCode:
    """Assemble a code and (by default) verify it before returning."""
    c = ConstantCompositionCode(n, comp, tuple(words), d, provenance)
    if check:
        verify_code(c).require(f"({n},{d},{comp}) code")
    return c


def make_gdc(partition: GroupPartition, code: ConstantCompositionCode,
             provenance: ConstructionNode | None = None, check: bool = True) -> GroupDivisibleCode:
    g = GroupDivisibleCode(partition, code, provenance if provenance is not None else code.provenance)
    if check:
        verify_gdc(g).require(f"{code.comp}-GDC({code.d_claimed}) of type {partition.type}")
    return g


def make_design(partition: GroupPartition, blocks: Iterable[Sequence[int]], K: Iterable[int],
                resolution=None, hole=None, provenance: ConstructionNode | None = None,
                check: bool = True) -> BlockDesign:
    b = BlockDesign(partition, tuple(tuple(x) for x in blocks), frozenset(K), resolution, hole, provenance)
    if check:
        verify_design(b).require(f"{sorted(b.K)}-GDD of type {partition.type}")
    return b
