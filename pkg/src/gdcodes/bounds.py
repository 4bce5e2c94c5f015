"""Size formulas, upper bounds, the table of known optimal sizes for weight
three, existence predicates for the block designs used as ingredients, and
an exhaustive maximum-clique oracle for small lengths."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from enum import Enum

from . import _clique
from .core import Codeword, Composition, ConstantCompositionCode, hamming_distance, make_code, node

COMP21 = Composition((2, 1))
COMP111 = Composition((1, 1, 1))
COMP3 = Composition((3,))


class BoundKind(str, Enum):
    EXACT = "Exact"
    UPPER = "UpperBound"
    OPEN = "Open"


@dataclass(frozen=True)
class BoundValue:
    kind: BoundKind
    value: int | None
    source: str

    def __str__(self) -> str:
        if self.kind is BoundKind.OPEN:
            return f"Open [{self.source}]"
        return f"{self.kind.value} {self.value} [{self.source}]"


class Verdict(str, Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    POSSIBLE_EXCEPTION = "PossibleException"
    OUT_OF_RANGE = "OutOfRange"


@dataclass(frozen=True)
class ExistenceVerdict:
    verdict: Verdict
    theorem: str

    def __bool__(self) -> bool:
        return self.verdict is Verdict.EXISTS


def _as_comp(comp) -> Composition:
    return comp if isinstance(comp, Composition) else Composition(tuple(comp))


# ---------------------------------------------------------------------------
# closed forms


def trivial_size(n: int, d: int, comp) -> int | None:
    """Exact size in the three degenerate distance regimes, else None."""
    comp = _as_comp(comp)
    w = comp.w
    if d <= 2:
        if n < w:
            return 0
        multinom = math.factorial(w)
        for k in comp.weights:
            multinom //= math.factorial(k)
        return math.comb(n, w) * multinom
    if d == 2 * w:
        return n // w
    if d >= 2 * w + 1:
        return 1 if n >= w else 0
    return None


def binary_weight3(n: int, d: int) -> int:
    """A_2(n, d, [3]) for d in 3..6."""
    if n < 3:
        raise ValueError("binary weight-3 codes need n >= 3")
    if d in (3, 4):
        v = (n * ((n - 1) // 2)) // 3
        return v - 1 if n % 6 == 5 else v
    if d in (5, 6):
        return n // 3
    raise ValueError(f"d={d} outside 3..6")


def u21(n: int) -> int:
    """Upper bound on A_3(n, 4, [2,1])."""
    if n % 2 == 0:
        return n * (n - 2) // 4
    if n % 4 == 1:
        return n * (n - 1) // 4
    return (n - 1) ** 2 // 4 + (n - 3) // 12


def u111_d3(n: int) -> int:
    return n * (n - 1)


def u111_d4(n: int) -> int:
    return n * ((n - 1) // 2)


def upper_bound(n: int, d: int, comp) -> BoundValue:
    comp = _as_comp(comp)
    t = trivial_size(n, d, comp)
    if t is not None:
        return BoundValue(BoundKind.UPPER, t, "degenerate-distance")
    if comp == COMP21 and d == 4:
        return BoundValue(BoundKind.UPPER, u21(n), "U(n,4,[2,1])")
    if comp == COMP111 and d == 3:
        return BoundValue(BoundKind.UPPER, u111_d3(n), "U(n,3,[1,1,1])")
    if comp == COMP111 and d == 4:
        return BoundValue(BoundKind.UPPER, u111_d4(n), "U(n,4,[1,1,1])")
    raise ValueError(f"no upper bound implemented for d={d}, comp={comp}")


# Exceptional small lengths of the weight-three classification, by
# (q, d): {n: value}. Everything else follows the generic formula below.
_EXCEPTIONS = {
    (4, 3): {3: 3, 5: 18, 6: 28},
    (4, 4): {3: 1, 5: 6, 6: 11, 7: 16, 8: 23},
    (4, 5): {3: 1, 4: 1, 5: 2, 6: 4},
}
OPEN_Q4_D4 = frozenset({9, 13, 15, 17})


def optimal_size(q: int, n: int, d: int, comp) -> BoundValue:
    """Known value of A_q(n, d, comp) for weight-three compositions."""
    comp = _as_comp(comp)
    if comp.w != 3 or comp.q != q:
        raise ValueError(f"only weight-three compositions with matching q: q={q}, comp={comp}")
    if n < 3:
        raise ValueError("n must be at least 3")
    t = trivial_size(n, d, comp)
    if t is not None:
        return BoundValue(BoundKind.EXACT, t, "degenerate-distance")
    if q == 2:
        return BoundValue(BoundKind.EXACT, binary_weight3(n, d), "binary-weight-3")
    if q == 3:
        if d == 3:
            return BoundValue(BoundKind.EXACT, n * ((n - 1) // 2), "ternary-d3")
        if d == 4:
            return BoundValue(BoundKind.EXACT, u21(n), "ternary-d4")
        if d == 5:
            return BoundValue(BoundKind.EXACT, n // 2, "ternary-d5")
    if q == 4:
        if d == 4 and n in OPEN_Q4_D4:
            return BoundValue(BoundKind.OPEN, None, "quaternary-d4-open")
        exc = _EXCEPTIONS.get((4, d), {})
        if n in exc:
            return BoundValue(BoundKind.EXACT, exc[n], f"quaternary-d{d}-small")
        if d == 3:
            return BoundValue(BoundKind.EXACT, u111_d3(n), "quaternary-d3")
        if d == 4:
            return BoundValue(BoundKind.EXACT, u111_d4(n), "quaternary-d4")
        if d == 5:
            return BoundValue(BoundKind.EXACT, n, "quaternary-d5")
    raise ValueError(f"outside the weight-three classification: q={q}, d={d}")


# ---------------------------------------------------------------------------
# design existence predicates


def _prime_power(m: int) -> bool:
    if m < 2:
        return False
    p = next(p for p in range(2, m + 1) if m % p == 0)
    while m % p == 0:
        m //= p
    return m == 1


_TD_MISSING = {
    3: frozenset(),
    4: frozenset({2, 6}),
    5: frozenset({2, 3, 6, 10}),
    6: frozenset({2, 3, 4, 6, 10, 14, 18, 22}),
}

_GE_REES_POSSIBLE = frozenset({(7, 15), (11, 21), (11, 24), (11, 27), (13, 27), (13, 33), (17, 39),
                               (17, 42), (19, 45), (19, 48), (19, 51), (23, 60), (23, 63)})


def _v(ok: bool, tag: str) -> ExistenceVerdict:
    return ExistenceVerdict(Verdict.EXISTS if ok else Verdict.NOT_EXISTS, tag)


def _gdd3_gtu(g: int, t: int, u: int) -> bool:
    if g > 0 and not (t >= 3 or (t == 2 and u == g) or (t == 1 and u == 0) or t == 0):
        return False
    if not (u <= g * (t - 1) or g * t == 0):
        return False
    if not ((g * (t - 1) + u) % 2 == 0 or g * t == 0):
        return False
    if not ((g * t) % 2 == 0 or u == 0):
        return False
    return (g * g * math.comb(t, 2) + g * t * u) % 3 == 0


def _gdd4_gt(g: int, t: int) -> bool:
    if t < 4 or (g, t) in ((2, 4), (6, 4)):
        return False
    r = g % 6
    if r in (1, 5):
        return t % 12 in (1, 4)
    if r in (2, 4):
        return t % 3 == 1
    if r == 3:
        return t % 4 in (0, 1)
    return True


def _gdd4_3tu(t: int, u: int) -> bool:
    if t % 4 == 0:
        return u % 3 == 0 and 0 <= u <= (3 * t - 6) / 2
    if t % 4 == 1:
        return u % 6 == 0 and 0 <= u <= (3 * t - 3) / 2
    if t % 4 == 3:
        return u % 6 == 3 and 0 < u <= (3 * t - 3) / 2
    return False


def design_exists(kind: str, **p) -> ExistenceVerdict:
    """Existence predicate for a named design family.

    kinds: RGDD3(g,t), KirkmanFrame(g,t), TDk(k,m), ITD4(n,h), GDD3_gtu(g,t,u),
    GDD4_gt(g,t), GDD4_3tu(t,u), GDD4_6tu(t,u).
    """
    if kind == "RGDD3":
        g, t = p["g"], p["t"]
        ok = t >= 3 and (g * t) % 3 == 0 and (g * (t - 1)) % 2 == 0 and (g, t) not in ((2, 3), (2, 6), (6, 3))
        return _v(ok, "resolvable-3-GDD")
    if kind == "KirkmanFrame":
        g, t = p["g"], p["t"]
        return _v(t >= 4 and g % 2 == 0 and (g * (t - 1)) % 3 == 0, "kirkman-frame")
    if kind == "TDk":
        k, m = p["k"], p["m"]
        if m == 1 or k <= 2:
            return _v(True, "transversal-design")
        if k in _TD_MISSING:
            return _v(m not in _TD_MISSING[k], "transversal-design")
        if k > m + 1:
            return _v(False, "transversal-design")
        if _prime_power(m):
            return _v(True, "transversal-design")
        return ExistenceVerdict(Verdict.OUT_OF_RANGE, "transversal-design")
    if kind == "ITD4":
        n, h = p["n"], p["h"]
        if not n > h > 0:
            return ExistenceVerdict(Verdict.OUT_OF_RANGE, "incomplete-TD")
        return _v(n >= 3 * h and (n, h) != (6, 1), "incomplete-TD")
    if kind == "GDD3_gtu":
        return _v(_gdd3_gtu(p["g"], p["t"], p.get("u", 0)), "3-GDD-g^t-u^1")
    if kind == "GDD4_gt":
        return _v(_gdd4_gt(p["g"], p["t"]), "4-GDD-g^t")
    if kind == "GDD4_3tu":
        return _v(_gdd4_3tu(p["t"], p["u"]), "4-GDD-3^t-u^1")
    if kind == "GDD4_6tu":
        t, u = p["t"], p["u"]
        if not (t >= 4 and u % 3 == 0 and 0 <= u <= 3 * t - 3):
            return ExistenceVerdict(Verdict.OUT_OF_RANGE, "4-GDD-6^t-u^1")
        if (t, u) == (4, 0):
            return _v(False, "4-GDD-6^t-u^1")
        if (t, u) in _GE_REES_POSSIBLE:
            return ExistenceVerdict(Verdict.POSSIBLE_EXCEPTION, "4-GDD-6^t-u^1")
        return _v(True, "4-GDD-6^t-u^1")
    raise ValueError(f"unknown design kind {kind!r}")


# ---------------------------------------------------------------------------
# brute-force oracle


def all_words(n: int, comp) -> list[Codeword]:
    """Every length-n word of the composition, sorted by support."""
    comp = _as_comp(comp)
    syms = comp.symbols()
    words = set()
    for pts in itertools.permutations(range(n), comp.w):
        words.add(Codeword(n, tuple(zip(pts, syms))))
    return sorted(words)


EXACT_LIMITS = {COMP111: 6, COMP21: 7}
WITNESS_RESTARTS = 24



@dataclass(frozen=True)
class OracleResult:
    size: int
    exact: bool
    code: ConstantCompositionCode


def brute_force_optimum(n: int, d: int, comp, mode: str = "Exact", budget: int = 2_000_000,
                        seed: int = 0) -> OracleResult:
    """Largest code found by maximum clique on the compatibility graph.

    ``mode="Exact"`` is only accepted for lengths small enough to finish
    (n <= 6 for [1,1,1], n <= 7 for [2,1]). ``"WitnessOnly"`` seeds the
    incumbent with a tabu local search and returns the best clique within
    ``budget`` branch-and-bound nodes.
    """
    comp = _as_comp(comp)
    if mode not in ("Exact", "WitnessOnly"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "Exact":
        limit = EXACT_LIMITS.get(comp, 5)
        if n > limit:
            raise ValueError(f"exact search for {comp} only supported for n <= {limit}")
    words = all_words(n, comp)
    m = len(words)
    adj = [0] * m
    conflicts: list[list[int]] = [[] for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        if hamming_distance(words[i], words[j]) >= d:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        else:
            conflicts[i].append(j)
            conflicts[j].append(i)
    lower: list[int] = []
    if mode == "WitnessOnly":
        # tabu search stalls in local optima, so restart it from fresh seeds
        try:
            target = upper_bound(n, d, comp).value
        except ValueError:
            target = m
        for r in range(WITNESS_RESTARTS):
            rng = random.Random(seed * WITNESS_RESTARTS + r)
            found = _clique.tabu_independent_set(conflicts, target, 50_000, rng)
            if len(found) > len(lower):
                lower = found
            if len(lower) >= target:
                break
    clique, exact = _clique.max_clique(adj, lower, None if mode == "Exact" else budget)
    prov = node("max-clique", "exhaustive oracle" if exact else "oracle witness",
                n=n, d=d, comp=comp, mode=mode)
    code = make_code(n, comp, [words[i] for i in clique], d, prov)
    return OracleResult(len(clique), exact, code)
