"""Recipe engine: pick the construction that covers (q, n, d, comp), resolve
its ingredients, build, and certify the result against the known optimum.

Recipes are tried in a fixed preference order: shipped catalog data, then
direct algebraic constructions, then tripling and shortening, then the
recursive GDD-based constructions.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable

from . import algebra, catalog, gdcbuild
from .bounds import (COMP111, COMP21, BoundKind, BoundValue, _as_comp, all_words, optimal_size,
                     trivial_size, upper_bound)
from .core import (Check, Codeword, Composition, ConstantCompositionCode, ConstructionNode, GdcError,
                   GroupDivisibleCode, VerificationReport, gdc_as_code, make_code, node, verify_code,
                   verify_gdc)
from .designs import (IngredientSpec, SearchBudget, Unresolved, add_points_to_frame, hill_climb_gdd,
                      kirkman_frame, resolve_ingredient)

AnyCode = ConstantCompositionCode | GroupDivisibleCode


class Status(str, Enum):
    OPTIMAL = "Optimal"
    SUBOPTIMAL = "Suboptimal"
    OPEN = "Open"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class Step:
    op: str
    ingredients: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.op}({', '.join(self.ingredients)})" if self.ingredients else self.op


@dataclass(frozen=True)
class Recipe:
    name: str
    steps: tuple[Step, ...]
    expected: int | None
    run: Callable[[SearchBudget], AnyCode] = field(compare=False, repr=False)

    def describe(self) -> str:
        return f"{self.name}: " + " -> ".join(map(str, self.steps))


@dataclass(frozen=True)
class NoRecipe:
    """``kind`` is "Open" (value unknown) or "OutOfScope" (no construction here)."""
    kind: str
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class CertifiedCode:
    code: ConstantCompositionCode | None
    provenance: ConstructionNode | None
    report: VerificationReport
    bound: BoundValue | None
    status: Status
    missing: tuple[str, ...] = ()
    recipe: str = ""
    seconds: float = 0.0

    @property
    def size(self) -> int | None:
        return None if self.code is None else len(self.code)

    def record(self, q: int, n: int, d: int, comp) -> dict:
        return {"q": q, "n": n, "d": d, "comp": list(_as_comp(comp).weights), "status": self.status.value,
                "size": self.size, "bound": None if self.bound is None else self.bound.value,
                "bound_kind": None if self.bound is None else self.bound.kind.value,
                "recipe": self.recipe, "missing": list(self.missing),
                "seconds": round(self.seconds, 3)}


# ---------------------------------------------------------------------------
# certification


def _bound(q: int, n: int, d: int, comp: Composition) -> BoundValue | None:
    try:
        return optimal_size(q, n, d, comp)
    except ValueError:
        try:
            return upper_bound(n, d, comp)
        except ValueError:
            return None


def certify(c: AnyCode, q: int, n: int, d: int, comp) -> CertifiedCode:
    """Re-verify ``c`` and compare its size with the known optimum."""
    comp = _as_comp(comp)
    code = gdc_as_code(c) if isinstance(c, GroupDivisibleCode) else c
    report = verify_gdc(c) if isinstance(c, GroupDivisibleCode) else verify_code(code)
    checks = [Check("parameters", (code.n, code.q, code.comp, code.d_claimed >= d) == (n, q, comp, True),
                    (code.n, code.q, str(code.comp), code.d_claimed))]
    report = report + VerificationReport(tuple(checks))
    bound = _bound(q, n, d, comp)
    if not report.passed:
        status = Status.SUBOPTIMAL
    elif bound is not None and bound.kind is BoundKind.EXACT and len(code) == bound.value:
        status = Status.OPTIMAL
    elif bound is not None and bound.kind is BoundKind.UPPER and len(code) == bound.value:
        status = Status.OPTIMAL
    elif bound is None or bound.kind is BoundKind.OPEN:
        status = Status.OPEN
    else:
        status = Status.SUBOPTIMAL
    return CertifiedCode(code, code.provenance, report, bound, status)


# ---------------------------------------------------------------------------
# shared ingredients

_CACHE: dict[tuple, AnyCode] = {}


def clear_cache() -> None:
    _CACHE.clear()


def _cached(key, make):
    if key not in _CACHE:
        _CACHE[key] = make()
    return _CACHE[key]


def _catalog_gdc(gtype: str, d: int, comp) -> GroupDivisibleCode:
    g = catalog.gdc(gtype, d, comp)
    if g is None:
        raise Unresolved(IngredientSpec.of("GDC", type=gtype, d=d, comp=str(comp)), ["not in catalog"])
    return g


def _optimal(q: int, n: int, d: int, comp: Composition, budget: SearchBudget) -> ConstantCompositionCode:
    """An optimal code as an ingredient; raises Unresolved if none is built."""
    key = ("code", q, n, d, comp, budget.seed)
    if key in _CACHE:
        return _CACHE[key]
    r = recipe_for(q, n, d, comp)
    spec = IngredientSpec.of("Code", q=q, n=n, d=d, comp=str(comp))
    if not r:
        raise Unresolved(spec, [f"{r.kind}: {r.reason}"])
    c = r.run(budget)
    c = gdc_as_code(c) if isinstance(c, GroupDivisibleCode) else c
    if r.expected is not None and len(c) != r.expected:
        raise Unresolved(spec, [f"{r.name} produced {len(c)} words, expected {r.expected}"])
    _CACHE[key] = c
    return c


def _gdd(gtype: str, K, budget: SearchBudget):
    return resolve_ingredient(IngredientSpec.of("GDD", K=tuple(sorted(K)), type=gtype), budget)


def _td(k: int, m: int, budget: SearchBudget):
    return algebra.td_from_design(resolve_ingredient(IngredientSpec.of("TD", k=k, m=m), budget))


def _group_index(g: GroupDivisibleCode, size: int) -> int:
    for i, grp in enumerate(g.partition.groups):
        if len(grp) == size:
            return i
    raise GdcError(f"no group of size {size} in type {g.type}")


# ---------------------------------------------------------------------------
# generic and small-length recipes


def _trivial_recipe(n: int, d: int, comp: Composition, size: int) -> Recipe:
    def run(budget):
        if d <= 2:
            words = all_words(n, comp)
        elif d == 2 * comp.w:
            words = [Codeword.from_tuple(n, tuple(range(i * comp.w, (i + 1) * comp.w)), comp)
                     for i in range(n // comp.w)]
        else:
            words = all_words(n, comp)[:1]
        return make_code(n, comp, words, d, node("degenerate", "closed form", n=n, d=d))
    return Recipe("degenerate-distance", (Step("closed-form"),), size, run)


def _catalog_recipe(entry: catalog.CatalogEntry, expected: int | None) -> Recipe:
    return Recipe("catalog", (Step("catalog", (entry.id,)),), expected, lambda budget: entry.build())


def _search_recipe(n: int, d: int, comp: Composition, expected: int) -> Recipe:
    def run(budget):
        best = None
        for seed in budget.restart_seeds()[:3]:
            c = gdcbuild.local_search_code(n, d, comp, expected, seed=seed, iters=400_000, restarts=4)
            if best is None or len(c) > len(best):
                best = c
            if len(best) >= expected:
                break
        return best
    return Recipe("seeded-search", (Step("tabu-search", (f"n={n}", f"d={d}")),), expected, run)


# ---------------------------------------------------------------------------
# ternary [2,1], distance 4


def _ternary_example_gdc():
    return _catalog_gdc("3^5", 4, COMP21)


def _ternary_arm() -> GroupDivisibleCode:
    """GDC of type 1^12 3^1: four of the five groups of the 3^5 GDC filled."""
    def make():
        g = _ternary_example_gdc()
        triv = gdcbuild.single_word_code(3, COMP21, 4)
        return gdcbuild.fill_groups(g, {3: triv}, which=range(4))
    return _cached("ternary-arm", make)


def _ternary_adjoin_three(t: int, small: int, cap_len: int, exp: int) -> Recipe:
    master = f"6^{t}" + (f" {small}^1" if small else "")

    def run(budget):
        gdd = _gdd(master, (3,), budget)
        big = gdcbuild.wfc_gdc(gdd, 2, {(2, 2, 2): _catalog_gdc("2^3", 4, COMP21)})
        cap_group = _group_index(big, 2 * small) if small else 0
        cap = _optimal(3, cap_len, 4, COMP21, budget)
        return gdcbuild.adjoin_points(big, 3, cap, {12: _ternary_arm()}, cap_group=cap_group)

    steps = (Step("hill-climb", (f"{{3}}-GDD {master}",)), Step("inflate x2", ("[2,1]-GDC(4) 2^3",)),
             Step("adjoin 3", (f"({cap_len},4,[2,1]) code", "[2,1]-GDC(4) 1^12 3^1")))
    return Recipe(f"inflate-{master}-adjoin-3", steps, exp, run)


def _ternary(n: int, exp: int) -> Recipe | None:
    if n == 3:
        return Recipe("single-word", (Step("closed-form"),), exp,
                      lambda b: gdcbuild.single_word_code(3, COMP21, 4))
    if n == 15:
        def run(budget):
            return gdcbuild.fill_groups(_ternary_example_gdc(), {3: gdcbuild.single_word_code(3, COMP21, 4)})
        return Recipe("fill-3^5", (Step("catalog", ("[2,1]-GDC(4) 3^5",)), Step("fill groups", ("trivial 3-code",))),
                      exp, run)
    if n % 4 != 3 or n < 39:
        return None
    t, r = divmod(n, 12)
    small, cap = {3: (0, 15), 7: (2, 7), 11: (4, 11)}[r]
    return _ternary_adjoin_three(t, small, cap, exp)


# ---------------------------------------------------------------------------
# quaternary [1,1,1], distance 3

# Inflated {4,5,6}-GDD types: length -> (k, m, truncated size, adjoined points)
_D3_TABLE = {
    44: (5, 5, 2, 0), 47: (5, 5, 3, 1), 51: (5, 5, None, 1), 54: (6, 5, 2, 0),
    59: (6, 5, 4, 1), 158: (5, 16, 15, 0), 167: (5, 17, 15, 1), 173: (5, 18, 14, 1),
}


def _d3_ingredients():
    return {(2, 2, 2): gdcbuild.gdc3_type_2cubed(),
            (2, 2, 2, 2): _catalog_gdc("2^4", 3, COMP111),
            (2, 2, 2, 2, 2): _catalog_gdc("2^5", 3, COMP111),
            (2, 2, 2, 2, 2, 2): _catalog_gdc("2^6", 3, COMP111)}


def d3_master(k: int, m: int, last: int | None, budget: SearchBudget | None = None):
    """{4,5,6}-GDD of type m^(k-1) last^1 (or m^k) by truncating a TD(k, m)."""
    td = _td(k, m, budget or SearchBudget())
    if last is None:
        return td.design
    return algebra.truncate_groups(td, k - 1, [last])


def d3_inflated(k: int, m: int, last: int | None, budget: SearchBudget | None = None) -> GroupDivisibleCode:
    """The master above inflated by two: a [1,1,1]-GDC(3) of type (2m)^(k-1) (2 last)^1."""
    key = ("d3-inflated", k, m, last)
    return _cached(key, lambda: gdcbuild.wfc_gdc(d3_master(k, m, last, budget), 2, _d3_ingredients()))


def _d3_close(g: GroupDivisibleCode, y: int, budget: SearchBudget):
    code = lambda length: _optimal(4, length, 3, COMP111, budget)
    sizes = sorted({len(grp) for grp in g.partition.groups})
    if y == 0:
        return gdcbuild.fill_groups(g, {s: code(s) for s in sizes})
    return gdcbuild.adjoin_points(g, y, code(len(g.partition.groups[0]) + y),
                                  {s: code(s + y) for s in sizes}, cap_group=0)


def d3_table_recipe(n: int) -> Recipe | None:
    """Truncated TD(k, m), inflated by two, then filled or extended by y
    points. Also used for lengths the quasigroup construction covers."""
    if n not in _D3_TABLE:
        return None
    k, m, last, y = _D3_TABLE[n]
    gtype = f"{m}^{k - 1} {last}^1" if last is not None else f"{m}^{k}"

    def run(budget):
        return _d3_close(d3_inflated(k, m, last, budget), y, budget)
    steps = (Step("truncate", (f"TD({k},{m})",)), Step("inflate x2", ("[1,1,1]-GDC(3) 2^3..2^6",)),
             Step(f"adjoin {y}" if y else "fill groups", ("optimal d=3 codes",)))
    return Recipe(f"inflate-{gtype}", steps, n * (n - 1), run)


def run_recipe(r: Recipe, q: int, n: int, d: int, comp, budget: SearchBudget | None = None) -> CertifiedCode:
    """Execute a specific recipe and certify the result."""
    budget = budget or SearchBudget()
    t0 = time.monotonic()
    bound = _bound(q, n, d, _as_comp(comp))
    try:
        c = r.run(budget)
    except Unresolved as e:
        return CertifiedCode(None, None, VerificationReport(()), bound, Status.UNRESOLVED,
                             tuple([str(e.spec)] + e.attempts), r.name, time.monotonic() - t0)
    cert = certify(c, q, n, d, comp)
    return CertifiedCode(cert.code, cert.provenance, cert.report, cert.bound, cert.status, (), r.name,
                         time.monotonic() - t0)


def _quat_d3(n: int, exp: int) -> Recipe | None:
    if n >= 4 and algebra.factor_prime_power(n) and n != 5:
        return Recipe("quasigroup", (Step("field quasigroup", (f"GF({n})",)),), exp,
                      lambda b: gdcbuild.quasigroup_code(n))
    if n in (3, 5, 6, 10, 14):
        return _search_recipe(n, 3, COMP111, exp)
    if n in _D3_TABLE:
        return d3_table_recipe(n)
    if n == 62:
        # the 7^4 3^1 master would need a (6,3) code of size 30; only 28 exist
        def run(budget):
            master = algebra.truncate_block(_td(4, 8, budget), 1)
            g = gdcbuild.wfc_gdc(master, 2, _d3_ingredients())
            return _d3_close(g, 0, budget)
        steps = (Step("truncate block", ("TD(4,8)",)), Step("inflate x2", ("[1,1,1]-GDC(3) 2^3, 2^4",)),
                 Step("fill groups", ("(16,3) codes", "(14,3) code")))
        return Recipe("inflate-8^3 7^1", steps, exp, run)
    if n == 30:
        def run(budget):
            g = gdcbuild.wfc_gdc(_td(3, 5, budget).design, 2, _d3_ingredients())
            return _d3_close(g, 0, budget)
        return Recipe("inflate-TD(3,5)", (Step("inflate x2", ("TD(3,5)",)), Step("fill groups")), exp, run)
    if n == 33:
        def run(budget):
            g = gdcbuild.wfc_gdc(_td(4, 4, budget).design, 2, _d3_ingredients())
            return _d3_close(g, 1, budget)
        return Recipe("inflate-TD(4,4)", (Step("inflate x2", ("TD(4,4)",)), Step("adjoin 1")), exp, run)
    if n == 35:
        def run(budget):
            master = algebra.truncate_block(_td(4, 5, budget), 3)
            g = gdcbuild.wfc_gdc(master, 2, _d3_ingredients())
            return _d3_close(g, 1, budget)
        return Recipe("inflate-4^3 5^1", (Step("truncate block", ("TD(4,5)",)), Step("inflate x2"),
                                          Step("adjoin 1")), exp, run)
    return None


# ---------------------------------------------------------------------------
# quaternary [1,1,1], distance 4

def _c4(n: int, budget: SearchBudget) -> ConstantCompositionCode:
    return _optimal(4, n, 4, COMP111, budget)


def _inflate4(master, budget: SearchBudget) -> GroupDivisibleCode:
    return gdcbuild.wfc_gdc(master, 4, {(4, 4, 4): gdcbuild.latin_gdc(4),
                                        (4, 4, 4, 4): _catalog_gdc("4^4", 4, COMP111)})


def _arm_1_20_11(budget: SearchBudget) -> GroupDivisibleCode:
    """GDC of type 1^20 11^1: a 31-code from 10^3 plus one point, with its
    11-point subcode removed."""
    def make():
        c31 = gdcbuild.adjoin_points(gdcbuild.latin_gdc(10), 1, _c4(11, budget), {10: _c4(11, budget)})
        return gdcbuild.excise_subcode(c31, list(range(0, 10)) + [30])
    return _cached("arm-1^20 11^1", make)


def _arm_1_30_11(budget: SearchBudget) -> GroupDivisibleCode:
    """GDC of type 1^30 11^1: the 10^4 GDC plus one point, three groups filled."""
    def make():
        g = _catalog_gdc("10^4", 4, COMP111)
        return gdcbuild.adjoin_points(g, 1, None, {10: _c4(11, budget)}, cap_group=0)
    return _cached("arm-1^30 11^1", make)


def _gdd_plus_one(master_fn, name: str, ingredients: Iterable[str], exp: int) -> Recipe:
    """Inflate a {3,4}-GDD by four and adjoin one point."""
    def run(budget):
        g = _inflate4(master_fn(budget), budget)
        sizes = sorted({len(grp) for grp in g.partition.groups})
        return gdcbuild.adjoin_points(g, 1, _c4(len(g.partition.groups[0]) + 1, budget),
                                      {s: _c4(s + 1, budget) for s in sizes})
    steps = (Step("master", (name,)), Step("inflate x4", ("[1,1,1]-GDC(4) 4^3", "[1,1,1]-GDC(4) 4^4")),
             Step("adjoin 1", tuple(ingredients)))
    return Recipe(f"inflate-{name}-adjoin-1", steps, exp, run)


def _quat_d4_odd(n: int, exp: int) -> Recipe | None:
    if n == 3:
        return Recipe("single-word", (Step("closed-form"),), exp,
                      lambda b: gdcbuild.single_word_code(3, COMP111, 4))
    if n % 4 == 3 and n >= 11 and algebra.factor_prime_power(n):
        def run(budget):
            alpha = catalog.generator_table().get(n) or gdcbuild.find_generator(n)
            if alpha is None:
                raise Unresolved(IngredientSpec.of("Generator", n=n), ["no generator satisfies the conditions"])
            return gdcbuild.prime_power_code(n, alpha)
        return Recipe("prime-power", (Step("field development", (f"GF({n})",)),), exp, run)
    if n == 55:
        def run(budget):
            g = gdcbuild.wfc_gdc(_gdd("6^3", (3,), budget), 3, {(3, 3, 3): gdcbuild.latin_gdc(3)})
            return gdcbuild.adjoin_points(g, 1, _c4(19, budget), {18: _c4(19, budget)})
        return Recipe("inflate-6^3-adjoin-1", (Step("hill-climb", ("{3}-GDD 6^3",)),
                                              Step("inflate x3", ("latin 3^3",)), Step("adjoin 1", ("19-codes",))),
                      exp, run)
    if n == 77:
        def run(budget):
            g = gdcbuild.wfc_gdc(_gdd("1^7", (3,), budget), 11, {(11, 11, 11): gdcbuild.latin_gdc(11)})
            return gdcbuild.fill_groups(g, {11: _c4(11, budget)})
        return Recipe("inflate-STS(7)-fill", (Step("hill-climb", ("STS(7)",)), Step("inflate x11", ("latin 11^3",)),
                                              Step("fill groups", ("11-codes",))), exp, run)
    if n == 95:
        def run(budget):
            pre = catalog.prestructure("5^3 6^1")
            master = hill_climb_gdd(None, (3, 4), [tuple(b) for b in pre.blocks], budget, partition=pre.partition)
            g = _inflate4(master, budget)
            cap = _group_index(g, 24)
            return gdcbuild.adjoin_points(g, 11, _c4(35, budget), {20: _arm_1_20_11(budget)}, cap_group=cap)
        return Recipe("inflate-5^3 6^1-adjoin-11",
                      (Step("hill-climb", ("{3,4}-GDD 5^3 6^1",)), Step("inflate x4"),
                       Step("adjoin 11", ("35-code", "GDC 1^20 11^1"))), exp, run)
    if n == 101:
        return _gdd_plus_one(lambda b: add_points_to_frame(kirkman_frame(6, 4, b), 1), "6^3 7^1",
                             ("25-codes", "29-code"), exp)
    if n == 113:
        return _gdd_plus_one(lambda b: _gdd("6^3 10^1", (3,), b), "6^3 10^1", ("25-codes", "41-code"), exp)
    if n == 125:
        return _gdd_plus_one(lambda b: algebra.truncate_block(_td(4, 8, b), 1), "8^3 7^1",
                             ("33-codes", "29-code"), exp)
    if n == 119:
        def run(budget):
            master = algebra.truncate_groups(_td(4, 5, budget), 3, [3])
            g = gdcbuild.wfc_gdc(master, 6, {(6, 6, 6): gdcbuild.latin_gdc(6),
                                             (6, 6, 6, 6): _catalog_gdc("6^4", 4, COMP111)})
            cap = _group_index(g, 18)
            return gdcbuild.adjoin_points(g, 11, _c4(29, budget), {30: _arm_1_30_11(budget)}, cap_group=cap)
        return Recipe("weight-6-5^3 3^1-adjoin-11",
                      (Step("truncate", ("TD(4,5)",)), Step("inflate x6", ("latin 6^3", "GDC 6^4")),
                       Step("adjoin 11", ("29-code", "GDC 1^30 11^1"))), exp, run)
    if n % 3 == 0 and (n // 3) % 2 == 1 and n // 3 >= 11 and not _is_open(n // 3):
        m = n // 3
        return Recipe("triple", (Step("triple", (f"{m}-code",)),), exp,
                      lambda b: gdcbuild.triple(_c4(m, b))[0])
    if (n + 2) % 3 == 0 and ((n + 2) // 3) % 2 == 1 and (n + 2) // 3 >= 11 and not _is_open((n + 2) // 3):
        m = (n + 2) // 3
        return Recipe("triple-minus-2", (Step("triple", (f"{m}-code",)),), exp,
                      lambda b: gdcbuild.triple(_c4(m, b))[1])
    return None


def _is_open(n: int) -> bool:
    return optimal_size(4, n, 4, COMP111).kind is BoundKind.OPEN


def _quat_d4_even(n: int, exp: int) -> Recipe | None:
    if n == 12:
        def run(budget):
            return gdcbuild.fill_groups(gdcbuild.latin_gdc(4), {4: _c4(4, budget)})
        return Recipe("fill-latin-4^3", (Step("latin 4^3"), Step("fill groups", ("4-codes",))), exp, run)
    if n in (4, 14, 16):
        return _search_recipe(n, 4, COMP111, exp)
    if not _is_open(n + 1) and n + 1 >= 11:
        return Recipe("shorten", (Step("shorten", (f"{n + 1}-code",)),), exp,
                      lambda b: gdcbuild.shorten(_c4(n + 1, b)))
    return None


def _quat_d5(n: int, exp: int) -> Recipe | None:
    if n >= 7:
        return Recipe("cyclic-0-1-3", (Step("cyclic development", ("<0,1,3>",)),), exp,
                      lambda b: gdcbuild.cyclic_d5_code(n))
    if n <= 4:
        return Recipe("single-word", (Step("closed-form"),), exp,
                      lambda b: gdcbuild.single_word_code(n, COMP111, 5))
    return _search_recipe(n, 5, COMP111, exp)


def recipe_for(q: int, n: int, d: int, comp) -> Recipe | NoRecipe:
    comp = _as_comp(comp)
    try:
        bound = optimal_size(q, n, d, comp)
    except ValueError as e:
        return NoRecipe("OutOfScope", str(e))
    if bound.kind is BoundKind.OPEN:
        return NoRecipe("Open", f"A_{q}({n},{d},{comp}) is not known")
    exp = bound.value
    if trivial_size(n, d, comp) is not None:
        return _trivial_recipe(n, d, comp, exp)
    entry = catalog.lookup("Code", n, d, comp)
    if entry is not None:
        return _catalog_recipe(entry, exp)
    r = None
    if q == 3 and comp == COMP21 and d == 4:
        r = _ternary(n, exp)
    elif q == 4 and comp == COMP111 and d == 3:
        r = _quat_d3(n, exp)
    elif q == 4 and comp == COMP111 and d == 4:
        r = _quat_d4_odd(n, exp) if n % 2 else _quat_d4_even(n, exp)
    elif q == 4 and comp == COMP111 and d == 5:
        r = _quat_d5(n, exp)
    if r is None:
        return NoRecipe("OutOfScope", f"no construction for q={q}, n={n}, d={d}, comp={comp}")
    return r


# ---------------------------------------------------------------------------
# building and sweeping


def build_optimal(q: int, n: int, d: int, comp, budget: SearchBudget | None = None) -> CertifiedCode:
    comp = _as_comp(comp)
    budget = budget or SearchBudget()
    t0 = time.monotonic()
    r = recipe_for(q, n, d, comp)
    bound = _bound(q, n, d, comp)
    empty = VerificationReport(())
    if not r:
        status = Status.OPEN if r.kind == "Open" else Status.UNRESOLVED
        why = r.reason if r.kind == "Open" else f"{r.kind}: {r.reason}"
        return CertifiedCode(None, None, empty, bound, status, (why,),
                             seconds=time.monotonic() - t0)
    cert = run_recipe(r, q, n, d, comp, budget)
    if cert.status is Status.OPTIMAL:
        _CACHE.setdefault(("code", q, n, d, comp, budget.seed), cert.code)
    return cert


@dataclass
class SweepResult:
    q: int
    d: int
    comp: Composition
    rows: list[tuple[int, CertifiedCode]]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for _, c in self.rows:
            out[c.status.value] = out.get(c.status.value, 0) + 1
        return out

    def by_status(self, status: Status) -> list[int]:
        return [n for n, c in self.rows if c.status is status]

    def json_lines(self) -> list[str]:
        return [json.dumps(c.record(self.q, n, self.d, self.comp), sort_keys=True) for n, c in self.rows]


def sweep(q: int, d: int, comp, n_range: Iterable[int], budget: SearchBudget | None = None) -> SweepResult:
    comp = _as_comp(comp)
    rows = [(n, build_optimal(q, n, d, comp, budget)) for n in n_range]
    return SweepResult(q, d, comp, rows)
