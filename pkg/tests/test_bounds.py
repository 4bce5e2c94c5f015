from itertools import combinations

import pytest

from gdcodes.bounds import (COMP21, COMP111, BoundKind, Verdict, all_words, binary_weight3,
                            brute_force_optimum, design_exists, optimal_size, trivial_size,
                            upper_bound)
from gdcodes.core import hamming_distance

from oracles import check_code


def test_trivial_sizes():
    assert trivial_size(4, 2, COMP21) == 12 == len(all_words(4, COMP21))
    assert trivial_size(9, 6, COMP111) == 3
    assert trivial_size(9, 7, COMP111) == 1
    assert trivial_size(9, 4, COMP111) is None


def test_binary_weight_three():
    assert binary_weight3(7, 4) == 7
    assert binary_weight3(5, 4) == 2
    assert binary_weight3(6, 6) == 2


@pytest.mark.parametrize("n,d,comp,value", [(35, 4, COMP21, 291), (19, 4, COMP111, 171),
                                            (44, 3, COMP111, 1892), (39, 4, COMP21, 364)])
def test_upper_bound_values(n, d, comp, value):
    assert upper_bound(n, d, comp).value == value


def test_ternary_bound_closed_forms():
    # the lengths n = 12t + 3, 12t + 7, 12t + 11 have closed-form sizes
    for t in range(1, 9):
        assert upper_bound(12 * t + 3, 4, COMP21).value == 36 * t * t + 13 * t + 1
        assert upper_bound(12 * t + 7, 4, COMP21).value == 36 * t * t + 37 * t + 9
        assert upper_bound(12 * t + 11, 4, COMP21).value == 36 * t * t + 61 * t + 25


def test_optimal_size_examples():
    assert optimal_size(4, 6, 4, COMP111).kind is BoundKind.EXACT
    assert optimal_size(4, 6, 4, COMP111).value == 11
    assert optimal_size(4, 13, 4, COMP111).kind is BoundKind.OPEN
    assert optimal_size(4, 7, 5, COMP111).value == 7
    assert optimal_size(4, 6, 3, COMP111).value == 28
    assert optimal_size(4, 41, 4, COMP111).value == 820
    for n in (9, 13, 15, 17):
        assert optimal_size(4, n, 4, COMP111).kind is BoundKind.OPEN


def test_optimal_size_rejects_bad_input():
    with pytest.raises(ValueError):
        optimal_size(4, 10, 4, COMP21)
    with pytest.raises(ValueError):
        optimal_size(4, 2, 4, COMP111)


@pytest.mark.parametrize("kind,params,verdict", [
    ("GDD3_gtu", dict(g=6, t=5, u=0), Verdict.EXISTS),
    ("GDD4_gt", dict(g=2, t=4), Verdict.NOT_EXISTS),
    ("GDD4_gt", dict(g=6, t=4), Verdict.NOT_EXISTS),
    ("TDk", dict(k=5, m=10), Verdict.NOT_EXISTS),
    ("TDk", dict(k=5, m=16), Verdict.EXISTS),
    ("TDk", dict(k=4, m=6), Verdict.NOT_EXISTS),
    ("RGDD3", dict(g=2, t=6), Verdict.NOT_EXISTS),
    ("RGDD3", dict(g=2, t=12), Verdict.EXISTS),
    ("KirkmanFrame", dict(g=6, t=4), Verdict.EXISTS),
])
def test_design_existence(kind, params, verdict):
    assert design_exists(kind, **params).verdict is verdict


def test_design_existence_unknown_kind():
    with pytest.raises(ValueError):
        design_exists("Nope")


def _naive_max(n, d, comp):
    """Exhaustive maximum over all subsets, feasible only for tiny n."""
    words = all_words(n, comp)
    best = 1
    for r in range(2, len(words) + 1):
        if any(all(hamming_distance(a, b) >= d for a, b in combinations(sub, 2))
               for sub in combinations(words, r)):
            best = r
        else:
            break
    return best


@pytest.mark.parametrize("n,d,comp,value", [(3, 4, COMP21, 1), (4, 4, COMP111, 4), (4, 3, COMP21, 4),
                                            (5, 4, COMP111, 6), (6, 4, COMP111, 11)])
def test_exact_oracle(n, d, comp, value):
    r = brute_force_optimum(n, d, comp, "Exact")
    assert r.exact and r.size == value
    if r.size > 1:
        assert check_code(r.code, d) == value
    if comp.q == 4:
        assert optimal_size(4, n, d, comp).value == value


def test_exact_oracle_matches_naive_enumeration():
    for n, d, comp in [(4, 3, COMP21), (3, 2, COMP21), (4, 4, COMP21)]:
        assert brute_force_optimum(n, d, comp).size == _naive_max(n, d, comp)


def test_exact_oracle_refuses_large_lengths():
    with pytest.raises(ValueError):
        brute_force_optimum(7, 4, COMP111, "Exact")
