import pytest
from hypothesis import given, settings, strategies as st

from gdcodes import catalog
from gdcodes.algebra import td_from_field, truncate_groups
from gdcodes.bounds import COMP21, COMP111, u21, u111_d4
from gdcodes.core import Codeword, GddType, PreconditionError, verify_gdc
from gdcodes.designs import SearchBudget, Unresolved, hill_climb_gdd
from gdcodes.formats import BaseCodewordSet
from gdcodes.gdcbuild import (adjoin_points, cyclic_d5_code, develop, excise_subcode, fill_groups,
                              find_generator, gdc3_type_2cubed, generator_conditions, latin_gdc,
                              local_search_code, prime_power_code, quasigroup_code,
                              search_base_codewords, shorten, single_word_code, triple, wfc_gdc)
from gdcodes.algebra import make_field

from oracles import check_code, check_gdc


def c4(n):
    """An optimal (n, 4, [1,1,1]) code from the catalog or the field construction."""
    c = catalog.code(n, 4, COMP111)
    return c if c is not None else prime_power_code(n, find_generator(n))


# --- development -------------------------------------------------------------

def test_develop_example_base():
    b = BaseCodewordSet(6, COMP21, 4, (Codeword.from_vector("210001"),), group_stride=3)
    g = develop(b)
    assert len(g) == 6 and g.type == GddType.parse("2^3")
    assert check_gdc(g, 4) == 6


@pytest.mark.parametrize("n,size", [(35, 595), (21, 210), (37, 666), (53, 1378)])
def test_catalog_bases_develop(n, size):
    e = catalog.lookup("BaseCodewordSet", n, 4, COMP111)
    assert check_code(e.build(), 4) == size


def test_base_search_on_an_open_length_finds_nothing():
    assert search_base_codewords(13, 1, seed=0, iters=2000, restarts=2) is None


# --- algebraic ---------------------------------------------------------------

@pytest.mark.parametrize("g", [3, 4, 10, 11])
def test_latin_gdc(g):
    gdc = latin_gdc(g)
    assert gdc.type == GddType.parse(f"{g}^3")
    assert check_gdc(gdc, 4) == 3 * g * g


def test_latin_gdc_too_small():
    with pytest.raises(PreconditionError):
        latin_gdc(2)


def test_distance_three_gdc_of_type_two_cubed():
    g = gdc3_type_2cubed()
    assert g.type == GddType.parse("2^3")
    assert check_gdc(g, 3) == 24


@pytest.mark.parametrize("n,alpha,size", [(47, 5, 1081), (43, 26, 903), (11, 2, 55)])
def test_prime_power_code(n, alpha, size):
    c = prime_power_code(n, alpha)
    assert check_code(c, 4) == size == u111_d4(n)


def test_prime_power_code_rejects_bad_alpha():
    f = make_field(47)
    bad = next(a for a in range(2, 47) if generator_conditions(f, a))
    with pytest.raises(PreconditionError):
        prime_power_code(47, bad)


def test_find_generator():
    assert find_generator(59) == 2
    a = find_generator(47)
    assert not generator_conditions(make_field(47), a)
    with pytest.raises(PreconditionError):
        find_generator(7)


@pytest.mark.parametrize("n", [4, 7, 8, 9, 11])
def test_quasigroup_code(n):
    assert check_code(quasigroup_code(n), 3) == n * (n - 1)


def test_quasigroup_code_excluded_orders():
    with pytest.raises(PreconditionError):
        quasigroup_code(5)


@pytest.mark.parametrize("n", [7, 8, 12, 20])
def test_cyclic_distance_five(n):
    assert check_code(cyclic_d5_code(n), 5) == n


def test_single_word_code():
    assert len(single_word_code(3, COMP21, 4)) == 1


def test_local_search_reaches_small_optimum():
    c = local_search_code(6, 4, COMP111, 11, seed=0)
    assert check_code(c, 4) == 11


# --- fundamental construction ------------------------------------------------

def test_wfc_uniform_two_on_six_fifth():
    master = hill_climb_gdd("6^5")
    ing = catalog.gdc("2^3", 4, COMP21)
    g = wfc_gdc(master, 2, lambda key: ing)
    assert g.type == GddType.parse("12^5")
    assert check_gdc(g, 4) == 720 == 6 * len(master.blocks)


def test_wfc_weight_six_on_truncated_td():
    master = truncate_groups(td_from_field(4, 5), 3, [3])
    g = wfc_gdc(master, 6, {(6, 6, 6): latin_gdc(6), (6, 6, 6, 6): catalog.gdc("6^4", 4, COMP111)})
    assert g.type == GddType.parse("30^3 18^1")
    assert len(g) == 10 * 108 + 15 * 216 == 4320
    assert check_gdc(g, 4) == 4320


def test_wfc_missing_ingredient():
    with pytest.raises(Unresolved):
        wfc_gdc(hill_climb_gdd("3^3"), 2, {})


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["3^3", "6^4", "6^5", "3^5", "9^3"]), st.integers(0, 5))
def test_wfc_size_is_sum_of_ingredients(gtype, seed):
    master = hill_climb_gdd(gtype, budget=SearchBudget(seed=seed))
    ing = {(2, 2, 2): catalog.gdc("2^3", 4, COMP21)}
    g = wfc_gdc(master, 2, ing)
    assert len(g) == sum(len(ing[(2, 2, 2)]) for _ in master.blocks)
    assert verify_gdc(g).passed


# --- filling and adjoining ---------------------------------------------------

def test_fill_all_groups_of_the_fifteen_point_gdc():
    g = catalog.gdc("3^5", 4, COMP21)
    one = single_word_code(3, COMP21, 4)
    c = fill_groups(g, {3: one})
    assert check_code(c, 4) == 50 == u21(15)


def test_fill_four_groups():
    g = catalog.gdc("3^5", 4, COMP21)
    r = fill_groups(g, {3: single_word_code(3, COMP21, 4)}, which=[0, 1, 2, 3])
    assert r.type == GddType.parse("1^12 3^1")
    assert check_gdc(r, 4) == 49


def test_fill_nothing():
    g = catalog.gdc("3^5", 4, COMP21)
    r = fill_groups(g, {}, which=[])
    assert r.code.words == g.code.words and r.type == g.type


def test_adjoin_one_point_to_latin_ten():
    c11 = c4(11)
    c = adjoin_points(latin_gdc(10), 1, c11, {10: c11})
    assert check_code(c, 4) == 465 == u111_d4(31)


def test_adjoin_zero_points_fills_one_group():
    g = latin_gdc(5)
    c5 = catalog.code(5, 4, COMP111)
    r = adjoin_points(g, 0, c5, {5: c5})
    assert len(r) == len(fill_groups(g, {5: c5}))


def test_adjoin_cap_length_mismatch():
    c11 = c4(11)
    with pytest.raises(PreconditionError):
        adjoin_points(latin_gdc(9), 1, c11, {9: c11})


# --- tripling, shortening, excision ------------------------------------------

def test_triple_eleven():
    big, small = triple(c4(11))
    assert check_code(big, 4) == 528 == u111_d4(33)
    assert check_code(small, 4) == 465 == u111_d4(31)


def test_triple_of_a_small_exceptional_code():
    big, _ = triple(catalog.code(5, 4, COMP111))
    assert big.n == 15 and len(big) == 3 * 25 + 3 * 6 == 93 < u111_d4(15)


def test_triple_needs_odd_length():
    with pytest.raises(PreconditionError):
        triple(catalog.code(6, 4, COMP111))


@pytest.mark.parametrize("n", [11, 35])
def test_shorten(n):
    s = shorten(catalog.code(n, 4, COMP111) or c4(n))
    assert s.n == n - 1
    assert check_code(s, 4) >= u111_d4(n - 1)


def test_shorten_needs_full_size():
    with pytest.raises(PreconditionError):
        shorten(catalog.code(7, 4, COMP111))


def test_excise_from_the_thirty_one_code():
    c11 = c4(11)
    c31 = adjoin_points(latin_gdc(10), 1, c11, {10: c11})
    g = excise_subcode(c31, list(range(10)) + [30])
    assert g.type == GddType.parse("1^20 11^1")
    assert check_gdc(g, 4) == 410


def test_excise_nothing():
    c = c4(11)
    g = excise_subcode(c, [])
    assert g.type == GddType.parse("1^11") and len(g) == 55
