import pytest

from gdcodes import catalog
from gdcodes.algebra import rtd_from_td, td_from_field
from gdcodes.core import GddType, GroupPartition, PreconditionError, make_design, resolution_kind
from gdcodes.designs import (IngredientSpec, SearchBudget, Unresolved,
                             add_points_to_frame, complete_rgdd, extract_resolution, hill_climb_gdd,
                             inflate_frame, kirkman_frame, resolve_ingredient, rotational_rgdd3_pairs, wfc_gdd)

from oracles import check_gdd, triples_by_pair_count


def prestructured(gtype, seed=0):
    pre = catalog.lookup("Prestructure", gtype).payload
    return hill_climb_gdd(None, (3, 4), pre.blocks, SearchBudget(seed=seed, wall_clock=30),
                          partition=pre.partition)


def test_hill_climb_with_prestructure_five_cubed_six():
    d = prestructured("5^3 6^1")
    assert check_gdd(d)
    assert d.block_census() == {3: 43, 4: 6}


@pytest.mark.parametrize("gtype,triples", [("6^5", 120), ("2^3", 4), ("3^3", 9)])
def test_hill_climb_plain(gtype, triples):
    d = hill_climb_gdd(gtype)
    assert check_gdd(d)
    assert len(d.blocks) == triples == triples_by_pair_count(GddType.parse(gtype).sizes(), 0)


def test_hill_climb_is_seed_deterministic():
    a = hill_climb_gdd("6^5", budget=SearchBudget(seed=3))
    b = hill_climb_gdd("6^5", budget=SearchBudget(seed=3))
    assert a.blocks == b.blocks


def test_hill_climb_rejects_odd_pair_counts():
    # type 2^5 has 40 cross pairs, not a multiple of 3
    with pytest.raises(PreconditionError):
        hill_climb_gdd("2^5", budget=SearchBudget(max_iterations=2000, max_restarts=1))


def test_hill_climb_needs_triples_in_K():
    with pytest.raises(PreconditionError):
        hill_climb_gdd("4^4", (4,))


def test_parity_precheck_on_a_bad_quadruple():
    pre = catalog.lookup("Prestructure", "9^3 15^1 2^1").payload
    # swapping 38 for 39 leaves both points with an odd number of free pairs
    bad = [(5, 20, 29, 39) if b == (5, 20, 29, 38) else b for b in pre.blocks]
    assert bad != list(pre.blocks)
    with pytest.raises(PreconditionError, match="odd"):
        hill_climb_gdd(None, (3, 4), bad, partition=pre.partition)


# --- resolutions -------------------------------------------------------------

def test_resolvable_td_from_td():
    r = rtd_from_td(td_from_field(4, 3))
    assert len(r.resolution) == 3 and set(resolution_kind(r)) == {"parallel"}
    stripped = r.replace(resolution=None)
    again = extract_resolution(stripped, "parallel")
    assert again is not None and len(again.resolution) == 3


def test_no_resolution_when_block_count_does_not_divide():
    # STS(7): 7 blocks, but a parallel class would need 7/3 blocks
    fano = [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2)]
    d = make_design(GroupPartition.singletons(7), fano, {3})
    assert extract_resolution(d, "parallel") is None


def test_kirkman_frame_six_fourth():
    f = catalog.lookup("Design", "6^4").build()
    assert check_gdd(f)
    kinds = resolution_kind(f)
    assert len(kinds) == 12 and "parallel" not in kinds
    # three holey classes miss each group
    for g in f.partition.groups:
        missing = [c for c in f.resolution
                   if not any(x in g for bi in c for x in f.blocks[bi])]
        assert len(missing) == 3


def test_inflate_frame_by_three():
    f = inflate_frame(kirkman_frame(2, 4), 3)
    assert f.type == GddType.parse("6^4")
    assert len(f.resolution) == 12 and "parallel" not in resolution_kind(f)
    assert check_gdd(f)


@pytest.mark.parametrize("y,gtype", [(0, "6^4"), (1, "6^3 7^1"), (3, "6^3 9^1")])
def test_add_points_to_frame(y, gtype):
    f = catalog.lookup("Design", "6^4").build()
    d = add_points_to_frame(f, y)
    assert d.type == GddType.parse(gtype)
    assert check_gdd(d)


def test_add_too_many_points_to_frame():
    f = catalog.lookup("Design", "6^4").build()
    with pytest.raises(PreconditionError):
        add_points_to_frame(f, 4)


@pytest.mark.parametrize("u,gtype", [(4, "9^3 4^1"), (0, "9^3")])
def test_complete_rgdd_append(u, gtype):
    r = catalog.lookup("Design", "9^3").build()
    d = complete_rgdd(r, u)
    assert d.type == GddType.parse(gtype)
    assert check_gdd(d)


def test_complete_rgdd_group_class():
    r = resolve_ingredient(IngredientSpec.of("RGDD3", g=2, t=12))
    d = complete_rgdd(r, 0, "group-class")
    assert d.type == GddType.parse("3^8 11^1")
    assert check_gdd(d)


def test_rotational_rgdd():
    r = rotational_rgdd3_pairs(11)
    assert r.type == GddType.parse("2^12") and len(r.resolution) == 11
    assert check_gdd(r)
    with pytest.raises(PreconditionError):
        rotational_rgdd3_pairs(7)


# --- inflation ---------------------------------------------------------------

def test_wfc_gdd_uniform_two():
    master = hill_climb_gdd("6^5")
    d = wfc_gdd(master, 2, lambda key: hill_climb_gdd("2^3"))
    assert d.type == GddType.parse("12^5")
    assert len(d.blocks) == 4 * len(master.blocks)
    assert check_gdd(d)


def test_wfc_gdd_weight_one_is_a_copy():
    master = hill_climb_gdd("3^3")
    one = make_design(GroupPartition.singletons(3), [(0, 1, 2)], {3})
    d = wfc_gdd(master, 1, {(1, 1, 1): one})
    assert d.partition == master.partition
    assert sorted(d.blocks) == sorted(master.blocks)


def test_wfc_gdd_missing_ingredient():
    master = hill_climb_gdd("3^3")
    with pytest.raises(Unresolved):
        wfc_gdd(master, 2, {})


# --- resolver ----------------------------------------------------------------

def test_resolver_field_td():
    d = resolve_ingredient(IngredientSpec.of("TD", k=5, m=16))
    assert d.type == GddType.parse("16^5")


def test_resolver_without_library(monkeypatch):
    monkeypatch.delenv("CCC_LIBRARY_PATH", raising=False)
    with pytest.raises(Unresolved) as err:
        resolve_ingredient(IngredientSpec.of("TD", k=5, m=18))
    assert "TD" in str(err.value)


def test_resolver_nonexistent_design():
    with pytest.raises(Unresolved) as err:
        resolve_ingredient(IngredientSpec.of("GDD", K=(4,), type="2^4"))
    assert "does not exist" in str(err.value)


def test_resolver_search_hit():
    d = resolve_ingredient(IngredientSpec.of("GDD", K=(3,), type="6^5"))
    assert len(d.blocks) == 120


def test_resolver_uses_library(tmp_path, monkeypatch):
    from gdcodes import designs, formats
    written = catalog.seed_design_library(tmp_path)
    assert written >= 1
    monkeypatch.setenv("CCC_LIBRARY_PATH", str(tmp_path))
    monkeypatch.setattr(designs, "_LIBRARY_CACHE", {})
    lib = list(formats.library_designs())
    assert any(str(d.type) == "17^5" for d in lib)
