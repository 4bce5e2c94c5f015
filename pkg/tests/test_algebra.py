import pytest
from hypothesis import given, settings, strategies as st

from gdcodes.algebra import (LatinSquare, factor_prime_power, make_field, quadratic_residues,
                             remove_block_and_points, rtd_from_td, td_from_field, td_product,
                             truncate_block, truncate_groups)
from gdcodes.core import PreconditionError, resolution_kind, verify_design

from oracles import check_gdd

FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 47]


def test_factor_prime_power():
    assert factor_prime_power(16) == (2, 4)
    assert factor_prime_power(47) == (47, 1)
    assert factor_prime_power(6) is None
    assert factor_prime_power(1) is None


def test_prime_field_generator_order():
    f = make_field(47)
    assert (f.p, f.k) == (47, 1)
    assert f.order(5) == 46
    assert f.order(f.generator) == 46


def test_extension_field_has_irreducible_quartic():
    f = make_field(16)
    assert (f.p, f.k) == (2, 4)
    assert len(f.modulus) == 5
    # no roots in GF(2), and the multiplicative group is cyclic of order 15
    assert all(sum(c * x ** i for i, c in enumerate(f.modulus)) % 2 for x in (0, 1))
    assert f.order(f.generator) == 15


def test_non_prime_power_rejected():
    with pytest.raises(ValueError):
        make_field(6)


def test_quadratic_residues():
    assert quadratic_residues(make_field(11)) == {1, 3, 4, 5, 9}
    assert quadratic_residues(make_field(7)) == {1, 2, 4}
    for q in (3, 5, 9, 13, 25):
        qr = quadratic_residues(make_field(q))
        assert 1 in qr and len(qr) == (q - 1) // 2


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELD_ORDERS), st.data())
def test_field_axioms(q, data):
    f = make_field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert f.add(a, b) == f.add(b, a) and f.mul(a, b) == f.mul(b, a)
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    if a:
        assert f.mul(a, f.inv(a)) == 1


# --- transversal designs -----------------------------------------------------

@pytest.mark.parametrize("k,q,blocks", [(4, 8, 64), (5, 5, 25), (3, 2, 4), (5, 16, 256), (6, 5, 25)])
def test_td_from_field(k, q, blocks):
    td = td_from_field(k, q)
    assert len(td.blocks) == blocks
    assert verify_design(td.design).passed
    assert check_gdd(td.design)


def test_td_too_many_groups():
    with pytest.raises(ValueError):
        td_from_field(5, 3)


def test_latin_square_td():
    sq = LatinSquare.cyclic(5)
    assert check_gdd(sq.to_td().design)
    with pytest.raises(ValueError):
        LatinSquare(2, ((0, 1), (0, 1)))


@pytest.mark.parametrize("a,b,k,m", [((3, 2), (3, 3), 3, 6), ((4, 3), (4, 5), 4, 15)])
def test_td_product(a, b, k, m):
    p = td_product(td_from_field(*a), td_from_field(*b))
    assert (p.k, p.m) == (k, m)
    assert check_gdd(p.design)


def test_td_product_with_trivial_factor():
    from gdcodes.algebra import _td
    t = td_from_field(4, 5)
    one = _td(4, 1, [(0, 1, 2, 3)], None)
    p = td_product(t, one)
    assert p.m == 5 and sorted(p.blocks) == sorted(t.blocks)


def test_rtd_from_td():
    r = rtd_from_td(td_from_field(4, 3))
    assert str(r.type) == "3^3"
    assert len(r.resolution) == 3
    assert "parallel" in resolution_kind(r)


# --- truncations -------------------------------------------------------------

@pytest.mark.parametrize("size,quads,quints", [(2, 15, 10), (3, 10, 15)])
def test_truncate_groups_td55(size, quads, quints):
    g = truncate_groups(td_from_field(5, 5), 4, [size])
    assert g.type == g.type.parse(f"5^4 {size}^1")
    # blocks hitting a kept point of the last group keep five points
    assert g.block_census() == {4: quads, 5: quints}
    assert check_gdd(g)


def test_truncate_block_three_points():
    g = truncate_block(td_from_field(4, 3), 3)
    assert g.type == g.type.parse("2^3 3^1")
    assert check_gdd(g)


def test_truncate_block_zero_is_identity():
    td = td_from_field(4, 5)
    g = truncate_block(td, 0)
    assert sorted(g.blocks) == sorted(td.blocks)


def test_truncate_block_census():
    # two deleted points lie on 5 + 5 - 1 blocks; their common block keeps 2 points
    g = truncate_block(td_from_field(4, 5), 2)
    assert g.type == g.type.parse("4^2 5^2")
    assert g.block_census() == {2: 1, 3: 8, 4: 25 - 9}
    assert check_gdd(g)


def test_remove_block_and_points():
    td = td_from_field(4, 8)
    blk = td.blocks[0]
    g = remove_block_and_points(td, blk, blk[:3])
    assert g.type == g.type.parse("7^3 8^1")
    # every other block through a dropped point becomes a triple
    assert g.block_census() == {3: 3 * 7, 4: 64 - 1 - 21}
    assert check_gdd(g)


def test_remove_block_needs_points_of_the_block():
    td = td_from_field(4, 8)
    b0, b1 = td.blocks[0], td.blocks[1]
    pts = sorted(set(b0) ^ set(b1))[:3]
    with pytest.raises(PreconditionError):
        remove_block_and_points(td, b0, pts)
