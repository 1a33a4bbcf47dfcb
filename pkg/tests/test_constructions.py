import itertools

import pytest

from magmalab.constructions import bin_product, decode_pair, direct_product, encode_pair, klein_four
from magmalab.core import (BoundExceeded, MagmaError, constant, cyclic_group, from_table, left_zero, leftoid,
                           midpoint)
from magmalab.morphisms import is_isomorphic
from magmalab.properties import as_group, is_associative, is_right_entire, is_right_feeble


def test_pair_encoding_bijective():
    for ny in range(1, 6):
        for x in range(4):
            for y in range(ny):
                assert decode_pair(encode_pair(x, y, ny), ny) == (x, y)


def test_klein_four():
    k = direct_product(cyclic_group(2), cyclic_group(2))
    assert k == klein_four()
    assert is_associative(k)
    e, inv = as_group(k)
    assert e == 0 and inv == (0, 1, 2, 3)
    assert is_isomorphic(k, cyclic_group(4)) is None


def test_product_with_trivial():
    one = from_table(1, [[0]])
    for m in (cyclic_group(3), midpoint(5), left_zero(2)):
        assert direct_product(m, one) == m
        assert is_isomorphic(direct_product(one, m), m) is not None


def test_product_entries():
    a, b = cyclic_group(3), left_zero(2)
    p = direct_product(a, b)
    assert p.order == 6
    for x, y, u, v in itertools.product(range(3), range(2), range(3), range(2)):
        assert p(encode_pair(x, y, 2), encode_pair(u, v, 2)) == encode_pair(a(x, u), b(y, v), 2)


def test_product_of_midpoint_and_c2_is_right_feeble():
    p = direct_product(midpoint(3), cyclic_group(2))
    assert p.order == 6
    assert is_right_feeble(p)


def test_product_order_guard():
    with pytest.raises(BoundExceeded):
        direct_product(cyclic_group(9), cyclic_group(8))
    assert direct_product(cyclic_group(8), cyclic_group(8)).order == 64


def test_left_zero_is_bin_identity(order2):
    z = left_zero(2)
    for m in order2:
        assert bin_product(z, m) == m
        assert bin_product(m, z) == m


def test_leftoid_composition_order3():
    maps = list(itertools.product(range(3), repeat=3))
    assert len(maps) == 27
    for f in maps:
        for g in maps:
            gf = tuple(g[f[x]] for x in range(3))
            assert bin_product(leftoid(3, f), leftoid(3, g)) == leftoid(3, gf)


def test_bin_product_of_constants():
    # x [] y = (x*y) . (y*x) = 0 . 0 = 1
    assert bin_product(constant(2, 0), constant(2, 1)) == constant(2, 1)


def test_bin_product_order_mismatch():
    with pytest.raises(MagmaError):
        bin_product(cyclic_group(2), cyclic_group(3))


def test_bin_product_associative(order2):
    for a in order2:
        for b in order2:
            ab = bin_product(a, b)
            for c in order2:
                assert bin_product(ab, c) == bin_product(a, bin_product(b, c))


def _census(order_list, pred):
    return [m for m in order_list if pred(m)]


def test_products_preserve_right_entire_and_feeble(order2):
    entire = _census(order2, lambda m: is_right_entire(m).holds)
    feeble = _census(order2, lambda m: is_right_feeble(m).holds)
    assert len(entire) == 4 and len(feeble) == 4
    for a in entire:
        for b in entire:
            assert is_right_entire(direct_product(a, b))
    for a in feeble:
        for b in feeble:
            assert is_right_feeble(direct_product(a, b))
