import pytest
from hypothesis import given, settings

from magmalab.constructions import bin_product, klein_four
from magmalab.core import (BoundExceeded, affine, constant, cyclic_group, from_table, left_zero, leftoid,
                           midpoint, rightoid, saturating_add, symmetric_group)
from magmalab.properties import (PREDICATES, as_group, as_leftoid, as_rightoid, check, condition_i,
                                 condition_ii, has_left_identity, is_associative, is_center_member,
                                 is_right_asymmetric, is_right_entire, is_right_feeble, pair_swap_condition,
                                 rho, right_id_forcing, zero_fixed_element)

from strategies import magma_and_perm

TRIVIAL = from_table(1, [[0]])


def test_condition_i_examples():
    assert condition_i(cyclic_group(3))
    v = condition_i(saturating_add(2))
    assert not v.holds
    # lexicographically first: column 1 is {1, 2}, so 0 is unreachable from x = 1
    assert v.witness == (1, 0)
    # (2, 0) is also a violation: column 2 is constant 2
    assert set(saturating_add(2).columns[2]) == {2}
    assert condition_i(constant(2, 0)).witness == (0, 1)


def test_condition_ii_examples():
    for g in (cyclic_group(4), left_zero(3), klein_four()):
        assert condition_ii(g)
    m = midpoint(5)
    assert condition_ii(m)
    triples = [(x, y, z) for x in range(5) for y in range(5) for z in range(5)]
    assert len(triples) == 125
    assert all(any(m(x, m(y, z)) == m(w, z) for w in range(5)) for x, y, z in triples)
    for f in [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]:
        assert condition_ii(leftoid(3, f))


def test_condition_ii_failure_witness():
    # column 1 is {0}; 1*(0*1) = 1*0 = 1 is not in it (found by the naive oracle scan)
    m = from_table(2, [[0, 0], [1, 0]])
    v = condition_ii(m)
    assert not v.holds and v.witness == (1, 0, 1)
    x, y, z = v.witness
    assert m(x, m(y, z)) not in {m(w, z) for w in m.elements}


def test_right_feeble_examples():
    assert is_right_feeble(TRIVIAL)
    assert is_right_feeble(midpoint(5))
    v = is_right_feeble(saturating_add(2))
    assert not v.holds and v.note == "condition (i) fails"


def test_rho_and_right_entire():
    for n in range(1, 6):
        assert rho(cyclic_group(n)) == frozenset(range(n))
        assert is_right_entire(cyclic_group(n))
    assert rho(constant(2, 0)) == frozenset()
    assert rho(rightoid(2, [0, 1])) == frozenset()
    assert not is_right_entire(rightoid(2, [0, 1]))


def test_right_asymmetric():
    assert is_right_asymmetric(saturating_add(3))
    v = is_right_asymmetric(cyclic_group(2))
    assert not v.holds and v.witness == (0, 1)
    assert is_right_asymmetric(TRIVIAL)


def test_as_leftoid_rightoid():
    assert as_leftoid(left_zero(3)) == (0, 1, 2)
    assert as_leftoid(constant(2, 1)) == (1, 1)
    assert as_leftoid(cyclic_group(2)) is None
    assert as_rightoid(rightoid(3, [0, 1, 2])) == (0, 1, 2)
    assert as_rightoid(constant(2, 1)) == (1, 1)
    assert as_rightoid(cyclic_group(2)) is None


def test_associative():
    for n in range(1, 6):
        assert is_associative(cyclic_group(n))
        assert is_associative(left_zero(n))
    v = is_associative(midpoint(5))
    assert not v.holds
    m = midpoint(5)
    x, y, z = v.witness
    assert m(m(x, y), z) != m(x, m(y, z))
    # the mod-5 echo of 1*(3*5) vs (1*3)*5 with 5 = 0
    assert m(1, m(3, 0)) != m(m(1, 3), 0)


def test_as_group():
    e, inv = as_group(cyclic_group(4))
    assert e == 0 and inv == (0, 3, 2, 1)
    e, inv = as_group(affine(2, 1, 1, 1))
    assert e == 1 and inv == (0, 1)
    assert as_group(midpoint(5)) is None
    assert as_group(symmetric_group(3)) is not None
    assert as_group(left_zero(2)) is None


def test_left_identity_and_zero():
    assert has_left_identity(cyclic_group(3)) == 0
    assert has_left_identity(rightoid(2, [0, 1])) == 0
    assert has_left_identity(left_zero(2)) is None
    assert zero_fixed_element(constant(2, 0)) == 0
    assert zero_fixed_element(left_zero(3)) == 0
    assert zero_fixed_element(cyclic_group(2)) is None


def test_right_id_forcing():
    assert right_id_forcing(cyclic_group(3), 0)
    v = right_id_forcing(left_zero(2), 0)
    assert not v.holds and v.witness == (0, 1)
    assert right_id_forcing(TRIVIAL, 0)


def test_pair_swap():
    for n in range(1, 5):
        assert pair_swap_condition(left_zero(n))
    assert pair_swap_condition(constant(2, 0)).witness == (0, 1)
    assert pair_swap_condition(cyclic_group(2)).witness == (0, 1)


def test_center_member():
    assert is_center_member(left_zero(2))
    v = is_center_member(constant(2, 0))
    assert not v.holds
    q = from_table(2, [list(v.witness[:2]), list(v.witness[2:])])
    assert bin_product(constant(2, 0), q) != bin_product(q, constant(2, 0))
    with pytest.raises(BoundExceeded):
        is_center_member(cyclic_group(4))


def test_condition_i_iff_right_entire(order2, order3):
    for m in order2 + order3:
        assert condition_i(m).holds == is_right_entire(m).holds


def test_right_feeble_implies_right_entire(order2, order3):
    for m in order2 + order3:
        if is_right_feeble(m):
            assert is_right_entire(m)


def test_leftoid_and_rightoid_iff_constant(order2, order3):
    for m in order2 + order3:
        both = as_leftoid(m) is not None and as_rightoid(m) is not None
        assert both == check(m, "constant").holds


def test_groups_are_right_feeble():
    for n in range(1, 9):
        assert as_group(cyclic_group(n)) is not None
        assert is_right_feeble(cyclic_group(n))
    assert is_right_feeble(symmetric_group(3))


def test_center_implies_pair_swap(order2):
    for m in order2:
        if is_center_member(m):
            assert pair_swap_condition(m)


def test_center_implies_pair_swap_order3():
    from magmalab.census import enumerate_magmas
    centers = enumerate_magmas(3, "center", collect=True).magmas()
    assert centers
    for m in centers:
        assert is_center_member(m) and pair_swap_condition(m)


INVARIANT = [name for name in PREDICATES if name != "center"]


@settings(max_examples=150, deadline=None)
@given(magma_and_perm(3, 4))
def test_predicates_isomorphism_invariant(pair):
    m, perm = pair
    conj = m.relabel(perm)
    for name in INVARIANT:
        assert check(m, name).holds == check(conj, name).holds, name


@settings(max_examples=100, deadline=None)
@given(magma_and_perm(2, 3))
def test_center_isomorphism_invariant(pair):
    m, perm = pair
    assert is_center_member(m).holds == is_center_member(m.relabel(perm)).holds


@settings(max_examples=100, deadline=None)
@given(magma_and_perm(1, 4))
def test_witnesses_are_genuine(pair):
    m, _ = pair
    v = condition_i(m)
    if not v.holds:
        x, y = v.witness
        assert all(m(a, x) != y for a in m.elements)
    v = condition_ii(m)
    if not v.holds:
        x, y, z = v.witness
        assert all(m(x, m(y, z)) != m(w, z) for w in m.elements)
    v = is_right_asymmetric(m)
    if not v.holds:
        x, y = v.witness
        assert x != y
        assert any(m(a, x) == y for a in m.elements) and any(m(b, y) == x for b in m.elements)


def test_verdict_json():
    v = condition_i(constant(2, 0))
    assert v.to_json() == {"property": "condition-i", "holds": False, "witness": [0, 1]}
    assert is_right_feeble(TRIVIAL).dumps() == '{"property": "right-feeble", "holds": true, "witness": null}'
