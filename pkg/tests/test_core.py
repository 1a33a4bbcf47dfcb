import json

import pytest
from hypothesis import given

from magmalab.core import (Magma, MagmaError, ParseError, affine, constant, cyclic_group, from_table,
                           left_zero, leftoid, midpoint, multiplicative, parse, parse_json, render,
                           render_json, rightoid, saturating_add, symmetric_group)

from strategies import magmas


def rows(m):
    return [list(r) for r in m.table]


def test_from_table():
    assert from_table(1, [[0]]).table == ((0,),)
    m = from_table(2, [[0, 0], [1, 1]])
    assert m == left_zero(2)
    assert m(1, 0) == 1


@pytest.mark.parametrize("n, entries", [
    (2, [[0, 2], [1, 0]]),
    (0, []),
    (2, [[0, 0]]),
    (2, [[0, 0], [1]]),
    (2, [[0, -1], [1, 1]]),
])
def test_from_table_rejects(n, entries):
    with pytest.raises(MagmaError):
        from_table(n, entries)


def test_constant():
    assert rows(constant(2, 0)) == [[0, 0], [0, 0]]
    assert rows(constant(1, 0)) == [[0]]
    assert rows(constant(3, 2)) == [[2] * 3] * 3
    with pytest.raises(MagmaError):
        constant(2, 2)


def test_left_zero():
    assert rows(left_zero(2)) == [[0, 0], [1, 1]]
    assert left_zero(1) == constant(1, 0)
    assert rows(left_zero(3)) == [[0, 0, 0], [1, 1, 1], [2, 2, 2]]


def test_leftoid_rightoid():
    assert leftoid(2, [0, 1]) == left_zero(2)
    assert rows(leftoid(2, [1, 0])) == [[1, 1], [0, 0]]
    assert leftoid(3, [0, 0, 0]) == constant(3, 0)
    assert rows(rightoid(2, [0, 1])) == [[0, 1], [0, 1]]
    assert rows(rightoid(2, [1, 0])) == [[1, 0], [1, 0]]
    for n in range(1, 4):
        for c in range(n):
            assert rightoid(n, [c] * n) == constant(n, c)
    with pytest.raises(MagmaError):
        leftoid(2, [0, 2])
    with pytest.raises(MagmaError):
        rightoid(2, [0])


def test_cyclic_group():
    assert rows(cyclic_group(2)) == [[0, 1], [1, 0]]
    assert rows(cyclic_group(1)) == [[0]]
    assert list(cyclic_group(3).table[1]) == [1, 2, 0]


def test_midpoint():
    # 2 * 3 = 6 = 1 mod 5, so 1/2 is 3 and 1*2 = 3*3 mod 5 = 4
    assert (2 * 3) % 5 == 1
    assert midpoint(5)(1, 2) == 4
    assert rows(midpoint(1)) == [[0]]
    with pytest.raises(MagmaError):
        midpoint(4)


@pytest.mark.parametrize("m", [1, 3, 5, 7, 9, 15])
def test_midpoint_idempotent(m):
    mp = midpoint(m)
    assert all(mp(x, x) == x for x in mp.elements)


def test_affine():
    assert rows(affine(2, 1, 1, 1)) == [[1, 0], [0, 1]]
    assert affine(3, 0, 1, 1) == cyclic_group(3)
    for p in (2, 3, 5, 7):
        assert affine(p, 0, 1, 1).table == cyclic_group(p).table
    with pytest.raises(MagmaError):
        affine(5, 0, 0, 1)
    with pytest.raises(MagmaError):
        affine(5, 0, 1, 0)
    with pytest.raises(MagmaError):
        affine(4, 0, 1, 1)


def test_saturating_add():
    s = saturating_add(2)
    assert s(1, 2) == 2 and s(2, 2) == 2
    assert saturating_add(0) == constant(1, 0)
    assert saturating_add(3)(1, 1) == 2
    with pytest.raises(MagmaError):
        saturating_add(-1)


def test_symmetric_group_and_multiplicative():
    s3 = symmetric_group(3)
    assert s3.order == 6
    assert list(s3.table[0]) == list(range(6))
    assert multiplicative(6)(5, 2) == 4


def test_parse_render():
    assert parse("2\n0 0\n1 1\n") == left_zero(2)
    text = "3\n0 1 2\n1 2 0\n2 0 1\n"
    assert render(parse(text)) == text
    assert parse(text) == cyclic_group(3)


@pytest.mark.parametrize("text", [
    "2\n0 3\n1 1\n",
    "",
    "2 2\n0 0\n1 1\n",
    "2\n0 0\n",
    "2\n0 0\n1 x\n",
    "x\n0\n",
    "0\n",
    "2\n0 0 0\n1 1\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_json_form():
    m = cyclic_group(2)
    assert render_json(m) == '{"order": 2, "table": [[0, 1], [1, 0]]}'
    assert parse(render_json(m)) == m
    assert parse_json(json.dumps({"order": 1, "table": [[0]]})) == constant(1, 0)
    for bad in ['{"order": 2}', '{"order": 2, "table": [[0, 1], [2, 0]]}', '{"order": true, "table": [[0]]}',
                '{"order": 1, "table": [[0.5]]}', "{"]:
        with pytest.raises(ParseError):
            parse(bad)


@given(magmas(1, 5))
def test_render_parse_round_trip(m):
    assert parse(render(m)) == m
    assert parse(render_json(m)) == m


@given(magmas(1, 4))
def test_relabel_identity_and_inverse(m):
    ident = list(range(m.order))
    assert m.relabel(ident) == m
    perm = list(reversed(ident))
    assert m.relabel(perm).relabel(perm) == m


def test_leftoid_rows_rightoid_columns():
    f = (2, 0, 1)
    assert all(len(set(r)) == 1 for r in leftoid(3, f).table)
    assert all(len(set(c)) == 1 for c in rightoid(3, f).columns)
    c = constant(3, 1)
    assert all(len(set(r)) == 1 for r in c.table) and all(len(set(col)) == 1 for col in c.columns)


def test_magma_is_hashable_and_frozen():
    m = cyclic_group(3)
    assert {m: 1}[cyclic_group(3)] == 1
    with pytest.raises(AttributeError):
        m.order = 4
    assert isinstance(m, Magma)


def test_restrict():
    m = multiplicative(5)
    r = m.restrict([1, 4])
    assert rows(r) == [[0, 1], [1, 0]]
    with pytest.raises(MagmaError):
        m.restrict([2, 3])
