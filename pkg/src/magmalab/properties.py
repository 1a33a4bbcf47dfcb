"""Decidable predicates on finite magmas.

Each universally quantified predicate returns a :class:`PropertyVerdict`
whose witness is the first counterexample met when scanning the bound
variables in lexicographic order (first variable outermost).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .core import BoundExceeded, ElementMap, Magma, MagmaError

CENTER_MAX_ORDER = 3


@dataclass(frozen=True)
class PropertyVerdict:
    property: str
    holds: bool
    witness: Optional[tuple[int, ...]] = None
    note: Optional[str] = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "holds": self.holds,
            "witness": None if self.witness is None else list(self.witness),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _fail(name: str, *witness: int, note: str | None = None) -> PropertyVerdict:
    return PropertyVerdict(name, False, tuple(witness), note)


def _ok(name: str, witness: tuple[int, ...] | None = None, note: str | None = None) -> PropertyVerdict:
    return PropertyVerdict(name, True, witness, note)


def condition_i(m: Magma) -> PropertyVerdict:
    """Every ``y`` is reachable from every ``x`` by left multiplication.

    Witness ``(x, y)``: no ``a`` with ``a*x = y``.
    """
    masks = m.column_masks
    for x in m.elements:
        for y in m.elements:
            if not masks[x] >> y & 1:
                return _fail("condition-i", x, y)
    return _ok("condition-i")


def condition_ii(m: Magma) -> PropertyVerdict:
    """For all ``x, y, z`` some ``w`` has ``x*(y*z) = w*z``.  Witness ``(x, y, z)``."""
    t = m.table
    masks = m.column_masks
    for x in m.elements:
        row = t[x]
        for y in m.elements:
            for z in m.elements:
                if not masks[z] >> row[t[y][z]] & 1:
                    return _fail("condition-ii", x, y, z)
    return _ok("condition-ii")


def is_right_feeble(m: Magma) -> PropertyVerdict:
    v = condition_i(m)
    if not v:
        return _fail("right-feeble", *v.witness, note="condition (i) fails")
    v = condition_ii(m)
    if not v:
        return _fail("right-feeble", *v.witness, note="condition (ii) fails")
    return _ok("right-feeble")


def rho(m: Magma) -> frozenset[int]:
    """Elements ``x`` with ``X*x = X``."""
    full = m.full_mask
    return frozenset(x for x, mask in enumerate(m.column_masks) if mask == full)


def is_right_entire(m: Magma) -> PropertyVerdict:
    """``rho(m)`` is the whole carrier.  Witness ``(x, y)`` with ``y`` missing from ``X*x``."""
    masks = m.column_masks
    for x in m.elements:
        for y in m.elements:
            if not masks[x] >> y & 1:
                return _fail("right-entire", x, y)
    return _ok("right-entire")


def is_right_asymmetric(m: Magma) -> PropertyVerdict:
    """No two distinct elements reach each other.  Witness ``(x, y)``, ``x != y``."""
    masks = m.column_masks
    for x in m.elements:
        for y in m.elements:
            if x != y and masks[x] >> y & 1 and masks[y] >> x & 1:
                return _fail("right-asymmetric", x, y)
    return _ok("right-asymmetric")


def as_leftoid(m: Magma) -> Optional[ElementMap]:
    if all(len(set(row)) == 1 for row in m.table):
        return tuple(row[0] for row in m.table)
    return None


def as_rightoid(m: Magma) -> Optional[ElementMap]:
    if all(len(set(col)) == 1 for col in m.columns):
        return tuple(col[0] for col in m.columns)
    return None


def is_associative(m: Magma) -> PropertyVerdict:
    t = m.table
    for x in m.elements:
        for y in m.elements:
            xy = t[x][y]
            for z in m.elements:
                if t[xy][z] != t[x][t[y][z]]:
                    return _fail("associative", x, y, z)
    return _ok("associative")


def two_sided_identity(m: Magma) -> Optional[int]:
    ident = tuple(m.elements)
    for e in m.elements:
        if m.table[e] == ident and m.columns[e] == ident:
            return e
    return None


def as_group(m: Magma) -> Optional[tuple[int, ElementMap]]:
    """``(identity, inverse map)`` when ``m`` is a group, else ``None``."""
    e = two_sided_identity(m)
    if e is None or not is_associative(m):
        return None
    t = m.table
    inverse = []
    for x in m.elements:
        for y in m.elements:
            if t[x][y] == e and t[y][x] == e:
                inverse.append(y)
                break
        else:
            return None
    return e, tuple(inverse)


def has_left_identity(m: Magma) -> Optional[int]:
    ident = tuple(m.elements)
    for e in m.elements:
        if m.table[e] == ident:
            return e
    return None


def zero_fixed_element(m: Magma) -> Optional[int]:
    """First ``z`` with ``z*x = z`` for every ``x``."""
    for z in m.elements:
        if all(v == z for v in m.table[z]):
            return z
    return None


def right_id_forcing(m: Magma, e: int) -> PropertyVerdict:
    """``a*x = a`` only when ``x = e``.  Witness ``(a, x)``."""
    if not 0 <= e < m.order:
        raise MagmaError(f"element {e} out of range")
    for a in m.elements:
        for x in m.elements:
            if m.table[a][x] == a and x != e:
                return _fail("right-id-forcing", a, x)
    return _ok("right-id-forcing", (e,))


def right_id_forcing_element(m: Magma) -> Optional[int]:
    for e in m.elements:
        if right_id_forcing(m, e):
            return e
    return None


def pair_swap_condition(m: Magma) -> PropertyVerdict:
    """``{x*y, y*x} = {x, y}`` whenever ``x != y``.  Witness ``(x, y)``."""
    t = m.table
    for x in m.elements:
        for y in m.elements:
            if x != y and {t[x][y], t[y][x]} != {x, y}:
                return _fail("pair-swap", x, y)
    return _ok("pair-swap")


@lru_cache(maxsize=None)
def all_tables_array(n: int) -> np.ndarray:
    """Every ``n``-element Cayley table, ascending as base-``n`` numerals; shape ``(n**(n*n), n, n)``."""
    cells = n * n
    idx = np.arange(n ** cells, dtype=np.int64)
    powers = n ** np.arange(cells - 1, -1, -1, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % n
    out = digits.astype(np.intp).reshape(-1, n, n)
    out.setflags(write=False)
    return out


def is_center_member(m: Magma) -> PropertyVerdict:
    """``m`` commutes under the Bin(X) product with every magma of its order.

    Witness: the flattened table of the first magma ``q`` with ``m.q != q.m``.
    """
    n = m.order
    if n > CENTER_MAX_ORDER:
        raise BoundExceeded(f"center membership is only decided up to order {CENTER_MAX_ORDER}, got {n}")
    q = all_tables_array(n)
    t = np.array(m.table, dtype=np.intp)
    # (m . q)[x, y] = q[m[x,y], m[y,x]];  (q . m)[x, y] = m[q[x,y], q[y,x]]
    left = q[:, t, t.T]
    right = t[q, q.transpose(0, 2, 1)]
    bad = np.flatnonzero((left != right).reshape(len(q), -1).any(axis=1))
    if bad.size:
        return _fail("center", *map(int, q[bad[0]].ravel()))
    return _ok("center")


def is_constant(m: Magma) -> bool:
    c = m.table[0][0]
    return all(v == c for row in m.table for v in row)


def exists_right_id_forcing(m: Magma) -> PropertyVerdict:
    e = right_id_forcing_element(m)
    if e is None:
        return _fail("right-id-forcing-any")
    return _ok("right-id-forcing-any", (e,))


def _optional_verdict(name, fn):
    def check(m: Magma) -> PropertyVerdict:
        found = fn(m)
        if found is None:
            return PropertyVerdict(name, False)
        if isinstance(found, int):
            return _ok(name, (found,))
        if name == "group":
            return _ok(name, (found[0],))
        return _ok(name, tuple(found))
    check.__name__ = f"check_{name.replace('-', '_')}"
    return check


# name -> Magma -> PropertyVerdict; the vocabulary used by the CLI and census.
PREDICATES = {
    "condition-i": condition_i,
    "condition-ii": condition_ii,
    "right-feeble": is_right_feeble,
    "right-entire": is_right_entire,
    "right-asymmetric": is_right_asymmetric,
    "associative": is_associative,
    "group": _optional_verdict("group", as_group),
    "leftoid": _optional_verdict("leftoid", as_leftoid),
    "rightoid": _optional_verdict("rightoid", as_rightoid),
    "constant": lambda m: PropertyVerdict("constant", is_constant(m)),
    "left-identity": _optional_verdict("left-identity", has_left_identity),
    "zero-fixed": _optional_verdict("zero-fixed", zero_fixed_element),
    "right-id-forcing-any": exists_right_id_forcing,
    "pair-swap": pair_swap_condition,
    "center": is_center_member,
}


def check(m: Magma, name: str) -> PropertyVerdict:
    try:
        fn = PREDICATES[name]
    except KeyError:
        raise MagmaError(f"unknown property {name!r}; choose from {', '.join(PREDICATES)}") from None
    return fn(m)

