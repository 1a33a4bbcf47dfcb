"""The reachability relation ``x <= y  iff  a*x = y for some a``."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Magma
from .properties import PropertyVerdict, _fail, _ok
from .subalgebra import Subgroupoid


@dataclass(frozen=True)
class Relation:
    order: int
    bits: tuple[tuple[bool, ...], ...]

    def __call__(self, x: int, y: int) -> bool:
        return self.bits[x][y]

    def render(self) -> str:
        return "\n".join(" ".join("1" if b else "0" for b in row) for row in self.bits)

    def to_json(self) -> dict:
        return {"order": self.order, "bits": [[int(b) for b in row] for row in self.bits]}


def leq(m: Magma) -> Relation:
    masks = m.column_masks
    n = m.order
    return Relation(n, tuple(tuple(bool(masks[x] >> y & 1) for y in range(n)) for x in range(n)))


def is_reflexive(r: Relation) -> PropertyVerdict:
    for x in range(r.order):
        if not r.bits[x][x]:
            return PropertyVerdict("reflexive", False, (x,))
    return PropertyVerdict("reflexive", True)


def is_antisymmetric(r: Relation) -> PropertyVerdict:
    for x in range(r.order):
        for y in range(r.order):
            if x != y and r.bits[x][y] and r.bits[y][x]:
                return PropertyVerdict("antisymmetric", False, (x, y))
    return PropertyVerdict("antisymmetric", True)


def is_transitive(r: Relation) -> PropertyVerdict:
    n, b = r.order, r.bits
    for x in range(n):
        for y in range(n):
            if not b[x][y]:
                continue
            for z in range(n):
                if b[y][z] and not b[x][z]:
                    return PropertyVerdict("transitive", False, (x, y, z))
    return PropertyVerdict("transitive", True)


def restricted_leq_preserved(m: Magma, sub: Subgroupoid) -> PropertyVerdict:
    """Pairs of ``A`` related in ``m`` stay related in the restricted magma.

    Witness ``(x, y)`` in parent indices.
    """
    outer = leq(m)
    inner = leq(sub.restricted())
    members = sub.members
    for i, x in enumerate(members):
        for j, y in enumerate(members):
            if outer.bits[x][y] and not inner.bits[i][j]:
                return PropertyVerdict("leq-restricts", False, (x, y))
    return PropertyVerdict("leq-restricts", True)


def dominated_elements(m: Magma) -> PropertyVerdict:
    """With a surjective row ``a``, check every ``y`` has some ``x <= y``.

    Vacuous (holds, with a note) when no row is surjective.  Witness on
    success is ``(a,)``; on failure ``(a, y)``.
    """
    full = m.full_mask
    rows = [a for a, mask in enumerate(m.row_masks) if mask == full]
    if not rows:
        return _ok("dominated", note="no surjective row")
    a = rows[0]
    masks = m.column_masks
    for y in m.elements:
        if not any(masks[x] >> y & 1 for x in m.elements):
            return _fail("dominated", a, y)
    return _ok("dominated", (a,))
