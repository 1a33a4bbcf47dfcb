"""Closed subsets (subgroupoids) and divisibility."""

from __future__ import annotations

from dataclasses import dataclass

from .core import BoundExceeded, Magma, MagmaError
from .properties import PropertyVerdict

MAX_SUBSET_ORDER = 16


@dataclass(frozen=True)
class Subgroupoid:
    parent: Magma
    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members:
            raise MagmaError("subgroupoid must be nonempty")
        if not is_closed(self.parent, _mask(self.members)):
            raise MagmaError(f"{list(self.members)} is not closed under the operation")

    @property
    def mask(self) -> int:
        return _mask(self.members)

    def restricted(self) -> Magma:
        """The subgroupoid as a magma of its own, members re-indexed in increasing order."""
        return self.parent.restrict(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members


def _mask(members) -> int:
    m = 0
    for x in members:
        m |= 1 << x
    return m


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def is_closed(m: Magma, mask: int) -> bool:
    members = _members(mask)
    t = m.table
    return all(mask >> t[x][y] & 1 for x in members for y in members)


def subgroupoids(m: Magma) -> list[Subgroupoid]:
    """All nonempty closed subsets, sorted by size then members."""
    if m.order > MAX_SUBSET_ORDER:
        raise BoundExceeded(f"subset scan limited to order {MAX_SUBSET_ORDER}, got {m.order}")
    found = [_members(mask) for mask in range(1, 1 << m.order) if is_closed(m, mask)]
    found.sort(key=lambda s: (len(s), s))
    return [Subgroupoid(m, s) for s in found]


def is_divisible(m: Magma, a: Subgroupoid | tuple[int, ...]) -> PropertyVerdict:
    """``g*x = y`` with ``x, y`` in ``A`` forces ``g`` in ``A``.  Witness ``(g, x, y)``."""
    members = a.members if isinstance(a, Subgroupoid) else tuple(sorted(a))
    mask = _mask(members)
    t = m.table
    for g in m.elements:
        if mask >> g & 1:
            continue
        row = t[g]
        for x in members:
            if mask >> row[x] & 1:
                return PropertyVerdict("divisible", False, (g, x, row[x]))
    return PropertyVerdict("divisible", True)


def divisible_subgroupoids(m: Magma) -> list[Subgroupoid]:
    return [s for s in subgroupoids(m) if is_divisible(m, s)]


def intersection(a: Subgroupoid, b: Subgroupoid) -> Subgroupoid | None:
    if a.parent != b.parent:
        raise MagmaError("subgroupoids of different magmas")
    common = tuple(x for x in a.members if x in b.members)
    return Subgroupoid(a.parent, common) if common else None
