"""Homomorphism search, isomorphism testing and canonical forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .core import BoundExceeded, ElementMap, Magma

MAX_HOM_ORDER = 6
MAX_CANON_ORDER = 6
# n**(n*n) must fit in int64 for the packed batch codes.
MAX_PACKED_ORDER = 5


@dataclass(frozen=True)
class Hom:
    source: Magma
    target: Magma
    map: ElementMap

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order


def _checkpoints(a: Magma) -> list[list[tuple[int, int, int]]]:
    """For each k, the pairs ``(x, y, x*y)`` whose law becomes checkable once ``f(k)`` is set."""
    n = a.order
    out: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            xy = a.table[x][y]
            out[max(x, y, xy)].append((x, y, xy))
    return out


def _search(a: Magma, b: Magma, injective: bool) -> Iterator[ElementMap]:
    """Maps ``a -> b`` obeying the law, in lexicographic order; pruned at first violation."""
    n, tb = a.order, b.table
    checks = _checkpoints(a)
    f = [0] * n
    used = [False] * b.order

    def extend(k):
        if k == n:
            yield tuple(f)
            return
        for v in range(b.order):
            if injective and used[v]:
                continue
            f[k] = v
            if all(f[xy] == tb[f[x]][f[y]] for x, y, xy in checks[k]):
                used[v] = True
                yield from extend(k + 1)
                used[v] = False

    yield from extend(0)


def homomorphisms(a: Magma, b: Magma, surjective_only: bool = False) -> list[Hom]:
    if a.order > MAX_HOM_ORDER or b.order > MAX_HOM_ORDER:
        raise BoundExceeded(f"homomorphism search limited to order {MAX_HOM_ORDER}")
    homs = (Hom(a, b, f) for f in _search(a, b, injective=False))
    if surjective_only:
        return [h for h in homs if h.is_surjective]
    return list(homs)


def is_isomorphic(a: Magma, b: Magma) -> Optional[ElementMap]:
    """A bijection ``s`` with ``s(x*y) = s(x).s(y)``, or ``None``."""
    if a.order != b.order:
        return None
    if sorted(_profile(a)) != sorted(_profile(b)):
        return None
    return next(_search(a, b, injective=True), None)


def _profile(m: Magma) -> list[tuple[int, int, int, bool]]:
    """Per-element isomorphism invariants used to reject quickly."""
    t = m.table
    return [
        (bin(m.row_masks[x]).count("1"), bin(m.column_masks[x]).count("1"),
         sum(row.count(x) for row in t), t[x][x] == x)
        for x in m.elements
    ]


def canonical_form(m: Magma) -> tuple[int, ...]:
    """Lexicographically least flattened table over all relabelings."""
    n = m.order
    if n > MAX_CANON_ORDER:
        raise BoundExceeded(f"canonical form limited to order {MAX_CANON_ORDER}, got {n}")
    best = None
    t = m.table
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        flat = tuple(perm[t[inv[i]][inv[j]]] for i in range(n) for j in range(n))
        if best is None or flat < best:
            best = flat
    return best


@lru_cache(maxsize=None)
def _perm_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)
    inv = np.argsort(perms, axis=1)
    return perms, inv


def canonical_codes(tables: np.ndarray) -> np.ndarray:
    """Batch canonical forms packed as base-``n`` integers, shape ``(B,)``.

    ``tables`` has shape ``(B, n, n)``.  The integer order of the codes is the
    lexicographic order of the flattened tables, so the minimum code is the
    canonical form.
    """
    tables = np.asarray(tables, dtype=np.intp)
    b, n, _ = tables.shape
    if n > MAX_PACKED_ORDER:
        raise BoundExceeded(f"packed canonical codes limited to order {MAX_PACKED_ORDER}")
    perms, inv = _perm_arrays(n)
    powers = n ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    best = np.full(b, np.iinfo(np.int64).max, dtype=np.int64)
    for p, q in zip(perms, inv):
        relabeled = p[tables[:, q[:, None], q[None, :]]].reshape(b, -1)
        np.minimum(best, relabeled @ powers, out=best)
    return best


def decode_code(code: int, n: int) -> tuple[int, ...]:
    digits = []
    for _ in range(n * n):
        code, d = divmod(int(code), n)
        digits.append(d)
    return tuple(reversed(digits))
