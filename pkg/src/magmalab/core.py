"""Finite magmas as Cayley tables, the constructors used throughout, and I/O.

Elements are the indices ``0..n-1``.  ``table[l][r]`` is ``l * r``: the row
is the left operand and the column the right operand.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence


class MagmaError(ValueError):
    """Base class for every error raised by magmalab."""


class ParseError(MagmaError):
    pass


class BoundExceeded(MagmaError):
    """An operation was asked to work past its documented size bound."""


ElementMap = tuple[int, ...]


@dataclass(frozen=True)
class Magma:
    order: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.order
        if not isinstance(n, int) or n < 1:
            raise MagmaError(f"order must be a positive integer, got {n!r}")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise MagmaError(f"table must be {n}x{n}")
        for l, row in enumerate(self.table):
            for r, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise MagmaError(f"entry ({l},{r}) = {v!r} out of range 0..{n - 1}")

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    def __repr__(self):
        return f"Magma({self.order}, {[list(r) for r in self.table]})"

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        """Transposed table; ``columns[r][l] == l * r``."""
        return tuple(zip(*self.table))

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        """Bitmask of the image ``X * r`` for each column ``r``."""
        masks = []
        for col in self.columns:
            m = 0
            for v in col:
                m |= 1 << v
            masks.append(m)
        return tuple(masks)

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        masks = []
        for row in self.table:
            m = 0
            for v in row:
                m |= 1 << v
            masks.append(m)
        return tuple(masks)

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def relabel(self, perm: Sequence[int]) -> Magma:
        """Conjugate by ``perm``: the result satisfies ``perm(x*y) = perm(x) . perm(y)``."""
        n = self.order
        if sorted(perm) != list(range(n)):
            raise MagmaError(f"not a permutation of 0..{n - 1}: {list(perm)}")
        out = [[0] * n for _ in range(n)]
        for x in range(n):
            px = perm[x]
            row = self.table[x]
            for y in range(n):
                out[px][perm[y]] = perm[row[y]]
        return Magma(n, tuple(map(tuple, out)))

    def restrict(self, members: Sequence[int]) -> Magma:
        """Operation table on a closed subset, re-indexed in increasing order."""
        members = sorted(members)
        index = {v: i for i, v in enumerate(members)}
        try:
            rows = tuple(
                tuple(index[self.table[x][y]] for y in members) for x in members
            )
        except KeyError:
            raise MagmaError(f"subset {members} is not closed") from None
        return Magma(len(members), rows)

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}


def from_table(n: int, entries: Iterable[Iterable[int]]) -> Magma:
    rows = tuple(tuple(row) for row in entries)
    return Magma(n, rows)


def from_flat(n: int, flat: Sequence[int]) -> Magma:
    return Magma(n, tuple(tuple(int(v) for v in flat[r * n:(r + 1) * n]) for r in range(n)))


def from_function(n: int, op: Callable[[int, int], int]) -> Magma:
    return Magma(n, tuple(tuple(op(x, y) for y in range(n)) for x in range(n)))


def _check_element(n: int, c: int, what: str = "element") -> None:
    if not 0 <= c < n:
        raise MagmaError(f"{what} {c} out of range 0..{n - 1}")


def _check_map(n: int, f: Sequence[int]) -> ElementMap:
    f = tuple(f)
    if len(f) != n:
        raise MagmaError(f"map must have {n} values, got {len(f)}")
    for v in f:
        _check_element(n, v, "map value")
    return f


def _check_order(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise MagmaError(f"order must be a positive integer, got {n!r}")


def constant(n: int, c: int) -> Magma:
    _check_order(n)
    _check_element(n, c)
    return from_function(n, lambda x, y: c)


def left_zero(n: int) -> Magma:
    _check_order(n)
    return from_function(n, lambda x, y: x)


def leftoid(n: int, f: Sequence[int]) -> Magma:
    """``x*y = f(x)``."""
    _check_order(n)
    f = _check_map(n, f)
    return from_function(n, lambda x, y: f[x])


def rightoid(n: int, g: Sequence[int]) -> Magma:
    """``x*y = g(y)``."""
    _check_order(n)
    g = _check_map(n, g)
    return from_function(n, lambda x, y: g[y])


def cyclic_group(n: int) -> Magma:
    _check_order(n)
    return from_function(n, lambda x, y: (x + y) % n)


def multiplicative(m: int) -> Magma:
    """Residues mod ``m`` under multiplication."""
    _check_order(m)
    return from_function(m, lambda x, y: (x * y) % m)


def midpoint(m: int) -> Magma:
    """``x*y = (x + y)/2`` in the integers mod an odd ``m``."""
    _check_order(m)
    if m % 2 == 0:
        raise MagmaError(f"midpoint needs an odd modulus, got {m}")
    inv2 = pow(2, -1, m) if m > 1 else 0
    return from_function(m, lambda x, y: ((x + y) * inv2) % m)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def affine(p: int, alpha: int, beta: int, gamma: int) -> Magma:
    """``x*y = alpha + beta*x + gamma*y`` over the prime field of order ``p``."""
    if not is_prime(p):
        raise MagmaError(f"affine needs a prime modulus, got {p}")
    if beta % p == 0 or gamma % p == 0:
        raise MagmaError("beta and gamma must be nonzero mod p")
    return from_function(p, lambda x, y: (alpha + beta * x + gamma * y) % p)


def saturating_add(k: int) -> Magma:
    """``min(x + y, k)`` on ``{0..k}``."""
    if not isinstance(k, int) or k < 0:
        raise MagmaError(f"cap must be a nonnegative integer, got {k!r}")
    return from_function(k + 1, lambda x, y: min(x + y, k))


def symmetric_group(k: int) -> Magma:
    """Permutations of ``k`` points in lexicographic order; ``(p*q)(i) = p(q(i))``."""
    _check_order(k)
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return from_function(
        len(perms), lambda a, b: index[tuple(perms[a][perms[b][i]] for i in range(k))]
    )


def render(m: Magma) -> str:
    lines = [str(m.order)]
    lines += [" ".join(map(str, row)) for row in m.table]
    return "\n".join(lines) + "\n"


def render_json(m: Magma) -> str:
    return json.dumps(m.to_json())


def parse(text: str) -> Magma:
    """Read the whitespace table format, or the JSON form if ``text`` starts with ``{``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return parse_json(stripped)
    lines = [ln.split() for ln in stripped.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty input")
    header = lines[0]
    if len(header) != 1:
        raise ParseError(f"malformed header line: {' '.join(header)!r}")
    n = _int_token(header[0])
    if n < 1:
        raise ParseError(f"order must be positive, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, got {len(rows)}")
    table = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ParseError(f"row {i} has {len(row)} entries, expected {n}")
        vals = tuple(_int_token(tok) for tok in row)
        for v in vals:
            if not 0 <= v < n:
                raise ParseError(f"entry {v} in row {i} out of range 0..{n - 1}")
        table.append(vals)
    return Magma(n, tuple(table))


def parse_json(text: str) -> Magma:
    try:
        obj = json.loads(text)
        n = obj["order"]
        rows = obj["table"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed JSON magma: {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError("order must be an integer")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("table must be a list of lists")
    if any(not isinstance(v, int) or isinstance(v, bool) for r in rows for v in r):
        raise ParseError("table entries must be integers")
    try:
        return from_table(n, rows)
    except MagmaError as exc:
        raise ParseError(str(exc)) from None


def _int_token(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"non-integer token {tok!r}") from None
