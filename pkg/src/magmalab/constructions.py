"""Binary constructions: the componentwise direct product and the Bin(X) product."""

from __future__ import annotations

from .core import BoundExceeded, Magma, MagmaError, cyclic_group

MAX_PRODUCT_ORDER = 64


def encode_pair(x: int, y: int, right_order: int) -> int:
    return x * right_order + y


def decode_pair(i: int, right_order: int) -> tuple[int, int]:
    return divmod(i, right_order)


def direct_product(a: Magma, b: Magma, max_order: int = MAX_PRODUCT_ORDER) -> Magma:
    """``(x, y)(u, v) = (x*u, y.v)`` with ``(x, y)`` stored at ``x*|b| + y``."""
    nb = b.order
    n = a.order * nb
    if n > max_order:
        raise BoundExceeded(f"product order {n} exceeds maximum {max_order}")
    pairs = [decode_pair(i, nb) for i in range(n)]
    ta, tb = a.table, b.table
    rows = tuple(
        tuple(encode_pair(ta[x][u], tb[y][v], nb) for (u, v) in pairs)
        for (x, y) in pairs
    )
    return Magma(n, rows)


def bin_product(a: Magma, b: Magma) -> Magma:
    """``x [] y = (x a y) b (y a x)``; the second factor supplies the outer operation."""
    if a.order != b.order:
        raise MagmaError(f"Bin(X) product needs equal orders, got {a.order} and {b.order}")
    ta, tb = a.table, b.table
    n = a.order
    return Magma(n, tuple(tuple(tb[ta[x][y]][ta[y][x]] for y in range(n)) for x in range(n)))


def klein_four() -> Magma:
    return direct_product(cyclic_group(2), cyclic_group(2))
