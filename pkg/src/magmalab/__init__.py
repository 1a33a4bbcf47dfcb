"""Finite groupoid analysis: Cayley tables, right feeble groups and exhaustive censuses."""

from .core import (BoundExceeded, Magma, MagmaError, ParseError, affine, constant, cyclic_group,
                   from_table, left_zero, leftoid, midpoint, multiplicative, parse, render,
                   rightoid, saturating_add, symmetric_group)
from .properties import PropertyVerdict

__all__ = [
    "BoundExceeded", "Magma", "MagmaError", "ParseError", "PropertyVerdict", "affine", "constant",
    "cyclic_group", "from_table", "left_zero", "leftoid", "midpoint", "multiplicative", "parse",
    "render", "rightoid", "saturating_add", "symmetric_group",
]
