"""Exhaustive enumeration of finite magmas with property filters.

Tables are enumerated as base-``n`` numerals over the row-major flattened
table, ascending.  The numeral space is cut into a prefix (the first few
cells) and a suffix block that is materialized once; shards own contiguous
ranges of prefixes, so the partition and the merged result never depend
on scheduling.

Filters are evaluated in bulk on ``(B, n, n)`` integer arrays.  Filters
that imply right-entireness let the full scan skip materializing tables
whose packed column images are not all full; those bitmasks are combined
as ``suffix_bits | prefix_bits``, one word per table.
"""

from __future__ import annotations

import itertools
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import properties as props
from .core import BoundExceeded, Magma, MagmaError, from_flat
from .morphisms import canonical_codes, decode_code

FULL_SCAN_MAX_ORDER = 3
LONG_RUN_FULL_ORDER = 4
RESTRICTED_MAX_ORDER = 4
LONG_RUN_RESTRICTED_ORDER = 5
CHUNK = 1 << 18
FAST_CHUNK = 1 << 20
EVAL_BLOCK = 1 << 15


# ---------------------------------------------------------------------------
# batch predicates: (B, n, n) intp -> (B,) bool


def column_masks(t: np.ndarray) -> np.ndarray:
    return np.bitwise_or.reduce(np.left_shift(1, t), axis=1)


def _right_entire(t):
    n = t.shape[1]
    return (column_masks(t) == (1 << n) - 1).all(axis=1)


def _gather(t, idx):
    """``t[b, idx[b, ...]]`` style lookup: returns ``t[b, x, idx[b, x, ...]]`` for the last axis."""
    b = t.shape[0]
    return t[np.arange(b)[:, None, None, None], np.arange(t.shape[1])[None, :, None, None], idx]


def _x_yz(t):
    """``x*(y*z)`` as an array indexed ``[b, x, y, z]``."""
    return _gather(t, t[:, None, :, :])


def _condition_ii(t):
    masks = column_masks(t)
    vals = _x_yz(t)
    return ((masks[:, None, None, :] >> vals) & 1).astype(bool).reshape(len(t), -1).all(axis=1)


def _right_feeble(t):
    out = _right_entire(t)
    idx = np.flatnonzero(out)
    if idx.size:
        out[idx] = _condition_ii(t[idx])
    return out


def _reach(t):
    n = t.shape[1]
    masks = column_masks(t)
    return ((masks[:, :, None] >> np.arange(n)[None, None, :]) & 1).astype(bool)


def _right_asymmetric(t):
    n = t.shape[1]
    r = _reach(t)
    mutual = r & r.transpose(0, 2, 1) & ~np.eye(n, dtype=bool)[None]
    return ~mutual.reshape(len(t), -1).any(axis=1)


def _associative(t):
    b = len(t)
    lhs = _gather_rows(t, t)
    rhs = _x_yz(t)
    return (lhs == rhs).reshape(b, -1).all(axis=1)


def _gather_rows(t, rows):
    """``(x*y)*z`` as ``[b, x, y, z]``."""
    b, n, _ = t.shape
    return t[np.arange(b)[:, None, None, None], rows[:, :, :, None], np.arange(n)[None, None, None, :]]


def _group(t):
    b, n, _ = t.shape
    ar = np.arange(n)
    row_id = (t == ar[None, None, :]).all(axis=2)
    col_id = (t == ar[None, :, None]).all(axis=1)
    ident = row_id & col_id
    out = ident.any(axis=1)
    idx = np.flatnonzero(out)
    if idx.size:
        sub = t[idx]
        e = ident[idx].argmax(axis=1)
        eq = sub == e[:, None, None]
        inverses = (eq & eq.transpose(0, 2, 1)).any(axis=2).all(axis=1)
        ok = inverses.copy()
        j = np.flatnonzero(ok)
        if j.size:
            ok[j] = _associative(sub[j])
        out[idx] = ok
    return out


def _leftoid(t):
    return (t == t[:, :, :1]).reshape(len(t), -1).all(axis=1)


def _rightoid(t):
    return (t == t[:, :1, :]).reshape(len(t), -1).all(axis=1)


def _constant(t):
    return (t == t[:, :1, :1]).reshape(len(t), -1).all(axis=1)


def _left_identity(t):
    n = t.shape[1]
    return (t == np.arange(n)[None, None, :]).all(axis=2).any(axis=1)


def _zero_fixed(t):
    n = t.shape[1]
    return (t == np.arange(n)[None, :, None]).all(axis=2).any(axis=1)


def _right_id_forcing_any(t):
    n = t.shape[1]
    # x is "forced" if some a has a*x = a; a valid e exists iff at most one x is forced.
    forced = (t == np.arange(n)[None, :, None]).any(axis=1)
    return forced.sum(axis=1) <= 1


def _pair_swap(t):
    n = t.shape[1]
    tt = t.transpose(0, 2, 1)
    x = np.arange(n)[None, :, None]
    y = np.arange(n)[None, None, :]
    ok = ((t == x) & (tt == y)) | ((t == y) & (tt == x))
    ok |= np.eye(n, dtype=bool)[None]
    return ok.reshape(len(t), -1).all(axis=1)


def _center(t):
    b, n, _ = t.shape
    if n > props.CENTER_MAX_ORDER:
        raise BoundExceeded(f"center membership is only decided up to order {props.CENTER_MAX_ORDER}")
    out = np.ones(b, dtype=bool)
    alive = np.arange(b)
    for q in props.all_tables_array(n):
        if not alive.size:
            break
        m = t[alive]
        left = q[m, m.transpose(0, 2, 1)]
        right = m[np.arange(len(m))[:, None, None], q[None], q.T[None]]
        keep = (left == right).reshape(len(m), -1).all(axis=1)
        out[alive[~keep]] = False
        alive = alive[keep]
    return out


@dataclass(frozen=True)
class Filter:
    name: str
    scalar: Callable[[Magma], bool]
    batch: Optional[Callable[[np.ndarray], np.ndarray]] = None
    implies_right_entire: bool = False

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        if self.batch is not None:
            return self.batch(t)
        n = t.shape[1]
        return np.fromiter((bool(self.scalar(from_flat(n, row.ravel()))) for row in t), bool, len(t))


def _named(name, batch, implies_right_entire=False):
    pred = props.PREDICATES[name]
    return Filter(name, lambda m: pred(m).holds, batch, implies_right_entire)


FILTERS: dict[str, Filter] = {
    f.name: f
    for f in [
        Filter("all", lambda m: True, lambda t: np.ones(len(t), dtype=bool)),
        _named("condition-i", _right_entire, True),
        _named("condition-ii", _condition_ii),
        _named("right-entire", _right_entire, True),
        _named("right-feeble", _right_feeble, True),
        _named("right-asymmetric", _right_asymmetric),
        _named("associative", _associative),
        _named("group", _group, True),
        _named("leftoid", _leftoid),
        _named("rightoid", _rightoid),
        _named("constant", _constant),
        _named("left-identity", _left_identity),
        _named("zero-fixed", _zero_fixed),
        _named("right-id-forcing-any", _right_id_forcing_any),
        _named("pair-swap", _pair_swap),
        _named("center", _center),
    ]
}

FilterSpec = Union[str, Callable[[Magma], bool], Sequence]


def resolve_filters(spec: FilterSpec) -> list[Filter]:
    """A name, ``a+b`` conjunction, callable, or sequence of those."""
    if isinstance(spec, Filter):
        return [spec]
    if callable(spec):
        return [Filter(getattr(spec, "__name__", "callable"), lambda m: bool(spec(m)))]
    if isinstance(spec, str):
        out = []
        for part in spec.split("+"):
            part = part.strip()
            if part not in FILTERS:
                raise MagmaError(f"unknown filter {part!r}; choose from {', '.join(FILTERS)}")
            out.append(FILTERS[part])
        return out
    return [f for s in spec for f in resolve_filters(s)]


def filter_name(spec: FilterSpec) -> str:
    if isinstance(spec, str):
        return spec
    return "+".join(f.name for f in resolve_filters(spec))


def apply_filters(filters: Sequence[Filter], t: np.ndarray) -> np.ndarray:
    mask = np.ones(len(t), dtype=bool)
    for f in filters:
        idx = np.flatnonzero(mask)
        if not idx.size:
            break
        for s in range(0, idx.size, EVAL_BLOCK):
            part = idx[s:s + EVAL_BLOCK]
            mask[part] = f.evaluate(t[part])
    return mask


# ---------------------------------------------------------------------------
# enumeration spaces


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


@dataclass(frozen=True)
class Space:
    """Candidate tables as numerals with ``positions`` digits in ``base``."""
    kind: str
    order: int
    base: int
    positions: int

    @property
    def size(self) -> int:
        return self.base ** self.positions

    def decode(self, digits: np.ndarray) -> np.ndarray:
        n = self.order
        if self.kind == "full":
            return digits.astype(np.intp).reshape(-1, n, n)
        # column c of the table is the permutation with index digits[:, c]
        return _perm_table(n)[digits.astype(np.intp)].transpose(0, 2, 1)


def full_space(n: int) -> Space:
    return Space("full", n, n, n * n)


def right_entire_space(n: int) -> Space:
    return Space("right-entire", n, math.factorial(n), n)


@lru_cache(maxsize=8)
def _suffix_digits(base: int, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    grids = np.indices((base,) * length, dtype=np.uint8)
    out = grids.reshape(length, -1).T.copy()
    out.setflags(write=False)
    return out


@lru_cache(maxsize=8)
def _suffix_bits(n: int, length: int) -> np.ndarray:
    """Packed column-image bits of each suffix of a full-space table: bit ``c*n + v``."""
    digits = _suffix_digits(n, length)
    start = n * n - length
    acc = np.zeros(len(digits), dtype=np.uint64)
    for j in range(length):
        col = (start + j) % n
        acc |= np.left_shift(np.uint64(1), (col * n + digits[:, j]).astype(np.uint64))
    acc.setflags(write=False)
    return acc


def _prefix_digits(base: int, length: int, numeral: int) -> list[int]:
    out = []
    for _ in range(length):
        numeral, d = divmod(numeral, base)
        out.append(d)
    return out[::-1]


def _split(space: Space, shards: int, chunk: int) -> int:
    """Prefix length: enough prefixes for every shard, suffix block at most ``chunk``."""
    suffix_max = 0
    while suffix_max < space.positions and space.base ** (suffix_max + 1) <= chunk:
        suffix_max += 1
    need = 0
    while space.base ** need < shards and need < space.positions:
        need += 1
    return max(space.positions - suffix_max, need)


@dataclass
class ShardResult:
    scanned: int = 0
    matches: int = 0
    codes: set = field(default_factory=set)
    first: Optional[int] = None
    tables: list = field(default_factory=list)


def _scan_shard(space: Space, spec, prefix_len: int, lo: int, hi: int, up_to_iso: bool,
                collect: bool, progress: bool) -> ShardResult:
    filters = resolve_filters(spec)
    res = ShardResult()
    suffix_len = space.positions - prefix_len
    suffix = _suffix_digits(space.base, suffix_len)
    block = len(suffix)
    fast = space.kind == "full" and any(f.implies_right_entire for f in filters)
    if fast:
        n = space.order
        bits = _suffix_bits(n, suffix_len)
        full_bits = np.uint64((1 << (n * n)) - 1)
    last_report = time.monotonic()
    for p in range(lo, hi):
        pdig = _prefix_digits(space.base, prefix_len, p)
        rows = None
        if fast:
            pbits = 0
            for j, v in enumerate(pdig):
                pbits |= 1 << ((j % n) * n + v)
            rows = np.flatnonzero((bits | np.uint64(pbits)) == full_bits)
            sub = suffix[rows]
        else:
            sub = suffix
        if len(sub):
            digits = np.empty((len(sub), space.positions), dtype=np.uint8)
            digits[:, :prefix_len] = pdig
            digits[:, prefix_len:] = sub
            tables = space.decode(digits)
            mask = apply_filters(filters, tables)
            hits = np.flatnonzero(mask)
            if hits.size:
                local = hits if rows is None else rows[hits]
                if res.first is None:
                    res.first = p * block + int(local[0])
                res.matches += int(hits.size)
                matched = tables[hits]
                if up_to_iso:
                    res.codes.update(np.unique(canonical_codes(matched)).tolist())
                if collect:
                    res.tables.append(matched)
        res.scanned += block
        if progress and time.monotonic() - last_report > 5:
            last_report = time.monotonic()
            print(f"  prefix {p - lo + 1}/{hi - lo}, {res.matches} matches", file=sys.stderr, flush=True)
    return res


# ---------------------------------------------------------------------------
# public API


@dataclass
class CensusReport:
    order: int
    filter: str
    total: int
    matches: int
    matches_up_to_iso: Optional[int]
    elapsed: float
    shards: int
    restrict: Optional[str] = None
    first_match: Optional[tuple[int, ...]] = None
    canonical: Optional[list[tuple[int, ...]]] = None
    tables: Optional[np.ndarray] = None

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "filter": self.filter,
            "restrict": self.restrict,
            "total": self.total,
            "matches": self.matches,
            "matches_up_to_iso": self.matches_up_to_iso,
            "shards": self.shards,
            "elapsed": round(self.elapsed, 6),
            "first_match": None if self.first_match is None else list(self.first_match),
        }

    def same_counts(self, other: CensusReport) -> bool:
        return (self.total, self.matches, self.matches_up_to_iso, self.first_match, self.canonical) == (
            other.total, other.matches, other.matches_up_to_iso, other.first_match, other.canonical)

    def render(self) -> str:
        rows = [
            ("order", self.order),
            ("filter", self.filter),
            ("restrict", self.restrict or "-"),
            ("total", self.total),
            ("matches", self.matches),
            ("matches up to iso", "-" if self.matches_up_to_iso is None else self.matches_up_to_iso),
            ("shards", self.shards),
            ("elapsed (s)", f"{self.elapsed:.3f}"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)

    def magmas(self) -> list[Magma]:
        if self.tables is None:
            raise MagmaError("census was run without collect=True")
        return [from_flat(self.order, t.ravel().tolist()) for t in self.tables]


def default_shards() -> int:
    raw = os.environ.get("MAGMALAB_SHARDS")
    if not raw:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise MagmaError(f"MAGMALAB_SHARDS must be a positive integer, got {raw!r}") from None
    if k < 1:
        raise MagmaError(f"MAGMALAB_SHARDS must be a positive integer, got {raw!r}")
    return k


def _run(space: Space, spec: FilterSpec, up_to_iso: bool, shards: Optional[int], collect: bool,
         progress: bool, workers: Optional[int]) -> CensusReport:
    shards = default_shards() if shards is None else shards
    if shards < 1:
        raise MagmaError("shards must be >= 1")
    start = time.perf_counter()
    filters = resolve_filters(spec)
    fast = space.kind == "full" and any(f.implies_right_entire for f in filters)
    prefix_len = _split(space, shards, FAST_CHUNK if fast else CHUNK)
    n_prefix = space.base ** prefix_len
    bounds = [(i * n_prefix // shards, (i + 1) * n_prefix // shards) for i in range(shards)]
    workers = min(shards, os.cpu_count() or 1) if workers is None else workers
    args = [(space, spec, prefix_len, lo, hi, up_to_iso, collect, progress) for lo, hi in bounds]
    if workers > 1 and isinstance(spec, str) and space.size > 1_000_000:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_shard_star, args))
    else:
        results = [_scan_shard(*a) for a in args]

    codes = set().union(*(r.codes for r in results))
    firsts = [r.first for r in results if r.first is not None]
    first = None
    if firsts:
        digits = _prefix_digits(space.base, space.positions, min(firsts))
        first = tuple(int(v) for v in space.decode(np.array([digits], dtype=np.uint8)).ravel())
    tables = None
    if collect:
        parts = [t for r in results for t in r.tables]
        n = space.order
        tables = np.concatenate(parts) if parts else np.zeros((0, n, n), dtype=np.intp)
    n = space.order
    return CensusReport(
        order=n,
        filter=filter_name(spec),
        total=sum(r.scanned for r in results),
        matches=sum(r.matches for r in results),
        matches_up_to_iso=len(codes) if up_to_iso else None,
        elapsed=time.perf_counter() - start,
        shards=shards,
        restrict=None if space.kind == "full" else space.kind,
        first_match=first,
        canonical=sorted(decode_code(c, n) for c in codes) if up_to_iso else None,
        tables=tables,
    )


def _scan_shard_star(args):
    return _scan_shard(*args)


def enumerate_magmas(n: int, spec: FilterSpec = "all", up_to_iso: bool = False,
                     shards: Optional[int] = None, allow_long_run: bool = False,
                     collect: bool = False, progress: bool = False,
                     workers: Optional[int] = None) -> CensusReport:
    """Scan all ``n**(n*n)`` tables of order ``n``.

    Orders up to 3 run freely; order 4 (about 4.3e9 tables) needs
    ``allow_long_run``.
    """
    if n < 1:
        raise MagmaError("order must be positive")
    limit = LONG_RUN_FULL_ORDER if allow_long_run else FULL_SCAN_MAX_ORDER
    if n > limit:
        hint = "" if n > LONG_RUN_FULL_ORDER else " (pass allow_long_run / --allow-long-run)"
        raise BoundExceeded(f"full census of order {n} exceeds bound {limit}{hint}")
    return _run(full_space(n), spec, up_to_iso, shards, collect, progress, workers)


def enumerate_right_entire(n: int, spec: FilterSpec = "all", up_to_iso: bool = False,
                           shards: Optional[int] = None, allow_long_run: bool = False,
                           collect: bool = False, progress: bool = False,
                           workers: Optional[int] = None) -> CensusReport:
    """Scan only tables whose every column is a permutation, ``(n!)**n`` candidates."""
    if n < 1:
        raise MagmaError("order must be positive")
    limit = LONG_RUN_RESTRICTED_ORDER if allow_long_run else RESTRICTED_MAX_ORDER
    if n > limit:
        raise BoundExceeded(f"right-entire census of order {n} exceeds bound {limit}")
    return _run(right_entire_space(n), spec, up_to_iso, shards, collect, progress, workers)


def census(n: int, spec: FilterSpec = "all", restrict: Optional[str] = None, **kw) -> CensusReport:
    if restrict in (None, "none", "full"):
        return enumerate_magmas(n, spec, **kw)
    if restrict == "right-entire":
        return enumerate_right_entire(n, spec, **kw)
    raise MagmaError(f"unknown restriction {restrict!r}")
