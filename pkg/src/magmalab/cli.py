"""Command-line front end.

Exit status: 0 when the property holds or verification passes, 1 when it
fails (a witness is printed), 2 on usage, parse or bound errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import census, core, properties, theorems
from .constructions import bin_product, direct_product
from .core import Magma, MagmaError
from .morphisms import canonical_form, homomorphisms, is_isomorphic
from .relations import dominated_elements, is_antisymmetric, is_reflexive, is_transitive, leq
from .subalgebra import is_divisible, subgroupoids

DEFAULT_CHECKS = ["condition-i", "condition-ii", "right-feeble", "right-entire", "right-asymmetric",
                  "associative", "group", "leftoid", "rightoid"]


class UsageError(MagmaError):
    pass


def _ints(values: Sequence[str]) -> list[int]:
    try:
        return [int(v) for v in values]
    except ValueError:
        raise UsageError(f"expected integers, got {' '.join(values)}") from None


def _arity(family: str, params: list[int], k: int) -> None:
    if len(params) != k:
        raise UsageError(f"gen {family} takes {k} parameter(s), got {len(params)}")


def generate(family: str, raw: Sequence[str]) -> Magma:
    p = _ints(raw)
    if family == "constant":
        _arity(family, p, 2)
        return core.constant(*p)
    if family == "left-zero":
        _arity(family, p, 1)
        return core.left_zero(*p)
    if family in ("leftoid", "rightoid"):
        if not p:
            raise UsageError(f"gen {family} takes n followed by n map values")
        n, f = p[0], p[1:]
        return core.leftoid(n, f) if family == "leftoid" else core.rightoid(n, f)
    if family == "cyclic":
        _arity(family, p, 1)
        return core.cyclic_group(*p)
    if family == "midpoint":
        _arity(family, p, 1)
        return core.midpoint(*p)
    if family == "affine":
        _arity(family, p, 4)
        return core.affine(*p)
    if family == "saturating-add":
        _arity(family, p, 1)
        return core.saturating_add(*p)
    if family == "multiplicative":
        _arity(family, p, 1)
        return core.multiplicative(*p)
    if family == "symmetric":
        _arity(family, p, 1)
        return core.symmetric_group(*p)
    raise UsageError(f"unknown family {family!r}")


FAMILIES = ["constant", "left-zero", "leftoid", "rightoid", "cyclic", "midpoint", "affine",
            "saturating-add", "multiplicative", "symmetric"]


def read_magma(source: str, stdin) -> Magma:
    if source == "-":
        text = stdin.read()
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    return core.parse(text)


def _emit_magma(m: Magma, as_json: bool, out) -> None:
    out.write(core.render_json(m) + "\n" if as_json else core.render(m))


def _verdict_line(v: properties.PropertyVerdict) -> str:
    s = f"{v.property:<18} {'holds' if v.holds else 'FAILS'}"
    if v.witness is not None:
        s += f"  witness {tuple(v.witness)}"
    if v.note:
        s += f"  [{v.note}]"
    return s


def cmd_check(args, out, stdin) -> int:
    m = read_magma(args.input, stdin)
    names = args.property or DEFAULT_CHECKS
    verdicts = [properties.check(m, name) for name in names]
    if args.json:
        out.write(json.dumps({"order": m.order, "verdicts": [v.to_json() for v in verdicts]}) + "\n")
    else:
        for v in verdicts:
            out.write(_verdict_line(v) + "\n")
    return 0 if all(v.holds for v in verdicts) else 1


def cmd_census(args, out, stdin) -> int:
    report = census.census(
        args.order, args.property, restrict=args.restrict, up_to_iso=args.up_to_iso,
        shards=args.shards, allow_long_run=args.allow_long_run, progress=args.progress)
    out.write((json.dumps(report.to_json()) if args.json else report.render()) + "\n")
    return 0


def cmd_verify(args, out, stdin) -> int:
    if args.all == bool(args.theorem):
        raise UsageError("verify needs exactly one of --theorem ID or --all")
    if args.all:
        reports = theorems.verify_all(args.max_order)
    else:
        reports = [theorems.verify(args.theorem, args.max_order)]
    if args.json:
        out.write(json.dumps([r.to_json() for r in reports]) + "\n")
    else:
        for r in reports:
            out.write(r.line() + "\n")
    return 0 if all(r.passed for r in reports) else 1


def _two(args, stdin) -> tuple[Magma, Magma]:
    if args.a == "-" and args.b == "-":
        raise UsageError("only one operand may be read from standard input")
    return read_magma(args.a, stdin), read_magma(args.b, stdin)


def cmd_product(args, out, stdin) -> int:
    a, b = _two(args, stdin)
    _emit_magma(direct_product(a, b), args.json, out)
    return 0


def cmd_binprod(args, out, stdin) -> int:
    a, b = _two(args, stdin)
    _emit_magma(bin_product(a, b), args.json, out)
    return 0


def cmd_subs(args, out, stdin) -> int:
    m = read_magma(args.input, stdin)
    rows = [(s.members, is_divisible(m, s).holds) for s in subgroupoids(m)]
    if args.json:
        out.write(json.dumps([{"members": list(mem), "divisible": d} for mem, d in rows]) + "\n")
    else:
        for mem, d in rows:
            out.write(f"{{{', '.join(map(str, mem))}}}{'  divisible' if d else ''}\n")
    return 0


def cmd_canon(args, out, stdin) -> int:
    m = read_magma(args.input, stdin)
    form = canonical_form(m)
    if args.json:
        out.write(json.dumps({"order": m.order, "canonical": list(form)}) + "\n")
    else:
        out.write(core.render(core.from_flat(m.order, form)))
    return 0


def cmd_iso(args, out, stdin) -> int:
    a, b = _two(args, stdin)
    perm = is_isomorphic(a, b)
    if args.json:
        out.write(json.dumps({"isomorphic": perm is not None,
                              "permutation": None if perm is None else list(perm)}) + "\n")
    else:
        out.write(f"isomorphic via {list(perm)}\n" if perm is not None else "not isomorphic\n")
    return 0 if perm is not None else 1


def cmd_hom(args, out, stdin) -> int:
    a, b = _two(args, stdin)
    homs = homomorphisms(a, b, surjective_only=args.surjective)
    if args.json:
        out.write(json.dumps([list(h.map) for h in homs]) + "\n")
    else:
        for h in homs:
            out.write(" ".join(map(str, h.map)) + "\n")
        out.write(f"{len(homs)} {'epi' if args.surjective else 'homo'}morphism(s)\n")
    return 0


def cmd_relation(args, out, stdin) -> int:
    m = read_magma(args.input, stdin)
    r = leq(m)
    verdicts = [is_reflexive(r), is_antisymmetric(r), is_transitive(r), dominated_elements(m)]
    if args.json:
        out.write(json.dumps({**r.to_json(), "verdicts": [v.to_json() for v in verdicts]}) + "\n")
    else:
        out.write(r.render() + "\n")
        for v in verdicts:
            out.write(_verdict_line(v) + "\n")
    return 0


def cmd_gen(args, out, stdin) -> int:
    _emit_magma(generate(args.family, args.params), args.json, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magmalab", description="Finite groupoid analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("check", cmd_check, "decide properties of a table")
    p.add_argument("input", help="table file, or - for standard input")
    p.add_argument("--property", action="append", choices=sorted(properties.PREDICATES),
                   help="property to decide (repeatable)")

    p = add("census", cmd_census, "count magmas of an order satisfying a filter")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--property", default="all", help="filter name; join with + for a conjunction")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--shards", type=int, default=None)
    p.add_argument("--restrict", choices=["right-entire"], default=None)
    p.add_argument("--allow-long-run", action="store_true")
    p.add_argument("--progress", action="store_true", help="report progress on stderr")

    p = add("verify", cmd_verify, "run the bounded theorem checks")
    p.add_argument("--theorem", metavar="ID")
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-order", type=int, default=None)

    for name, fn, help_ in [("product", cmd_product, "direct product"),
                            ("binprod", cmd_binprod, "Bin(X) product"),
                            ("iso", cmd_iso, "isomorphism test")]:
        p = add(name, fn, help_)
        p.add_argument("a")
        p.add_argument("b")
    p = add("hom", cmd_hom, "list homomorphisms")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--surjective", action="store_true")

    for name, fn, help_ in [("subs", cmd_subs, "list subgroupoids, flagging divisible ones"),
                            ("canon", cmd_canon, "canonical form"),
                            ("relation", cmd_relation, "the <= relation and its properties")]:
        p = add(name, fn, help_)
        p.add_argument("input")

    p = add("gen", cmd_gen, "emit a table from a constructor family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*")
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, stdin=None) -> int:
    out = sys.stdout if out is None else out
    stdin = sys.stdin if stdin is None else stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, out, stdin)
    except MagmaError as exc:
        print(f"magmalab: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
