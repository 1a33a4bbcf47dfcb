"""Bounded verification of the structural claims about right feeble groups.

Each registry entry draws a family of instances that satisfy the claim's
hypotheses (censuses, constructor families) and checks the conclusion on
every one.  A failure carries a concrete counterexample that
:func:`recheck` can confirm independently of the entry that produced it.

Passing ``instances`` to :func:`verify` replaces the default family; the
injected magmas are taken to satisfy the hypotheses without re-checking,
which is what lets a mutated fixture surface as a FAIL.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from . import census
from .constructions import bin_product, direct_product, klein_four
from .core import (BoundExceeded, Magma, MagmaError, affine, constant, cyclic_group, from_table,
                   is_prime, left_zero, leftoid, midpoint, saturating_add, symmetric_group)
from .morphisms import homomorphisms, is_isomorphic
from .properties import (PREDICATES, as_group, as_leftoid, check, is_center_member,
                         is_right_entire, pair_swap_condition)
from .relations import (dominated_elements, is_antisymmetric, is_reflexive, is_transitive, leq,
                        restricted_leq_preserved)
from .subalgebra import (Subgroupoid, _mask, divisible_subgroupoids, intersection, is_closed, is_divisible,
                         subgroupoids)


class UnknownTheorem(MagmaError):
    pass


@dataclass
class TheoremReport:
    theorem: str
    bound: str
    verdict: str
    checked: int
    elapsed: float
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "bound": self.bound,
            "verdict": self.verdict,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }

    def line(self) -> str:
        s = f"{self.verdict}  {self.theorem:<26} {self.bound}  [{self.checked} checked, {self.elapsed:.2f}s]"
        if self.counterexample:
            cex = self.counterexample
            s += f"\n      counterexample: {cex['property']} on {cex['magma']['table']} witness={cex['witness']}"
            if cex.get("detail"):
                s += f" ({cex['detail']})"
        return s


def counterexample(m: Magma, prop: str, witness=None, detail: str = "", **extra) -> dict:
    out = {
        "magma": m.to_json(),
        "property": prop,
        "witness": None if witness is None else list(witness),
        "detail": detail,
    }
    out.update(extra)
    return out


class Failed(Exception):
    def __init__(self, cex: dict):
        super().__init__(cex["property"])
        self.cex = cex


def _require(verdict, m: Magma, detail: str = "", **extra):
    if not verdict.holds:
        raise Failed(counterexample(m, verdict.property, verdict.witness, detail, **extra))


# ---------------------------------------------------------------------------
# instance families


@lru_cache(maxsize=None)
def census_magmas(n: int, spec: str) -> tuple[Magma, ...]:
    report = census.enumerate_magmas(n, spec, collect=True, shards=1)
    return tuple(report.magmas())


def all_magmas(n: int) -> tuple[Magma, ...]:
    return census_magmas(n, "all")


def census_upto(max_order: int, spec: str, lo: int = 1) -> list[Magma]:
    return [m for n in range(lo, max_order + 1) for m in census_magmas(n, spec)]


@lru_cache(maxsize=None)
def divisible_of(m: Magma) -> tuple[Subgroupoid, ...]:
    return tuple(divisible_subgroupoids(m))


def named_groups(max_order: int) -> list[Magma]:
    out = [cyclic_group(k) for k in range(1, max_order + 1)]
    if max_order >= 4:
        out.append(klein_four())
    if max_order >= 6:
        out.append(symmetric_group(3))
    return out


def all_maps(n: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(n), repeat=n)


# ---------------------------------------------------------------------------
# checks: each takes (max_order, instances) and returns (bound text, checked count)


def _groups_right_feeble(n, inst):
    fam = inst if inst is not None else named_groups(n)
    for g in fam:
        _require(check(g, "right-feeble"), g)
    return f"cyclic groups 1..{n}" + (", Klein four" if n >= 4 else "") + (", S3" if n >= 6 else ""), len(fam)


def _surjective_leftoids(n, inst):
    fam = inst if inst is not None else [
        leftoid(k, f) for k in range(1, n + 1) for f in itertools.permutations(range(k))]
    for m in fam:
        _require(check(m, "right-feeble"), m, "leftoid over a surjection")
    return f"leftoids over all surjections, orders 1..{n}", len(fam)


def _disjoint(spec: str):
    def run(n, inst):
        if inst is not None:
            # injected candidates: any member of order > 1 lying in every class refutes the claim
            for m in inst:
                if m.order > 1 and all(check(m, p).holds for p in spec.split("+")):
                    raise Failed(counterexample(m, f"disjoint:{spec}", None,
                                                f"order {m.order} magma lies in every class of {spec}"))
            return f"{len(inst)} injected instances, intersection of {spec}", len(inst)
        checked = 0
        for k in range(1, n + 1):
            fam = census_magmas(k, spec)
            checked += k ** (k * k)
            expected = 1 if k == 1 else 0
            if len(fam) != expected:
                if k > 1:
                    raise Failed(counterexample(fam[0], f"disjoint:{spec}", None,
                                                f"order {k} magma lies in every class of {spec}"))
                raise Failed(counterexample(from_table(1, [[0]]), f"singleton:{spec}", None,
                                            "order-1 magma missing from the intersection"))
        return f"full census orders 1..{n}, intersection of {spec}", checked
    return run


def _epi_images(source_spec: str, prop: str):
    def run(n, inst):
        sources = inst if inst is not None else census_upto(n, source_spec)
        targets = [t for k in range(1, min(n, 2) + 1) for t in all_magmas(k)]
        checked = 0
        for a in sources:
            for b in targets:
                if b.order > a.order:
                    continue
                for h in homomorphisms(a, b, surjective_only=True):
                    checked += 1
                    _require(check(b, prop), b, f"image of {a.table} under {list(h.map)}",
                             source=a.to_json(), map=list(h.map))
        return f"{source_spec} sources orders 1..{n} x epimorphisms onto orders <= {min(n, 2)}", checked
    return run


def _products(spec: str, prop: str, extra: Callable[[int], list]):
    def run(n, inst):
        factors = inst if inst is not None else census_upto(min(n, 2), spec)
        pairs = [(a, b) for a in factors for b in factors]
        if inst is None:
            pairs += extra(n)
        for a, b in pairs:
            _require(check(direct_product(a, b), prop), direct_product(a, b),
                     f"product of {a.table} and {b.table}")
        return f"all pairs from the {spec} census orders <= {min(n, 2)}" + (
            " + named pairs" if extra(n) else ""), len(pairs)
    return run


def _midpoint_pair(n):
    return [(midpoint(3), cyclic_group(2))] if n >= 3 else []


def _divisible_inherits(parent_spec: str, prop: str):
    def run(n, inst):
        parents = inst if inst is not None else census_upto(n, parent_spec)
        checked = 0
        for m in parents:
            for sub in divisible_of(m):
                checked += 1
                r = sub.restricted()
                _require(check(r, prop), r, f"divisible subgroupoid {list(sub.members)} of {m.table}",
                         parent=m.to_json(), members=list(sub.members))
        return f"{parent_spec} magmas orders 1..{n} x divisible subgroupoids", checked
    return run


def _premise_conclusion(premise: str, conclusion: str):
    def run(n, inst):
        fam = inst if inst is not None else census_upto(n, premise)
        for m in fam:
            _require(check(m, conclusion), m, f"{premise} magma")
        return f"{premise} census orders 1..{n}", len(fam)
    return run


def _implies_leq(premise: str, conclusion: Callable):
    def run(n, inst):
        fam = inst if inst is not None else census_upto(n, premise)
        for m in fam:
            _require(conclusion(leq(m)), m, f"{premise} magma")
        return f"{premise} census orders 1..{n}", len(fam)
    return run


def _asym_iff_antisym(n, inst):
    fam = inst if inst is not None else census_upto(n, "all")
    for m in fam:
        a = check(m, "right-asymmetric")
        b = is_antisymmetric(leq(m))
        if a.holds != b.holds:
            raise Failed(counterexample(m, "asym-iff-antisym", a.witness or b.witness,
                                        f"right-asymmetric={a.holds} antisymmetric={b.holds}"))
    return f"full census orders 1..{n}", len(fam)


def _leftoid_entire_surjective(n, inst):
    fam = inst if inst is not None else [leftoid(k, f) for k in range(1, n + 1) for f in all_maps(k)]
    for m in fam:
        f = as_leftoid(m)
        if f is not None and is_right_entire(m).holds:
            if len(set(f)) != m.order:
                raise Failed(counterexample(m, "leftoid-surjective", f, "right entire leftoid over a non-surjection"))
    return f"leftoids over all maps, orders 1..{n}", len(fam)


def _dominated(n, inst):
    fam = inst if inst is not None else census_upto(n, "all")
    for m in fam:
        _require(dominated_elements(m), m)
    return f"full census orders 1..{n}", len(fam)


def _leq_restricts(n, inst):
    fam = inst if inst is not None else census_upto(n, "all")
    checked = 0
    for m in fam:
        for sub in divisible_of(m):
            checked += 1
            _require(restricted_leq_preserved(m, sub), m, f"divisible subgroupoid {list(sub.members)}",
                     members=list(sub.members))
    return f"full census orders 1..{n} x divisible subgroupoids", checked


def _divisible_intersections(n, inst):
    fam = inst if inst is not None else census_upto(n, "all")
    checked = 0
    for m in fam:
        subs = divisible_of(m)
        for a, b in itertools.combinations(subs, 2):
            common = tuple(x for x in a.members if x in b.members)
            if not common:
                continue
            checked += 1
            if not is_closed(m, _mask(common)):
                raise Failed(counterexample(m, "divisible-intersection", None, "intersection not closed",
                                            members=[list(a.members), list(b.members)]))
            v = is_divisible(m, intersection(a, b))
            if not v.holds:
                raise Failed(counterexample(m, "divisible-intersection", v.witness,
                                            "intersection not divisible",
                                            members=[list(a.members), list(b.members)]))
    return f"full census orders 1..{n}, pairs of divisible subgroupoids", checked


def _subgroups_divisible(n, inst):
    fam = inst if inst is not None else named_groups(n)
    checked = 0
    for g in fam:
        for sub in subgroupoids(g):
            if as_group(sub.restricted()) is None:
                continue
            checked += 1
            _require(is_divisible(g, sub), g, f"subgroup {list(sub.members)}", members=list(sub.members))
    return f"subgroups of cyclic groups 1..{n}" + (", Klein four" if n >= 4 else "") + (
        ", S3" if n >= 6 else ""), checked


def _left_zero_identity(n, inst):
    fam = inst if inst is not None else census_upto(n, "all")
    for m in fam:
        z = left_zero(m.order)
        if bin_product(z, m) != m:
            raise Failed(counterexample(m, "left-zero-identity", None, "left_zero [] m != m"))
        if bin_product(m, z) != m:
            raise Failed(counterexample(m, "left-zero-identity", None, "m [] left_zero != m"))
    return f"all magmas orders 1..{n}", len(fam)


def _leftoid_composition(n, inst):
    checked = 0
    for k in range(1, n + 1):
        maps = list(all_maps(k))
        for f in maps:
            for g in maps:
                checked += 1
                got = bin_product(leftoid(k, f), leftoid(k, g))
                gf = tuple(g[f[x]] for x in range(k))
                if got != leftoid(k, gf):
                    raise Failed(counterexample(got, "leftoid-composition", None,
                                                f"f={list(f)} g={list(g)}", maps=[list(f), list(g)]))
    return f"all map pairs, orders 1..{n}", checked


def _constant_iso(n, inst):
    checked = 0
    for k in range(1, n + 1):
        for c in range(k):
            for d in range(k):
                checked += 1
                a, b = constant(k, c), constant(k, d)
                if is_isomorphic(a, b) is None:
                    raise Failed(counterexample(a, "constant-iso", None, f"not isomorphic to constant {d}",
                                                maps=[[c], [d]]))
    return f"all constant pairs, orders 1..{n}", checked


def _center_pair(n, inst):
    fam = inst if inst is not None else census_upto(n, "center")
    for m in fam:
        _require(is_center_member(m), m, "center census member")
        _require(pair_swap_condition(m), m, "center member")
    return f"center census orders 1..{n}", len(fam)


def _leftoid_rightoid_constant(n, inst):
    checked = 0
    for k in range(1, n + 1):
        report = census.enumerate_magmas(k, "leftoid+rightoid", up_to_iso=True, collect=True, shards=1)
        checked += report.total
        for m in report.magmas():
            if not PREDICATES["constant"](m).holds:
                raise Failed(counterexample(m, "constant", None, "leftoid and rightoid but not constant"))
        if report.matches != k or report.matches_up_to_iso != 1:
            m = report.magmas()[-1] if report.matches else constant(k, 0)
            raise Failed(counterexample(m, "constant-classes", None,
                                        f"{report.matches} matches, {report.matches_up_to_iso} classes"))
    return f"full census orders 1..{n}", checked


def _bin_associative(n, inst):
    checked = 0
    for k in range(1, n + 1):
        ms = all_magmas(k)
        for a in ms:
            for b in ms:
                ab = bin_product(a, b)
                for c in ms:
                    checked += 1
                    if bin_product(ab, c) != bin_product(a, bin_product(b, c)):
                        raise Failed(counterexample(a, "bin-associative", None, "(a[]b)[]c != a[](b[]c)",
                                                    operands=[b.to_json(), c.to_json()]))
    return f"all triples, orders 1..{n}", checked


def _midpoints(n, inst):
    fam = inst if inst is not None else [midpoint(m) for m in range(1, n + 1, 2)]
    for m in fam:
        _require(check(m, "right-feeble"), m)
        if m.order > 1:
            for prop in ("associative", "group"):
                if check(m, prop).holds:
                    raise Failed(counterexample(m, f"not:{prop}", None, "midpoint magma"))
    return f"midpoint magmas, odd moduli 1..{n}", len(fam)


def _affines(n, inst):
    fam = inst if inst is not None else [
        affine(p, a, b, c) for p in range(2, n + 1) if is_prime(p)
        for a in range(p) for b in range(1, p) for c in range(1, p)]
    for m in fam:
        _require(check(m, "right-feeble"), m, "affine magma")
    return f"affine magmas over primes <= {n}, all admissible parameters", len(fam)


def _saturating_not_feeble(n, inst):
    fam = inst if inst is not None else [saturating_add(k) for k in range(1, n)]
    for m in fam:
        if check(m, "right-feeble").holds:
            raise Failed(counterexample(m, "not:right-feeble", None, "saturating addition"))
    return f"saturating_add(k), k = 1..{n - 1}", len(fam)


def _saturating_asymmetric(n, inst):
    fam = inst if inst is not None else [saturating_add(k) for k in range(0, n)]
    for m in fam:
        _require(check(m, "right-asymmetric"), m, "saturating addition")
    return f"saturating_add(k), k = 0..{n - 1}", len(fam)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Theorem:
    id: str
    claim: str
    run: Callable
    default: int
    limit: int


REGISTRY: dict[str, Theorem] = {t.id: t for t in [
    Theorem("PROP_3_3", "groups are right feeble", _groups_right_feeble, 8, 8),
    Theorem("PROP_3_4", "a leftoid over a surjection is right feeble", _surjective_leftoids, 4, 5),
    Theorem("THM_3_5", "groups and leftoids meet only in the one-element magma", _disjoint("group+leftoid"), 3, 3),
    Theorem("PROP_3_6", "epimorphic images of right feeble magmas are right feeble",
            _epi_images("right-feeble", "right-feeble"), 3, 3),
    Theorem("PROP_3_7", "direct products of right feeble magmas are right feeble",
            _products("right-feeble", "right-feeble", _midpoint_pair), 3, 3),
    Theorem("THM_3_10", "divisible subgroupoids of right feeble magmas are right feeble",
            _divisible_inherits("right-feeble", "right-feeble"), 3, 3),
    Theorem("SEC3_DIVISIBLE_INTERSECTION", "nonempty intersections of divisible subgroupoids are divisible",
            _divisible_intersections, 3, 3),
    Theorem("PROP_4_1", "right feeble implies right entire",
            _premise_conclusion("right-feeble", "right-entire"), 3, 3),
    Theorem("PROP_4_2", "direct products of right entire magmas are right entire",
            _products("right-entire", "right-entire", lambda n: []), 3, 3),
    Theorem("PROP_4_3", "epimorphic images of right entire magmas are right entire",
            _epi_images("right-entire", "right-entire"), 3, 3),
    Theorem("PROP_4_4", "a right entire leftoid has a surjective map", _leftoid_entire_surjective, 4, 5),
    Theorem("THM_4_6", "right entire and right asymmetric meet only in the one-element magma",
            _disjoint("right-entire+right-asymmetric"), 3, 3),
    Theorem("PROP_5_1", "right entire implies <= reflexive", _implies_leq("right-entire", is_reflexive), 3, 3),
    Theorem("PROP_5_2", "right asymmetric iff <= antisymmetric", _asym_iff_antisym, 3, 3),
    Theorem("PROP_5_3", "right feeble implies <= transitive", _implies_leq("right-feeble", is_transitive), 3, 3),
    Theorem("PROP_5_4", "a left identity implies <= reflexive", _implies_leq("left-identity", is_reflexive), 3, 3),
    Theorem("PROP_5_5", "a surjective row makes every element dominated", _dominated, 3, 3),
    Theorem("PROP_5_6", "<= between members survives restriction to a divisible subgroupoid", _leq_restricts, 3, 3),
    Theorem("THM_5_7", "divisible subgroupoids of right entire magmas are right entire",
            _divisible_inherits("right-entire", "right-entire"), 3, 3),
    Theorem("PROP_5_8", "divisible subgroupoids of right asymmetric magmas are right asymmetric",
            _divisible_inherits("right-asymmetric", "right-asymmetric"), 3, 3),
    Theorem("PROP_5_9", "subgroups of groups are divisible", _subgroups_divisible, 8, 8),
    Theorem("SEC2_LEFTZERO_ID", "the left-zero magma is a two-sided identity for the Bin(X) product",
            _left_zero_identity, 3, 3),
    Theorem("SEC2_LEFTOID_COMP", "leftoid(f) [] leftoid(g) = leftoid(g o f)", _leftoid_composition, 3, 4),
    Theorem("SEC2_BIN_ASSOC", "the Bin(X) product is associative", _bin_associative, 2, 2),
    Theorem("SEC2_CONSTANT_ISO", "constant magmas of equal order are isomorphic", _constant_iso, 4, 6),
    Theorem("SEC2_CENTER_PAIR", "Bin(X) center members satisfy {x*y, y*x} = {x, y}", _center_pair, 3, 3),
    Theorem("SEC2_K1K2", "left-absorbing zero and right-identity forcing meet only in the one-element magma",
            _disjoint("zero-fixed+right-id-forcing-any"), 3, 3),
    Theorem("SEC2_LEFTOID_RIGHTOID", "leftoids that are rightoids are exactly the constants, one class per order",
            _leftoid_rightoid_constant, 3, 3),
    Theorem("EX_3_1_ANALOG", "midpoint magmas are right feeble, non-associative, not groups", _midpoints, 7, 15),
    Theorem("EX_3_2_ANALOG", "affine magmas over prime fields are right feeble", _affines, 5, 7),
    Theorem("EX_3_8_ANALOG", "saturating addition is not right feeble", _saturating_not_feeble, 7, 9),
    Theorem("EX_4_5_ANALOG", "saturating addition is right asymmetric", _saturating_asymmetric, 7, 9),
]}


def theorem_ids() -> list[str]:
    return list(REGISTRY)


def verify(theorem_id: str, max_order: Optional[int] = None, instances: Optional[list[Magma]] = None) -> TheoremReport:
    try:
        entry = REGISTRY[theorem_id]
    except KeyError:
        raise UnknownTheorem(f"unknown theorem id {theorem_id!r}") from None
    n = entry.default if max_order is None else max_order
    if n < 1:
        raise MagmaError("max_order must be positive")
    if n > entry.limit:
        raise BoundExceeded(f"{theorem_id} is bounded at order {entry.limit}, asked for {n}")
    start = time.perf_counter()
    try:
        bound, checked = entry.run(n, instances)
    except Failed as exc:
        return TheoremReport(theorem_id, f"orders <= {n}", "FAIL", 0, time.perf_counter() - start, exc.cex)
    return TheoremReport(theorem_id, bound, "PASS", checked, time.perf_counter() - start)


def _verify_clipped(args):
    tid, max_order = args
    entry = REGISTRY[tid]
    return verify(tid, None if max_order is None else min(max_order, entry.limit))


def verify_all(max_order: Optional[int] = None, workers: int = 1) -> list[TheoremReport]:
    """Run every entry; ``max_order`` caps each entry at ``min(max_order, its limit)``."""
    args = [(tid, max_order) for tid in REGISTRY]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_verify_clipped, args))
    return [_verify_clipped(a) for a in args]


# ---------------------------------------------------------------------------
# independent re-check of counterexamples


def recheck(cex: dict) -> bool:
    """True iff the counterexample is a genuine violation of its named property."""
    m = from_table(cex["magma"]["order"], cex["magma"]["table"])
    prop = cex["property"]
    if prop.startswith("not:"):
        return check(m, prop[4:]).holds
    if prop.startswith("disjoint:"):
        return m.order > 1 and all(check(m, p).holds for p in prop[9:].split("+"))
    if prop in PREDICATES:
        return not check(m, prop).holds
    if prop == "reflexive":
        return not is_reflexive(leq(m)).holds
    if prop == "transitive":
        return not is_transitive(leq(m)).holds
    if prop == "antisymmetric":
        return not is_antisymmetric(leq(m)).holds
    if prop == "asym-iff-antisym":
        return check(m, "right-asymmetric").holds != is_antisymmetric(leq(m)).holds
    if prop == "divisible":
        return not is_divisible(m, tuple(cex["members"])).holds
    if prop == "leq-restricts":
        return not restricted_leq_preserved(m, Subgroupoid(m, tuple(cex["members"]))).holds
    if prop == "dominated":
        return not dominated_elements(m).holds
    if prop == "leftoid-surjective":
        f = as_leftoid(m)
        return is_right_entire(m).holds and f is not None and len(set(f)) != m.order
    if prop == "left-zero-identity":
        z = left_zero(m.order)
        return bin_product(z, m) != m or bin_product(m, z) != m
    if prop.startswith("singleton:"):
        return not all(check(m, p).holds for p in prop[10:].split("+"))
    if prop == "constant-classes":
        report = census.enumerate_magmas(m.order, "leftoid+rightoid", up_to_iso=True, shards=1)
        return report.matches != m.order or report.matches_up_to_iso != 1
    if prop == "leftoid-composition":
        f, g = cex["maps"]
        k = len(f)
        return bin_product(leftoid(k, f), leftoid(k, g)) != leftoid(k, [g[f[x]] for x in range(k)])
    if prop == "constant-iso":
        (c,), (d,) = cex["maps"]
        return is_isomorphic(constant(m.order, c), constant(m.order, d)) is None
    if prop == "bin-associative":
        b, c = (from_table(o["order"], o["table"]) for o in cex["operands"])
        return bin_product(bin_product(m, b), c) != bin_product(m, bin_product(b, c))
    if prop == "divisible-intersection":
        a, b = cex["members"]
        common = tuple(x for x in a if x in b)
        premise = (bool(common) and is_closed(m, _mask(a)) and is_closed(m, _mask(b))
                   and is_divisible(m, a).holds and is_divisible(m, b).holds)
        return premise and not (is_closed(m, _mask(common)) and is_divisible(m, common).holds)
    raise MagmaError(f"no re-check available for property {prop!r}")
