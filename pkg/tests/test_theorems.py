import json

import pytest

from magmalab.core import BoundExceeded, MagmaError, cyclic_group, from_flat, from_table, left_zero, saturating_add
from magmalab.properties import all_tables_array
from magmalab.theorems import REGISTRY, UnknownTheorem, recheck, theorem_ids, verify, verify_all


def flipped(m, x, y, v):
    t = [list(r) for r in m.table]
    t[x][y] = v
    return from_table(m.order, t)


def test_registry_shape():
    ids = theorem_ids()
    assert len(ids) == len(set(ids)) == 32
    for t in REGISTRY.values():
        assert 1 <= t.default <= t.limit


def test_single_entries_pass():
    r = verify("THM_4_6", max_order=3)
    assert r.passed and r.verdict == "PASS"
    assert r.counterexample is None
    assert r.checked == 1 + 16 + 19683
    r = verify("PROP_3_3", max_order=6)
    assert r.passed
    assert "S3" in r.bound


def test_unknown_theorem():
    with pytest.raises(UnknownTheorem):
        verify("PROP_9_9")
    with pytest.raises(MagmaError):
        verify("PROP_3_3", max_order=0)


def test_bound_exceeded():
    for tid, t in REGISTRY.items():
        with pytest.raises(BoundExceeded):
            verify(tid, max_order=t.limit + 1)


@pytest.mark.parametrize("max_order", [1, 3])
def test_verify_all_clipped(max_order):
    reports = verify_all(max_order)
    assert [r.theorem for r in reports] == theorem_ids()
    failed = [r.line() for r in reports if not r.passed]
    assert not failed


def test_verify_all_defaults():
    reports = verify_all()
    assert all(r.passed for r in reports)


def test_reports_deterministic():
    a = [json.dumps(r.to_json(), sort_keys=True) for r in verify_all(2)]
    b = [json.dumps(r.to_json(), sort_keys=True) for r in verify_all(2)]
    assert a == b


def test_mutated_group_fails_divisible_inheritance():
    bad = flipped(cyclic_group(3), 0, 0, 1)
    r = verify("THM_3_10", instances=[bad])
    assert r.verdict == "FAIL" and not r.passed
    cex = r.counterexample
    assert cex["property"] == "right-feeble"
    assert recheck(cex)
    assert "counterexample" in r.line()


@pytest.mark.parametrize("tid, instances, prop", [
    ("PROP_3_3", [flipped(cyclic_group(3), 1, 1, 0)], "right-feeble"),
    ("PROP_4_1", [saturating_add(2)], "right-entire"),
    ("PROP_5_3", [from_table(3, [[0, 0, 0], [2, 1, 1], [0, 1, 1]])], "transitive"),
    ("THM_5_7", [flipped(cyclic_group(3), 0, 0, 1)], "right-entire"),
    ("PROP_5_8", [flipped(cyclic_group(3), 0, 0, 1)], "right-asymmetric"),
    ("EX_3_8_ANALOG", [cyclic_group(3)], "not:right-feeble"),
    ("EX_4_5_ANALOG", [cyclic_group(3)], "right-asymmetric"),
    ("PROP_3_7", [saturating_add(1)], "right-feeble"),
])
def test_mutants_are_caught(tid, instances, prop):
    r = verify(tid, instances=instances)
    assert r.verdict == "FAIL"
    assert r.counterexample["property"] == prop
    assert recheck(r.counterexample)


def test_injected_candidates_outside_intersection_pass():
    assert verify("THM_4_6", instances=[cyclic_group(2), left_zero(2)]).passed
    assert verify("PROP_4_4", instances=[cyclic_group(2)]).passed


@pytest.mark.parametrize("tid", theorem_ids())
def test_every_reported_counterexample_rechecks(tid):
    # feed unfiltered order-2 magmas; whatever the runner reports must be a genuine violation
    ms = [from_flat(2, t.ravel().tolist()) for t in all_tables_array(2)]
    r = verify(tid, max_order=min(2, REGISTRY[tid].limit), instances=ms)
    if r.verdict == "FAIL":
        assert recheck(r.counterexample)
        json.dumps(r.to_json())


def test_recheck_rejects_non_counterexamples():
    good = cyclic_group(3).to_json()
    assert not recheck({"magma": good, "property": "right-feeble", "witness": None, "detail": ""})
    assert not recheck({"magma": good, "property": "reflexive", "witness": None, "detail": ""})
    with pytest.raises(MagmaError):
        recheck({"magma": good, "property": "made-up", "witness": None, "detail": ""})
