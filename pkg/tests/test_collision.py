"""Collision enumeration, the infinite family, and the coordinate change."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from collisionlab import arith, collision
from collisionlab.collision import CollisionRecord, ParamTuple, Representation

from conftest import EXPECTED_TABLE


def test_enumeration_matches_expected_table(records_25k):
    got = {r.N: [(rep.x, rep.a) for rep in r.reps] for r in records_25k}
    assert got == EXPECTED_TABLE


def test_enumeration_sorted_and_verified(records_25k):
    values = [r.N for r in records_25k]
    assert values == sorted(values)
    for rec in records_25k:
        for rep in rec.reps:
            assert arith.binomial(rep.x, rep.a) == rec.N


def test_enumeration_nothing_new_below_1e6(records_25k):
    # the seven sporadic values are the only ones below one million
    assert len(collision.enumerate_collisions(10**6)) == len(records_25k)


def test_enumeration_rejects_tiny_bound():
    with pytest.raises(ValueError):
        collision.enumerate_collisions(5)


def test_representation_canonical_validation():
    with pytest.raises(ValueError):
        Representation(10, 1)   # a must be >= 2
    with pytest.raises(ValueError):
        Representation(10, 6)   # a must be <= x/2
    Representation(10, 5)


def test_collision_record_validation():
    r1 = Representation(16, 2)
    r2 = Representation(10, 3)
    CollisionRecord(120, (r1, r2))
    with pytest.raises(ValueError):
        CollisionRecord(120, (r1,))           # needs two representations
    with pytest.raises(ValueError):
        CollisionRecord(121, (r1, r2))        # values must match N
    with pytest.raises(ValueError):
        CollisionRecord(120, (r2, r1))        # sorted by descending x


def test_fib_identity_first_members():
    # i = 1 is the classic C(15,5) = C(14,6) pair
    m1 = collision.fib_identity(1)
    assert (m1.x, m1.a, m1.y, m1.b) == (15, 5, 14, 6)
    assert m1.verified
    m0 = collision.fib_identity(0)
    assert (m0.x, m0.a, m0.y, m0.b) == (2, 0, 1, 1)
    assert m0.verified   # both sides equal 1


def test_fib_identity_verified_through_i4():
    for i in range(5):
        assert collision.fib_identity(i).verified


def test_fib_identity_rejects_negative():
    with pytest.raises(ValueError):
        collision.fib_identity(-1)


def test_to_param_known_tuples():
    assert collision.to_param(15, 5, 14, 6) == ParamTuple(0, 7, 1, 2, 1)
    assert collision.to_param(21, 2, 10, 4) == ParamTuple(0, 5, 1, 3, 11)
    assert collision.to_param(16, 2, 10, 3) == ParamTuple(0, 5, 2, 3, 6)
    assert collision.to_param(104, 39, 103, 40) == ParamTuple(1, 51, 11, 12, 2)


def test_to_param_requires_x_above_y():
    with pytest.raises(ValueError):
        collision.to_param(10, 3, 16, 2)


def test_param_round_trip(records_25k):
    for rec in records_25k:
        reps = [(r.x, r.a) for r in rec.reps]
        for x, a in reps:
            for y, b in reps:
                if x <= y:
                    continue
                t = collision.to_param(x, a, y, b)
                assert collision.from_param(t) == (x, a, y, b)
                assert collision.check_eq12(t)


def test_param_tuple_derived_quantities():
    t = ParamTuple(0, 7, 1, 2, 1)
    assert t.k0 == 5
    assert t.m0 == 1
    assert t.ordering_ok and t.l_gt_delta and not t.scale_ok
    t2 = ParamTuple(0, 5, 1, 3, 11)
    assert not t2.ordering_ok          # 2k = 6 is not below n = 5
    assert t2.m0 == max(1 + 0, 11 // 2)


def test_param_tuple_validation():
    with pytest.raises(ValueError):
        ParamTuple(2, 5, 1, 2, 1)
    with pytest.raises(ValueError):
        ParamTuple(0, -1, 1, 2, 1)


def test_hypotheses_dict_keys():
    t = ParamTuple(0, 7, 1, 2, 1)
    assert set(t.hypotheses()) == {"ordering", "ratio", "l_gt_delta", "scale"}


def test_check_eq12_on_non_collision():
    assert not collision.check_eq12(ParamTuple(0, 7, 1, 2, 2))


@given(
    st.integers(min_value=0, max_value=1),
    st.integers(min_value=2, max_value=60),
    st.integers(min_value=0, max_value=20),
    st.integers(min_value=0, max_value=20),
    st.integers(min_value=0, max_value=10),
)
@settings(max_examples=300)
def test_check_eq12_matches_direct_binomials(delta, n, m, k, l):
    t = ParamTuple(delta, n, m, k, l)
    lhs = arith.binomial(2 * n + delta, n - m) if n - m >= 0 else None
    rhs = arith.binomial(2 * n + l, n - k) if n - k >= 0 else None
    expected = lhs is not None and rhs is not None and lhs == rhs
    assert collision.check_eq12(t) == expected


def test_jsonl_format_golden(records_25k):
    line = collision.record_json_line(records_25k[0])
    assert line == '{"N":"120","reps":[[16,2],[10,3]]}'
    assert json.loads(line) == {"N": "120", "reps": [[16, 2], [10, 3]]}
    text = collision.records_jsonl(records_25k)
    assert text.count("\n") == 7
    assert text.endswith("\n")
