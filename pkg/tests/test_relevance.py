import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pipblock import (
    blocking_scope,
    chain_induced_set,
    direct_blocking_jobs,
    direct_blocking_resources,
    fixpoint_trace,
    induced_set,
    is_maximal,
    maximal_sequence,
    random_taskset,
    relevant_jobs,
    relevant_resources,
)


def test_direct_sets(nested_four_jobs, six_jobs_disjoint):
    assert direct_blocking_resources(nested_four_jobs, 1) == {4}
    assert direct_blocking_jobs(nested_four_jobs, 1) == {2, 3}
    assert direct_blocking_resources(six_jobs_disjoint, 2) == {2, 3, 4}
    assert direct_blocking_jobs(six_jobs_disjoint, 4) == {5, 6}
    assert direct_blocking_resources(nested_four_jobs, 4) == frozenset()
    assert direct_blocking_jobs(six_jobs_disjoint, 6) == frozenset()


def test_is_maximal(nested_four_jobs):
    ts = nested_four_jobs
    assert is_maximal(ts.section(2, 1), {4})
    # contained in z2,1 whose resource R4 is in scope
    assert not is_maximal(ts.section(2, 2), {3, 4})
    assert not is_maximal(ts.section(2, 2), frozenset())
    # resource outside scope
    assert not is_maximal(ts.section(3, 3), {2, 3, 4})


def test_maximal_sequence(nested_four_jobs):
    ts = nested_four_jobs
    assert [z.label for z in maximal_sequence(ts, 3, {2, 3, 4})] == [
        "z3,1",
        "z3,2",
        "z3,4",
    ]
    assert [z.label for z in maximal_sequence(ts, 2, {2, 3, 4})] == ["z2,1"]
    assert maximal_sequence(ts, 3, frozenset()) == ()


def test_induced_set(nested_four_jobs):
    ts = nested_four_jobs
    assert induced_set(ts, 1, ts.section(2, 1), {4}) == {2, 3}
    assert induced_set(ts, 1, ts.section(3, 2), {2, 3, 4}) == {1}
    # no nested children
    assert induced_set(ts, 1, ts.section(3, 1), {4}) == frozenset()


def test_induced_set_preconditions(nested_four_jobs):
    ts = nested_four_jobs
    with pytest.raises(ValueError):
        induced_set(ts, 1, ts.section(3, 3), {2, 3, 4})  # not maximal
    with pytest.raises(ValueError):
        induced_set(ts, 2, ts.section(2, 1), {4})  # not a lower-priority job


def test_relevant_resources(nested_four_jobs):
    assert relevant_resources(nested_four_jobs, 1) == {1, 2, 3, 4}
    assert relevant_resources(nested_four_jobs, 3) == {1, 2}
    assert relevant_resources(nested_four_jobs, 3) == direct_blocking_resources(
        nested_four_jobs, 3
    )
    assert relevant_resources(nested_four_jobs, 4) == frozenset()


def test_relevant_jobs(nested_four_jobs):
    assert relevant_jobs(nested_four_jobs, 1) == {2, 3, 4}
    assert relevant_jobs(nested_four_jobs, 2) == {3, 4}
    assert relevant_jobs(nested_four_jobs, 4) == frozenset()


def test_fixpoint_trace_golden(nested_four_jobs):
    assert fixpoint_trace(nested_four_jobs, 1) == [
        frozenset({4}),
        frozenset({2, 3, 4}),
        frozenset({1, 2, 3, 4}),
    ]


def test_chain_induced_set(nested_four_jobs, five_jobs_deep):
    ts = nested_four_jobs
    assert chain_induced_set(ts, 1, ()) == {4}
    assert chain_induced_set(ts, 1, (ts.section(2, 1),)) == {2, 3, 4}
    assert chain_induced_set(five_jobs_deep, 1, (five_jobs_deep.section(4, 4),)) == {
        2,
        4,
    }
    with pytest.raises(ValueError):
        chain_induced_set(ts, 2, (ts.section(2, 1),))


def test_scope_bundle(six_jobs_nested):
    scope = blocking_scope(six_jobs_nested, 2)
    assert scope.direct_resources == {2, 3, 4}
    assert scope.direct_jobs == {3, 4, 5}
    assert scope.relevant_resources == {1, 2, 3, 4}
    assert scope.relevant_jobs == {3, 4, 5, 6}


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_fixpoint_properties_random(seed):
    ts = random_taskset(seed)
    for i in range(1, ts.n + 1):
        trace = fixpoint_trace(ts, i)
        assert trace[0] == direct_blocking_resources(ts, i)
        assert all(a < b for a, b in zip(trace, trace[1:]))  # strictly growing
        assert len(trace) <= len(ts.resources) + 1
        assert direct_blocking_resources(ts, i) <= relevant_resources(ts, i)
        assert direct_blocking_jobs(ts, i) <= relevant_jobs(ts, i)


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=10**9),
    order_seed=st.integers(min_value=0, max_value=10**9),
)
def test_fixpoint_invariant_under_pick_order(seed, order_seed):
    ts = random_taskset(seed)
    for i in range(1, ts.n + 1):
        deterministic = relevant_resources(ts, i)
        randomized = relevant_resources(ts, i, rng=random.Random(order_seed))
        assert deterministic == randomized


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_flat_sets_have_no_transitive_growth(seed):
    ts = random_taskset(seed, nesting_depth=1)
    for i in range(1, ts.n + 1):
        assert relevant_resources(ts, i) == direct_blocking_resources(ts, i)
        assert relevant_jobs(ts, i) == direct_blocking_jobs(ts, i)
