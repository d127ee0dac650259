import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pipblock import (
    CyclicResourceOrderError,
    blocking_time_matrix,
    brute_force_blocking_time,
    hungarian_bound,
    max_assignment,
    per_job_bounds,
    random_taskset,
    relevant_jobs,
    relevant_resources,
)
from pipblock.bound import BlockingMatrix, _reduce_rows_and_cols


def brute_force_assignment_value(matrix: BlockingMatrix) -> Fraction:
    """Reference optimum: try every injective row->column assignment."""
    n_rows, n_cols = len(matrix.jobs), len(matrix.resources)
    if n_rows == 0 or n_cols == 0:
        return Fraction(0)
    best = Fraction(0)
    if n_rows <= n_cols:
        for cols in itertools.permutations(range(n_cols), n_rows):
            best = max(best, sum(matrix.rows[r][c] for r, c in enumerate(cols)))
    else:
        for rows in itertools.permutations(range(n_rows), n_cols):
            best = max(best, sum(matrix.rows[r][c] for c, r in enumerate(rows)))
    return best


def test_matrix_goldens(six_jobs_disjoint, two_resource_cross):
    m = blocking_time_matrix(six_jobs_disjoint, {3, 4, 5}, {2, 3, 4})
    assert m.jobs == (3, 4, 5) and m.resources == (2, 3, 4)
    assert [[int(c) for c in row] for row in m.rows] == [
        [0, 2, 3],
        [1, 0, 0],
        [1, 2, 0],
    ]
    m = blocking_time_matrix(two_resource_cross, {2, 3, 4}, {1, 2})
    assert [[int(c) for c in row] for row in m.rows] == [[3, 4], [1, 3], [0, 1]]


def test_matrix_keeps_longest_duration():
    from pipblock import parse_taskset

    ts = parse_taskset("J1: [R1:1]\nJ2: [R1:2] [R1:7] [R1:3]")
    m = blocking_time_matrix(ts, {2}, {1})
    assert m.rows == ((Fraction(7),),)


def test_matrix_empty_jobs(six_jobs_disjoint):
    m = blocking_time_matrix(six_jobs_disjoint, set(), {2, 3})
    assert m.rows == () and m.jobs == ()
    value, assignment = hungarian_bound(six_jobs_disjoint, set(), {2, 3})
    assert value == 0 and assignment.pairs == ()


def test_matrix_rejects_unknown_inputs(six_jobs_disjoint):
    from pipblock import TaskSetError

    with pytest.raises(TaskSetError):
        blocking_time_matrix(six_jobs_disjoint, {99}, {1})
    with pytest.raises(ValueError):
        blocking_time_matrix(six_jobs_disjoint, {2}, {99})


def test_hungarian_goldens(six_jobs_disjoint, two_resource_cross, five_jobs_deep):
    value, assignment = hungarian_bound(six_jobs_disjoint, {3, 4, 5}, {2, 3, 4})
    assert value == 6
    assert assignment.pairs == ((3, 4), (4, 2), (5, 3))

    value, assignment = hungarian_bound(two_resource_cross, {2, 3, 4}, {1, 2})
    assert value == 6
    assert assignment.pairs == ((2, 1), (3, 2))

    value, assignment = hungarian_bound(
        five_jobs_deep, {2, 3, 4, 5}, {1, 2, 3, 4}
    )
    assert value == 33
    assert assignment.pairs == ((2, 3), (3, 1), (4, 4), (5, 2))


def test_hungarian_nested_scope(six_jobs_nested):
    value, _ = hungarian_bound(six_jobs_nested, {3, 4, 5, 6}, {1, 2, 3, 4})
    assert value == 12


def test_hungarian_single_cell():
    from pipblock import parse_taskset

    ts = parse_taskset("J1: [R1:2]\nJ2: [R1:2]")
    value, assignment = hungarian_bound(ts, {2}, {1})
    assert value == 2 and assignment.pairs == ((2, 1),)


def test_per_job_bounds_golden(six_jobs_disjoint):
    assert per_job_bounds(six_jobs_disjoint) == {
        1: 1,
        2: 6,
        3: 3,
        4: 4,
        5: 2,
        6: 0,
    }


def test_per_job_bounds_double_lock(double_lock):
    bounds = per_job_bounds(double_lock)
    assert bounds[1] == 4
    _, assignment = hungarian_bound(double_lock, {2, 3}, {1, 2})
    assert assignment.pairs == ((2, 2), (3, 1))


def test_per_job_bounds_refuses_cyclic(cross_nesting):
    with pytest.raises(CyclicResourceOrderError):
        per_job_bounds(cross_nesting)


def test_reduction_leaves_zero_per_line():
    rng = random.Random(5)
    for _ in range(25):
        size = rng.randint(1, 6)
        cost = [
            [Fraction(rng.randint(0, 12), rng.choice([1, 1, 2])) for _ in range(size)]
            for _ in range(size)
        ]
        _reduce_rows_and_cols(cost)
        assert all(min(row) == 0 for row in cost)
        assert all(min(row[c] for row in cost) == 0 for c in range(size))
        assert all(cell >= 0 for row in cost for cell in row)


def _random_matrix(rng: random.Random) -> BlockingMatrix:
    n_rows = rng.randint(1, 6)
    n_cols = rng.randint(1, 6)
    rows = tuple(
        tuple(
            Fraction(rng.randint(0, 10), rng.choice([1, 1, 1, 2, 4]))
            for _ in range(n_cols)
        )
        for _ in range(n_rows)
    )
    return BlockingMatrix(
        jobs=tuple(range(1, n_rows + 1)),
        resources=tuple(range(1, n_cols + 1)),
        rows=rows,
    )


def test_hungarian_matches_permutation_brute_force():
    rng = random.Random(99)
    for _ in range(120):
        matrix = _random_matrix(rng)
        assignment = max_assignment(matrix)
        assert assignment.value == brute_force_assignment_value(matrix)
        # the assignment really uses all-distinct jobs and resources
        jobs = [j for j, _ in assignment.pairs]
        resources = [r for _, r in assignment.pairs]
        assert len(set(jobs)) == len(jobs)
        assert len(set(resources)) == len(resources)
        assert (
            sum((matrix.cell(j, r) for j, r in assignment.pairs), Fraction(0))
            == assignment.value
        )


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_shrinking_inputs_never_increases_bound(seed):
    ts = random_taskset(seed)
    rng = random.Random(seed ^ 0xA5A5)
    for i in range(1, ts.n + 1):
        jobs = relevant_jobs(ts, i)
        resources = relevant_resources(ts, i)
        full, _ = hungarian_bound(ts, jobs, resources)
        sub_jobs = {j for j in jobs if rng.random() < 0.6}
        sub_resources = {r for r in resources if rng.random() < 0.6}
        smaller, _ = hungarian_bound(ts, sub_jobs, sub_resources)
        assert smaller <= full


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_bound_dominates_exact(seed):
    ts = random_taskset(seed, jobs=4, resources=4)
    for i in range(1, ts.n + 1):
        bound, _ = hungarian_bound(ts, relevant_jobs(ts, i), relevant_resources(ts, i))
        assert bound >= brute_force_blocking_time(ts, i).best_duration
