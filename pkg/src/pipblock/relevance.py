"""Blocking scopes: which resources and jobs can block a given job.

With at most one resource held at a time, a resource can block job ``i``
exactly when it is used both by some job of priority >= i's and by some
lower-priority job (the direct sets).  Nesting adds transitive priority
inheritance: a resource nested inside a blocking-capable section acquires
blocking potential of its own.  The enlarged ("relevant") sets are the
least fixpoint of the induced-set operator, seeded with the direct set.

All functions are pure; scopes for different target jobs may be computed
in parallel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .taskset import CriticalSection, ResourceId, TaskSet

__all__ = [
    "BlockingScope",
    "blocking_scope",
    "chain_induced_set",
    "direct_blocking_jobs",
    "direct_blocking_resources",
    "fixpoint_trace",
    "induced_set",
    "is_maximal",
    "maximal_sequence",
    "relevant_jobs",
    "relevant_resources",
]


@dataclass(frozen=True)
class BlockingScope:
    """All four blocking sets for one target job."""

    target: int
    direct_resources: frozenset[ResourceId]
    direct_jobs: frozenset[int]
    relevant_resources: frozenset[ResourceId]
    relevant_jobs: frozenset[int]


def _check_target(ts: TaskSet, i: int) -> None:
    if not 1 <= i <= ts.n:
        raise ValueError(f"target job index {i} out of range 1..{ts.n}")


def direct_blocking_resources(ts: TaskSet, i: int) -> frozenset[ResourceId]:
    """Resources used both at priority >= job i's and below it."""
    _check_target(ts, i)
    upper = {z.resource for job in ts.jobs[:i] for z in job.sections}
    lower = {z.resource for job in ts.jobs[i:] for z in job.sections}
    return frozenset(upper & lower)


def direct_blocking_jobs(ts: TaskSet, i: int) -> frozenset[int]:
    """Lower-priority jobs using a direct blocking resource of job ``i``."""
    scope = direct_blocking_resources(ts, i)
    return frozenset(
        job.index
        for job in ts.jobs[i:]
        if any(z.resource in scope for z in job.sections)
    )


def is_maximal(z: CriticalSection, scope: Iterable[ResourceId]) -> bool:
    """True iff ``z``'s resource is in ``scope`` and no containing section
    of the same job uses a resource in ``scope``."""
    scope = frozenset(scope)
    if z.resource not in scope:
        return False
    return not any(a.resource in scope for a in z.ancestors())


def maximal_sequence(
    ts: TaskSet, job: int, scope: Iterable[ResourceId]
) -> tuple[CriticalSection, ...]:
    """The subsequence of job ``job``'s sections maximal w.r.t. ``scope``."""
    scope = frozenset(scope)
    return tuple(z for z in ts.job(job).sections if is_maximal(z, scope))


def _induced(
    ts: TaskSet, i: int, z: CriticalSection, scope: frozenset[ResourceId]
) -> frozenset[ResourceId]:
    """Resources nested in ``z`` that gain blocking potential toward job i:
    outside ``scope`` and shared with some other lower-priority job."""
    out: set[ResourceId] = set()
    for nested in ts.sections_within(z):
        if nested.resource in scope or nested.resource in out:
            continue
        for other in ts.jobs[i:]:
            if other.index == z.job:
                continue
            if any(w.resource == nested.resource for w in other.sections):
                out.add(nested.resource)
                break
    return frozenset(out)


def induced_set(
    ts: TaskSet, i: int, z: CriticalSection, scope: Iterable[ResourceId]
) -> frozenset[ResourceId]:
    """Set induced by ``(job i, z)`` from ``scope``.

    ``z`` must belong to a lower-priority job and be maximal w.r.t.
    ``scope``; violating either raises ``ValueError``.
    """
    _check_target(ts, i)
    scope = frozenset(scope)
    if z.job <= i:
        raise ValueError(f"{z.label} does not belong to a job below J{i}")
    if not is_maximal(z, scope):
        raise ValueError(f"{z.label} is not maximal w.r.t. {sorted(scope)}")
    return _induced(ts, i, z, scope)


def chain_induced_set(
    ts: TaskSet, i: int, chain: Sequence[CriticalSection]
) -> frozenset[ResourceId]:
    """Set induced by a chain: the direct resources of job ``i`` joined with
    the set each chain element induces from them."""
    _check_target(ts, i)
    base = direct_blocking_resources(ts, i)
    out = set(base)
    for z in chain:
        if z.job <= i:
            raise ValueError(f"{z.label} does not belong to a job below J{i}")
        out |= _induced(ts, i, z, base)
    return frozenset(out)


def _fixpoint(
    ts: TaskSet, i: int, rng: random.Random | None
) -> list[frozenset[ResourceId]]:
    """Iterates of the relevant-resource fixpoint, starting from the direct
    set and adding one non-empty induced set per step.

    The deterministic scan picks the first candidate in ascending job and
    section order; passing ``rng`` picks uniformly among all candidates
    (the least fixpoint is the same either way).
    """
    scope = direct_blocking_resources(ts, i)
    trace = [scope]
    while scope != ts.resources:
        candidates: list[frozenset[ResourceId]] = []
        for job in ts.jobs[i:]:
            for z in maximal_sequence(ts, job.index, scope):
                induced = _induced(ts, i, z, scope)
                if induced:
                    candidates.append(induced)
                    if rng is None:
                        break
            if candidates and rng is None:
                break
        if not candidates:
            break
        pick = candidates[0] if rng is None else rng.choice(candidates)
        scope = scope | pick
        trace.append(scope)
    return trace


def relevant_resources(
    ts: TaskSet, i: int, *, rng: random.Random | None = None
) -> frozenset[ResourceId]:
    """All resources that can block job ``i`` once nesting and transitive
    inheritance are accounted for (least fixpoint of the induced sets)."""
    return _fixpoint(ts, i, rng)[-1]


def fixpoint_trace(ts: TaskSet, i: int) -> list[frozenset[ResourceId]]:
    """The deterministic iterate sequence of :func:`relevant_resources`."""
    return _fixpoint(ts, i, None)


def relevant_jobs(ts: TaskSet, i: int) -> frozenset[int]:
    """Lower-priority jobs using any relevant resource of job ``i``."""
    scope = relevant_resources(ts, i)
    return frozenset(
        job.index
        for job in ts.jobs[i:]
        if any(z.resource in scope for z in job.sections)
    )


def blocking_scope(ts: TaskSet, i: int) -> BlockingScope:
    """Bundle all four blocking sets for job ``i``."""
    relevant = relevant_resources(ts, i)
    return BlockingScope(
        target=i,
        direct_resources=direct_blocking_resources(ts, i),
        direct_jobs=direct_blocking_jobs(ts, i),
        relevant_resources=relevant,
        relevant_jobs=frozenset(
            job.index
            for job in ts.jobs[i:]
            if any(z.resource in relevant for z in job.sections)
        ),
    )
