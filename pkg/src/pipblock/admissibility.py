"""Admissibility of z-chains: which blocking scenarios a schedule can realize.

A z-chain is admissible for a target job when it is built element by
element, each extension satisfying five conditions:

* ``NBJ``: the extension's job is new to the chain;
* ``NBR``: the extension's resource is new to the chain;
* ``LSM``: the extension is maximal w.r.t. the set the chain induces
  (this also forces induction compatibility: each element's resource must
  gain blocking potential from the chain built so far);
* ``FHO``: no earlier section of a higher-priority chain job uses a
  resource the extension holds (the chain's higher-priority sections must
  stay reachable);
* ``FLO``: no earlier section of the extension's own job uses a resource
  a lower-priority chain job holds (the extension itself must be
  reachable).

The empty chain is admissible; admissibility of a longer chain means every
prefix extension passed.  The chain order is construction order, so the
predicate is order-sensitive; the exact search explores orders.

``quick_admissibility_verdict`` is the fast screen run after the
assignment bound: it tries to realize the bound as a chain by always
taking the leftmost longest section per assignment pair and then runs one
ascending-priority reachability scan.  It is sound (a pass yields a
verified witness chain) but not complete: picking the leftmost section can
fail where another section of equal length would have worked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bound import AssignmentSet, BlockingMatrix
from .relevance import _induced, direct_blocking_resources
from .taskset import CriticalSection, TaskSet, ZChain

__all__ = [
    "AdmissibilityVerdict",
    "CONDITIONS",
    "QuickCheckResult",
    "is_admissible_chain",
    "is_admissible_extension",
    "is_induction_compatible",
    "quick_admissibility_check",
    "quick_admissibility_verdict",
]

NBJ = "NBJ"
NBR = "NBR"
LSM = "LSM"
FHO = "FHO"
FLO = "FLO"
INDUCTION = "induction-compatibility"
DURATION = "duration-mismatch"

CONDITIONS = (NBJ, NBR, LSM, FHO, FLO, INDUCTION, DURATION)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of an admissibility test.

    ``failed_condition`` names the first violated condition (check order
    NBJ, NBR, LSM, FHO, FLO); ``section`` is the rejected extension and
    ``witness`` the conflicting pair of sections when one exists.
    """

    admissible: bool
    failed_condition: str | None = None
    section: CriticalSection | None = None
    witness: tuple[CriticalSection, CriticalSection] | None = None

    def __bool__(self) -> bool:
        return self.admissible


_OK = AdmissibilityVerdict(admissible=True)


def _check_members(ts: TaskSet, i: int, chain: Sequence[CriticalSection]) -> None:
    for z in chain:
        if z.job <= i:
            raise ValueError(
                f"{z.label} belongs to J{z.job}, not below the target J{i}"
            )
        if ts.section(z.job, z.position) != z:
            raise ValueError(f"{z.label} is not a section of this task set")


def _extension_failure(
    ts: TaskSet,
    i: int,
    chain: Sequence[CriticalSection],
    in_set: frozenset[int],
    z: CriticalSection,
) -> AdmissibilityVerdict | None:
    """First violated condition when extending ``chain`` (whose induced set
    is ``in_set``) with ``z``, or None if ``z`` is an admissible extension."""
    for member in chain:
        if member.job == z.job:
            return AdmissibilityVerdict(False, NBJ, z, (member, z))
    for member in chain:
        if member.resource == z.resource:
            return AdmissibilityVerdict(False, NBR, z, (member, z))
    if z.resource not in in_set:
        return AdmissibilityVerdict(False, LSM, z, None)
    for anc in z.ancestors():
        if anc.resource in in_set:
            return AdmissibilityVerdict(False, LSM, z, (anc, z))
    holds = z.held_resources()
    for member in chain:
        if member.job < z.job:
            earlier = ts.job(member.job).sections
            for q in range(member.position - 1):
                if earlier[q].resource in holds:
                    return AdmissibilityVerdict(False, FHO, z, (earlier[q], member))
    own = ts.job(z.job).sections
    for member in chain:
        if member.job > z.job:
            held = member.held_resources()
            for o in range(z.position - 1):
                if own[o].resource in held:
                    return AdmissibilityVerdict(False, FLO, z, (own[o], member))
    return None


def is_induction_compatible(
    ts: TaskSet, i: int, chain: Sequence[CriticalSection], z: CriticalSection
) -> bool:
    """True iff ``z``'s resource directly blocks job ``i`` or is nested,
    under some other (itself compatible) chain member's job, in a section
    on that member's chain.

    The sections of ``chain`` plus ``z`` must belong to all-different jobs
    and all-different resources.
    """
    members = list(dict.fromkeys([*chain, z]))
    _check_members(ts, i, members)
    if len({m.job for m in members}) != len(members) or len(
        {m.resource for m in members}
    ) != len(members):
        raise ValueError("chain members must have all-different jobs and resources")

    base = direct_blocking_resources(ts, i)
    compatible = {m for m in members if m.resource in base}
    grown = True
    while grown:
        grown = False
        for m in members:
            if m in compatible:
                continue
            for other in compatible:
                if other.job == m.job:
                    continue
                nested = ts.sections_within(other)
                if any(s.resource == m.resource for s in nested):
                    compatible.add(m)
                    grown = True
                    break
    return z in compatible


def is_admissible_chain(
    ts: TaskSet, i: int, chain: Sequence[CriticalSection]
) -> AdmissibilityVerdict:
    """Check a whole chain: every prefix extension, in the stated order."""
    _check_members(ts, i, chain)
    in_set = direct_blocking_resources(ts, i)
    prefix: list[CriticalSection] = []
    for z in chain:
        failure = _extension_failure(ts, i, prefix, in_set, z)
        if failure is not None:
            return failure
        prefix.append(z)
        in_set = in_set | _induced(ts, i, z, in_set)
    return _OK


def is_admissible_extension(
    ts: TaskSet, i: int, chain: Sequence[CriticalSection], z: CriticalSection
) -> AdmissibilityVerdict:
    """Verdict for extending an admissible ``chain`` with ``z``.

    Raises ``ValueError`` when ``chain`` itself is not admissible.
    """
    base = is_admissible_chain(ts, i, chain)
    if not base.admissible:
        raise ValueError(
            f"chain is not admissible (fails {base.failed_condition})"
        )
    _check_members(ts, i, [z])
    in_set = direct_blocking_resources(ts, i)
    for member in chain:
        in_set = in_set | _induced(ts, i, member, in_set)
    failure = _extension_failure(ts, i, tuple(chain), in_set, z)
    return failure if failure is not None else _OK


@dataclass(frozen=True)
class QuickCheckResult:
    """Outcome of the fast bound-realization screen.

    On success ``chain`` is an admissible chain of duration ``achieved``
    equal to the bound.  On failure ``failed_condition`` is
    ``induction-compatibility`` when the assignment pairs could not all be
    woven into one induction-compatible chain (the accumulated duration
    falls short of the bound), or ``FLO`` when the reachability scan
    rejected the constructed chain.
    """

    passed: bool
    chain: ZChain
    achieved: Fraction
    failed_condition: str | None = None
    witness: tuple[CriticalSection, CriticalSection] | None = None

    def __bool__(self) -> bool:
        return self.passed


def quick_admissibility_verdict(
    ts: TaskSet,
    i: int,
    matrix: BlockingMatrix,
    assignment: AssignmentSet,
    h: Fraction,
) -> QuickCheckResult:
    """Try to realize bound ``h`` as an admissible chain built from the
    assignment pairs.

    Pairs are consumed in ascending job order whenever their resource has
    entered the induction scope (seeded with the direct blocking set); for
    each pair the leftmost section matching the resource at the cell's
    duration is chosen, its nested resources join the scope and the
    consumed resource leaves it.  If the accumulated duration falls short
    of ``h`` the screen fails; otherwise one descending-job scan checks
    that no chain section is preceded, within its job, by a resource a
    lower-priority chain job holds.
    """
    scope = set(direct_blocking_resources(ts, i))
    chain: list[CriticalSection] = []
    achieved = Fraction(0)
    remaining = sorted(assignment.pairs)
    while True:
        pick = next(
            (
                (job, resource)
                for (job, resource) in remaining
                if resource in scope and matrix.cell(job, resource) > 0
            ),
            None,
        )
        if pick is None:
            break
        remaining.remove(pick)
        job, resource = pick
        target = matrix.cell(job, resource)
        section = next(
            z
            for z in ts.job(job).sections
            if z.resource == resource and z.duration == target
        )
        chain.append(section)
        achieved += target
        scope |= {s.resource for s in ts.sections_within(section)}
        scope -= {resource}
    if achieved < h:
        return QuickCheckResult(
            passed=False,
            chain=tuple(chain),
            achieved=achieved,
            failed_condition=INDUCTION,
        )

    held: dict[int, CriticalSection] = {}
    by_job = {z.job: z for z in chain}
    for j in range(ts.n, i, -1):
        z = by_job.get(j)
        if z is None:
            continue
        sections = ts.job(j).sections
        for q in range(z.position):
            resource = sections[q].resource
            if resource in held:
                return QuickCheckResult(
                    passed=False,
                    chain=tuple(chain),
                    achieved=achieved,
                    failed_condition=FLO,
                    witness=(sections[q], held[resource]),
                )
        for s in (z, *z.ancestors()):
            held.setdefault(s.resource, z)

    # Safety net: re-validate the constructed witness in full.  The scans
    # above miss one margin (a chosen section nested under a resource that
    # is merely in scope, not held by anyone); staying sound matters more
    # than trusting the construction.
    verdict = is_admissible_chain(ts, i, tuple(chain))
    if not verdict.admissible:
        return QuickCheckResult(
            passed=False,
            chain=tuple(chain),
            achieved=achieved,
            failed_condition=verdict.failed_condition,
            witness=verdict.witness,
        )
    return QuickCheckResult(passed=True, chain=tuple(chain), achieved=achieved)


def quick_admissibility_check(
    ts: TaskSet,
    i: int,
    matrix: BlockingMatrix,
    assignment: AssignmentSet,
    h: Fraction,
) -> bool:
    """Boolean form of :func:`quick_admissibility_verdict`."""
    return quick_admissibility_verdict(ts, i, matrix, assignment, h).passed
