"""Task-set model: jobs, properly nested critical sections, bracket notation.

A task set lists jobs in descending priority order (job 1 has the highest
priority).  Each job is a sequence of critical sections; section ``p`` of
job ``j`` (written ``zj,p``) is the code span between the job's p-th wait
on a binary semaphore and the matching signal.  Every resource is guarded
by its own binary semaphore, so resources are identified directly by a
positive index ``Rk``.

Sections of one job are properly nested: two sections are either disjoint
or one entirely contains the other, and a resource is never re-locked
inside one of its own sections.  Durations are exact rationals so that
analyses compare times without rounding.

The text format, one line per job::

    J1: [R2: 3 [R1: 1]]
    J2: [R1: 3] [R1: 4]

describes job 1 holding R2 for 3 time units with a nested section on R1,
and job 2 with two disjoint sections on R1.  Lines starting with ``#`` are
comments.  Durations are decimal literals; exact fractions such as ``1/3``
are accepted as an extension.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "CriticalSection",
    "Job",
    "NestingError",
    "ParseError",
    "ResourceId",
    "TaskSet",
    "TaskSetError",
    "ZChain",
    "ZeroDurationWarning",
    "chain_duration",
    "contains",
    "format_chain",
    "parse_chain",
    "parse_taskset",
    "serialize_taskset",
]

ResourceId = int

DurationLike = Union[Fraction, int, str]


class TaskSetError(Exception):
    """Invalid task-set structure."""


class ParseError(TaskSetError):
    """Malformed task-set or chain text."""


class NestingError(TaskSetError):
    """A resource is locked again inside one of its own sections."""


class ZeroDurationWarning(UserWarning):
    """A critical section has duration zero (permitted but suspicious)."""


def as_duration(value: DurationLike) -> Fraction:
    """Normalize a duration to a non-negative ``Fraction``."""
    try:
        duration = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad duration {value!r}") from exc
    if duration < 0:
        raise TaskSetError(f"negative duration {value!r}")
    return duration


class CriticalSection:
    """One critical section: the ``position``-th wait/signal span of ``job``.

    Identity is the pair ``(job, position)``; resource and duration are
    attributes (a job may lock the same resource in several disjoint
    sections).  ``parent`` is the immediately containing section of the
    same job, or ``None`` for a top-level section.
    """

    __slots__ = ("job", "position", "resource", "duration", "parent")

    def __init__(
        self,
        job: int,
        position: int,
        resource: ResourceId,
        duration: DurationLike,
        parent: "CriticalSection | None" = None,
    ) -> None:
        if job < 1 or position < 1 or resource < 1:
            raise TaskSetError(
                f"job, position and resource indices are 1-based "
                f"(got z{job},{position} on R{resource})"
            )
        self.job = job
        self.position = position
        self.resource = resource
        self.duration = as_duration(duration)
        self.parent = parent

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CriticalSection):
            return NotImplemented
        return self.job == other.job and self.position == other.position

    def __hash__(self) -> int:
        return hash((self.job, self.position))

    def __repr__(self) -> str:
        return f"<z{self.job},{self.position} R{self.resource}:{self.duration}>"

    @property
    def label(self) -> str:
        """Compact name ``zj,p`` used in reports and on the command line."""
        return f"z{self.job},{self.position}"

    def ancestors(self) -> Iterator["CriticalSection"]:
        """Strictly containing sections, innermost first."""
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def held_resources(self) -> frozenset[ResourceId]:
        """Resources held while executing inside this section.

        That is the section's own resource plus the resources of every
        containing section.
        """
        return frozenset({self.resource, *(a.resource for a in self.ancestors())})


#: An ordered sequence of critical sections (a candidate blocking scenario).
ZChain = tuple[CriticalSection, ...]


@dataclass(frozen=True)
class Job:
    """A job: priority rank ``index`` (smaller = higher priority) and its
    ordered critical sections."""

    index: int
    sections: tuple[CriticalSection, ...]


class TaskSet:
    """An immutable application: jobs 1..n plus the referenced resources.

    Safe to share read-only across threads; all analyses in this package
    are pure functions of a ``TaskSet``.
    """

    __slots__ = ("jobs", "resources")

    def __init__(self, jobs: Sequence[Job]) -> None:
        self.jobs: tuple[Job, ...] = tuple(jobs)
        self._validate()
        self.resources: frozenset[ResourceId] = frozenset(
            z.resource for z in self.iter_sections()
        )

    def _validate(self) -> None:
        if not self.jobs:
            raise TaskSetError("a task set needs at least one job")
        for rank, job in enumerate(self.jobs, start=1):
            if job.index != rank:
                raise TaskSetError(
                    f"jobs must be numbered J1..Jn in priority order "
                    f"(expected J{rank}, found J{job.index})"
                )
            for pos, z in enumerate(job.sections, start=1):
                if z.job != job.index or z.position != pos:
                    raise TaskSetError(
                        f"section {z.label} out of place in J{job.index} "
                        f"(expected z{job.index},{pos})"
                    )
                if z.parent is not None:
                    if z.parent.job != job.index or z.parent.position >= pos:
                        raise TaskSetError(
                            f"{z.label}: parent must be an earlier section "
                            f"of the same job"
                        )
                    if job.sections[z.parent.position - 1] is not z.parent:
                        raise TaskSetError(f"{z.label}: parent link is stale")
                for a in z.ancestors():
                    if a.resource == z.resource:
                        raise NestingError(
                            f"R{z.resource} locked again inside its own "
                            f"section ({a.label} contains {z.label})"
                        )
                if z.duration == 0:
                    warnings.warn(
                        f"{z.label} has duration 0", ZeroDurationWarning, stacklevel=3
                    )

    @property
    def n(self) -> int:
        return len(self.jobs)

    def job(self, index: int) -> Job:
        if not 1 <= index <= len(self.jobs):
            raise TaskSetError(f"no job J{index} (task set has {len(self.jobs)} jobs)")
        return self.jobs[index - 1]

    def section(self, job: int, position: int) -> CriticalSection:
        sections = self.job(job).sections
        if not 1 <= position <= len(sections):
            raise TaskSetError(f"no section z{job},{position}")
        return sections[position - 1]

    def iter_sections(self) -> Iterator[CriticalSection]:
        for job in self.jobs:
            yield from job.sections

    def sections_within(self, z: CriticalSection) -> tuple[CriticalSection, ...]:
        """Sections strictly contained in ``z``, in position order."""
        return tuple(s for s in self.job(z.job).sections if contains(z, s))

    def _canonical(self) -> tuple:
        return tuple(
            (
                job.index,
                tuple(
                    (
                        z.position,
                        z.resource,
                        z.duration,
                        z.parent.position if z.parent else None,
                    )
                    for z in job.sections
                ),
            )
            for job in self.jobs
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TaskSet):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __repr__(self) -> str:
        return f"<TaskSet n={len(self.jobs)} resources={sorted(self.resources)}>"


def contains(a: CriticalSection, b: CriticalSection) -> bool:
    """True iff ``b`` is entirely contained in ``a`` (strict containment)."""
    return a.job == b.job and any(anc is a or anc == a for anc in b.ancestors())


def chain_duration(chain: Iterable[CriticalSection]) -> Fraction:
    """Total duration of a z-chain; 0 for the empty chain."""
    return sum((z.duration for z in chain), start=Fraction(0))


# --- text format ------------------------------------------------------------

_JOB_LINE = re.compile(r"J(\d+)\s*:\s*(.*)$")
_TOKEN = re.compile(r"\[|\]|R\d+\s*:|\d+/\d+|\d+\.\d+|\.\d+|\d+")


def parse_taskset(text: str) -> TaskSet:
    """Parse the bracket notation into a :class:`TaskSet`.

    Positions are assigned in wait order: left to right, outer before
    inner.  Raises :class:`ParseError` on malformed text and
    :class:`NestingError` when a resource is re-locked inside its own
    section.
    """
    jobs: list[Job] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _JOB_LINE.match(line)
        if not match:
            raise ParseError(f"line {lineno}: expected 'J<j>: <sections>'")
        index = int(match.group(1))
        if index != len(jobs) + 1:
            raise ParseError(
                f"line {lineno}: jobs must appear as J1..Jn in priority order "
                f"(expected J{len(jobs) + 1}, found J{index})"
            )
        jobs.append(Job(index=index, sections=_parse_sections(match.group(2), index, lineno)))
    if not jobs:
        raise ParseError("no jobs found")
    return TaskSet(jobs)


def _parse_sections(body: str, job: int, lineno: int) -> tuple[CriticalSection, ...]:
    sections: list[CriticalSection] = []
    stack: list[CriticalSection] = []
    cursor = 0
    state = "open"  # open -> '[', resource -> 'R<k>:', duration -> literal
    pending_resource = 0
    for match in _TOKEN.finditer(body):
        if body[cursor : match.start()].strip():
            raise ParseError(
                f"line {lineno}: unexpected {body[cursor:match.start()].strip()!r}"
            )
        cursor = match.end()
        token = match.group()
        if token == "[":
            if state != "open":
                raise ParseError(f"line {lineno}: unexpected '['")
            state = "resource"
        elif token.startswith("R"):
            if state != "resource":
                raise ParseError(f"line {lineno}: unexpected {token!r}")
            pending_resource = int(token[1:].rstrip(": \t"))
            state = "duration"
        elif token == "]":
            if state != "open" or not stack:
                raise ParseError(f"line {lineno}: unbalanced ']'")
            stack.pop()
        else:
            if state != "duration":
                raise ParseError(f"line {lineno}: unexpected {token!r}")
            section = CriticalSection(
                job=job,
                position=len(sections) + 1,
                resource=pending_resource,
                duration=as_duration(token),
                parent=stack[-1] if stack else None,
            )
            for anc in section.ancestors():
                if anc.resource == section.resource:
                    raise NestingError(
                        f"line {lineno}: R{pending_resource} locked again "
                        f"inside its own section"
                    )
            sections.append(section)
            stack.append(section)
            state = "open"
    if body[cursor:].strip():
        raise ParseError(f"line {lineno}: unexpected {body[cursor:].strip()!r}")
    if stack or state != "open":
        raise ParseError(f"line {lineno}: unbalanced brackets")
    return tuple(sections)


def _format_duration(duration: Fraction) -> str:
    return str(duration)


def _format_section(ts: TaskSet, z: CriticalSection) -> str:
    inner = [
        _format_section(ts, child)
        for child in ts.job(z.job).sections
        if child.parent is z
    ]
    head = f"[R{z.resource}: {_format_duration(z.duration)}"
    return head + ("" if not inner else " " + " ".join(inner)) + "]"


def serialize_taskset(ts: TaskSet) -> str:
    """Render a task set in the canonical text format (one job per line)."""
    lines = []
    for job in ts.jobs:
        groups = " ".join(
            _format_section(ts, z) for z in job.sections if z.parent is None
        )
        lines.append(f"J{job.index}:" + (f" {groups}" if groups else ""))
    return "\n".join(lines) + "\n"


_CHAIN_TOKEN = re.compile(r"z?(\d+)\s*,\s*(\d+)")


def parse_chain(ts: TaskSet, text: str) -> ZChain:
    """Parse a chain written as section labels, e.g. ``"z4,1 z3,2 z2,1"``."""
    chain: list[CriticalSection] = []
    cursor = 0
    for match in _CHAIN_TOKEN.finditer(text):
        if text[cursor : match.start()].strip(" ;\t"):
            raise ParseError(f"bad chain element {text[cursor:match.start()]!r}")
        cursor = match.end()
        chain.append(ts.section(int(match.group(1)), int(match.group(2))))
    if text[cursor:].strip(" ;\t"):
        raise ParseError(f"bad chain element {text[cursor:]!r}")
    return tuple(chain)


def format_chain(chain: Iterable[CriticalSection]) -> str:
    labels = [z.label for z in chain]
    return "<" + ", ".join(labels) + ">"
