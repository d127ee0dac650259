"""Exact worst-case blocking time via best-first search over z-chains.

Nodes carry a partial admissible chain plus derived sets; the heuristic is
the assignment bound over the jobs and resources the chain has not used
yet.  The bound never underestimates the best completion (any completion
picks at most one new section per remaining job on distinct remaining
resources), so the heuristic is admissible and the first leaf popped from
the fringe carries the exact maximum.

Fringe discipline: descending estimate ``f = g + h``; ties prefer leaf
nodes, then the newest expansion batch (within a batch, generation
order).  All generated-but-unexpanded nodes stay in the fringe, and the
fringe also remembers every chain set ever generated: differently-ordered
permutations of one section set have equal gain, heuristic and extension
options, so exploring a set once suffices.

The default duplicate guard discards an extension exactly when its section
set was generated before.  Two stricter variants are available for
comparison: ``subset`` discards when any fringe node's chain covers the
candidate set, ``subsequence`` when one covers it in order.  Both can
over-prune: a covering chain reached through other sections may be unable
to finish the way the discarded one could, so they may miss the optimum on
adversarial inputs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal

from .bound import hungarian_bound
from .deadlock import require_acyclic
from .relevance import (
    _induced,
    blocking_scope,
    maximal_sequence,
)
from .taskset import CriticalSection, ResourceId, TaskSet, ZChain

__all__ = [
    "ExpansionRecord",
    "Fringe",
    "SearchNode",
    "SearchResult",
    "blocking_time",
    "expand",
    "successors",
]

DuplicateGuard = Literal["seen-set", "subset", "subsequence"]


@dataclass
class SearchNode:
    """One search-tree node: a partial chain and its derived sets.

    ``remaining_*`` are the relevant sets minus what the chain used;
    ``induced`` is the chain's induced resource set; ``candidate_jobs``
    are the remaining jobs that still own an eligible section.  ``seq``
    and ``batch`` are bookkeeping for deterministic tie-breaking.
    """

    chain: ZChain
    chain_resources: frozenset[ResourceId]
    chain_jobs: frozenset[int]
    remaining_resources: frozenset[ResourceId]
    remaining_jobs: frozenset[int]
    induced: frozenset[ResourceId]
    candidate_jobs: frozenset[int]
    gain: Fraction
    heuristic: Fraction
    seq: int = -1
    batch: int = -1

    @property
    def estimate(self) -> Fraction:
        return self.gain + self.heuristic

    @property
    def is_leaf(self) -> bool:
        return self.heuristic == 0


class Fringe:
    """Generated-but-unexpanded nodes, ordered for Remove-First.

    Also keeps a permanent record of every chain set generated so far;
    the default duplicate guard queries it.
    """

    def __init__(self) -> None:
        self._heap: list[tuple[tuple, SearchNode]] = []
        self._live: dict[int, SearchNode] = {}
        self._generated: set[frozenset[CriticalSection]] = set()

    def __len__(self) -> int:
        return len(self._heap)

    def __iter__(self) -> Iterator[SearchNode]:
        return iter(self._live.values())

    def push(self, node: SearchNode) -> None:
        if node.seq < 0 or node.seq in self._live:
            raise ValueError("nodes need a fresh non-negative seq before insertion")
        key = (-node.estimate, 0 if node.is_leaf else 1, -node.batch, node.seq)
        heapq.heappush(self._heap, (key, node))
        self._live[node.seq] = node
        self._generated.add(frozenset(node.chain))

    def pop(self) -> SearchNode:
        _, node = heapq.heappop(self._heap)
        del self._live[node.seq]
        return node

    def already_generated(self, sections: frozenset[CriticalSection]) -> bool:
        """True iff a node with exactly this chain set was ever pushed."""
        return sections in self._generated

    def covers_set(self, sections: frozenset[CriticalSection]) -> bool:
        """True iff some fringe node's chain contains ``sections`` as a
        subset (order-insensitive)."""
        return any(sections <= frozenset(node.chain) for node in self._live.values())

    def covers_sequence(self, chain: ZChain) -> bool:
        """True iff some fringe node's chain contains ``chain`` as a
        subsequence (order-preserving)."""
        return any(_is_subsequence(chain, node.chain) for node in self._live.values())


def _is_subsequence(needle: ZChain, haystack: ZChain) -> bool:
    it = iter(haystack)
    return all(any(z == w for w in it) for z in needle)


@dataclass(frozen=True)
class ExpansionRecord:
    """One Remove-First step, for traces and instrumentation."""

    seq: int
    chain: ZChain
    gain: Fraction
    heuristic: Fraction
    extensions: tuple[str, ...]
    releafed: bool

    @property
    def estimate(self) -> Fraction:
        return self.gain + self.heuristic


@dataclass(frozen=True)
class SearchResult:
    """Exact blocking time with a witness chain and search statistics."""

    blocking_time: Fraction
    witness: ZChain
    nodes_generated: int
    nodes_expanded: int
    expansions: tuple[ExpansionRecord, ...] = ()


def successors(
    ts: TaskSet,
    i: int,
    node: SearchNode,
    fringe: Fringe,
    *,
    duplicate_guard: DuplicateGuard = "seen-set",
) -> tuple[CriticalSection, ...]:
    """Admissible extensions of ``node``'s chain, in job then section order.

    Candidate sections are the ones maximal w.r.t. the node's induced set
    but not already maximal w.r.t. the chain's resources (new job, new
    resource, limited-scope maximality); the duplicate guard discards
    extensions whose chain was already generated; the two obstruction
    screens reject sections that would block, or be blocked by, chain
    members.
    """
    extensions: list[CriticalSection] = []
    chain = node.chain
    for j in sorted(node.candidate_jobs):
        taken = set(maximal_sequence(ts, j, node.chain_resources))
        for z in maximal_sequence(ts, j, node.induced):
            if z in taken:
                continue
            if duplicate_guard == "seen-set":
                if fringe.already_generated(frozenset(chain) | {z}):
                    continue
            elif duplicate_guard == "subset":
                if fringe.covers_set(frozenset(chain) | {z}):
                    continue
            elif fringe.covers_sequence(chain + (z,)):
                continue
            holds = z.held_resources()
            obstructed = False
            for member in chain:
                if member.job < j:
                    earlier = ts.job(member.job).sections
                    if any(
                        earlier[q].resource in holds
                        for q in range(member.position - 1)
                    ):
                        obstructed = True
                        break
            if obstructed:
                continue
            own = ts.job(j).sections
            for member in chain:
                if member.job > j:
                    held = member.held_resources()
                    if any(
                        own[o].resource in held for o in range(z.position - 1)
                    ):
                        obstructed = True
                        break
            if obstructed:
                continue
            extensions.append(z)
    return tuple(extensions)


def expand(
    ts: TaskSet,
    i: int,
    node: SearchNode,
    fringe: Fringe,
    *,
    duplicate_guard: DuplicateGuard = "seen-set",
) -> list[SearchNode]:
    """Successor nodes of ``node``; ``node`` itself (re-marked as a leaf)
    when it has no admissible extensions.

    Creation stops early when a successor is a leaf matching the parent's
    estimate: that leaf already proves the branch's optimum.
    """
    created: list[SearchNode] = []
    for z in successors(ts, i, node, fringe, duplicate_guard=duplicate_guard):
        remaining_jobs = node.remaining_jobs - {z.job}
        remaining_resources = node.remaining_resources - {z.resource}
        chain_resources = node.chain_resources | {z.resource}
        induced = node.induced | _induced(ts, i, z, node.induced)
        candidate_jobs = frozenset(
            k
            for k in remaining_jobs
            if any(
                sec not in set(maximal_sequence(ts, k, chain_resources))
                for sec in maximal_sequence(ts, k, induced)
            )
        )
        if candidate_jobs:
            heuristic, _ = hungarian_bound(ts, remaining_jobs, remaining_resources)
        else:
            heuristic = Fraction(0)
        successor = SearchNode(
            chain=node.chain + (z,),
            chain_resources=chain_resources,
            chain_jobs=node.chain_jobs | {z.job},
            remaining_resources=remaining_resources,
            remaining_jobs=remaining_jobs,
            induced=induced,
            candidate_jobs=candidate_jobs,
            gain=node.gain + z.duration,
            heuristic=heuristic,
        )
        created.append(successor)
        if successor.is_leaf and successor.estimate == node.estimate:
            return created
    if not created:
        node.heuristic = Fraction(0)
        created.append(node)
    return created


def blocking_time(
    ts: TaskSet, i: int, *, duplicate_guard: DuplicateGuard = "seen-set"
) -> SearchResult:
    """Exact maximum blocking time of job ``i`` with a witness chain.

    Raises :class:`~pipblock.deadlock.CyclicResourceOrderError` when the
    resource order is cyclic (blocking is unbounded).
    """
    require_acyclic(ts)
    scope = blocking_scope(ts, i)
    h0, _ = hungarian_bound(ts, scope.relevant_jobs, scope.relevant_resources)
    root = SearchNode(
        chain=(),
        chain_resources=frozenset(),
        chain_jobs=frozenset(),
        remaining_resources=scope.relevant_resources,
        remaining_jobs=scope.relevant_jobs,
        induced=scope.direct_resources,
        candidate_jobs=scope.direct_jobs,
        gain=Fraction(0),
        heuristic=h0,
        seq=0,
        batch=0,
    )
    fringe = Fringe()
    fringe.push(root)
    generated = 1
    expanded = 0
    next_seq = 1
    batch = 0
    records: list[ExpansionRecord] = []

    while True:
        node = fringe.pop()
        if node.is_leaf:
            return SearchResult(
                blocking_time=node.gain,
                witness=node.chain,
                nodes_generated=generated,
                nodes_expanded=expanded,
                expansions=tuple(records),
            )
        expanded += 1
        batch += 1
        gain, heuristic = node.gain, node.heuristic
        created = expand(ts, i, node, fringe, duplicate_guard=duplicate_guard)
        releafed = len(created) == 1 and created[0] is node
        records.append(
            ExpansionRecord(
                seq=node.seq,
                chain=node.chain,
                gain=gain,
                heuristic=heuristic,
                extensions=tuple(
                    s.chain[-1].label for s in created if s is not node
                ),
                releafed=releafed,
            )
        )
        for successor in created:
            if successor is node:
                successor.batch = batch
            else:
                successor.seq = next_seq
                successor.batch = batch
                next_seq += 1
                generated += 1
            fringe.push(successor)
