"""Kernelization for subdivisions: shrink long degree-2 paths.

A connected graph decomposes into host vertices (here: everything of
degree other than two, or a designated vertex on a cycle) and maximal
chains of degree-2 vertices between them. Every chain with at least 15
vertices admits a 5-sectioning: border sections of 5..9 vertices at each
end and inner sections of exactly 5, with the section count maximal and
the borders balanced. The long-path rule deletes all inner sections of a
chain with at least 20 vertices and splices in a fresh 5-vertex path,
paying 2*(inner sections - 1) budget; afterwards every chain has at most
19 vertices, so one pass suffices.

Lifting a kernel solution first normalizes it on the replacement chain so
that every inner section carries the same two in-section positions, then
replicates that position pair across all deleted sections. The normalizer
is a literal case analysis over how the solution meets the last vertices
of the first border and the first vertices of the last border; it is the
riskiest code in the repository and therefore never returns a set it has
not re-verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    InapplicableRule,
    InternalVerificationError,
    LocdomError,
)
from .graph import Graph, is_connected, max_leaf_number_exact
from .lds import Instance, is_locating_dominating
from .report import BoundCheck, SizeReport
from .trace import KernelTrace, LabeledGraph, PathReduced, replay_stages
from .cluster_kernel import NO_INSTANCE_GRAPH

MAXLEAF = "maxleaf"
LONG_PATH_MIN = 20


@dataclass(frozen=True)
class SubdivisionPath:
    """A maximal degree-2 chain; the two host endpoints may coincide."""

    vertices: tuple[int, ...]
    end_a: int
    end_b: int

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class HostDecomposition:
    host: frozenset[int]
    paths: tuple[SubdivisionPath, ...]


@dataclass(frozen=True)
class FiveSectioning:
    sections: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sections)

    def inner(self) -> tuple[tuple[int, ...], ...]:
        return self.sections[1:-1]


def host_decomposition(g: Graph, host: Optional[Iterable[int]] = None) -> HostDecomposition:
    """Split a connected graph into host vertices and degree-2 chains.

    Without an explicit host, every vertex of degree != 2 is a host vertex;
    a 2-regular graph (a cycle) gets vertex 0 as its designated host. A
    supplied host must leave only degree-2 vertices outside.
    """
    if g.n == 0:
        raise LocdomError("cannot decompose the empty graph")
    if not is_connected(g):
        raise LocdomError("host decomposition needs a connected graph")
    if host is None:
        hostset = {v for v in range(g.n) if g.degree(v) != 2}
        if not hostset:
            hostset = {0}
    else:
        hostset = set(host)
        for v in hostset:
            if not (0 <= v < g.n):
                raise LocdomError(f"host vertex {v} out of range")
        if not hostset:
            raise LocdomError("host set must not be empty")
        for v in range(g.n):
            if v not in hostset and g.degree(v) != 2:
                raise LocdomError(
                    f"vertex {v} outside the host has degree {g.degree(v)} != 2"
                )
    visited: set[int] = set()
    paths: list[SubdivisionPath] = []
    for h in sorted(hostset):
        for x in sorted(g.adj[h]):
            if x in hostset or x in visited:
                continue
            chain: list[int] = []
            prev, cur = h, x
            while cur not in hostset:
                visited.add(cur)
                chain.append(cur)
                others = g.adj[cur] - {prev}
                if len(others) != 1:
                    raise LocdomError(f"vertex {cur} is not a degree-2 chain vertex")
                prev, cur = cur, next(iter(others))
            end_a, end_b = h, cur
            if end_b < end_a:
                chain.reverse()
                end_a, end_b = end_b, end_a
            elif end_a == end_b and chain and chain[0] > chain[-1]:
                chain.reverse()
            paths.append(SubdivisionPath(tuple(chain), end_a, end_b))
    leftover = set(range(g.n)) - hostset - visited
    if leftover:
        raise LocdomError(f"degree-2 vertices {sorted(leftover)} unreachable from the host")
    paths.sort(key=lambda p: (p.end_a, p.end_b, p.vertices[:1]))
    return HostDecomposition(frozenset(hostset), tuple(paths))


def five_sectioning(path) -> FiveSectioning:
    """Maximal sectioning into 5-blocks; leftovers split across the borders.

    Accepts a vertex sequence or a :class:`SubdivisionPath`. The first
    border takes the extra vertex on odd remainders, which keeps the
    border sizes within one of each other.
    """
    vertices = tuple(path.vertices if isinstance(path, SubdivisionPath) else path)
    length = len(vertices)
    if length < 15:
        raise LocdomError(f"5-sectioning needs at least 15 vertices, got {length}")
    count, rho = divmod(length, 5)
    sizes = [5 + (rho + 1) // 2] + [5] * (count - 2) + [5 + rho // 2]
    sections = []
    at = 0
    for size in sizes:
        sections.append(vertices[at : at + size])
        at += size
    return FiveSectioning(tuple(sections))


# ---------------------------------------------------------------------------
# The long-path rule and its driver


def _reduce_path(
    lg: LabeledGraph, path: SubdivisionPath, next_label: int
) -> tuple[LabeledGraph, PathReduced]:
    sect = five_sectioning(path.vertices)
    inner_secs = sect.inner()
    removed = tuple(v for sec in inner_secs for v in sec)
    added = tuple(range(next_label, next_label + 5))
    attach_left = sect.sections[0][-1]
    attach_right = sect.sections[-1][0]
    step = PathReduced(
        path=path.vertices,
        section_sizes=sect.sizes,
        removed=removed,
        added=added,
        attach_left=attach_left,
        attach_right=attach_right,
        budget_delta=2 * (len(inner_secs) - 1),
    )
    lg = lg.delete_labels(removed).add_path(added, attach_left, attach_right)
    return lg, step


def rule_long_path(
    inst: Instance, decomp: HostDecomposition, path_index: int
) -> tuple[Instance, KernelTrace]:
    """Apply the long-path rule to one chain of at least 20 vertices."""
    path = decomp.paths[path_index]
    if len(path) < LONG_PATH_MIN:
        raise InapplicableRule(
            f"path has {len(path)} vertices, rule needs >= {LONG_PATH_MIN}"
        )
    lg, step = _reduce_path(LabeledGraph.identity(inst.graph), path, inst.graph.n)
    budget = inst.budget - step.budget_delta
    host = tuple(sorted(decomp.host))
    if budget < 0:
        trace = KernelTrace(
            MAXLEAF, inst.graph, inst.budget, (step,), None, host, (), 0, True
        )
        return Instance(NO_INSTANCE_GRAPH, 0), trace
    trace = KernelTrace(
        MAXLEAF,
        inst.graph,
        inst.budget,
        (step,),
        None,
        host,
        tuple(lg.labels),
        budget,
    )
    return Instance(lg.graph, budget), trace


def kernelize_maxleaf(
    inst: Instance,
    host: Optional[Iterable[int]] = None,
    max_leaf: Optional[int] = None,
) -> tuple[Instance, KernelTrace, SizeReport]:
    """Shrink every qualifying chain once; report path census and size bounds."""
    g, d0 = inst.graph, inst.budget
    decomp = host_decomposition(g, host)
    host_tuple = tuple(sorted(decomp.host))
    lg = LabeledGraph.identity(g)
    steps: list[PathReduced] = []
    budget = d0
    next_label = g.n
    for path in decomp.paths:
        if len(path) < LONG_PATH_MIN:
            continue
        lg, step = _reduce_path(lg, path, next_label)
        next_label += 5
        budget -= step.budget_delta
        steps.append(step)
        if budget < 0:
            trace = KernelTrace(
                MAXLEAF, g, d0, tuple(steps), None, host_tuple, (), 0, True
            )
            report = SizeReport(
                kind=MAXLEAF,
                n_before=g.n,
                n_after=1,
                budget_before=d0,
                budget_after=0,
                no_instance=True,
                path_count=len(decomp.paths),
            )
            return Instance(NO_INSTANCE_GRAPH, 0), trace, report
    trace = KernelTrace(
        MAXLEAF, g, d0, tuple(steps), None, host_tuple, tuple(lg.labels), budget
    )
    out = Instance(lg.graph, budget)

    kernel_host = [lg.index_of(lab) for lab in host_tuple]
    kernel_decomp = host_decomposition(lg.graph, kernel_host)
    longest = max((len(p) for p in kernel_decomp.paths), default=0)
    checks = [BoundCheck("max-path-length", longest, LONG_PATH_MIN - 1)]
    k = max_leaf
    if k is None and g.n >= 2 and g.n <= 12:
        k = max_leaf_number_exact(g)
    if k is not None:
        checks.append(
            BoundCheck("path-count", len(decomp.paths), 5 * k - 1 + k // 2)
        )
        checks.append(BoundCheck("kernel-size", out.graph.n, 108 * k + k // 2))
    report = SizeReport(
        kind=MAXLEAF,
        n_before=g.n,
        n_after=out.graph.n,
        budget_before=d0,
        budget_after=out.budget,
        path_count=len(decomp.paths),
        max_leaf=k,
        checks=tuple(checks),
    )
    return out, trace, report


def check_p2_bound(g: Graph, k: int) -> bool:
    """Does the degree-2 chain count respect the max-leaf bound 5k - 1 + floor(k/2)?"""
    decomp = host_decomposition(g)
    return len(decomp.paths) <= 5 * k - 1 + k // 2


# ---------------------------------------------------------------------------
# Solution normalization (the case analysis)


def _normalize_sections(
    g: Graph, sections: Sequence[Sequence[int]], code: frozenset[int]
) -> frozenset[int]:
    """Rewrite ``code`` so every inner section holds the same two positions.

    The dispatch looks at which of the last three vertices of the first
    border and the first three of the last border are in the solution,
    plus two domination side conditions; each case prescribes the position
    pair for the inner sections and at most one border vertex to add. A
    valid solution must hit both border triples (their middle vertices
    have no other neighbors), so the dispatch is total.
    """
    first, last = sections[0], sections[-1]
    inner = sections[1:-1]
    sset = set(code)
    a2, a3, a4, a5 = first[-4], first[-3], first[-2], first[-1]
    b1, b2, b3, b4 = last[0], last[1], last[2], last[3]
    in_a2, in_a3, in_a4, in_a5 = (v in sset for v in (a2, a3, a4, a5))
    in_b1, in_b2, in_b3, in_b4 = (v in sset for v in (b1, b2, b3, b4))

    extra: tuple[int, ...] = ()
    if in_a5 and (in_b1 or in_b2):
        positions = (2, 5)
    elif in_a5:
        positions = (3, 5)
        if not (in_a3 or in_a4):
            extra = (a3,)
    elif in_a4 and (in_a2 or in_a3) and in_b1:
        positions = (1, 4)
    elif in_a4 and (in_a2 or in_a3) and in_b2:
        positions = (2, 4)
        if not (in_b3 or in_b4):
            extra = (b1,)
    elif in_a4 and in_b3:
        positions = (1, 4)
        extra = (b1,)
    elif in_a4 and in_b1:
        positions = (1, 4)
    elif in_a4 and in_b2:
        if in_b3 or in_b4:
            positions = (2, 4)
            extra = (a5,)
        else:
            positions = (1, 4)
            extra = (b1,)
    elif in_a3 and in_b1:
        positions = (1, 3)
        if not (in_b2 or in_b3):
            extra = (b3,)
    elif in_a3 and in_b2:
        positions = (2, 5)
        extra = (a5,)
    elif in_a3 and in_b3:
        positions = (3, 5)
        extra = (a5,)
    else:
        raise InternalVerificationError(
            "solution misses both border triples; it cannot have been valid"
        )

    result = sset - {v for sec in inner for v in sec}
    result.update(extra)
    for sec in inner:
        result.add(sec[positions[0] - 1])
        result.add(sec[positions[1] - 1])

    ok, witness = is_locating_dominating(g, result)
    if not ok:
        raise InternalVerificationError(f"path normalization broke the set: {witness}")
    if len(result) > len(sset):
        raise InternalVerificationError("path normalization grew the set")
    want = {sec[positions[0] - 1] for sec in inner} | {
        sec[positions[1] - 1] for sec in inner
    }
    for sec in inner:
        if result.intersection(sec) != want.intersection(sec):
            raise InternalVerificationError("per-section position postcondition failed")
    return frozenset(result)


def normalize_path_solution(
    g: Graph,
    path: SubdivisionPath,
    sectioning: FiveSectioning,
    code: Iterable[int],
) -> frozenset[int]:
    """Public wrapper: validates inputs, then runs the section rewrite."""
    if len(path) < 15:
        raise LocdomError("normalization needs a path of at least 15 vertices")
    flat = tuple(v for sec in sectioning.sections for v in sec)
    if flat != path.vertices:
        raise LocdomError("sectioning does not cover the path")
    code = frozenset(code)
    ok, witness = is_locating_dominating(g, code)
    if not ok:
        raise LocdomError(f"input set is not locating-dominating: {witness}")
    return _normalize_sections(g, sectioning.sections, code)


# ---------------------------------------------------------------------------
# Lifting


def lift_maxleaf_solution(trace: KernelTrace, code: Iterable[int]) -> frozenset[int]:
    """Undo the long-path reductions, replicating the normalized position pair."""
    if trace.kind != MAXLEAF:
        raise LocdomError(f"not a maxleaf trace: {trace.kind}")
    if trace.no_instance:
        raise LocdomError("cannot lift through a budget-exhausted trace")
    stages = replay_stages(trace)
    final = stages[-1]
    code = frozenset(code)
    for v in code:
        if not (0 <= v < final.graph.n):
            raise LocdomError(f"kernel solution vertex {v} out of range")
    ok, witness = is_locating_dominating(final.graph, code)
    if not ok:
        raise LocdomError(f"kernel solution does not verify: {witness}")

    current = frozenset(final.labels[v] for v in code)
    for i in range(len(trace.steps) - 1, -1, -1):
        step = trace.steps[i]
        if not isinstance(step, PathReduced):
            raise LocdomError(f"unexpected step {step!r} in maxleaf trace")
        before, after = stages[i], stages[i + 1]
        s_first, s_last = step.section_sizes[0], step.section_sizes[-1]
        repl_sections = (
            step.path[:s_first],
            step.added,
            step.path[len(step.path) - s_last :],
        )
        idx_sections = [
            tuple(after.index_of(lab) for lab in sec) for sec in repl_sections
        ]
        idx_code = frozenset(after.index_of(lab) for lab in current)
        normalized = _normalize_sections(after.graph, idx_sections, idx_code)
        norm_labels = {after.labels[v] for v in normalized}
        picked = sorted(step.added.index(lab) + 1 for lab in step.added if lab in norm_labels)
        if len(picked) != 2:
            raise InternalVerificationError(
                "replacement path does not hold exactly two solution vertices"
            )
        current_set = norm_labels - set(step.added)
        at = s_first
        sizes = step.section_sizes
        for size in sizes[1:-1]:
            sec = step.path[at : at + size]
            current_set.add(sec[picked[0] - 1])
            current_set.add(sec[picked[1] - 1])
            at += size
        current = frozenset(current_set)
        ok, witness = is_locating_dominating(
            before.graph, [before.index_of(lab) for lab in current]
        )
        if not ok:
            raise InternalVerificationError(
                f"lift produced an invalid set one stage up: {witness}"
            )
    if len(current) > trace.original_budget:
        raise InternalVerificationError("lifted solution exceeds the original budget")
    return current
