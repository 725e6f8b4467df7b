"""Kernelization for graphs close to a cluster graph or to a clique.

With a modulator U in hand, G - U is a disjoint union of cliques. Three
rewrites shrink it while preserving the answer exactly:

* twin reduction: a mutual-twin class of G inside V(G) - U keeps at most
  two members; each removal costs one unit of budget;
* twin cliques sharing the multiset of U-neighborhoods form a pattern;
  a pattern of trivial cliques (no true-twin pair inside a clique) of
  size s with r >= 2s + |U| + 2 members loses one clique and one unit of
  budget;
* a pattern of non-trivial cliques with r >= |U| + 2 members loses one
  clique and tau units, where tau counts the true-twin pairs per clique.

The driver exhausts twin reduction first so every in-clique twin class
has at most two members (the pattern rules depend on that), then applies
the clique rules per pattern until none fires. Every removal is recorded
in a trace; solutions of the kernel lift back by re-adding one aligned
vertex (trivial case) or a twin-class transversal (non-trivial case) of
each removed clique, after normalizing the kernel solution so that the
re-added vertices cannot be confounded with anything. The two normalizers
implement both branches of their size arguments and never return an
unverified set.

The clique-modulator variant only needs twin reduction: the remainder is
one clique, so the kernel has at most |U| + 2*2^|U| vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    InapplicableRule,
    InternalVerificationError,
    LocdomError,
)
from .graph import Graph, connected_components, induced_subgraph, is_clique, twin_classes
from .lds import Instance, is_locating_dominating
from .modulators import CLIQUE, CLUSTER, Modulator, clique_modulator_2approx, cluster_modulator_3approx, verify_modulator
from .report import BoundCheck, SizeReport
from .trace import (
    KernelTrace,
    LabeledGraph,
    NontrivialCliqueRemoved,
    TrivialCliqueRemoved,
    TwinRemoved,
    replay_stages,
)

NO_INSTANCE_GRAPH = Graph(1, (frozenset(),))


@dataclass(frozen=True)
class CliqueRecord:
    """One clique of G - U: members in position order plus twin bookkeeping.

    Members are sorted by (U-signature, id); twin cliques therefore agree
    position by position on signatures. ``tau`` holds the lowest-id member
    of each true-twin pair, and ``max_class`` the largest signature
    multiplicity (everything above 2 means twin reduction has not run).
    """

    members: tuple[int, ...]
    signatures: tuple[tuple[int, ...], ...]
    trivial: bool
    tau: tuple[int, ...]
    max_class: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Pattern:
    """Maximal family of twin cliques (equal signature multisets)."""

    key: str
    records: tuple[CliqueRecord, ...]
    size: int
    trivial: bool
    tau_size: int

    @property
    def clique_count(self) -> int:
        return len(self.records)


def _clique_record(lg: LabeledGraph, u_idx: frozenset[int], comp: Sequence[int]) -> CliqueRecord:
    g = lg.graph
    if not is_clique(g, comp):
        raise LocdomError("remainder component is not a clique; modulator invalid")
    sig_of = {
        v: tuple(sorted(lg.labels[w] for w in g.adj[v] & u_idx)) for v in comp
    }
    ordered = sorted(comp, key=lambda v: (sig_of[v], lg.labels[v]))
    classes: dict[tuple[int, ...], list[int]] = {}
    for v in ordered:
        classes.setdefault(sig_of[v], []).append(lg.labels[v])
    max_class = max(len(c) for c in classes.values())
    tau = tuple(sorted(min(c) for c in classes.values() if len(c) == 2))
    return CliqueRecord(
        members=tuple(lg.labels[v] for v in ordered),
        signatures=tuple(sig_of[v] for v in ordered),
        trivial=max_class == 1,
        tau=tau,
        max_class=max_class,
    )


def _patterns_lg(lg: LabeledGraph, u_labels: frozenset[int]) -> list[Pattern]:
    u_idx = frozenset(lg.index_of(lab) for lab in u_labels if lg.has_label(lab))
    rest = [v for v in range(lg.graph.n) if v not in u_idx]
    sub, old_ids = induced_subgraph(lg.graph, rest)
    records: list[CliqueRecord] = []
    for comp in connected_components(sub):
        records.append(_clique_record(lg, u_idx, tuple(old_ids[v] for v in comp)))
    groups: dict[str, list[CliqueRecord]] = {}
    for rec in records:
        key = str(tuple(sorted(rec.signatures)))
        groups.setdefault(key, []).append(rec)
    patterns = []
    for key in sorted(groups):
        recs = tuple(sorted(groups[key], key=lambda r: r.members))
        first = recs[0]
        patterns.append(
            Pattern(
                key=key,
                records=recs,
                size=first.size,
                trivial=first.trivial,
                tau_size=len(first.tau),
            )
        )
    return patterns


def compute_patterns(g: Graph, modulator: Modulator) -> list[Pattern]:
    """Group the cliques of G - U into patterns; the modulator must verify."""
    if modulator.kind != CLUSTER or not verify_modulator(g, modulator):
        raise LocdomError("invalid cluster modulator")
    return _patterns_lg(LabeledGraph.identity(g), modulator.vertices)


def _verify_labels(lg: LabeledGraph, labels: Iterable[int]):
    return is_locating_dominating(lg.graph, [lg.index_of(lab) for lab in labels])


# ---------------------------------------------------------------------------
# Twin reduction


def _twin_steps(lg: LabeledGraph, u_labels: frozenset[int], budget: int):
    """Exhaust the twin rule outside U; returns (graph, budget, steps)."""
    steps: list[TwinRemoved] = []
    while True:
        u_idx = {lg.index_of(lab) for lab in u_labels if lg.has_label(lab)}
        rest = [v for v in range(lg.graph.n) if v not in u_idx]
        big = [c for c in twin_classes(lg.graph, rest).classes if len(c) >= 3]
        if not big:
            return lg, budget, steps
        cls = big[0]
        labels = sorted(lg.labels[v] for v in cls.members)
        removed = labels[-1]
        steps.append(
            TwinRemoved(removed, tuple(labels[:-1]), cls.kind or "false", 1)
        )
        lg = lg.delete_labels([removed])
        budget -= 1


def _finalize(
    kind: str,
    original: Graph,
    original_budget: int,
    steps: list,
    lg: LabeledGraph,
    budget: int,
    modulator: Optional[tuple[int, ...]],
    host: Optional[tuple[int, ...]] = None,
) -> tuple[Instance, KernelTrace]:
    """Package a finished run; a negative budget yields the canonical NO instance."""
    if budget < 0:
        trace = KernelTrace(
            kind=kind,
            original_graph=original,
            original_budget=original_budget,
            steps=tuple(steps),
            modulator=modulator,
            host=host,
            kernel_labels=(),
            kernel_budget=0,
            no_instance=True,
        )
        return Instance(NO_INSTANCE_GRAPH, 0), trace
    trace = KernelTrace(
        kind=kind,
        original_graph=original,
        original_budget=original_budget,
        steps=tuple(steps),
        modulator=modulator,
        host=host,
        kernel_labels=tuple(lg.labels),
        kernel_budget=budget,
        no_instance=False,
    )
    return Instance(lg.graph, budget), trace


def rule_twin_reduce(inst: Instance, modulator: Modulator) -> tuple[Instance, KernelTrace]:
    """Apply the twin rule exhaustively outside the modulator."""
    if not verify_modulator(inst.graph, modulator):
        raise LocdomError("modulator does not verify against the instance graph")
    lg, budget, steps = _twin_steps(
        LabeledGraph.identity(inst.graph), modulator.vertices, inst.budget
    )
    out, trace = _finalize(
        modulator.kind,
        inst.graph,
        inst.budget,
        steps,
        lg,
        budget,
        tuple(sorted(modulator.vertices)),
    )
    return out, trace


# ---------------------------------------------------------------------------
# Pattern rules


def _pick_removal(records: Sequence[CliqueRecord]) -> CliqueRecord:
    # Deterministic choice: the clique whose smallest id is largest.
    return max(records, key=lambda r: min(r.members))


def trivial_threshold(size: int, mod_size: int) -> int:
    return 2 * size + mod_size + 2


def nontrivial_threshold(mod_size: int) -> int:
    return mod_size + 2


def _check_trivial_applicable(pattern: Pattern, mod_size: int) -> None:
    if not pattern.trivial:
        raise InapplicableRule("pattern is not trivial")
    if pattern.size < 2:
        raise InapplicableRule("pattern cliques must have size >= 2")
    need = trivial_threshold(pattern.size, mod_size)
    if pattern.clique_count < need:
        raise InapplicableRule(
            f"pattern has {pattern.clique_count} cliques, rule needs >= {need}"
        )


def _check_nontrivial_applicable(pattern: Pattern, mod_size: int) -> None:
    if pattern.trivial:
        raise InapplicableRule("pattern is trivial")
    if pattern.size < 2:
        raise InapplicableRule("pattern cliques must have size >= 2")
    if any(r.max_class > 2 for r in pattern.records):
        raise InapplicableRule("twin classes above size two; run twin reduction first")
    need = nontrivial_threshold(mod_size)
    if pattern.clique_count < need:
        raise InapplicableRule(
            f"pattern has {pattern.clique_count} cliques, rule needs >= {need}"
        )


def rule_trivial_pattern(
    inst: Instance, modulator: Modulator, pattern: Pattern
) -> tuple[Instance, KernelTrace]:
    """Remove one clique of a large trivial pattern and pay one unit of budget."""
    _check_trivial_applicable(pattern, len(modulator))
    rec = _pick_removal(pattern.records)
    lg = LabeledGraph.identity(inst.graph).delete_labels(rec.members)
    step = TrivialCliqueRemoved(pattern.key, rec.members, 1)
    return _finalize(
        CLUSTER,
        inst.graph,
        inst.budget,
        [step],
        lg,
        inst.budget - 1,
        tuple(sorted(modulator.vertices)),
    )


def rule_nontrivial_pattern(
    inst: Instance, modulator: Modulator, pattern: Pattern
) -> tuple[Instance, KernelTrace]:
    """Remove one clique of a large non-trivial pattern; budget drops by tau."""
    _check_nontrivial_applicable(pattern, len(modulator))
    rec = _pick_removal(pattern.records)
    lg = LabeledGraph.identity(inst.graph).delete_labels(rec.members)
    step = NontrivialCliqueRemoved(pattern.key, rec.members, rec.tau, pattern.tau_size)
    return _finalize(
        CLUSTER,
        inst.graph,
        inst.budget,
        [step],
        lg,
        inst.budget - pattern.tau_size,
        tuple(sorted(modulator.vertices)),
    )


# ---------------------------------------------------------------------------
# Drivers


def kernelize_cluster(
    inst: Instance, modulator: Optional[Modulator] = None
) -> tuple[Instance, KernelTrace, SizeReport]:
    """Run twin reduction, then the pattern rules, to a fixpoint."""
    g, d0 = inst.graph, inst.budget
    if modulator is None:
        modulator = cluster_modulator_3approx(g)
    elif modulator.kind != CLUSTER or not verify_modulator(g, modulator):
        raise LocdomError("invalid cluster modulator")
    u_labels = modulator.vertices
    mod_tuple = tuple(sorted(u_labels))
    mod_size = len(u_labels)

    lg = LabeledGraph.identity(g)
    lg, budget, steps = _twin_steps(lg, u_labels, d0)
    steps = list(steps)
    if budget < 0:
        out, trace = _finalize(CLUSTER, g, d0, steps, lg, budget, mod_tuple)
        return out, trace, _no_instance_report(CLUSTER, g, d0, mod_size)

    for pattern in _patterns_lg(lg, u_labels):
        if pattern.size < 2:
            continue
        if pattern.trivial:
            threshold, delta = trivial_threshold(pattern.size, mod_size), 1
        else:
            threshold, delta = nontrivial_threshold(mod_size), pattern.tau_size
        remaining = list(pattern.records)
        while len(remaining) >= threshold:
            rec = _pick_removal(remaining)
            remaining.remove(rec)
            lg = lg.delete_labels(rec.members)
            budget -= delta
            if pattern.trivial:
                steps.append(TrivialCliqueRemoved(pattern.key, rec.members, delta))
            else:
                steps.append(
                    NontrivialCliqueRemoved(pattern.key, rec.members, rec.tau, delta)
                )
            if budget < 0:
                out, trace = _finalize(CLUSTER, g, d0, steps, lg, budget, mod_tuple)
                return out, trace, _no_instance_report(CLUSTER, g, d0, mod_size)

    _assert_fixpoint(lg, u_labels, mod_size)
    out, trace = _finalize(CLUSTER, g, d0, steps, lg, budget, mod_tuple)
    report = _cluster_report(g, d0, out, lg, u_labels, mod_size)
    return out, trace, report


def kernelize_clique(
    inst: Instance, modulator: Optional[Modulator] = None
) -> tuple[Instance, KernelTrace, SizeReport]:
    """Twin reduction outside a clique modulator; the remainder clique collapses."""
    g, d0 = inst.graph, inst.budget
    if modulator is None:
        modulator = clique_modulator_2approx(g)
    elif modulator.kind != CLIQUE or not verify_modulator(g, modulator):
        raise LocdomError("invalid clique modulator")
    mod_tuple = tuple(sorted(modulator.vertices))
    mod_size = len(modulator.vertices)

    lg, budget, steps = _twin_steps(
        LabeledGraph.identity(g), modulator.vertices, d0
    )
    out, trace = _finalize(CLIQUE, g, d0, list(steps), lg, budget, mod_tuple)
    if trace.no_instance:
        return out, trace, _no_instance_report(CLIQUE, g, d0, mod_size)
    checks = (
        BoundCheck("kernel-size", out.graph.n, mod_size + 2 * (1 << mod_size)),
    )
    report = SizeReport(
        kind=CLIQUE,
        n_before=g.n,
        n_after=out.graph.n,
        budget_before=d0,
        budget_after=out.budget,
        modulator_size=mod_size,
        checks=checks,
    )
    return out, trace, report


def _assert_fixpoint(lg: LabeledGraph, u_labels: frozenset[int], mod_size: int) -> None:
    u_idx = {lg.index_of(lab) for lab in u_labels if lg.has_label(lab)}
    rest = [v for v in range(lg.graph.n) if v not in u_idx]
    if any(len(c) >= 3 for c in twin_classes(lg.graph, rest).classes):
        raise InternalVerificationError("twin rule still applicable after driver run")
    for pattern in _patterns_lg(lg, u_labels):
        if pattern.size < 2:
            continue
        threshold = (
            trivial_threshold(pattern.size, mod_size)
            if pattern.trivial
            else nontrivial_threshold(mod_size)
        )
        if pattern.clique_count >= threshold:
            raise InternalVerificationError("pattern rule still applicable after driver run")


def _no_instance_report(kind: str, g: Graph, d0: int, mod_size: int) -> SizeReport:
    return SizeReport(
        kind=kind,
        n_before=g.n,
        n_after=1,
        budget_before=d0,
        budget_after=0,
        no_instance=True,
        modulator_size=mod_size,
    )


def _cluster_report(
    g: Graph,
    d0: int,
    out: Instance,
    lg: LabeledGraph,
    u_labels: frozenset[int],
    mod_size: int,
) -> SizeReport:
    patterns = _patterns_lg(lg, u_labels)
    max_clique = max((p.size for p in patterns), default=0)
    checks = [BoundCheck("max-clique-size", max_clique, 1 << (mod_size + 1))]
    for i, pattern in enumerate(patterns):
        bound = (
            2 * pattern.size + mod_size + 1
            if pattern.trivial
            else (mod_size + 1 if pattern.size >= 2 else 2 * pattern.size + mod_size + 1)
        )
        checks.append(BoundCheck(f"pattern-{i}-cliques", pattern.clique_count, bound))
    checks.append(
        BoundCheck("pattern-count", len(patterns), 2 * (1 << (1 << mod_size)))
    )
    return SizeReport(
        kind=CLUSTER,
        n_before=g.n,
        n_after=out.graph.n,
        budget_before=d0,
        budget_after=out.budget,
        modulator_size=mod_size,
        pattern_count=len(patterns),
        checks=tuple(checks),
    )


# ---------------------------------------------------------------------------
# Solution normalization


def _transversal_shape(rec: CliqueRecord, chosen: set[int]) -> bool:
    """True iff ``chosen`` hits each true-twin pair exactly once and nothing else."""
    classes: dict[tuple[int, ...], list[int]] = {}
    for member, sig in zip(rec.members, rec.signatures):
        classes.setdefault(sig, []).append(member)
    for members in classes.values():
        want = 1 if len(members) == 2 else 0
        if len(chosen.intersection(members)) != want:
            return False
    return len(chosen) == sum(1 for m in classes.values() if len(m) == 2)


def _normalize_trivial_lg(
    lg: LabeledGraph,
    u_labels: frozenset[int],
    pattern: Pattern,
    d_labels: frozenset[int],
) -> tuple[frozenset[int], int]:
    mod_size = len(u_labels)
    r, s = pattern.clique_count, pattern.size
    if not pattern.trivial or s < 2:
        raise LocdomError("normalization needs a trivial pattern of cliques of size >= 2")
    if r < 2 * s + mod_size + 1:
        raise LocdomError(
            f"trivial normalization needs >= {2 * s + mod_size + 1} cliques, pattern has {r}"
        )
    ok, witness = _verify_labels(lg, d_labels)
    if not ok:
        raise LocdomError(f"input set is not locating-dominating: {witness}")

    pattern_vertices = {m for rec in pattern.records for m in rec.members}
    in_pattern = sum(len(d_labels.intersection(rec.members)) for rec in pattern.records)
    if in_pattern >= r + mod_size:
        # Heavy case: rebuilding with all of U plus one aligned vertex per
        # clique cannot exceed the original size.
        result = set(d_labels) | set(u_labels)
        result -= pattern_vertices
        result.update(rec.members[0] for rec in pattern.records)
        ell = 0
    else:
        by_position: dict[int, int] = {}
        for rec in pattern.records:
            hit = d_labels.intersection(rec.members)
            if len(hit) == 1:
                pos = rec.members.index(next(iter(hit)))
                by_position[pos] = by_position.get(pos, 0) + 1
        ell = min(
            (pos for pos, cnt in sorted(by_position.items()) if cnt >= 3), default=-1
        )
        if ell < 0:
            raise InternalVerificationError(
                "no position shared by three singleton cliques; counting argument violated"
            )
        result = set(d_labels)

    ok, witness = _verify_labels(lg, result)
    if not ok:
        raise InternalVerificationError(f"trivial normalization broke the set: {witness}")
    if len(result) > len(d_labels):
        raise InternalVerificationError("trivial normalization grew the set")
    aligned = sum(
        1
        for rec in pattern.records
        if result.intersection(rec.members) == {rec.members[ell]}
    )
    if aligned < 3:
        raise InternalVerificationError("aligned-triple postcondition failed")
    return frozenset(result), ell


def _normalize_nontrivial_lg(
    lg: LabeledGraph,
    u_labels: frozenset[int],
    pattern: Pattern,
    d_labels: frozenset[int],
) -> frozenset[int]:
    mod_size = len(u_labels)
    r = pattern.clique_count
    if pattern.trivial or pattern.size < 2:
        raise LocdomError("normalization needs a non-trivial pattern of cliques of size >= 2")
    if any(rec.max_class > 2 for rec in pattern.records):
        raise LocdomError("twin classes above size two; run twin reduction first")
    if r < mod_size + 1:
        raise LocdomError(
            f"non-trivial normalization needs >= {mod_size + 1} cliques, pattern has {r}"
        )
    ok, witness = _verify_labels(lg, d_labels)
    if not ok:
        raise LocdomError(f"input set is not locating-dominating: {witness}")

    if any(
        _transversal_shape(rec, set(d_labels.intersection(rec.members)))
        for rec in pattern.records
    ):
        return d_labels

    # Rebuild: keep one in-solution twin per pair, add all of U, drop the rest
    # of the pattern. Every clique then sits exactly on a twin transversal.
    result = set(d_labels) | set(u_labels)
    for rec in pattern.records:
        classes: dict[tuple[int, ...], list[int]] = {}
        for member, sig in zip(rec.members, rec.signatures):
            classes.setdefault(sig, []).append(member)
        keep: set[int] = set()
        for members in classes.values():
            if len(members) != 2:
                continue
            inside = sorted(d_labels.intersection(members))
            if not inside:
                raise InternalVerificationError(
                    "true-twin pair entirely outside a verified solution"
                )
            keep.add(inside[0])
        result -= set(rec.members) - keep
    ok, witness = _verify_labels(lg, result)
    if not ok:
        raise InternalVerificationError(f"non-trivial normalization broke the set: {witness}")
    if len(result) > len(d_labels):
        raise InternalVerificationError("non-trivial normalization grew the set")
    if not any(
        _transversal_shape(rec, set(result.intersection(rec.members)))
        for rec in pattern.records
    ):
        raise InternalVerificationError("transversal postcondition failed")
    return frozenset(result)


def normalize_trivial_solution(
    g: Graph, modulator: Modulator, pattern: Pattern, code: Iterable[int]
) -> frozenset[int]:
    """Rewrite a solution so three pattern cliques hold one aligned vertex each."""
    result, _ = _normalize_trivial_lg(
        LabeledGraph.identity(g), modulator.vertices, pattern, frozenset(code)
    )
    return result


def normalize_nontrivial_solution(
    g: Graph, modulator: Modulator, pattern: Pattern, code: Iterable[int]
) -> frozenset[int]:
    """Rewrite a solution so some pattern clique meets it exactly in a twin transversal."""
    return _normalize_nontrivial_lg(
        LabeledGraph.identity(g), modulator.vertices, pattern, frozenset(code)
    )


# ---------------------------------------------------------------------------
# Lifting


def lift_cluster_solution(trace: KernelTrace, code: Iterable[int]) -> frozenset[int]:
    """Replay a cluster/clique trace backwards, rebuilding a verified solution.

    Twin removals re-add the removed vertex only when the bare set fails
    verification; clique removals normalize the running solution first and
    then add the aligned vertex (trivial) or the recorded twin transversal
    (non-trivial) of the removed clique.
    """
    if trace.kind not in (CLUSTER, CLIQUE):
        raise LocdomError(f"not a cluster/clique trace: {trace.kind}")
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

    u_labels = frozenset(trace.modulator or ())
    current = frozenset(final.labels[v] for v in code)
    for i in range(len(trace.steps) - 1, -1, -1):
        step = trace.steps[i]
        before, after = stages[i], stages[i + 1]
        if isinstance(step, TwinRemoved):
            ok, _ = _verify_labels(before, current)
            if not ok:
                current = current | {step.removed}
        elif isinstance(step, TrivialCliqueRemoved):
            pattern = _pattern_by_key(after, u_labels, step.pattern_key)
            normalized, ell = _normalize_trivial_lg(after, u_labels, pattern, current)
            current = normalized | {step.removed_clique[ell]}
        elif isinstance(step, NontrivialCliqueRemoved):
            pattern = _pattern_by_key(after, u_labels, step.pattern_key)
            normalized = _normalize_nontrivial_lg(after, u_labels, pattern, current)
            current = normalized | set(step.tau)
        else:
            raise LocdomError(f"unexpected step {step!r} in cluster trace")
        ok, witness = _verify_labels(before, current)
        if not ok:
            raise InternalVerificationError(
                f"lift produced an invalid set one stage up: {witness}"
            )
    if len(current) > trace.original_budget:
        raise InternalVerificationError("lifted solution exceeds the original budget")
    return current


def _pattern_by_key(lg: LabeledGraph, u_labels: frozenset[int], key: str) -> Pattern:
    for pattern in _patterns_lg(lg, u_labels):
        if pattern.key == key:
            return pattern
    raise LocdomError(f"trace references a pattern {key!r} absent from the stage graph")
