"""Kernelization traces: rule records, label bookkeeping, and replay.

Kernel rules delete (and, for the long-path rule, insert) vertices, and a
solution found on the kernel has to be mapped back to the original graph.
Every vertex therefore carries a stable label: original vertices keep
their original id, inserted vertices get fresh labels past the original
range. A :class:`KernelTrace` stores the original instance, the ordered
rule records (in label space), and the label of each kernel vertex, which
is enough to replay the whole run and to lift solutions backwards.

Traces serialize to a JSON document so kernelize-then-lift pipelines can
run across separate CLI invocations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import LocdomError, ParseError
from .graph import Graph, graph_from_edges, induced_subgraph


class LabeledGraph:
    """A Graph plus a stable label per vertex position."""

    def __init__(self, graph: Graph, labels: tuple[int, ...]):
        if len(labels) != graph.n:
            raise LocdomError("label/vertex count mismatch")
        self.graph = graph
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        if len(self._index) != len(labels):
            raise LocdomError("duplicate labels")

    @staticmethod
    def identity(graph: Graph) -> "LabeledGraph":
        return LabeledGraph(graph, tuple(range(graph.n)))

    def index_of(self, label: int) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LocdomError(f"label {label} not present") from None

    def has_label(self, label: int) -> bool:
        return label in self._index

    def labels_of(self, indices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.labels[i] for i in indices)

    def indices_of(self, labels: Iterable[int]) -> frozenset[int]:
        return frozenset(self.index_of(lab) for lab in labels)

    def delete_labels(self, labels: Iterable[int]) -> "LabeledGraph":
        gone = set(labels)
        keep = [i for i, lab in enumerate(self.labels) if lab not in gone]
        sub, old_ids = induced_subgraph(self.graph, keep)
        return LabeledGraph(sub, tuple(self.labels[i] for i in old_ids))

    def add_path(
        self, new_labels: tuple[int, ...], attach_left: int, attach_right: int
    ) -> "LabeledGraph":
        """Append a fresh path and hook its ends to two existing labels."""
        n = self.graph.n
        extra = len(new_labels)
        edges = list(self.graph.edges())
        edges.extend((n + i, n + i + 1) for i in range(extra - 1))
        edges.append((self.index_of(attach_left), n))
        edges.append((n + extra - 1, self.index_of(attach_right)))
        return LabeledGraph(
            graph_from_edges(n + extra, edges), self.labels + new_labels
        )


@dataclass(frozen=True)
class TwinRemoved:
    removed: int
    survivors: tuple[int, ...]
    kind: str  # "false" | "true"
    budget_delta: int = 1


@dataclass(frozen=True)
class TrivialCliqueRemoved:
    pattern_key: str
    removed_clique: tuple[int, ...]  # labels in position order
    budget_delta: int = 1


@dataclass(frozen=True)
class NontrivialCliqueRemoved:
    pattern_key: str
    removed_clique: tuple[int, ...]
    tau: tuple[int, ...]
    budget_delta: int = 0


@dataclass(frozen=True)
class PathReduced:
    path: tuple[int, ...]  # full subdivision path before the rule, in order
    section_sizes: tuple[int, ...]
    removed: tuple[int, ...]  # inner-section labels, in path order
    added: tuple[int, ...]  # the five fresh labels, in path order
    attach_left: int
    attach_right: int
    budget_delta: int = 0


Step = Union[TwinRemoved, TrivialCliqueRemoved, NontrivialCliqueRemoved, PathReduced]


@dataclass(frozen=True)
class KernelTrace:
    kind: str  # "cluster" | "clique" | "maxleaf"
    original_graph: Graph
    original_budget: int
    steps: tuple[Step, ...] = ()
    modulator: Optional[tuple[int, ...]] = None
    host: Optional[tuple[int, ...]] = None
    kernel_labels: tuple[int, ...] = ()
    kernel_budget: int = 0
    no_instance: bool = False

    def budget_spent(self) -> int:
        return sum(s.budget_delta for s in self.steps)


def apply_step(lg: LabeledGraph, step: Step) -> LabeledGraph:
    if isinstance(step, TwinRemoved):
        return lg.delete_labels([step.removed])
    if isinstance(step, (TrivialCliqueRemoved, NontrivialCliqueRemoved)):
        return lg.delete_labels(step.removed_clique)
    if isinstance(step, PathReduced):
        lg = lg.delete_labels(step.removed)
        return lg.add_path(step.added, step.attach_left, step.attach_right)
    raise LocdomError(f"unknown step {step!r}")


def replay_stages(trace: KernelTrace) -> list[LabeledGraph]:
    """Graphs along the run: stages[i] is the graph after the first i steps."""
    lg = LabeledGraph.identity(trace.original_graph)
    stages = [lg]
    for step in trace.steps:
        lg = apply_step(lg, step)
        stages.append(lg)
    if not trace.no_instance:
        final = stages[-1]
        if tuple(final.labels) != trace.kernel_labels:
            raise LocdomError("trace does not replay to the recorded kernel labels")
    return stages


def _step_to_dict(step: Step) -> dict:
    if isinstance(step, TwinRemoved):
        return {
            "rule": "twin",
            "removed": step.removed,
            "survivors": list(step.survivors),
            "twin_kind": step.kind,
            "budget_delta": step.budget_delta,
        }
    if isinstance(step, TrivialCliqueRemoved):
        return {
            "rule": "trivial-clique",
            "pattern_key": step.pattern_key,
            "removed_clique": list(step.removed_clique),
            "budget_delta": step.budget_delta,
        }
    if isinstance(step, NontrivialCliqueRemoved):
        return {
            "rule": "nontrivial-clique",
            "pattern_key": step.pattern_key,
            "removed_clique": list(step.removed_clique),
            "tau": list(step.tau),
            "budget_delta": step.budget_delta,
        }
    if isinstance(step, PathReduced):
        return {
            "rule": "long-path",
            "path": list(step.path),
            "section_sizes": list(step.section_sizes),
            "removed": list(step.removed),
            "added": list(step.added),
            "attach_left": step.attach_left,
            "attach_right": step.attach_right,
            "budget_delta": step.budget_delta,
        }
    raise LocdomError(f"unknown step {step!r}")


def _step_from_dict(data: dict) -> Step:
    rule = data.get("rule")
    if rule == "twin":
        return TwinRemoved(
            data["removed"],
            tuple(data["survivors"]),
            data["twin_kind"],
            data["budget_delta"],
        )
    if rule == "trivial-clique":
        return TrivialCliqueRemoved(
            data["pattern_key"], tuple(data["removed_clique"]), data["budget_delta"]
        )
    if rule == "nontrivial-clique":
        return NontrivialCliqueRemoved(
            data["pattern_key"],
            tuple(data["removed_clique"]),
            tuple(data["tau"]),
            data["budget_delta"],
        )
    if rule == "long-path":
        return PathReduced(
            tuple(data["path"]),
            tuple(data["section_sizes"]),
            tuple(data["removed"]),
            tuple(data["added"]),
            data["attach_left"],
            data["attach_right"],
            data["budget_delta"],
        )
    raise ParseError(f"unknown rule kind {rule!r} in trace")


def trace_to_json(trace: KernelTrace) -> str:
    doc = {
        "format": "locdom-trace",
        "version": 1,
        "kind": trace.kind,
        "original": {
            "n": trace.original_graph.n,
            "edges": sorted(trace.original_graph.edges()),
        },
        "original_budget": trace.original_budget,
        "modulator": list(trace.modulator) if trace.modulator is not None else None,
        "host": list(trace.host) if trace.host is not None else None,
        "steps": [_step_to_dict(s) for s in trace.steps],
        "kernel_labels": list(trace.kernel_labels),
        "kernel_budget": trace.kernel_budget,
        "no_instance": trace.no_instance,
    }
    return json.dumps(doc, indent=2) + "\n"


def trace_from_json(text: str) -> KernelTrace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid trace JSON: {exc}") from None
    if doc.get("format") != "locdom-trace":
        raise ParseError("not a locdom trace file")
    original = graph_from_edges(
        doc["original"]["n"], [tuple(e) for e in doc["original"]["edges"]]
    )
    return KernelTrace(
        kind=doc["kind"],
        original_graph=original,
        original_budget=doc["original_budget"],
        steps=tuple(_step_from_dict(s) for s in doc["steps"]),
        modulator=tuple(doc["modulator"]) if doc.get("modulator") is not None else None,
        host=tuple(doc["host"]) if doc.get("host") is not None else None,
        kernel_labels=tuple(doc["kernel_labels"]),
        kernel_budget=doc["kernel_budget"],
        no_instance=doc["no_instance"],
    )
