"""Modulators that parameterize the kernels.

A modulator is a vertex set U whose removal leaves the graph in a target
class: a cluster graph (disjoint union of cliques, equivalently P3-free)
or a single clique. Exact minimum modulators are NP-hard, so the kernels
run on approximations: repeatedly deleting all three vertices of an
induced P3 is a 3-approximation for distance to cluster, and taking both
endpoints of a maximal matching in the complement is a 2-approximation
for distance to clique. Both are deterministic (lowest-index choices) and
both accept a user-supplied override, since the kernel bounds are
functions of |U| and tests want planted modulators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import LocdomError, ParseError
from .graph import Graph, _find_induced_p3_alive, induced_subgraph, is_cluster_graph

CLUSTER = "cluster"
CLIQUE = "clique"


@dataclass(frozen=True)
class Modulator:
    kind: str  # CLUSTER or CLIQUE
    vertices: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertices)


def make_modulator(g: Graph, kind: str, vertices: Iterable[int]) -> Modulator:
    """Build and verify a modulator; raises when G - U is not in the class."""
    mod = Modulator(kind, frozenset(vertices))
    if not verify_modulator(g, mod):
        raise LocdomError(f"G minus {sorted(mod.vertices)} is not a {kind} remainder")
    return mod


def verify_modulator(g: Graph, mod: Modulator) -> bool:
    for v in mod.vertices:
        if not (0 <= v < g.n):
            return False
    rest, _ = induced_subgraph(g, (v for v in range(g.n) if v not in mod.vertices))
    if mod.kind == CLUSTER:
        return is_cluster_graph(rest)
    if mod.kind == CLIQUE:
        return rest.edge_count() == rest.n * (rest.n - 1) // 2
    raise LocdomError(f"unknown modulator kind {mod.kind!r}")


def cluster_modulator_3approx(g: Graph) -> Modulator:
    """Delete every induced P3 wholesale; at most 3x the optimum cluster modulator."""
    alive = set(range(g.n))
    removed: set[int] = set()
    while True:
        hit = _find_induced_p3_alive(g, alive)
        if hit is None:
            break
        for v in hit:
            alive.remove(v)
            removed.add(v)
    return Modulator(CLUSTER, frozenset(removed))


def clique_modulator_2approx(g: Graph) -> Modulator:
    """Endpoints of a greedy maximal matching in the complement graph.

    Unmatched vertices are pairwise adjacent in g (otherwise the matching
    was not maximal), so the remainder is a clique; the matching lower
    bound gives the factor 2.
    """
    matched = [False] * g.n
    removed: set[int] = set()
    for u in range(g.n):
        if matched[u]:
            continue
        for v in range(u + 1, g.n):
            if matched[v] or v in g.adj[u]:
                continue
            matched[u] = matched[v] = True
            removed.update((u, v))
            break
    return Modulator(CLIQUE, frozenset(removed))


def write_modulator(mod: Modulator) -> str:
    ids = sorted(mod.vertices)
    return "\n".join([str(len(ids))] + [str(v) for v in ids]) + "\n"


def read_modulator(text: str, kind: str, g: Graph) -> Modulator:
    values: list[int] = []
    count = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            number = int(line)
        except ValueError:
            raise ParseError(f"expected an integer, got {line!r}", lineno) from None
        if count is None:
            count = number
        else:
            values.append(number)
    if count is None:
        raise ParseError("empty modulator file")
    if len(values) != count:
        raise ParseError(f"modulator promises {count} vertices, found {len(values)}")
    return make_modulator(g, kind, values)
