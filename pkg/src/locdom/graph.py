"""Immutable simple graphs and small structural primitives.

Vertices are the integers ``0..n-1``. A :class:`Graph` is frozen after
construction, so every function in this module is pure and safe to share
across threads. Alongside parsing/serialization the module provides the
structural helpers the kernelization code is built on: twin classes,
complement, induced-P3 search, connected components, induced subgraphs with
id remapping, and an exact max-leaf-number oracle for small graphs.

Text format: the first non-comment line is ``n m``, followed by ``m`` lines
``u v`` with ``0 <= u, v < n`` and ``u != v``. Lines starting with ``#`` are
comments. Duplicate edges collapse; the canonical serializer emits edges
sorted lexicographically with ``u < v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import LocdomError, ParseError, SizeCapError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no loops, no parallel edges."""

    n: int
    adj: tuple[frozenset[int], ...]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def adjacency_masks(self) -> list[int]:
        """Open neighborhoods as bitmasks; index i has bit v set iff iv is an edge."""
        return [_mask(a) for a in self.adj]


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise LocdomError(f"negative vertex count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise LocdomError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise LocdomError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(a) for a in adj))


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format described in the module docstring."""
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError(f"expected header 'n m', got {line!r}", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"non-integer header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative count in header", lineno)
            header = (n, m)
            continue
        if len(edges) >= m:
            raise ParseError(f"unexpected extra line {line!r} after {m} edges", lineno)
        if len(parts) != 2:
            raise ParseError(f"expected edge 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer edge {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range in {line!r}", lineno)
        if u == v:
            raise ParseError(f"self-loop {u}", lineno)
        edges.append((u, v))
    if header is None:
        raise ParseError("empty document, missing 'n m' header")
    if len(edges) < m:
        raise ParseError(f"header promises {m} edges, found {len(edges)}")
    return graph_from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    """Canonical text form: sorted edge list with u < v."""
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def complement(g: Graph) -> Graph:
    full = frozenset(range(g.n))
    adj = tuple(full - g.adj[v] - {v} for v in range(g.n))
    return Graph(g.n, adj)


@dataclass(frozen=True)
class TwinClass:
    members: tuple[int, ...]
    kind: Optional[str]  # "false" | "true" | None for singletons

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class TwinClasses:
    classes: tuple[TwinClass, ...]

    def nontrivial(self) -> list[TwinClass]:
        return [c for c in self.classes if len(c) >= 2]


def twin_classes(g: Graph, restrict: Optional[Iterable[int]] = None) -> TwinClasses:
    """Partition ``restrict`` (default: all vertices) into maximal mutual-twin classes.

    Twinship is evaluated in the full graph: vertices sharing an open
    neighborhood form a false-twin class, vertices sharing a closed
    neighborhood a true-twin class. The two relations cannot both group a
    pair, so the classes are disjoint; leftovers come back as singletons
    with ``kind=None``.
    """
    if restrict is None:
        verts = list(range(g.n))
    else:
        verts = sorted(set(restrict))
        for v in verts:
            if not (0 <= v < g.n):
                raise LocdomError(f"vertex {v} out of range")
    by_open: dict[frozenset[int], list[int]] = {}
    by_closed: dict[frozenset[int], list[int]] = {}
    for v in verts:
        by_open.setdefault(g.adj[v], []).append(v)
        by_closed.setdefault(g.adj[v] | {v}, []).append(v)
    grouped: set[int] = set()
    classes: list[TwinClass] = []
    for members in by_open.values():
        if len(members) >= 2:
            classes.append(TwinClass(tuple(members), "false"))
            grouped.update(members)
    for members in by_closed.values():
        if len(members) >= 2:
            classes.append(TwinClass(tuple(members), "true"))
            grouped.update(members)
    for v in verts:
        if v not in grouped:
            classes.append(TwinClass((v,), None))
    classes.sort(key=lambda c: c.members[0])
    return TwinClasses(tuple(classes))


def find_induced_p3(g: Graph) -> Optional[tuple[int, int, int]]:
    """Lowest lexicographic (a, b, c) with edges ab, bc and no edge ac, else None."""
    return _find_induced_p3_alive(g, None)


def _find_induced_p3_alive(g: Graph, alive: Optional[set[int]]) -> Optional[tuple[int, int, int]]:
    verts = range(g.n) if alive is None else sorted(alive)
    for a in verts:
        na = g.adj[a]
        for b in sorted(na):
            if alive is not None and b not in alive:
                continue
            for c in sorted(g.adj[b]):
                if c == a or c in na:
                    continue
                if alive is not None and c not in alive:
                    continue
                return (a, b, c)
    return None


def connected_components(g: Graph) -> tuple[tuple[int, ...], ...]:
    seen = [False] * g.n
    comps: list[tuple[int, ...]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``vertices``; returns (graph, old_ids) with old_ids[new] = old."""
    old_ids = tuple(sorted(set(vertices)))
    for v in old_ids:
        if not (0 <= v < g.n):
            raise LocdomError(f"vertex {v} out of range")
    new_of = {old: new for new, old in enumerate(old_ids)}
    adj = tuple(
        frozenset(new_of[w] for w in g.adj[old] if w in new_of) for old in old_ids
    )
    return Graph(len(old_ids), adj), old_ids


def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Delete ``removed``, compact ids, and return the old->new remap table."""
    gone = set(removed)
    sub, old_ids = induced_subgraph(g, (v for v in range(g.n) if v not in gone))
    return sub, {old: new for new, old in enumerate(old_ids)}


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(g.has_edge(u, v) for u, v in combinations(vs, 2))


def is_cluster_graph(g: Graph) -> bool:
    return find_induced_p3(g) is None


def max_leaf_number_exact(g: Graph, limit: int = 12) -> int:
    """Exact maximum number of leaves over all spanning trees of ``g``.

    Uses the complement identity with a minimum connected dominating set:
    for a connected graph on n >= 3 vertices the internal vertices of any
    spanning tree form a connected dominating set and vice versa, so the
    answer is n minus the minimum CDS size, found by subset search in
    ascending cardinality. This is an oracle for small graphs only;
    ``limit`` caps n and can be raised by the caller at their own risk.
    """
    n = g.n
    if n < 2:
        raise LocdomError("max leaf number needs at least two vertices")
    if not is_connected(g):
        raise LocdomError("max leaf number is defined for connected graphs only")
    if n > limit:
        raise SizeCapError(f"max_leaf_number_exact refuses n={n} > limit={limit}")
    if n == 2:
        return 2
    nbr = g.adjacency_masks()
    closed = [nbr[v] | (1 << v) for v in range(n)]
    full = (1 << n) - 1
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            dom = 0
            for v in combo:
                dom |= closed[v]
            if dom != full:
                continue
            if _mask_connected(nbr, combo):
                return n - size
    raise LocdomError("unreachable: the full vertex set is a connected dominating set")


def _mask_connected(nbr: Sequence[int], vertices: Sequence[int]) -> bool:
    sub = _mask(vertices)
    start = 1 << vertices[0]
    reach = start
    frontier = start
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= nbr[v]
        frontier = nxt & sub & ~reach
        reach |= frontier
    return reach == sub
