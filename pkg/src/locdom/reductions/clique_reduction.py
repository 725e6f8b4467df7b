"""Clique-finding encoded as locating domination.

Given a graph H (every vertex with at least one neighbor) and k >= 2, the
generated instance contains k complete copies of H, one anchor gadget per
copy, and one group-edge gadget per copy pair. The anchor gadget for copy
i has a 4-path of alpha vertices, a 3-path of beta vertices, and a hub
rho_i, with alpha_{i,1}, beta_{i,1}, rho_i adjacent to all of the copy.
The group-edge gadget for the pair (i, j) consists of two cliques Q, Q'
of 2M vertices joined by exactly a perfect matching, a gamma 4-path whose
first vertex sees all of Q, Q' and both selector hubs lambda^i, lambda^j,
and a tau vertex seeing Q and gamma_1; every edge uv of H owns two Q
slots, wired to u_i, v_j and to v_i, u_j respectively. With budget
d = 4k + C(k,2)(2M+1), solutions of the instance correspond to k-cliques
of H: one copy vertex per copy is forced into any solution, and the
missing Q slot of each pair gadget reads off an edge of the clique.

Both certificate directions live here: building a solution from a clique
(always re-verified before being returned) and extracting a clique from a
solution after rewriting it into the canonical shape. A M = 1 source
graph (a single edge) makes Q too small for tau to be distinguished from
the matched partner of the lone solution slot, so the construction is
only usable for sources with at least two edges; the verifier catches the
degenerate case rather than silently emitting a bad certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import CanonicalFormError, InternalVerificationError, LocdomError
from ..graph import Graph, graph_from_edges, is_clique
from ..layout import GadgetLayout
from ..lds import is_locating_dominating

VARIANT = "clique-reduction"


@dataclass(frozen=True)
class CliqueInstance:
    """Source instance: find a clique of size k in graph."""

    graph: Graph
    k: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise LocdomError("clique size k must be at least 2")
        for v in range(self.graph.n):
            if self.graph.degree(v) == 0:
                raise LocdomError(f"source vertex {v} is isolated")


def _oriented_slots(h: Graph) -> list[tuple[int, int]]:
    """Two Q slots per source edge, in a fixed order: (u,v) then (v,u), u < v."""
    slots: list[tuple[int, int]] = []
    for u, v in sorted(h.edges()):
        slots.append((u, v))
        slots.append((v, u))
    return slots


def _wire(h: Graph, k: int) -> tuple[Graph, int, GadgetLayout]:
    n_src, m_src = h.n, h.edge_count()
    roles: dict[str, int] = {}
    counter = 0

    def fresh(role: str) -> int:
        nonlocal counter
        roles[role] = counter
        counter += 1
        return counter - 1

    for i in range(1, k + 1):
        for v in range(n_src):
            fresh(f"copy:{i}:{v}")
    for i in range(1, k + 1):
        for j in range(1, 5):
            fresh(f"alpha:{i}:{j}")
        for j in range(1, 4):
            fresh(f"beta:{i}:{j}")
        fresh(f"rho:{i}")
    slots = _oriented_slots(h)
    for i, j in combinations(range(1, k + 1), 2):
        for ell in range(1, 5):
            fresh(f"gamma:{i}:{j}:{ell}")
        fresh(f"lam:{i}:{j}:{i}")
        fresh(f"lam:{i}:{j}:{j}")
        fresh(f"tau:{i}:{j}")
        for u, v in slots:
            fresh(f"q:{i}:{j}:{u}:{v}")
        for u, v in slots:
            fresh(f"qp:{i}:{j}:{u}:{v}")

    edges: list[tuple[int, int]] = []

    def connect(a: str, b: str) -> None:
        edges.append((roles[a], roles[b]))

    for i in range(1, k + 1):
        copy = [f"copy:{i}:{v}" for v in range(n_src)]
        for a, b in combinations(copy, 2):
            connect(a, b)
        connect(f"alpha:{i}:1", f"alpha:{i}:2")
        connect(f"alpha:{i}:2", f"alpha:{i}:3")
        connect(f"alpha:{i}:3", f"alpha:{i}:4")
        connect(f"beta:{i}:1", f"beta:{i}:2")
        connect(f"beta:{i}:2", f"beta:{i}:3")
        for hub in (f"alpha:{i}:1", f"beta:{i}:1", f"rho:{i}"):
            for c in copy:
                connect(hub, c)
    for i, j in combinations(range(1, k + 1), 2):
        q = [f"q:{i}:{j}:{u}:{v}" for u, v in slots]
        qp = [f"qp:{i}:{j}:{u}:{v}" for u, v in slots]
        for a, b in combinations(q, 2):
            connect(a, b)
        for a, b in combinations(qp, 2):
            connect(a, b)
        for a, b in zip(q, qp):
            connect(a, b)
        connect(f"gamma:{i}:{j}:1", f"gamma:{i}:{j}:2")
        connect(f"gamma:{i}:{j}:2", f"gamma:{i}:{j}:3")
        connect(f"gamma:{i}:{j}:3", f"gamma:{i}:{j}:4")
        for ell in (i, j):
            lam = f"lam:{i}:{j}:{ell}"
            for a in q:
                connect(lam, a)
            connect(f"gamma:{i}:{j}:1", lam)
            for v in range(n_src):
                connect(lam, f"copy:{ell}:{v}")
        for a in q:
            connect(f"tau:{i}:{j}", a)
        connect(f"tau:{i}:{j}", f"gamma:{i}:{j}:1")
        for a in q + qp:
            connect(f"gamma:{i}:{j}:1", a)
        for u, v in slots:
            connect(f"q:{i}:{j}:{u}:{v}", f"copy:{i}:{u}")
            connect(f"q:{i}:{j}:{u}:{v}", f"copy:{j}:{v}")

    pairs = k * (k - 1) // 2
    budget = 4 * k + pairs * (2 * m_src + 1)
    graph = graph_from_edges(counter, edges)
    layout = GadgetLayout(
        variant=VARIANT,
        params={
            "k": k,
            "n_source": n_src,
            "m_source": m_src,
            "source_edges": sorted(h.edges()),
        },
        budget=budget,
        n=counter,
        roles=roles,
    )
    return graph, budget, layout


def build_clique_reduction(instance: CliqueInstance) -> tuple[Graph, int, GadgetLayout]:
    """Generate the instance; vertex ids are allocated copies, anchors, pair gadgets."""
    return _wire(instance.graph, instance.k)


def graph_from_layout(layout: GadgetLayout) -> Graph:
    """Rebuild the generated graph from a layout (the wiring is deterministic)."""
    if layout.variant != VARIANT:
        raise LocdomError(f"not a {VARIANT} layout")
    h = graph_from_edges(
        layout.params["n_source"],
        [tuple(e) for e in layout.params["source_edges"]],
    )
    graph, budget, rebuilt = _wire(h, layout.params["k"])
    if rebuilt.roles != layout.roles or budget != layout.budget:
        raise LocdomError("layout does not match its own parameters")
    return graph


def _source_graph(layout: GadgetLayout) -> Graph:
    return graph_from_edges(
        layout.params["n_source"],
        [tuple(e) for e in layout.params["source_edges"]],
    )


def canonical_solution_from_clique(
    layout: GadgetLayout, clique: frozenset[int] | set[int], order: list[int] | None = None
) -> frozenset[int]:
    """Solution built from a k-clique of the source; re-verified before return.

    ``order`` optionally fixes which clique vertex is assigned to which
    copy (default: ascending ids). Any assignment works; the choice only
    permutes the copies.
    """
    h = _source_graph(layout)
    k = layout.params["k"]
    members = sorted(clique)
    if len(members) != k or not is_clique(h, members):
        raise LocdomError(f"{members} is not a clique of size {k} in the source graph")
    if order is None:
        order = members
    if sorted(order) != members:
        raise LocdomError("order must enumerate the clique")

    code: set[int] = set()
    for i in range(1, k + 1):
        code.add(layout.id_of(f"alpha:{i}:1"))
        code.add(layout.id_of(f"alpha:{i}:3"))
        code.add(layout.id_of(f"beta:{i}:2"))
        code.add(layout.id_of(f"copy:{i}:{order[i - 1]}"))
    for i, j in combinations(range(1, k + 1), 2):
        code.add(layout.id_of(f"gamma:{i}:{j}:1"))
        code.add(layout.id_of(f"gamma:{i}:{j}:3"))
        skip = layout.id_of(f"q:{i}:{j}:{order[i - 1]}:{order[j - 1]}")
        for role, v in layout.iter_roles(f"q:{i}:{j}:"):
            if v != skip:
                code.add(v)
    if len(code) != layout.budget:
        raise InternalVerificationError(
            f"constructed solution has size {len(code)}, budget is {layout.budget}"
        )
    graph = graph_from_layout(layout)
    ok, witness = is_locating_dominating(graph, code)
    if not ok:
        raise InternalVerificationError(
            f"constructed solution fails verification: {witness} "
            f"({layout.role_of(witness.vertices[0])}"
            + (f", {layout.role_of(witness.vertices[1])})" if len(witness.vertices) > 1 else ")")
        )
    return frozenset(code)


def extract_clique_from_solution(
    layout: GadgetLayout, code: frozenset[int] | set[int]
) -> frozenset[int]:
    """Read a k-clique of the source graph off a verified solution.

    The solution is first rewritten into the canonical shape (anchor
    gadgets pinned to alpha_1, alpha_3, beta_2; each pair gadget pinned to
    gamma_1, gamma_3 plus all of Q except one slot); each structural
    assumption that fails raises a :class:`CanonicalFormError` naming it.
    """
    graph = graph_from_layout(layout)
    k = layout.params["k"]
    code = set(code)
    if len(code) > layout.budget:
        raise LocdomError(f"solution has {len(code)} > d = {layout.budget} vertices")
    ok, witness = is_locating_dominating(graph, code)
    if not ok:
        raise LocdomError(f"input is not a solution: {witness}")

    rebuilt = set(code)
    for i in range(1, k + 1):
        f_ids = {layout.id_of(f"alpha:{i}:{j}") for j in range(1, 5)}
        f_ids |= {layout.id_of(f"beta:{i}:{j}") for j in range(1, 4)}
        f_ids.add(layout.id_of(f"rho:{i}"))
        if len(rebuilt & f_ids) != 3:
            raise CanonicalFormError(
                "anchor-share", f"anchor gadget {i} holds {len(rebuilt & f_ids)} != 3 vertices"
            )
        copy_ids = set(layout.select(f"copy:{i}:"))
        if len(rebuilt & copy_ids) != 1:
            raise CanonicalFormError(
                "copy-share", f"copy {i} holds {len(rebuilt & copy_ids)} != 1 vertices"
            )
        rebuilt -= f_ids
        rebuilt.update(
            layout.id_of(r)
            for r in (f"alpha:{i}:1", f"alpha:{i}:3", f"beta:{i}:2")
        )
    slots = _oriented_slots(_source_graph(layout))
    for i, j in combinations(range(1, k + 1), 2):
        e_ids = {layout.id_of(f"gamma:{i}:{j}:{l}") for l in range(1, 5)}
        e_ids.add(layout.id_of(f"tau:{i}:{j}"))
        e_ids.add(layout.id_of(f"lam:{i}:{j}:{i}"))
        e_ids.add(layout.id_of(f"lam:{i}:{j}:{j}"))
        q_ids = [layout.id_of(f"q:{i}:{j}:{u}:{v}") for u, v in slots]
        qp_ids = [layout.id_of(f"qp:{i}:{j}:{u}:{v}") for u, v in slots]
        e_ids.update(q_ids)
        e_ids.update(qp_ids)
        expected = 2 * layout.params["m_source"] + 1
        if len(rebuilt & e_ids) != expected:
            raise CanonicalFormError(
                "pair-share",
                f"pair gadget ({i},{j}) holds {len(rebuilt & e_ids)} != {expected} vertices",
            )
        uncovered = [
            idx
            for idx, (q, qp) in enumerate(zip(q_ids, qp_ids))
            if q not in rebuilt and qp not in rebuilt
        ]
        if len(uncovered) != 1:
            raise CanonicalFormError(
                "uncovered-matching",
                f"pair gadget ({i},{j}) has {len(uncovered)} uncovered matching edges, wanted 1",
            )
        rebuilt -= e_ids
        rebuilt.add(layout.id_of(f"gamma:{i}:{j}:1"))
        rebuilt.add(layout.id_of(f"gamma:{i}:{j}:3"))
        rebuilt.update(q for idx, q in enumerate(q_ids) if idx != uncovered[0])
    ok, witness = is_locating_dominating(graph, rebuilt)
    if not ok:
        raise InternalVerificationError(
            f"canonical rewrite produced an invalid solution: {witness}"
        )

    picked: list[int] = []
    for i in range(1, k + 1):
        for role, v in layout.iter_roles(f"copy:{i}:"):
            if v in rebuilt:
                picked.append(int(role.rsplit(":", 1)[1]))
    h = _source_graph(layout)
    result = frozenset(picked)
    if len(result) != k or not is_clique(h, result):
        raise CanonicalFormError(
            "clique-read", f"copy picks {sorted(picked)} do not form a k-clique"
        )
    return result


def clique_cover(layout: GadgetLayout) -> list[frozenset[int]]:
    """The explicit cover: one clique per copy, five per anchor, seven per pair."""
    graph = graph_from_layout(layout)
    k = layout.params["k"]
    cover: list[frozenset[int]] = []
    for i in range(1, k + 1):
        cover.append(frozenset(layout.select(f"copy:{i}:")))
        cover.append(frozenset({layout.id_of(f"rho:{i}")}))
        cover.append(
            frozenset({layout.id_of(f"beta:{i}:1"), layout.id_of(f"beta:{i}:2")})
        )
        cover.append(frozenset({layout.id_of(f"beta:{i}:3")}))
        cover.append(
            frozenset({layout.id_of(f"alpha:{i}:1"), layout.id_of(f"alpha:{i}:2")})
        )
        cover.append(
            frozenset({layout.id_of(f"alpha:{i}:3"), layout.id_of(f"alpha:{i}:4")})
        )
    for i, j in combinations(range(1, k + 1), 2):
        cover.append(frozenset({layout.id_of(f"tau:{i}:{j}")}))
        cover.append(
            frozenset(
                {layout.id_of(f"gamma:{i}:{j}:1"), layout.id_of(f"gamma:{i}:{j}:2")}
            )
        )
        cover.append(
            frozenset(
                {layout.id_of(f"gamma:{i}:{j}:3"), layout.id_of(f"gamma:{i}:{j}:4")}
            )
        )
        cover.append(frozenset({layout.id_of(f"lam:{i}:{j}:{i}")}))
        cover.append(frozenset({layout.id_of(f"lam:{i}:{j}:{j}")}))
        cover.append(frozenset(layout.select(f"q:{i}:{j}:")))
        cover.append(frozenset(layout.select(f"qp:{i}:{j}:")))
    covered: set[int] = set()
    for part in cover:
        if not is_clique(graph, part):
            raise InternalVerificationError(f"cover part {sorted(part)} is not a clique")
        covered |= part
    if covered != set(range(graph.n)):
        raise InternalVerificationError("cover does not span the vertex set")
    return cover


def solve_clique_exact(h: Graph, k: int, cap: int = 20) -> frozenset[int] | None:
    """Brute-force k-clique oracle for small source graphs."""
    if h.n > cap:
        raise LocdomError(f"clique oracle refuses n={h.n} > {cap}")
    if k <= 0:
        return frozenset()

    def extend(chosen: list[int], candidates: list[int]) -> frozenset[int] | None:
        if len(chosen) == k:
            return frozenset(chosen)
        for idx, v in enumerate(candidates):
            if len(chosen) + len(candidates) - idx < k:
                break
            rest = [w for w in candidates[idx + 1 :] if w in h.adj[v]]
            hit = extend(chosen + [v], rest)
            if hit is not None:
                return hit
        return None

    return extend([], list(range(h.n)))
