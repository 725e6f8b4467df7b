"""OR-compositions from 3-uniform hypergraph bicoloring.

Many bicoloring instances on a shared vertex set compose into a single
locating-domination instance whose answer is the OR of the sources. Each
hypergraph vertex gets a binary choice gadget whose alpha/beta pick
encodes its color; each hyperedge (over the union of all instances) gets
a small gadget whose A/B ports attach to the three alpha/beta vertices;
an instance selector holds one choice gadget per index bit, one x vertex
per instance, and a couple of auxiliary vertices. Picking x_i relieves
exactly the hyperedge gadgets absent from instance i, so the surviving
constraints are precisely the edges of H_i.

Two selector flavors are generated: one whose x vertices form an
independent set (everything else is a vertex cover) and one whose x
vertices form a clique (everything else is a clique modulator). In the
clique flavor the auxiliary vertex y_0 is seen only by the per-bit
choice vertices, so with a single index bit it collides with the choice
gadget's own a vertex; the certificate builder verifies its output and
refuses to hand out such a solution, which confines that flavor to four
or more composed instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import CanonicalFormError, InternalVerificationError, LocdomError, ParseError
from ..graph import Graph, graph_from_edges, is_clique
from ..layout import GadgetLayout
from ..lds import is_locating_dominating

VC_VARIANT = "or-vc"
CLIQUE_VARIANT = "or-clique"

_VG_SYMBOLS = ("a", "b", "c", "d", "e", "alpha", "beta")
_SEL_SYMBOLS = ("a", "b", "c", "d", "e", "zero", "one")


@dataclass(frozen=True)
class HypergraphInstance:
    """A 3-uniform hypergraph: n vertices and triples over them."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        normalized = []
        for e in self.edges:
            t = tuple(sorted(e))
            if len(set(t)) != 3:
                raise LocdomError(f"hyperedge {e} does not have 3 distinct vertices")
            if not all(0 <= v < self.n for v in t):
                raise LocdomError(f"hyperedge {e} out of range")
            normalized.append(t)
        object.__setattr__(self, "edges", tuple(sorted(set(normalized))))


def parse_hypergraph(text: str) -> HypergraphInstance:
    """Format: 'n m' then m lines of three vertex ids; '#' comments."""
    header = None
    edges: list[tuple[int, int, int]] = []
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError(f"expected header 'n m', got {line!r}", lineno)
            n, m = int(parts[0]), int(parts[1])
            header = (n, m)
            continue
        if len(parts) != 3:
            raise ParseError(f"expected three vertex ids, got {line!r}", lineno)
        edges.append((int(parts[0]), int(parts[1]), int(parts[2])))
    if header is None:
        raise ParseError("empty hypergraph document")
    if len(edges) != m:
        raise ParseError(f"header promises {m} hyperedges, found {len(edges)}")
    return HypergraphInstance(n, tuple(edges))


def serialize_hypergraph(inst: HypergraphInstance) -> str:
    lines = [f"{inst.n} {len(inst.edges)}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in inst.edges)
    return "\n".join(lines) + "\n"


def is_proper_bicoloring(inst: HypergraphInstance, alpha: frozenset[int]) -> bool:
    return all(
        0 < len(alpha.intersection(e)) < 3 for e in inst.edges
    ) and all(0 <= v < inst.n for v in alpha)


def solve_bicoloring_exact(inst: HypergraphInstance, cap: int = 20) -> frozenset[int] | None:
    """First proper 2-coloring (as the alpha side) by exhaustive search, or None."""
    if inst.n > cap:
        raise LocdomError(f"bicoloring oracle refuses n={inst.n} > {cap}")
    if inst.n == 0:
        return frozenset()
    # Vertex 0 can take alpha without loss: swapping the colors preserves properness.
    for mask in range(1 << (inst.n - 1)):
        alpha = frozenset([0] + [v for v in range(1, inst.n) if mask >> (v - 1) & 1])
        if is_proper_bicoloring(inst, alpha):
            return alpha
    return None


def _pad_to_power_of_two(
    instances: list[HypergraphInstance],
) -> list[HypergraphInstance]:
    t = len(instances)
    size = 1
    while size < t:
        size *= 2
    return instances + [instances[-1]] * (size - t)


def _wire(instances: list[HypergraphInstance], variant: str) -> tuple[Graph, int, GadgetLayout]:
    if not instances:
        raise LocdomError("need at least one hypergraph instance")
    n = instances[0].n
    if any(inst.n != n for inst in instances):
        raise LocdomError("all composed instances must share the vertex count")
    original_t = len(instances)
    instances = _pad_to_power_of_two(instances)
    t = len(instances)
    h = t.bit_length() - 1
    union = sorted({e for inst in instances for e in inst.edges})
    m = len(union)

    roles: dict[str, int] = {}
    counter = 0

    def fresh(role: str) -> int:
        nonlocal counter
        roles[role] = counter
        counter += 1
        return counter - 1

    for v in range(n):
        for sym in _VG_SYMBOLS:
            fresh(f"vg:{v}:{sym}")
    for u, v, w in union:
        for sym in ("r", "c", "A", "B"):
            fresh(f"he:{u}:{v}:{w}:{sym}")
    for j in range(h):
        for sym in _SEL_SYMBOLS:
            fresh(f"sel:{j}:{sym}")
    for i in range(t):
        fresh(f"x:{i}")
    y_names = ("y0", "y1", "y2", "z", "zp") if variant == VC_VARIANT else ("y0", "z")
    for name in y_names:
        fresh(f"y:{name}")

    edges: list[tuple[int, int]] = []

    def connect(a: str, b: str) -> None:
        edges.append((roles[a], roles[b]))

    def wire_choice(prefix: str, lo: str, hi: str) -> None:
        connect(f"{prefix}:a", f"{prefix}:{lo}")
        connect(f"{prefix}:a", f"{prefix}:{hi}")
        connect(f"{prefix}:b", f"{prefix}:c")
        connect(f"{prefix}:c", f"{prefix}:{lo}")
        connect(f"{prefix}:c", f"{prefix}:{hi}")
        connect(f"{prefix}:{lo}", f"{prefix}:d")
        connect(f"{prefix}:{hi}", f"{prefix}:d")
        connect(f"{prefix}:d", f"{prefix}:e")

    for v in range(n):
        wire_choice(f"vg:{v}", "alpha", "beta")
    for u, v, w in union:
        he = f"he:{u}:{v}:{w}"
        connect(f"{he}:r", f"{he}:c")
        connect(f"{he}:c", f"{he}:A")
        connect(f"{he}:c", f"{he}:B")
        for x in (u, v, w):
            connect(f"{he}:A", f"vg:{x}:alpha")
            connect(f"{he}:B", f"vg:{x}:beta")
    for j in range(h):
        wire_choice(f"sel:{j}", "zero", "one")
    for i in range(t):
        for j in range(h):
            if i >> j & 1:
                connect(f"x:{i}", f"sel:{j}:zero")
            else:
                connect(f"x:{i}", f"sel:{j}:one")
    present = [set(inst.edges) for inst in instances]
    for e in union:
        he = "he:" + ":".join(str(x) for x in e)
        for i in range(t):
            if e not in present[i]:
                connect(f"x:{i}", f"{he}:A")
                connect(f"x:{i}", f"{he}:B")
    if variant == VC_VARIANT:
        for partner in ("y0", "y1", "zp"):
            connect("y:z", f"y:{partner}")
        for name in ("y0", "y1", "y2", "z"):
            for i in range(t):
                connect(f"y:{name}", f"x:{i}")
        budget = 3 * (n + h) + m + 2
    else:
        connect("y:z", "y:y0")
        for i in range(t):
            connect("y:z", f"x:{i}")
        for a, b in combinations(range(t), 2):
            connect(f"x:{a}", f"x:{b}")
        budget = 3 * (n + h) + m + 1
    for j in range(h):
        connect("y:y0", f"sel:{j}:zero")
        connect("y:y0", f"sel:{j}:one")

    graph = graph_from_edges(counter, edges)
    layout = GadgetLayout(
        variant=variant,
        params={
            "t": t,
            "original_t": original_t,
            "n": n,
            "m": m,
            "h": h,
            "instances": [list(map(list, inst.edges)) for inst in instances],
        },
        budget=budget,
        n=counter,
        roles=roles,
    )
    return graph, budget, layout


def build_or_composition_vc(
    instances: list[HypergraphInstance],
) -> tuple[Graph, int, GadgetLayout]:
    """Composition whose x vertices are independent (vertex-cover flavor)."""
    return _wire(list(instances), VC_VARIANT)


def build_or_composition_clique(
    instances: list[HypergraphInstance],
) -> tuple[Graph, int, GadgetLayout]:
    """Composition whose x vertices form a clique (clique-modulator flavor)."""
    return _wire(list(instances), CLIQUE_VARIANT)


def composition_graph_from_layout(layout: GadgetLayout) -> Graph:
    if layout.variant not in (VC_VARIANT, CLIQUE_VARIANT):
        raise LocdomError(f"not a composition layout: {layout.variant}")
    instances = [
        HypergraphInstance(layout.params["n"], tuple(tuple(e) for e in edges))
        for edges in layout.params["instances"]
    ]
    graph, budget, rebuilt = _wire(instances, layout.variant)
    if rebuilt.roles != layout.roles or budget != layout.budget:
        raise LocdomError("layout does not match its own parameters")
    return graph


def _layout_instances(layout: GadgetLayout) -> list[HypergraphInstance]:
    return [
        HypergraphInstance(layout.params["n"], tuple(tuple(e) for e in edges))
        for edges in layout.params["instances"]
    ]


def solution_from_bicoloring(
    layout: GadgetLayout, index: int, alpha: frozenset[int] | set[int]
) -> frozenset[int]:
    """Solution from a proper bicoloring of composed instance ``index``.

    Takes c and d of every choice gadget, the colored alpha/beta vertex,
    the c port of every hyperedge gadget, the bit complement of ``index``
    in the selector, and x_index (plus z in the vertex-cover flavor). The
    result is re-verified and never returned broken.
    """
    instances = _layout_instances(layout)
    if not (0 <= index < len(instances)):
        raise LocdomError(f"instance index {index} out of range")
    alpha = frozenset(alpha)
    if not is_proper_bicoloring(instances[index], alpha):
        raise LocdomError(f"not a proper bicoloring of instance {index}")
    n, h = layout.params["n"], layout.params["h"]

    code: set[int] = set()
    for v in range(n):
        code.add(layout.id_of(f"vg:{v}:c"))
        code.add(layout.id_of(f"vg:{v}:d"))
        code.add(layout.id_of(f"vg:{v}:alpha" if v in alpha else f"vg:{v}:beta"))
    for role, vid in layout.iter_roles("he:"):
        if role.endswith(":c"):
            code.add(vid)
    for j in range(h):
        code.add(layout.id_of(f"sel:{j}:c"))
        code.add(layout.id_of(f"sel:{j}:d"))
        bit = index >> j & 1
        code.add(layout.id_of(f"sel:{j}:one" if bit else f"sel:{j}:zero"))
    code.add(layout.id_of(f"x:{index}"))
    if layout.variant == VC_VARIANT:
        code.add(layout.id_of("y:z"))
    if len(code) != layout.budget:
        raise InternalVerificationError(
            f"constructed solution has size {len(code)}, budget is {layout.budget}"
        )
    graph = composition_graph_from_layout(layout)
    ok, witness = is_locating_dominating(graph, code)
    if not ok:
        names = ", ".join(layout.role_of(v) for v in witness.vertices)
        raise InternalVerificationError(
            f"constructed solution fails verification: {witness.kind} ({names})"
        )
    return frozenset(code)


def extract_bicoloring(
    layout: GadgetLayout, code: frozenset[int] | set[int]
) -> tuple[int, frozenset[int]]:
    """Read (instance index, bicoloring) off a verified solution."""
    graph = composition_graph_from_layout(layout)
    code = set(code)
    if len(code) > layout.budget:
        raise LocdomError(f"solution has {len(code)} > d = {layout.budget} vertices")
    ok, witness = is_locating_dominating(graph, code)
    if not ok:
        raise LocdomError(f"input is not a solution: {witness}")

    n = layout.params["n"]
    alpha: set[int] = set()
    for v in range(n):
        has_a = layout.id_of(f"vg:{v}:alpha") in code
        has_b = layout.id_of(f"vg:{v}:beta") in code
        if has_a == has_b:
            raise CanonicalFormError(
                "vertex-choice",
                f"vertex gadget {v} holds {'both' if has_a else 'neither'} of alpha/beta",
            )
        if has_a:
            alpha.add(v)
    picked = [
        i for i in range(layout.params["t"]) if layout.id_of(f"x:{i}") in code
    ]
    if len(picked) != 1:
        raise CanonicalFormError(
            "selector-choice", f"solution holds {len(picked)} selector x vertices, wanted 1"
        )
    index = picked[0]
    coloring = frozenset(alpha)
    if not is_proper_bicoloring(_layout_instances(layout)[index], coloring):
        raise CanonicalFormError(
            "bicoloring-read",
            f"alpha/beta picks do not properly bicolor instance {index}",
        )
    return index, coloring


@dataclass(frozen=True)
class CoverWitness:
    kind: str  # "vertex-cover" | "clique-modulator"
    vertices: frozenset[int]
    expected_size: int


def composition_cover_witnesses(layout: GadgetLayout) -> CoverWitness:
    """Everything but X, verified as a vertex cover or clique modulator."""
    graph = composition_graph_from_layout(layout)
    xs = set(layout.select("x:"))
    rest = frozenset(set(range(graph.n)) - xs)
    n, m, h = layout.params["n"], layout.params["m"], layout.params["h"]
    if layout.variant == VC_VARIANT:
        for a, b in combinations(sorted(xs), 2):
            if graph.has_edge(a, b):
                raise InternalVerificationError("x vertices are not independent")
        for u, v in graph.edges():
            if u in xs and v in xs:
                raise InternalVerificationError(f"edge ({u},{v}) not covered")
        expected = 7 * n + 4 * m + 7 * h + 5
        kind = "vertex-cover"
    else:
        if not is_clique(graph, xs):
            raise InternalVerificationError("x vertices do not form a clique")
        expected = 7 * n + 4 * m + 7 * h + 2
        kind = "clique-modulator"
    if len(rest) != expected:
        raise InternalVerificationError(
            f"witness has {len(rest)} vertices, closed form says {expected}"
        )
    return CoverWitness(kind, rest, expected)


@dataclass(frozen=True)
class AuditEntry:
    gadget: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class AuditReport:
    entries: tuple[AuditEntry, ...]
    selector_in_solution: int
    selector_bound: int

    @property
    def selector_ok(self) -> bool:
        return self.selector_in_solution >= self.selector_bound

    @property
    def ok(self) -> bool:
        return self.selector_ok and all(e.ok for e in self.entries)

    def lines(self) -> list[str]:
        out = [
            f"{'ok  ' if e.ok else 'FAIL'} {e.gadget}: {e.detail}" for e in self.entries
        ]
        status = "ok  " if self.selector_ok else "FAIL"
        out.append(
            f"{status} selector: {self.selector_in_solution} solution vertices,"
            f" lower bound {self.selector_bound}"
        )
        return out


def audit_observations(layout: GadgetLayout, code: frozenset[int] | set[int]) -> AuditReport:
    """Check the per-gadget lower-bound predicates on a candidate solution.

    Report-only: every binary choice gadget must meet {a, alpha, beta},
    {b, c} and {d, e}; every hyperedge gadget must meet {c, r}; the
    selector must hold at least 3h+2 (vertex-cover flavor) or 3h+1
    (clique flavor) solution vertices.
    """
    code = set(code)
    entries: list[AuditEntry] = []

    def choice_entry(prefix: str, lo: str, hi: str) -> None:
        groups = {
            f"a/{lo}/{hi}": (f"{prefix}:a", f"{prefix}:{lo}", f"{prefix}:{hi}"),
            "b/c": (f"{prefix}:b", f"{prefix}:c"),
            "d/e": (f"{prefix}:d", f"{prefix}:e"),
        }
        missing = [
            name
            for name, rs in groups.items()
            if not any(layout.id_of(r) in code for r in rs)
        ]
        entries.append(
            AuditEntry(
                prefix,
                not missing,
                "all three groups met" if not missing else f"empty groups: {', '.join(missing)}",
            )
        )

    n, h = layout.params["n"], layout.params["h"]
    for v in range(n):
        choice_entry(f"vg:{v}", "alpha", "beta")
    for j in range(h):
        choice_entry(f"sel:{j}", "zero", "one")
    seen_he = set()
    for role, _ in layout.iter_roles("he:"):
        prefix = role.rsplit(":", 1)[0]
        if prefix in seen_he:
            continue
        seen_he.add(prefix)
        hit = any(layout.id_of(f"{prefix}:{sym}") in code for sym in ("c", "r"))
        entries.append(
            AuditEntry(prefix, hit, "c/r met" if hit else "neither c nor r in solution")
        )

    selector_ids = set(layout.select("sel:")) | set(layout.select("x:")) | set(
        layout.select("y:")
    )
    in_selector = len(code & selector_ids)
    bound = 3 * h + (2 if layout.variant == VC_VARIANT else 1)
    return AuditReport(tuple(entries), in_selector, bound)
