"""Locating-dominating set verification and exact search.

A set D locates and dominates a graph when every vertex outside D has a
nonempty neighborhood inside D and no two outside vertices share that
neighborhood. The checker reports the first violation in vertex order,
either an undominated vertex or a confounded pair; the solver runs
iterative deepening on the solution size and, at each node, branches on
the vertices that can fix the first violation (the closed neighborhood of
an undominated vertex, or the symmetric difference plus the pair itself
for a confounded pair). Signatures are bitmasks over D, which dominates
the runtime of every safeness test in this repository, and all
tie-breaking is by vertex index so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import LocdomError, ParseError, SizeCapError
from .graph import Graph, connected_components, induced_subgraph, twin_classes

DEFAULT_HARD_CAP = 64


@dataclass(frozen=True)
class Instance:
    """A graph together with the maximum allowed solution size.

    The budget may exceed the vertex count (the whole vertex set is always
    a valid code), but it must not be negative.
    """

    graph: Graph
    budget: int

    def __post_init__(self) -> None:
        if self.budget < 0:
            raise LocdomError(f"negative budget {self.budget}")


@dataclass(frozen=True)
class Violation:
    """First reason a candidate set fails: kind is 'undominated' or 'confounded'."""

    kind: str
    vertices: tuple[int, ...]


def is_locating_dominating(
    g: Graph, code: Iterable[int]
) -> tuple[bool, Optional[Violation]]:
    """Check the defining property; on failure return the first violation.

    Vertices are scanned in ascending order, so the witness is
    deterministic: the lowest undominated vertex, or the first repeated
    signature paired with its earlier owner.
    """
    dset = set(code)
    for v in dset:
        if not (0 <= v < g.n):
            raise LocdomError(f"vertex {v} out of range")
    dmask = 0
    for v in dset:
        dmask |= 1 << v
    nbr = g.adjacency_masks()
    seen: dict[int, int] = {}
    for v in range(g.n):
        if v in dset:
            continue
        sig = nbr[v] & dmask
        if sig == 0:
            return False, Violation("undominated", (v,))
        if sig in seen:
            return False, Violation("confounded", (seen[sig], v))
        seen[sig] = v
    return True, None


def _violation_masks(nbr: list[int], n: int, dmask: int):
    """(kind, data) for the first violation under dmask, or None if valid."""
    seen: dict[int, int] = {}
    for v in range(n):
        bit = 1 << v
        if dmask & bit:
            continue
        sig = nbr[v] & dmask
        if sig == 0:
            return ("undominated", v)
        other = seen.get(sig)
        if other is not None:
            return ("confounded", (other, v))
        seen[sig] = v
    return None


def _analyze(nbr: list[int], n: int, dmask: int):
    """First violation plus the (undominated, duplicate-excess) deficiency counts."""
    seen: dict[int, int] = {}
    first = None
    undominated = 0
    excess = 0
    for v in range(n):
        if dmask >> v & 1:
            continue
        sig = nbr[v] & dmask
        if sig == 0:
            undominated += 1
            if first is None:
                first = ("undominated", v)
        else:
            other = seen.get(sig)
            if other is None:
                seen[sig] = v
            else:
                excess += 1
                if first is None:
                    first = ("confounded", (other, v))
    return first, undominated, excess


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask &= mask - 1
    return out


class _Searcher:
    def __init__(self, g: Graph):
        self.n = g.n
        self.nbr = g.adjacency_masks()
        self.closed = [self.nbr[v] | (1 << v) for v in range(g.n)]
        self.full = (1 << g.n) - 1
        self.maxcov = max((c.bit_count() for c in self.closed), default=1)
        # One added vertex removes at most deg+1 undominated vertices, and
        # shrinks undominated+excess by at most deg+2 (its dominating work can
        # merge fresh signatures into a new duplicate group).
        self.maxfix = max((a.bit_count() for a in self.nbr), default=0) + 2

    def lower_bound(self, g: Graph) -> int:
        n = self.n
        if n == 0:
            return 0
        dom_lb = -(-n // self.maxcov)
        info_lb = 0
        while (n - info_lb) > (1 << info_lb) - 1:
            info_lb += 1
        twin_lb = sum(len(c) - 1 for c in twin_classes(g).nontrivial())
        return max(dom_lb, info_lb, twin_lb)

    def _candidates(self, dmask: int, viol) -> int:
        if viol[0] == "undominated":
            return self.closed[viol[1]] & ~dmask
        u, v = viol[1]
        cand = (self.nbr[u] ^ self.nbr[v]) | (1 << u) | (1 << v)
        return cand & ~dmask

    def _ordered(self, dmask: int, cand_mask: int) -> list[int]:
        # Vertices covering more undominated outside vertices first; ties by id.
        undom = 0
        for v in range(self.n):
            if not dmask >> v & 1 and not self.nbr[v] & dmask:
                undom |= 1 << v
        scored = [
            ((self.closed[c] & undom).bit_count(), c) for c in _bits(cand_mask)
        ]
        scored.sort(key=lambda t: (-t[0], t[1]))
        return [c for _, c in scored]

    def solve(self, dmask: int, budget: int, seen: set[int]) -> Optional[int]:
        viol, undominated, excess = _analyze(self.nbr, self.n, dmask)
        if viol is None:
            return dmask
        if budget == 0:
            return None
        if -(-undominated // self.maxcov) > budget:
            return None
        if -(-(undominated + excess) // self.maxfix) > budget:
            return None
        for c in self._ordered(dmask, self._candidates(dmask, viol)):
            nxt = dmask | (1 << c)
            if nxt in seen:
                continue
            seen.add(nxt)
            res = self.solve(nxt, budget - 1, seen)
            if res is not None:
                return res
        return None

    def enumerate(self, dmask: int, forbidden: int, budget: int, out: set[int]) -> None:
        viol, undominated, excess = _analyze(self.nbr, self.n, dmask)
        if viol is None:
            out.add(dmask)
            return
        if budget == 0:
            return
        if -(-undominated // self.maxcov) > budget:
            return
        if -(-(undominated + excess) // self.maxfix) > budget:
            return
        taken = 0
        for c in _bits(self._candidates(dmask, viol) & ~forbidden):
            # Branch i adds c_i and bans c_1..c_{i-1}; the branches partition
            # the solution space, so every solution is reached exactly once.
            self.enumerate(dmask | (1 << c), forbidden | taken, budget - 1, out)
            taken |= 1 << c
        return


def _solve_component(g: Graph, limit: Optional[int] = None) -> Optional[frozenset[int]]:
    searcher = _Searcher(g)
    cap = g.n if limit is None else min(limit, g.n)
    for k in range(searcher.lower_bound(g), cap + 1):
        res = searcher.solve(0, k, {0})
        if res is not None:
            return frozenset(_bits(res))
    return None


def solve_exact(
    g: Graph, limit: Optional[int] = None, hard_cap: int = DEFAULT_HARD_CAP
) -> Optional[frozenset[int]]:
    """Minimum-cardinality locating-dominating set, or None when a limit excludes one.

    Components are independent (signatures are nonempty subsets of the
    component's share of the code), so the search runs per component. The
    result is re-verified before being returned and is deterministic.
    """
    if g.n > hard_cap:
        raise SizeCapError(f"solve_exact refuses n={g.n} > hard cap {hard_cap}")
    if g.n == 0:
        return frozenset()
    comps = connected_components(g)
    total: set[int] = set()
    if len(comps) == 1:
        part = _solve_component(g, limit)
        if part is None:
            return None
        total = set(part)
    else:
        for comp in comps:
            sub, old_ids = induced_subgraph(g, comp)
            part = _solve_component(sub)
            assert part is not None
            total.update(old_ids[v] for v in part)
        if limit is not None and len(total) > limit:
            return None
    code = frozenset(total)
    ok, witness = is_locating_dominating(g, code)
    if not ok:
        raise LocdomError(f"solver produced an invalid set: {witness}")
    return code


def lds_number(g: Graph, hard_cap: int = DEFAULT_HARD_CAP) -> int:
    code = solve_exact(g, hard_cap=hard_cap)
    assert code is not None
    return len(code)


def enumerate_minimum_solutions(
    g: Graph, hard_cap: int = DEFAULT_HARD_CAP
) -> list[frozenset[int]]:
    """All minimum-size locating-dominating sets, sorted for reproducibility."""
    if g.n > hard_cap:
        raise SizeCapError(f"enumeration refuses n={g.n} > hard cap {hard_cap}")
    if g.n == 0:
        return [frozenset()]
    per_comp: list[list[frozenset[int]]] = []
    for comp in connected_components(g):
        sub, old_ids = induced_subgraph(g, comp)
        best = len(_solve_component(sub))
        searcher = _Searcher(sub)
        found: set[int] = set()
        searcher.enumerate(0, 0, best, found)
        sols = [frozenset(old_ids[v] for v in _bits(m)) for m in found]
        assert all(len(s) == best for s in sols)
        per_comp.append(sols)
    combined = [frozenset()]
    for sols in per_comp:
        combined = [base | extra for base in combined for extra in sols]
    return sorted(combined, key=sorted)


def write_solution(code: Iterable[int]) -> str:
    """Solution file: first line the size, then one vertex id per line."""
    ids = sorted(set(code))
    return "\n".join([str(len(ids))] + [str(v) for v in ids]) + "\n"


def read_solution(text: str) -> frozenset[int]:
    values: list[int] = []
    count: Optional[int] = None
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
            if count < 0:
                raise ParseError("negative solution size", lineno)
        else:
            values.append(number)
    if count is None:
        raise ParseError("empty solution file")
    if len(values) != count:
        raise ParseError(f"solution promises {count} vertices, found {len(values)}")
    return frozenset(values)
