import random
from itertools import combinations

import pytest

from locdom.errors import LocdomError, ParseError, SizeCapError
from locdom.graph import (
    complement,
    connected_components,
    delete_vertices,
    find_induced_p3,
    graph_from_edges,
    induced_subgraph,
    is_cluster_graph,
    is_clique,
    max_leaf_number_exact,
    parse_graph,
    serialize_graph,
    twin_classes,
)

from testutil import (
    complete_graph,
    cycle_graph,
    path_graph,
    random_graph,
    spanning_trees_stats,
    star_graph,
    connected_graph_levels,
    graph_from_masks,
)


def test_parse_p3():
    g = parse_graph("3 2\n0 1\n1 2")
    assert g.n == 3 and sorted(g.edges()) == [(0, 1), (1, 2)]


def test_parse_k1():
    g = parse_graph("1 0")
    assert g.n == 1 and g.edge_count() == 0


def test_parse_k3():
    g = parse_graph("3 3\n0 1\n1 2\n0 2")
    assert is_clique(g, range(3))


def test_parse_comments_and_duplicates():
    g = parse_graph("# header comment\n3 3\n0 1\n1 0\n# mid comment\n1 2")
    assert sorted(g.edges()) == [(0, 1), (1, 2)]
    assert g.edge_count() == 2


def test_parse_order_insensitive():
    a = parse_graph("4 3\n0 1\n2 3\n1 2")
    b = parse_graph("4 3\n2 3\n1 2\n0 1")
    assert a == b


@pytest.mark.parametrize(
    "text,line",
    [
        ("3 2\n0 1\nbogus line", 3),
        ("3 2\n0 5\n1 2", 2),
        ("3 2\n1 1\n0 1", 2),
        ("x y", 1),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.line == line


def test_parse_edge_count_mismatch():
    with pytest.raises(ParseError):
        parse_graph("3 3\n0 1\n1 2")
    with pytest.raises(ParseError):
        parse_graph("3 1\n0 1\n1 2")


def test_serialize_round_trip():
    rng = random.Random(7)
    for _ in range(25):
        g = random_graph(rng, rng.randint(0, 9), rng.random())
        assert parse_graph(serialize_graph(g)) == g


def test_serialize_sorted_edges():
    g = graph_from_edges(4, [(3, 2), (1, 0), (0, 2)])
    assert serialize_graph(g) == "4 3\n0 1\n0 2\n2 3\n"


def test_twin_classes_k3():
    tc = twin_classes(complete_graph(3))
    assert len(tc.classes) == 1
    assert tc.classes[0].members == (0, 1, 2) and tc.classes[0].kind == "true"


def test_twin_classes_star():
    tc = twin_classes(star_graph(3))
    by_kind = {c.kind: c for c in tc.classes}
    assert by_kind["false"].members == (1, 2, 3)
    assert by_kind[None].members == (0,)


def test_twin_classes_p4():
    tc = twin_classes(path_graph(4))
    assert all(len(c) == 1 for c in tc.classes)
    assert len(tc.classes) == 4


def test_twin_classes_restrict_uses_full_graph():
    # 1 and 2 are false twins of K1,3's leaves even when 3 is outside restrict.
    tc = twin_classes(star_graph(3), restrict=[1, 2])
    assert tc.classes[0].members == (1, 2) and tc.classes[0].kind == "false"


def test_twin_classes_definition_holds_verbatim():
    rng = random.Random(11)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 9), rng.choice([0.2, 0.5, 0.8]))
        tc = twin_classes(g)
        for cls in tc.classes:
            for u, v in combinations(cls.members, 2):
                if cls.kind == "false":
                    assert g.adj[u] == g.adj[v]
                else:
                    assert g.adj[u] | {u} == g.adj[v] | {v}
        for a, b in combinations(tc.classes, 2):
            for u in a.members:
                for v in b.members:
                    assert g.adj[u] != g.adj[v]
                    assert g.adj[u] | {u} != g.adj[v] | {v}


def test_complement_examples():
    assert complement(complete_graph(3)).edge_count() == 0
    assert sorted(complement(graph_from_edges(2, [])).edges()) == [(0, 1)]
    assert sorted(complement(path_graph(3)).edges()) == [(0, 2)]


def test_complement_involution():
    rng = random.Random(3)
    for _ in range(25):
        g = random_graph(rng, rng.randint(0, 9), rng.random())
        assert complement(complement(g)) == g


def test_find_induced_p3_examples():
    assert find_induced_p3(path_graph(3)) == (0, 1, 2)
    assert find_induced_p3(complete_graph(3)) is None
    two_k2 = graph_from_edges(4, [(0, 1), (2, 3)])
    assert find_induced_p3(two_k2) is None


def test_p3_free_iff_component_cliques():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        direct = all(
            is_clique(g, comp) for comp in connected_components(g)
        )
        assert (find_induced_p3(g) is None) == direct == is_cluster_graph(g)


def test_max_leaf_examples():
    assert max_leaf_number_exact(cycle_graph(5)) == 2
    assert max_leaf_number_exact(star_graph(3)) == 3
    k4_trees, k4_best = spanning_trees_stats(complete_graph(4))
    assert (k4_trees, k4_best) == (16, 3)
    assert max_leaf_number_exact(complete_graph(4)) == 3


def test_max_leaf_errors():
    with pytest.raises(LocdomError):
        max_leaf_number_exact(graph_from_edges(3, [(0, 1)]))  # disconnected
    with pytest.raises(SizeCapError):
        max_leaf_number_exact(path_graph(13))
    assert max_leaf_number_exact(path_graph(13), limit=13) == 2
    with pytest.raises(LocdomError):
        max_leaf_number_exact(graph_from_edges(1, []))


def test_max_leaf_matches_spanning_tree_enumeration():
    # Independent oracle route: raw enumeration over edge subsets.
    for masks in (m for level in connected_graph_levels(6) for m in level):
        g = graph_from_masks(masks)
        if g.n < 2:
            continue
        assert max_leaf_number_exact(g) == spanning_trees_stats(g)[1]
    rng = random.Random(17)
    checked = 0
    while checked < 10:
        g = random_graph(rng, 7, 0.45)
        if len(connected_components(g)) != 1:
            continue
        assert max_leaf_number_exact(g) == spanning_trees_stats(g)[1]
        checked += 1


def test_components_and_subgraph_plumbing():
    g = graph_from_edges(6, [(0, 1), (1, 2), (4, 5)])
    assert connected_components(g) == ((0, 1, 2), (3,), (4, 5))
    sub, old_ids = induced_subgraph(g, [1, 2, 4, 5])
    assert old_ids == (1, 2, 4, 5)
    assert sorted(sub.edges()) == [(0, 1), (2, 3)]
    rest, remap = delete_vertices(g, [0, 3])
    assert remap == {1: 0, 2: 1, 4: 2, 5: 3}
    assert sorted(rest.edges()) == [(0, 1), (2, 3)]
