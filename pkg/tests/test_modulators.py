import random

import pytest

from locdom.errors import LocdomError, ParseError
from locdom.graph import (
    complement,
    find_induced_p3,
    graph_from_edges,
    induced_subgraph,
    is_cluster_graph,
)
from locdom.modulators import (
    CLIQUE,
    CLUSTER,
    Modulator,
    clique_modulator_2approx,
    cluster_modulator_3approx,
    make_modulator,
    read_modulator,
    verify_modulator,
    write_modulator,
)

from testutil import (
    brute_min_deletion,
    complete_graph,
    connected_graph_levels,
    graph_from_masks,
    path_graph,
    random_graph,
)


def _two_triangles():
    return graph_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def test_cluster_modulator_examples():
    assert cluster_modulator_3approx(_two_triangles()).vertices == frozenset()
    assert cluster_modulator_3approx(path_graph(3)).vertices == {0, 1, 2}
    mod = cluster_modulator_3approx(path_graph(4))
    assert len(mod) == 3
    rest, _ = induced_subgraph(path_graph(4), set(range(4)) - mod.vertices)
    assert rest.n == 1 and is_cluster_graph(rest)


def test_clique_modulator_examples():
    assert clique_modulator_2approx(complete_graph(5)).vertices == frozenset()
    k5_minus = graph_from_edges(
        5, [(u, v) for u in range(5) for v in range(u + 1, 5) if (u, v) != (0, 1)]
    )
    assert clique_modulator_2approx(k5_minus).vertices == {0, 1}
    mod = clique_modulator_2approx(path_graph(4))
    assert len(mod) in (2, 4)
    assert verify_modulator(path_graph(4), mod)


def test_verify_modulator_examples():
    p3 = path_graph(3)
    assert verify_modulator(p3, Modulator(CLUSTER, frozenset({1})))
    assert not verify_modulator(p3, Modulator(CLIQUE, frozenset()))
    assert verify_modulator(complete_graph(4), Modulator(CLIQUE, frozenset()))


def test_make_modulator_validates():
    with pytest.raises(LocdomError):
        make_modulator(path_graph(4), CLIQUE, [])
    mod = make_modulator(path_graph(4), CLUSTER, [1])
    assert mod.vertices == {1}


def test_modulator_outputs_land_in_class():
    rng = random.Random(13)
    for _ in range(60):
        g = random_graph(rng, rng.randint(0, 10), rng.random())
        cl = cluster_modulator_3approx(g)
        rest, _ = induced_subgraph(g, set(range(g.n)) - cl.vertices)
        assert find_induced_p3(rest) is None
        assert len(cl) % 3 == 0
        cq = clique_modulator_2approx(g)
        rest2, _ = induced_subgraph(g, set(range(g.n)) - cq.vertices)
        assert complement(rest2).edge_count() == 0


def test_approximation_factors_small_graphs():
    # Exhaustive over all connected graphs with n <= 6, plus random on 7..8;
    # optima from raw subset enumeration.
    graphs = [graph_from_masks(m) for level in connected_graph_levels(6) for m in level]
    rng = random.Random(19)
    graphs += [random_graph(rng, rng.choice([7, 8]), rng.random()) for _ in range(30)]
    for g in graphs:
        opt_cluster = brute_min_deletion(g, is_cluster_graph)
        assert len(cluster_modulator_3approx(g)) <= 3 * opt_cluster
        opt_clique = brute_min_deletion(
            g, lambda h: h.edge_count() == h.n * (h.n - 1) // 2
        )
        assert len(clique_modulator_2approx(g)) <= 2 * opt_clique


def test_modulator_file_round_trip():
    g = path_graph(5)
    mod = make_modulator(g, CLUSTER, [1, 3])
    text = write_modulator(mod)
    assert text == "2\n1\n3\n"
    assert read_modulator(text, CLUSTER, g).vertices == {1, 3}
    with pytest.raises(ParseError):
        read_modulator("3\n1\n", CLUSTER, g)
