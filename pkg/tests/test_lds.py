import random

import pytest

from locdom.errors import LocdomError, ParseError, SizeCapError
from locdom.graph import graph_from_edges, twin_classes
from locdom.lds import (
    Instance,
    enumerate_minimum_solutions,
    is_locating_dominating,
    lds_number,
    read_solution,
    solve_exact,
    write_solution,
)

from testutil import (
    brute_all_min_lds,
    brute_min_lds,
    complete_graph,
    path_graph,
    random_graph,
)


def test_verifier_examples():
    p3 = path_graph(3)
    assert is_locating_dominating(p3, {0, 2}) == (True, None)
    ok, witness = is_locating_dominating(p3, {1})
    assert not ok and witness.kind == "confounded" and witness.vertices == (0, 2)
    ok, witness = is_locating_dominating(complete_graph(3), {0})
    assert not ok and witness.kind == "confounded" and witness.vertices == (1, 2)


def test_verifier_undominated_witness():
    ok, witness = is_locating_dominating(graph_from_edges(2, []), {0})
    assert not ok and witness.kind == "undominated" and witness.vertices == (1,)


def test_verifier_rejects_bad_ids():
    with pytest.raises(LocdomError):
        is_locating_dominating(path_graph(3), {5})


def test_instance_budget_validation():
    with pytest.raises(LocdomError):
        Instance(path_graph(3), -1)
    assert Instance(path_graph(3), 99).budget == 99  # above n is fine


def test_solve_examples():
    assert solve_exact(graph_from_edges(1, [])) == frozenset({0})
    assert len(solve_exact(path_graph(5))) == 2
    assert len(solve_exact(complete_graph(4))) == 3


def test_solve_sizes_match_subset_enumeration():
    # Second route: raw subset enumeration, independent of the solver search.
    rng = random.Random(23)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 8), rng.choice([0.15, 0.4, 0.7]))
        assert len(solve_exact(g)) == len(brute_min_lds(g))


def test_lds_number_families():
    for n in range(2, 7):
        assert lds_number(complete_graph(n)) == n - 1
    assert [lds_number(path_graph(n)) for n in (5, 10, 15)] == [2, 4, 6]
    assert lds_number(graph_from_edges(0, [])) == 0


def test_solver_output_is_always_valid_and_minimal():
    rng = random.Random(31)
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 9), rng.random())
        code = solve_exact(g)
        assert is_locating_dominating(g, code)[0]
        assert len(code) == len(brute_min_lds(g))


def test_minimality_exhaustive_up_to_12():
    # No subset one smaller than the reported optimum passes the verifier.
    from itertools import combinations

    rng = random.Random(53)
    for _ in range(5):
        n = rng.randint(10, 12)
        g = random_graph(rng, n, rng.choice([0.25, 0.5]))
        s = len(solve_exact(g))
        assert not any(
            is_locating_dominating(g, combo)[0]
            for combo in combinations(range(n), s - 1)
        )


def test_solve_with_limit():
    assert solve_exact(complete_graph(4), limit=2) is None
    assert solve_exact(complete_graph(4), limit=3) is not None


def test_solve_hard_cap():
    with pytest.raises(SizeCapError):
        solve_exact(path_graph(70))
    assert solve_exact(path_graph(70), hard_cap=70) is not None


def test_solver_deterministic():
    rng = random.Random(37)
    for _ in range(10):
        g = random_graph(rng, 8, 0.5)
        assert solve_exact(g) == solve_exact(g)


def test_isolated_vertex_adds_exactly_one():
    rng = random.Random(41)
    for _ in range(15):
        n = rng.randint(1, 8)
        g = random_graph(rng, n, rng.random())
        bigger = graph_from_edges(n + 1, list(g.edges()))
        assert lds_number(bigger) == lds_number(g) + 1


def test_twin_classes_force_members():
    # Any mutual-twin class of size c pins at least c-1 vertices into every
    # valid code; checked across all minimum solutions of random graphs.
    rng = random.Random(43)
    for _ in range(25):
        g = random_graph(rng, rng.randint(2, 8), rng.choice([0.3, 0.6, 0.9]))
        classes = twin_classes(g).nontrivial()
        for code in enumerate_minimum_solutions(g):
            for cls in classes:
                assert len(code.intersection(cls.members)) >= len(cls) - 1


def test_enumerate_minimum_solutions_matches_brute_force():
    rng = random.Random(47)
    for _ in range(15):
        g = random_graph(rng, rng.randint(1, 7), rng.random())
        assert set(enumerate_minimum_solutions(g)) == brute_all_min_lds(g)


def test_solution_file_round_trip():
    code = frozenset({4, 1, 7})
    assert read_solution(write_solution(code)) == code
    assert write_solution(code) == "3\n1\n4\n7\n"
    with pytest.raises(ParseError):
        read_solution("2\n1\n")
    with pytest.raises(ParseError):
        read_solution("")
