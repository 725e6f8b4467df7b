import random
from itertools import combinations

import pytest

from locdom.errors import InapplicableRule, LocdomError
from locdom.graph import graph_from_edges, twin_classes
from locdom.lds import Instance, is_locating_dominating, lds_number, solve_exact
from locdom.modulators import CLIQUE, CLUSTER, Modulator, make_modulator
from locdom.cluster_kernel import (
    compute_patterns,
    kernelize_clique,
    kernelize_cluster,
    lift_cluster_solution,
    normalize_nontrivial_solution,
    normalize_trivial_solution,
    rule_nontrivial_pattern,
    rule_trivial_pattern,
    rule_twin_reduce,
)
from locdom.trace import trace_from_json, trace_to_json

from testutil import (
    complete_graph,
    path_graph,
    planted_k4_pattern,
    planted_nontrivial_pattern,
    planted_trivial_pattern,
    random_cluster_planted,
    random_graph,
    star_graph,
)


def _decision_preserved(g, kernelize, mod=None, budgets=None):
    base = lds_number(g)
    cache = {}
    for d in budgets if budgets is not None else range(g.n + 1):
        out, trace, report = kernelize(Instance(g, d), mod)
        key = (out.graph.n, tuple(sorted(out.graph.edges())))
        if key not in cache:
            cache[key] = lds_number(out.graph)
        assert (base <= d) == (cache[key] <= out.budget), f"budget {d}"


# ---------------------------------------------------------------------------
# Twin rule


def test_twin_reduce_k4():
    out, trace = rule_twin_reduce(Instance(complete_graph(4), 3), Modulator(CLUSTER, frozenset()))
    assert out.graph.n == 2 and out.budget == 1
    assert lds_number(complete_graph(4)) == 3 and lds_number(out.graph) == 1


def test_twin_reduce_star():
    star = star_graph(4)
    mod = make_modulator(star, CLUSTER, [0])
    out, trace = rule_twin_reduce(Instance(star, 4), mod)
    assert out.graph.n == 3 and out.budget == 2
    assert lds_number(star) == 4 and lds_number(out.graph) == 2


def test_twin_reduce_p4_unchanged():
    p4 = path_graph(4)
    out, trace = rule_twin_reduce(Instance(p4, 2), Modulator(CLUSTER, frozenset({0, 1, 2, 3})))
    assert out.graph == p4 and out.budget == 2 and not trace.steps


def test_twin_reduce_is_exhaustive():
    rng = random.Random(61)
    for _ in range(20):
        g, u = random_cluster_planted(rng)
        mod = make_modulator(g, CLUSTER, u)
        out, trace = rule_twin_reduce(Instance(g, g.n), mod)
        rest = [v for v in range(out.graph.n)]  # labels compacted; recheck on output
        survivors = set(range(out.graph.n)) - set()
        classes = twin_classes(out.graph, [v for v in survivors if v not in mod.vertices])
        # Modulator ids may have shifted; recompute via trace labels instead.
        kept = {lab: idx for idx, lab in enumerate(trace.kernel_labels)}
        outside = [kept[lab] for lab in trace.kernel_labels if lab not in mod.vertices]
        assert all(len(c) <= 2 for c in twin_classes(out.graph, outside).classes)


# ---------------------------------------------------------------------------
# Patterns


def test_patterns_shared_signature():
    # Two K2 cliques, first endpoint adjacent to u=0, second not.
    g, u = planted_trivial_pattern(r=2)
    pats = compute_patterns(g, make_modulator(g, CLUSTER, u))
    assert len(pats) == 1
    assert pats[0].clique_count == 2 and pats[0].trivial and pats[0].size == 2


def test_patterns_split_by_signature():
    # One K2 fully adjacent to u, one fully non-adjacent.
    g = graph_from_edges(5, [(1, 2), (3, 4), (0, 1), (0, 2)])
    pats = compute_patterns(g, make_modulator(g, CLUSTER, [0]))
    assert len(pats) == 2


def test_patterns_true_twins_nontrivial():
    g = graph_from_edges(3, [(1, 2), (0, 1), (0, 2)])
    pats = compute_patterns(g, make_modulator(g, CLUSTER, [0]))
    assert len(pats) == 1 and not pats[0].trivial and pats[0].tau_size == 1


def test_patterns_reject_bad_modulator():
    with pytest.raises(LocdomError):
        compute_patterns(path_graph(4), Modulator(CLUSTER, frozenset({0})))


# ---------------------------------------------------------------------------
# Pattern rules


def test_trivial_rule_r7():
    g, u = planted_trivial_pattern(r=7)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    out, trace = rule_trivial_pattern(Instance(g, 15), mod, pattern)
    assert out.graph.n == g.n - 2 and out.budget == 14
    remaining = compute_patterns(g, mod)  # original untouched
    assert remaining[0].clique_count == 7
    base = lds_number(g)
    kernel = lds_number(out.graph)
    for d in range(16):
        assert (base <= d) == (kernel <= d - 1)


def test_trivial_rule_threshold():
    g, u = planted_trivial_pattern(r=6)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    with pytest.raises(InapplicableRule):
        rule_trivial_pattern(Instance(g, 10), mod, pattern)


def test_trivial_rule_impossible_without_modulator():
    # With an empty modulator every size >= 2 clique is a twin class, never trivial.
    g = graph_from_edges(14, [(2 * i, 2 * i + 1) for i in range(7)])
    mod = make_modulator(g, CLUSTER, [])
    for pattern in compute_patterns(g, mod):
        assert not pattern.trivial
        with pytest.raises(InapplicableRule):
            rule_trivial_pattern(Instance(g, 14), mod, pattern)


def test_nontrivial_rule_r3():
    g, u = planted_nontrivial_pattern(r=3)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    assert pattern.tau_size == 1
    out, trace = rule_nontrivial_pattern(Instance(g, 7), mod, pattern)
    assert out.graph.n == g.n - 2 and out.budget == 6
    base, kernel = lds_number(g), lds_number(out.graph)
    for d in range(8):
        assert (base <= d) == (kernel <= d - 1)


def test_nontrivial_rule_threshold():
    g, u = planted_nontrivial_pattern(r=2)
    mod = make_modulator(g, CLUSTER, u)
    with pytest.raises(InapplicableRule):
        rule_nontrivial_pattern(Instance(g, 5), mod, compute_patterns(g, mod)[0])


def test_nontrivial_rule_two_twin_pairs():
    g, u = planted_k4_pattern(r=3)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    assert pattern.tau_size == 2 and not pattern.trivial
    out, trace = rule_nontrivial_pattern(Instance(g, 13), mod, pattern)
    assert out.budget == 11  # tau has two members
    base, kernel = lds_number(g), lds_number(out.graph)
    for d in range(g.n + 1):
        assert (base <= d) == (kernel <= d - 2)


# ---------------------------------------------------------------------------
# Drivers


def test_kernelize_cluster_identity_below_thresholds():
    # Twin classes of size <= 2 and every pattern below its removal threshold.
    g = graph_from_edges(5, [(0, 1), (2, 3), (2, 4), (3, 4)])
    mod = make_modulator(g, CLUSTER, [2])
    out, trace, report = kernelize_cluster(Instance(g, 4), mod)
    assert out.graph == g and out.budget == 4 and not trace.steps
    assert report.all_ok()


def test_kernelize_cluster_r7_fixture():
    g, u = planted_trivial_pattern(r=7)
    mod = make_modulator(g, CLUSTER, u)
    out, trace, report = kernelize_cluster(Instance(g, 15), mod)
    assert out.graph.n == g.n - 2 and out.budget == 14
    assert len(trace.steps) == 1
    assert report.pattern_count == 1
    assert report.check("pattern-0-cliques").value == 6


def test_kernelize_cluster_random_oracle_sample():
    rng = random.Random(67)
    for _ in range(20):
        g, u = random_cluster_planted(rng, max_n=10)
        mod = make_modulator(g, CLUSTER, u)
        _decision_preserved(g, kernelize_cluster, mod)
    for _ in range(10):
        g = random_graph(rng, rng.randint(1, 9), rng.choice([0.25, 0.5, 0.8]))
        _decision_preserved(g, kernelize_cluster)


def test_kernelize_cluster_negative_budget():
    g, u = planted_trivial_pattern(r=7)
    mod = make_modulator(g, CLUSTER, u)
    out, trace, report = kernelize_cluster(Instance(g, 0), mod)
    assert trace.no_instance and out.graph.n == 1 and out.budget == 0
    assert report.no_instance
    # The canonical NO instance really is a NO: lds(K1) = 1 > 0.
    assert lds_number(out.graph) > out.budget


def test_kernelize_clique_k10():
    out, trace, report = kernelize_clique(
        Instance(complete_graph(10), 9), Modulator(CLIQUE, frozenset())
    )
    assert out.graph.n == 2 and out.budget == 1
    assert len(trace.steps) == 8
    assert lds_number(complete_graph(10)) == 9 and lds_number(out.graph) == 1
    assert report.check("kernel-size").bound == 2


def test_kernelize_clique_k5_minus_edge():
    g = graph_from_edges(
        5, [(u, v) for u, v in combinations(range(5), 2) if (u, v) != (0, 1)]
    )
    mod = make_modulator(g, CLIQUE, [0, 1])
    out, trace, report = kernelize_clique(Instance(g, 4), mod)
    check = report.check("kernel-size")
    assert check.bound == 2 + 2 * 4 and check.ok


def test_kernelize_clique_random_oracle_sample():
    rng = random.Random(71)
    for _ in range(15):
        g = random_graph(rng, rng.randint(1, 10), rng.choice([0.7, 0.85]))
        _decision_preserved(g, kernelize_clique)


# ---------------------------------------------------------------------------
# Normalizers


def test_normalize_trivial_pass_through():
    g, u = planted_trivial_pattern(r=7)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    # One vertex per clique at the same position (the endpoint next to u).
    code = frozenset(rec.members[1] for rec in pattern.records)
    assert is_locating_dominating(g, code)[0]
    assert normalize_trivial_solution(g, mod, pattern, code) == code


def test_normalize_trivial_rebuild():
    g, u = planted_trivial_pattern(r=7)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    everything = frozenset(m for rec in pattern.records for m in rec.members) | {0}
    assert is_locating_dominating(g, everything)[0]
    result = normalize_trivial_solution(g, mod, pattern, everything)
    assert len(result) <= len(everything)
    assert is_locating_dominating(g, result)[0]
    singles = [rec for rec in pattern.records if len(result.intersection(rec.members)) == 1]
    assert len(singles) == 7


def test_normalize_trivial_rejects_small_pattern():
    g, u = planted_trivial_pattern(r=3)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    code = solve_exact(g)
    with pytest.raises(LocdomError):
        normalize_trivial_solution(g, mod, pattern, code)


def test_normalize_nontrivial_pass_through_and_rebuild():
    g, u = planted_nontrivial_pattern(r=3)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    # tau shape on the first clique plus enough elsewhere to stay valid.
    tau_first = pattern.records[0].tau
    code = frozenset(tau_first) | frozenset(
        m for rec in pattern.records[1:] for m in rec.members
    )
    assert is_locating_dominating(g, code)[0]
    assert normalize_nontrivial_solution(g, mod, pattern, code) == code
    # Every clique above tau: both endpoints everywhere.
    fat = frozenset(m for rec in pattern.records for m in rec.members)
    assert is_locating_dominating(g, fat)[0]
    slim = normalize_nontrivial_solution(g, mod, pattern, fat)
    assert len(slim) <= len(fat) and is_locating_dominating(g, slim)[0]
    assert any(
        len(slim.intersection(rec.members)) == len(rec.tau) for rec in pattern.records
    )


def test_normalize_padded_solutions():
    # Random valid supersets drive the heavy rebuild branches of both
    # normalizers; outputs must verify and never grow.
    from locdom.lds import enumerate_minimum_solutions

    rng = random.Random(7)
    g, u = planted_trivial_pattern(8)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    for base in enumerate_minimum_solutions(g)[:40]:
        for _ in range(4):
            code = frozenset(base) | frozenset(rng.sample(range(g.n), rng.randint(1, 6)))
            result = normalize_trivial_solution(g, mod, pattern, code)
            assert is_locating_dominating(g, result)[0] and len(result) <= len(code)
    for build in (planted_nontrivial_pattern, planted_k4_pattern):
        g2, u2 = build(4)
        mod2 = make_modulator(g2, CLUSTER, u2)
        pattern2 = compute_patterns(g2, mod2)[0]
        for base in enumerate_minimum_solutions(g2)[:40]:
            for _ in range(4):
                code = frozenset(base) | frozenset(rng.sample(range(g2.n), rng.randint(1, 5)))
                result = normalize_nontrivial_solution(g2, mod2, pattern2, code)
                assert is_locating_dominating(g2, result)[0] and len(result) <= len(code)


def test_normalize_handles_all_optima():
    from locdom.lds import enumerate_minimum_solutions

    g, u = planted_trivial_pattern(r=7)
    mod = make_modulator(g, CLUSTER, u)
    pattern = compute_patterns(g, mod)[0]
    for code in enumerate_minimum_solutions(g):
        result = normalize_trivial_solution(g, mod, pattern, code)
        assert len(result) <= len(code)
    g2, u2 = planted_nontrivial_pattern(r=3)
    mod2 = make_modulator(g2, CLUSTER, u2)
    pattern2 = compute_patterns(g2, mod2)[0]
    for code in enumerate_minimum_solutions(g2):
        result = normalize_nontrivial_solution(g2, mod2, pattern2, code)
        assert len(result) <= len(code)


# ---------------------------------------------------------------------------
# Lifting


def test_lift_empty_trace():
    g = path_graph(4)
    out, trace, _ = kernelize_cluster(Instance(g, 2), make_modulator(g, CLUSTER, range(4)))
    assert not trace.steps
    code = solve_exact(g)
    assert lift_cluster_solution(trace, code) == code


def test_lift_r7_round_trip():
    g, u = planted_trivial_pattern(r=7)
    mod = make_modulator(g, CLUSTER, u)
    base = lds_number(g)
    out, trace, _ = kernelize_cluster(Instance(g, base), mod)
    kernel_code = solve_exact(out.graph)
    assert len(kernel_code) == out.budget
    lifted = lift_cluster_solution(trace, kernel_code)
    assert is_locating_dominating(g, lifted)[0]
    assert len(lifted) == base


def test_lift_k4_twin_trace():
    k4 = complete_graph(4)
    out, trace = rule_twin_reduce(Instance(k4, 3), Modulator(CLUSTER, frozenset()))
    kernel_code = frozenset({0})
    assert is_locating_dominating(out.graph, kernel_code)[0]
    lifted = lift_cluster_solution(trace, kernel_code)
    assert len(lifted) == 3 and is_locating_dominating(k4, lifted)[0]


def test_lift_nontrivial_round_trip():
    g, u = planted_k4_pattern(r=3)
    mod = make_modulator(g, CLUSTER, u)
    base = lds_number(g)
    out, trace, _ = kernelize_cluster(Instance(g, base), mod)
    assert any(step.budget_delta == 2 for step in trace.steps)
    kernel_code = solve_exact(out.graph)
    lifted = lift_cluster_solution(trace, kernel_code)
    assert is_locating_dominating(g, lifted)[0] and len(lifted) <= base


def test_lift_rejects_bad_kernel_solution():
    g, u = planted_trivial_pattern(r=7)
    mod = make_modulator(g, CLUSTER, u)
    out, trace, _ = kernelize_cluster(Instance(g, 15), mod)
    with pytest.raises(LocdomError):
        lift_cluster_solution(trace, frozenset({0}))


def test_trace_json_round_trip():
    g, u = planted_k4_pattern(r=3)
    mod = make_modulator(g, CLUSTER, u)
    out, trace, _ = kernelize_cluster(Instance(g, 13), mod)
    assert trace_from_json(trace_to_json(trace)) == trace
    out2, trace2 = rule_twin_reduce(Instance(complete_graph(4), 3), Modulator(CLUSTER, frozenset()))
    assert trace_from_json(trace_to_json(trace2)) == trace2


def test_budget_deltas_sum():
    # d - d' must equal #twin removals + #trivial removals + sum of tau sizes.
    from locdom.trace import NontrivialCliqueRemoved, TrivialCliqueRemoved, TwinRemoved

    rng = random.Random(73)
    for _ in range(25):
        g, u = random_cluster_planted(rng)
        mod = make_modulator(g, CLUSTER, u)
        out, trace, _ = kernelize_cluster(Instance(g, g.n), mod)
        if trace.no_instance:
            continue
        twins = sum(1 for s in trace.steps if isinstance(s, TwinRemoved))
        trivial = sum(1 for s in trace.steps if isinstance(s, TrivialCliqueRemoved))
        tau_total = sum(
            len(s.tau) for s in trace.steps if isinstance(s, NontrivialCliqueRemoved)
        )
        assert g.n - out.budget == twins + trivial + tau_total
