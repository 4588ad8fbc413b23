"""Acceptance criteria 1-12.

Each test appends one PASS/FAIL line to ``RESULTS``; ``conftest.py`` prints
them at the end of the run. Run this file directly for the lines alone:

    python tests/test_acceptance.py
"""
import itertools
import math
import random
import time
from collections import Counter

import numpy as np
import pytest

from interdict.bench import plan, run_benchmark
from interdict.btw_reic import solve_btw_reic
from interdict.graph import Graph, Instance, Kind, evaluate_strategy
from interdict.instgen import GenConfig, gen_prufer_tree
from interdict.knapsack import NEG_INF, reconstruct, solve_cmckp, solve_mckp
from interdict.oracle import brute_force_reic, brute_force_rfic
from interdict.reductions import BipartiteInstance, clique_gadget, solve_ssbve_tree, to_bip_rfic
from interdict.tree_reic import solve_tree_reic
from interdict.tree_rfic import solve_tree_rfic
from interdict.treewidth import (
    edge_census, grid_decomposition, heuristic_decomposition, to_extended_nice,
    tree_decomposition_of_tree, validate_decomposition, validate_nice,
)

from _util import (
    connected_graph, cycle_edges, enumerate_mckp, grid_edges, random_tree_edges, theta_edges,
)

RESULTS = []


def record(number, ok, detail, elapsed, limit):
    in_time = elapsed < limit
    passed = ok and in_time
    RESULTS.append(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}  [{elapsed:.1f}s / {limit}s]")
    return passed


def weights_for(rng, n, weighted):
    return {v: rng.randint(1, 9) for v in range(n)} if weighted else None


def test_criterion_01_tree_reic_oracle():
    t0 = time.perf_counter()
    rng = random.Random(101)
    bad = count = 0
    for i in range(540):
        n = rng.randint(2, 12)
        p = (0.2, 0.5, 0.8)[i % 3]
        weights = "unit" if i % 2 else "uniform:9"
        inst = gen_prufer_tree(GenConfig(n=n, p=p, weights=weights, budget=rng.randint(0, 4), seed=i))
        sol, _ = solve_tree_reic(inst)
        rescored = evaluate_strategy(inst, sol.removed_edges).disconnected_weight
        if sol.objective != brute_force_reic(inst).objective or rescored != sol.objective:
            bad += 1
        count += 1
    ok = record(1, bad == 0, f"{count} trees, {bad} mismatches", time.perf_counter() - t0, 60)
    assert ok


def test_criterion_02_cross_algorithm():
    t0 = time.perf_counter()
    rng = random.Random(102)
    bad = 0
    for i in range(200):
        n = rng.randint(1, 200)
        edges = random_tree_edges(rng, n)
        inst = Instance.build(n, edges, [v for v in range(n) if rng.random() < 0.3],
                              weights_for(rng, n, i % 2), rng.randint(0, 10))
        nice = to_extended_nice(inst.graph, tree_decomposition_of_tree(inst.graph))
        if solve_btw_reic(inst, nice)[0].objective != solve_tree_reic(inst)[0].objective:
            bad += 1
    ok = record(2, bad == 0, f"200 trees, {bad} mismatches", time.perf_counter() - t0, 60)
    assert ok


def _non_tree_graphs(rng):
    for n in range(3, 15):
        yield n, cycle_edges(n)
    for a, b, c in itertools.product(range(1, 6), repeat=3):
        if sorted((a, b, c))[1] >= 2 and a + b + c <= 14:
            yield theta_edges(a, b, c)
    for m in range(2, 6):
        yield 2 * m, grid_edges(2, m)
    for m in range(2, 4):
        yield 3 * m, grid_edges(3, m)
    while True:
        n = rng.randint(4, 10)
        edges = connected_graph(rng, n, rng.randint(1, 4))
        if len(edges) <= 14:
            yield n, edges


def test_criterion_03_btw_oracle():
    t0 = time.perf_counter()
    rng = random.Random(103)
    bad = count = 0
    shapes = _non_tree_graphs(rng)
    while count < 220:
        n, edges = next(shapes)
        g = Graph(n, edges)
        if g.is_forest() or g.edge_count > 14:
            continue
        fac = rng.sample(range(n), rng.randint(1, max(1, n // 3)))
        inst = Instance.build(n, edges, fac, weights_for(rng, n, count % 2), rng.randint(0, 4))
        nice = to_extended_nice(g, heuristic_decomposition(g))
        if solve_btw_reic(inst, nice)[0].objective != brute_force_reic(inst).objective:
            bad += 1
        count += 1
    ok = record(3, bad == 0, f"{count} non-tree graphs, {bad} mismatches", time.perf_counter() - t0, 120)
    assert ok


def test_criterion_04_tree_rfic_oracle():
    t0 = time.perf_counter()
    rng = random.Random(104)
    bad = 0
    for i in range(520):
        n = rng.randint(1, 12)
        edges = random_tree_edges(rng, n)
        fac = [v for v in range(n) if rng.random() < rng.choice((0.2, 0.5, 0.8))]
        r = rng.randint(0, len(fac))
        inst = Instance.build(n, edges, fac, weights_for(rng, n, i % 2), r, Kind.FACILITY)
        sol, _ = solve_tree_rfic(inst)
        if sol.objective != brute_force_rfic(inst).objective:
            bad += 1
    ok = record(4, bad == 0, f"520 trees, {bad} mismatches", time.perf_counter() - t0, 60)
    assert ok


def test_criterion_05_knapsack_oracles():
    t0 = time.perf_counter()
    rng = random.Random(105)
    bad = 0
    for _ in range(1000):
        buckets = [
            [(rng.randint(0, 6), rng.randint(0, 20), rng.random() < 0.4) for _ in range(rng.randint(1, 4))]
            for _ in range(rng.randint(1, 4))
        ]
        C = rng.randint(0, 12)
        plain = solve_mckp(buckets, C)
        cons = solve_cmckp(buckets, C)
        if list(plain.values) != enumerate_mckp(buckets, C):
            bad += 1
        if list(cons.values) != enumerate_mckp(buckets, C, constrained=True):
            bad += 1
        if np.any(cons.values > plain.values):
            bad += 1
        for table in (plain, cons):
            for c in range(C + 1):
                if table.values[c] != NEG_INF:
                    pick = reconstruct(table, c)
                    value = sum(b[j][1] for b, j in zip(buckets, pick))
                    cost = sum(b[j][0] for b, j in zip(buckets, pick))
                    if value != table.values[c] or cost > c:
                        bad += 1
    ok = record(5, bad == 0, f"1000 draws, {bad} disagreements", time.perf_counter() - t0, 30)
    assert ok


def _bipartite_tree(rng, n):
    edges = random_tree_edges(rng, n)
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    color = {0: True}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in color:
                color[y] = not color[x]
                stack.append(y)
    left = {v: i for i, v in enumerate(v for v in range(n) if color[v])}
    right = {v: i for i, v in enumerate(v for v in range(n) if not color[v])}
    pairs = tuple(sorted((left[u], right[v]) if color[u] else (left[v], right[u]) for u, v in edges))
    return len(left), len(right), pairs


def test_criterion_06_ssbve():
    t0 = time.perf_counter()
    rng = random.Random(106)
    bad = count = 0
    while count < 100:
        nl, nr, edges = _bipartite_tree(rng, rng.randint(2, 15))
        if nl > 8:
            continue
        k = rng.randint(0, nl)
        bip = BipartiteInstance(nl, nr, edges, k)
        chosen, size = solve_ssbve_tree(bip)
        best = min(len(bip.neighborhood(c)) for c in itertools.combinations(range(nl), k))
        if size != best or len(chosen) != k:
            bad += 1
        count += 1
    ok = record(6, bad == 0, f"100 bipartite trees, {bad} mismatches", time.perf_counter() - t0, 30)
    assert ok


def test_criterion_07_bip_rfic():
    t0 = time.perf_counter()
    rng = random.Random(107)
    bad = 0
    for _ in range(100):
        n = rng.randint(2, 14)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.25]
        fac = rng.sample(range(n), rng.randint(0, min(6, n)))
        inst = Instance.build(n, edges, fac, {v: rng.randint(0, 9) for v in range(n)}, 1, Kind.FACILITY)
        out, origin = to_bip_rfic(inst)
        for k in range(len(fac) + 1):
            for R in itertools.combinations(range(len(fac)), k):
                a = evaluate_strategy(inst, [origin[i] for i in R]).disconnected_weight
                if evaluate_strategy(out, R).disconnected_weight != a:
                    bad += 1
    ok = record(7, bad == 0, f"100 instances, {bad} strategy mismatches", time.perf_counter() - t0, 30)
    assert ok


def test_criterion_08_clique_gadget():
    t0 = time.perf_counter()
    rng = random.Random(108)
    bad = with_triangle = 0
    for _ in range(50):
        g = Graph(8, [e for e in itertools.combinations(range(8), 2) if rng.random() < 0.5])
        triangle = any(
            g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)
            for a, b, c in itertools.combinations(range(8), 3)
        )
        with_triangle += triangle
        if (brute_force_rfic(clique_gadget(g, 3)).objective == 3) != triangle:
            bad += 1
    ok = record(8, bad == 0, f"50 graphs ({with_triangle} with triangles), {bad} mismatches",
                time.perf_counter() - t0, 30)
    assert ok


def test_criterion_09_decompositions():
    t0 = time.perf_counter()
    rng = random.Random(109)
    bad = 0
    for i in range(100):
        n = rng.randint(1, 16)
        if i % 3 == 0:
            g = Graph(n, random_tree_edges(rng, n))
        else:
            g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.25])
        decs = [heuristic_decomposition(g)]
        if g.is_forest():
            decs.append(tree_decomposition_of_tree(g))
        for dec in decs:
            nice = to_extended_nice(g, dec)
            if validate_decomposition(g, dec) or validate_nice(g, nice) or edge_census(nice) != sorted(g.edges):
                bad += 1
            if nice.width != dec.width:
                bad += 1
    for k in range(1, 5):
        for m in range(1, 7):
            g = Graph(k * m, grid_edges(k, m))
            dec = grid_decomposition(k, m)
            nice = to_extended_nice(g, dec)
            if validate_decomposition(g, dec) or validate_nice(g, nice) or edge_census(nice) != sorted(g.edges):
                bad += 1
    ok = record(9, bad == 0, f"100 random graphs + 24 grids, {bad} failures", time.perf_counter() - t0, 30)
    assert ok


def test_criterion_10_scaling():
    t0 = time.perf_counter()
    sizes = [1000, 2000, 4000, 8000]
    reps = 10
    # untimed warm-up so first-call costs do not land on the smallest size
    run_benchmark(plan("prufer", [2000], 0.4, 2, 999, "tree", budget=50))
    rows = run_benchmark(plan("prufer", sizes, 0.4, reps, 110, "tree", budget=50))
    means = [np.mean([r.runtime_ns for r in rows if r.n == n]) for n in sizes]
    slope = float(np.polyfit(np.log(sizes), np.log(means), 1)[0])
    ref = run_benchmark(plan("prufer", [600], 0.4, reps, 111, "tree", budget=60))
    ref_mean = float(np.mean([r.runtime_ns for r in ref])) / 1e9
    ok = 0.8 <= slope <= 1.4 and ref_mean < 5.0
    passed = record(10, ok, f"slope {slope:.3f} (want 0.8..1.4), n=600 r=60 mean {ref_mean:.3f}s (want < 5s)",
                    time.perf_counter() - t0, 600)
    assert passed


def test_criterion_11_prufer_uniformity():
    from scipy.stats import chisquare

    t0 = time.perf_counter()
    counts = Counter(gen_prufer_tree(GenConfig(n=4, seed=s)).graph.edges for s in range(16000))
    observed = [counts.get(t, 0) for t in sorted(counts)]
    stat, pvalue = chisquare(observed + [0] * (16 - len(observed)))
    ok = len(counts) == 16 and pvalue > 0.001
    passed = record(11, ok, f"{len(counts)} distinct trees, chi2 {stat:.2f}, p={pvalue:.3f} (want > 0.001)",
                    time.perf_counter() - t0, 10)
    assert passed


def test_criterion_12_ilp_cross_check():
    t0 = time.perf_counter()
    try:
        import highspy  # noqa: F401
    except ImportError:
        RESULTS.append("criterion 12: SKIP  no MILP solver available (install highspy)")
        pytest.skip("highspy not installed")
    from interdict.ilp_export import export_reic_lp, import_solution, solve_with_highs

    rng = random.Random(112)
    bad = count = 0
    seed = 0
    while count < 25:
        seed += 1
        inst = gen_prufer_tree(GenConfig(n=rng.randint(2, 30), p=0.3, weights="uniform:9",
                                         budget=rng.randint(0, 5), seed=seed))
        if not inst.facilities:
            continue
        text = export_reic_lp(inst)
        optimum, listing = solve_with_highs(text)
        dp = solve_tree_reic(inst)[0].objective
        if not math.isclose(inst.total_weight - optimum, dp, abs_tol=1e-6):
            bad += 1
        if import_solution(text, listing).objective != dp:
            bad += 1
        count += 1
    ok = record(12, bad == 0, f"25 trees via HiGHS, {bad} mismatches", time.perf_counter() - t0, 120)
    assert ok


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except (AssertionError, pytest.skip.Exception):
                pass
    print("\n".join(RESULTS))
    sys.exit(0 if all("FAIL" not in line for line in RESULTS) else 1)
