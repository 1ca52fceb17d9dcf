"""Graph generation, spectra, and the two mixing/expansion inequalities."""
from __future__ import annotations

import math

import numpy as np
import pytest

from xlab import graph
from xlab.errors import AlphaTooSmallError, RetryExhaustedError, ValidationError


def test_random_regular_degrees_exact():
    g = graph.random_regular(50, 7, seed=1)
    right = [0] * 50
    for row in g.adj:
        assert len(row) == 7
        for w in row:
            right[w] += 1
    assert right == [7] * 50


def test_random_regular_simple_flag():
    g = graph.random_regular(50, 7, seed=2, simple=True)
    assert g.is_simple()


def test_random_regular_deterministic():
    a = graph.random_regular(30, 5, seed=9)
    b = graph.random_regular(30, 5, seed=9)
    assert a.adj == b.adj
    c = graph.random_regular(30, 5, seed=10)
    assert a.adj != c.adj


def test_single_vertex_multigraph():
    g = graph.random_regular(1, 3, seed=0)
    assert g.adj == ((0, 0, 0),)
    assert not g.is_simple()


def test_simple_impossible_raises():
    with pytest.raises(RetryExhaustedError):
        graph.random_regular(2, 3, seed=0, simple=True)


def test_lambda2_complete_bipartite_zero():
    data = graph.second_eigenvalue(graph.complete_bipartite(8))
    assert abs(data.lambda2) < 1e-9
    assert data.lambda1 == pytest.approx(8.0)


def test_lambda2_cycle_closed_form():
    for n in (4, 9, 16):
        data = graph.second_eigenvalue(graph.single_cycle(n))
        assert data.lambda2 == pytest.approx(2.0 * math.cos(math.pi / n), abs=1e-9)


def test_lambda2_matches_dense_oracle():
    g = graph.random_regular(100, 7, seed=4)
    data = graph.second_eigenvalue(g)
    m = g.biadjacency()
    eigs = np.sort(np.linalg.eigvalsh(m.T @ m))
    assert data.lambda2 == pytest.approx(math.sqrt(eigs[-2]), abs=1e-9)


def test_power_iteration_agrees_with_dense():
    g = graph.random_regular(60, 5, seed=6)
    dense = graph.second_eigenvalue(g).lambda2
    power = graph._second_singular_power(g.biadjacency(), 1e-12)
    assert power == pytest.approx(dense, abs=1e-6)


def test_ramanujan_complete_true_disconnected_false():
    assert graph.is_ramanujan(graph.complete_bipartite(6))
    # two disjoint K_{4,4} blocks: lambda2 = delta = 4
    adj = tuple(
        tuple(range(4)) if v < 4 else tuple(range(4, 8)) for v in range(8)
    )
    g = graph.BipartiteGraph(8, 4, adj)
    data = graph.second_eigenvalue(g)
    assert data.lambda2 == pytest.approx(4.0, abs=1e-9)
    assert not graph.is_ramanujan(g, data)
    assert graph.component_count(g) == 2


def test_random_delta7_usually_ramanujan():
    g = graph.random_regular(200, 7, seed=6)
    data = graph.second_eigenvalue(g)
    assert data.lambda2 > 0
    assert graph.is_ramanujan(g, data)


def test_mixing_complete_graph_no_excess():
    g = graph.complete_bipartite(10)
    q = graph.mixing_excess_check(g, {0, 1, 2}, alpha=0.5)
    assert q.excess_set == frozenset()
    assert q.holds


def test_mixing_full_left_side_no_excess():
    g = graph.random_regular(20, 4, seed=3)
    q = graph.mixing_excess_check(g, set(range(20)), alpha=0.5)
    assert q.excess_set == frozenset()
    assert q.holds


def test_mixing_alpha_precondition():
    g = graph.random_regular(20, 4, seed=3)
    with pytest.raises(AlphaTooSmallError):
        graph.mixing_excess_check(g, {0}, alpha=1e-6)
    with pytest.raises(ValidationError):
        graph.mixing_excess_check(g, set(), alpha=0.5)


def test_mixing_inequality_random_queries():
    rng = np.random.default_rng(42)
    for gseed in range(3):
        g = graph.random_regular(40, 6, seed=gseed)
        spectral = graph.second_eigenvalue(g)
        for _ in range(50):
            size = int(rng.integers(1, g.n))
            subset = set(int(v) for v in rng.choice(g.n, size=size, replace=False))
            sigma = size / g.n
            alpha_min = spectral.lambda2 / (2 * sigma * g.delta)
            alpha = alpha_min * (1.02 + 3.0 * float(rng.random()))
            q = graph.mixing_excess_check(g, subset, alpha, spectral)
            assert q.holds


def test_expansion_full_sets_hold():
    g = graph.random_regular(15, 4, seed=8)
    check = graph.expansion_check(g, set(range(15)), set(range(15)), 1.0, 1.0)
    assert check.verdict == "holds"
    assert check.size_s == 15


def test_expansion_empty_t_unmet():
    g = graph.random_regular(15, 4, seed=8)
    assert graph.expansion_check(g, {0}, set(), 0.5, 0.5).verdict == "hypothesis-unmet"


def test_expansion_hypothesis_checked():
    g = graph.complete_bipartite(5)
    # one left vertex sends only 1 edge into a single right vertex: alpha0=1 fails
    assert graph.expansion_check(g, {0}, {0}, 1.0, 0.1).verdict == "hypothesis-unmet"


def test_split_modified_regular_and_deterministic():
    mg = graph.split_modified(50, 7, 3, seed=12)
    for adj, delta in ((mg.adj1, 7), (mg.adj2, 3)):
        right = [0] * 50
        for row in adj:
            assert len(row) == delta
            for w in row:
                right[w] += 1
        assert right == [delta] * 50
    again = graph.split_modified(50, 7, 3, seed=12)
    assert (mg.adj1, mg.adj2) == (again.adj1, again.adj2)


def test_split_modified_small():
    mg = graph.split_modified(4, 2, 1, seed=1)
    assert sorted(w for row in mg.adj2 for w in row) == [0, 1, 2, 3]


def test_typical_fraction_shrinks_with_degree():
    """Averaged excess fractions decrease through degrees 4, 9, 16, 25."""
    sigma = 0.4
    n, reps = 400, 20
    for seed in (0, 1, 2):
        fractions = []
        for delta in (4, 9, 16, 25):
            acc = 0.0
            for r in range(reps):
                g = graph.random_regular(n, delta, seed=seed * 1000 + delta * 10 + r)
                rng = np.random.default_rng(
                    np.random.SeedSequence(entropy=seed * 77 + r, spawn_key=(delta,))
                )
                subset = set(
                    int(v) for v in rng.choice(n, size=int(sigma * n), replace=False)
                )
                deg = graph.degrees_into(g, subset)
                alpha = delta ** (-0.25)
                lo = (1 - alpha) * sigma * delta
                hi = (1 + alpha) * sigma * delta
                typical = sum(1 for d in deg if lo <= d <= hi)
                acc += 1.0 - typical / n
            fractions.append(acc / reps)
        assert all(
            b <= a + 1e-12 for a, b in zip(fractions, fractions[1:])
        ), f"seed {seed}: {fractions}"


def test_graph_json_roundtrip(tmp_path):
    g = graph.random_regular(6, 3, seed=5)
    path = tmp_path / "g.json"
    graph.save_graph(g, path)
    loaded = graph.load_graph(path)
    assert loaded == g
    assert "left-major" in path.read_text()
    mg = graph.split_modified(4, 2, 2, seed=6)
    graph.save_graph(mg, path)
    assert graph.load_graph(path) == mg
