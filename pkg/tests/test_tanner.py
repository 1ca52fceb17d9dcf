"""Code assembly in the three variants, distances, and codeword profiles."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from xlab import gf2, graph, localcode, tanner
from xlab.errors import NotInformationSetError, ValidationError
from xlab.gf2 import BitVector


def numpy_gf2_rank(rows: list[int], cols: int) -> int:
    """Independent rank oracle via numpy elimination."""
    if not rows:
        return 0
    m = np.array(
        [[(r >> c) & 1 for c in range(cols)] for r in rows], dtype=np.uint8
    )
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, m.shape[0]):
            if m[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(m.shape[0]):
            if r != rank and m[r, c]:
                m[r, :] ^= m[rank, :]
        rank += 1
    return rank


def identity_matching(n: int, delta: int) -> graph.BipartiteGraph:
    """Every left vertex tied to the same-index right vertex delta times."""
    return graph.BipartiteGraph(n, delta, tuple((v,) * delta for v in range(n)))


def systematic_code(symbols: int, t: int, k: int, seed: int) -> localcode.LocalCode:
    """[n, k] code with identity on the first k bits, random parity tail."""
    n = symbols * t
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(k):
        bits = (1 << i) | (int(rng.integers(0, 1 << (n - k))) << k)
        rows.append(BitVector(n, bits))
    return localcode.make_local_code(f"sys({n},{k},{seed})", symbols, t, rows)


def test_build_basic_single_vertex_is_local_code():
    g = identity_matching(1, 7)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    assert code.dimension == 4
    words = {w.bits for w in tanner.codewords(code)}
    local = {w.bits for w in gf2.enumerate_codewords(list(ham.generator))}
    assert words == local
    assert tanner.min_distance_bruteforce(code) == 3


def test_build_basic_full_spaces_rate_one():
    g = graph.random_regular(3, 4, seed=0)
    full = localcode.full_space(4)
    code = tanner.build_basic(g, full, full)
    assert code.dimension == code.n_bits
    assert code.rate == 1.0


def test_build_basic_rate_floor_and_rank_oracle():
    g = graph.random_regular(4, 7, seed=0)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    assert code.n_bits == 28
    assert code.dimension >= 28 * (2 * 4 / 7 - 1) - 1e-9
    oracle_rank = numpy_gf2_rank(list(code.parity.rows), code.n_bits)
    assert code.dimension == code.n_bits - oracle_rank


def test_build_basic_rejects_wrong_length():
    g = graph.random_regular(3, 5, seed=1)
    with pytest.raises(ValidationError):
        tanner.build_basic(g, localcode.hamming7(), localcode.hamming7())


def test_multiedge_t1_reduces_to_basic():
    g = graph.random_regular(3, 5, seed=2)
    a = localcode.random_code(5, 3, seed=3)
    b = localcode.random_code(5, 2, seed=4)
    basic = tanner.build_basic(g, a, b)
    multi = tanner.build_multiedge(g, a, b, 1)
    assert basic.parity == multi.parity
    assert basic.variant == multi.variant == "basic"


def test_multiedge_full_space_rate_one():
    g = graph.random_regular(2, 3, seed=5)
    full = localcode.full_space(3, t=2)
    code = tanner.build_multiedge(g, full, full, 2)
    assert code.rate == 1.0


def test_multiedge_rate_floor():
    g = graph.random_regular(2, 3, seed=1)
    a = localcode.random_code(6, 4, seed=5, t=2)
    b = localcode.random_code(6, 3, seed=6, t=2)
    code = tanner.build_multiedge(g, a, b, 2)
    assert code.n_bits == 12
    assert code.dimension / code.n_bits >= 4 / 6 + 3 / 6 - 1 - 1e-12
    assert code.rate_floor() == pytest.approx(1 / 6)


def test_modified_vacuous_constraints_interleave_a():
    mg = graph.split_modified(3, 3, 2, seed=7)
    a = systematic_code(5, 2, 6, seed=8)
    full = localcode.full_space(3, t=2)
    code = tanner.build_modified(mg, a, full, full, 2)
    assert code.dimension == 3 * a.k
    assert code.rate == pytest.approx(a.rate)
    assert tanner.min_distance_bruteforce(code) == localcode.binary_distance(a)


def test_modified_requires_information_set():
    mg = graph.split_modified(3, 3, 2, seed=7)
    # dimension matches delta1*t but the first symbols are all zero columns
    rows = [BitVector(10, 1 << (4 + i)) for i in range(6)]
    bad = localcode.make_local_code("bad", 5, 2, rows)
    full = localcode.full_space(3, t=2)
    with pytest.raises(NotInformationSetError):
        tanner.build_modified(mg, bad, full, full, 2)


def test_modified_requires_exact_dimension():
    mg = graph.split_modified(3, 3, 2, seed=7)
    small = systematic_code(5, 2, 5, seed=9)
    full = localcode.full_space(3, t=2)
    with pytest.raises(ValidationError):
        tanner.build_modified(mg, small, full, full, 2)


def test_modified_rate_floor():
    mg = graph.split_modified(3, 3, 2, seed=2)
    a = systematic_code(5, 2, 6, seed=3)
    b = localcode.random_code(6, 4, seed=7, t=2)
    aux = localcode.random_code(6, 5, seed=8, t=2)
    code = tanner.build_modified(mg, a, b, aux, 2)
    floor = a.rate * b.rate - a.rate * (1 - aux.rate)
    assert code.rate >= floor - 1e-12
    assert code.rate_floor() == pytest.approx(floor)


def test_is_codeword_matches_parity_on_random_vectors():
    g = graph.random_regular(4, 7, seed=0)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    rng = np.random.default_rng(0)
    for _ in range(300):
        x = BitVector(28, int(rng.integers(0, 1 << 28)))
        assert tanner.is_codeword(code, x) == code.parity.annihilates(x)
    assert tanner.is_codeword(code, BitVector(28, 0))
    for v in gf2.nullspace_basis(code.parity):
        assert tanner.is_codeword(code, v)


def test_is_codeword_detects_local_violation():
    g = identity_matching(2, 7)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    # weight-1 word: the touched left vertex sees a non-codeword of A
    x = BitVector.from_support(14, [3])
    assert not tanner.is_codeword(code, x)


def test_repetition_repetition_distance_is_n():
    g = graph.random_regular(6, 5, seed=3)
    assert graph.component_count(g) == 1
    rep = localcode.repetition(5)
    code = tanner.build_basic(g, rep, rep)
    assert code.dimension == 1
    assert tanner.min_distance_bruteforce(code) == code.n_bits


def test_designed_distance_zero_eigenvalue_is_product():
    g = identity_matching(1, 7)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    assert tanner.designed_distance(code, 0.0) == pytest.approx(7 * (3 / 7) * (3 / 7))


def test_designed_distance_clamps_to_zero():
    g = graph.random_regular(4, 7, seed=0)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    assert tanner.designed_distance(code, 3.0) == 0.0
    assert tanner.designed_distance(code, 100.0) == 0.0


def test_designed_distance_below_bruteforce_on_k77():
    g = graph.complete_bipartite(7)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    lam = graph.second_eigenvalue(g).lambda2
    designed = tanner.designed_distance(code, lam)
    assert designed == pytest.approx(49 * 9 / 49)
    if code.dimension <= gf2.ENUMERATION_CAP:
        assert tanner.min_distance_bruteforce(code) >= designed - 1e-9


def test_profile_all_ones_repetition():
    g = graph.random_regular(4, 3, seed=1)
    rep = localcode.repetition(3)
    code = tanner.build_basic(g, rep, rep)
    ones = BitVector(12, (1 << 12) - 1)
    assert tanner.is_codeword(code, ones)
    prof = tanner.codeword_profile(code, ones)
    assert prof.sigma == prof.tau == Fraction(1)
    assert prof.gamma == Fraction(1)
    assert all(v == 1 for v in prof.gamma_left.values())
    assert all(v == 1 for v in prof.beta_right.values())


def test_profile_rejects_zero():
    g = graph.random_regular(4, 3, seed=1)
    rep = localcode.repetition(3)
    code = tanner.build_basic(g, rep, rep)
    with pytest.raises(ValidationError):
        tanner.codeword_profile(code, BitVector(12, 0))


def test_profile_identities_on_random_codewords():
    g = graph.random_regular(4, 7, seed=2)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    checked = 0
    for word in tanner.codewords(code):
        if word.bits == 0:
            continue
        prof = tanner.codeword_profile(code, word)
        checked += 1
        # support inside (S, T)
        for e in range(code.graph.n_edges):
            if (word.bits >> e) & 1:
                v, w = code.graph.edge_endpoints(e)
                assert v in prof.s_vertices and w in prof.t_vertices
        # beta_v >= gamma_v on both sides
        for v, gv in prof.gamma_left.items():
            assert prof.beta_left[v] >= gv
        for w, gw in prof.gamma_right.items():
            assert prof.beta_right[w] >= gw
        # exact averaging identity over T
        lhs = prof.gamma * prof.st_edge_count
        rhs = Fraction(0)
        deg_s = graph.degrees_into(code.graph, prof.s_vertices)
        for w in prof.t_vertices:
            rhs += deg_s[w] * prof.gamma_right[w]
        assert lhs == rhs
        # total weight adds up vertex by vertex
        total = sum(
            tanner.left_projection(code, word, v).weight for v in prof.s_vertices
        )
        assert total == prof.binary_weight
    assert checked >= 10


def test_profile_modified_uses_first_subgraph():
    mg = graph.split_modified(3, 3, 2, seed=2)
    a = systematic_code(5, 2, 6, seed=3)
    b = localcode.random_code(6, 4, seed=7, t=2)
    aux = localcode.random_code(6, 5, seed=8, t=2)
    code = tanner.build_modified(mg, a, b, aux, 2)
    word = next(w for w in tanner.codewords(code) if w.bits)
    prof = tanner.codeword_profile(code, word)
    assert prof.s_vertices <= set(range(3))
    lhs = prof.gamma * prof.st_edge_count
    rhs = Fraction(0)
    deg_s = graph.degrees_into(mg.subgraph1(), prof.s_vertices)
    for w in prof.t_vertices:
        rhs += deg_s[w] * prof.gamma_right[w]
    assert lhs == rhs


def test_gallager_preset():
    g = graph.random_regular(5, 4, seed=4)
    code = tanner.gallager_code(g)
    assert code.code_a.name == "spc(4)"
    assert code.code_b.name == "rep(4)"
    rng = np.random.default_rng(1)
    for _ in range(100):
        x = BitVector(20, int(rng.integers(0, 1 << 20)))
        assert tanner.is_codeword(code, x) == code.parity.annihilates(x)


def test_code_json_roundtrip(tmp_path):
    g = graph.random_regular(3, 7, seed=5)
    ham = localcode.hamming7()
    code = tanner.build_basic(g, ham, ham)
    path = tmp_path / "code.json"
    tanner.save_code(code, path)
    loaded = tanner.load_code(path)
    assert loaded.parity == code.parity
    assert loaded.dimension == code.dimension

    mg = graph.split_modified(3, 3, 2, seed=2)
    a = systematic_code(5, 2, 6, seed=3)
    b = localcode.random_code(6, 4, seed=7, t=2)
    aux = localcode.random_code(6, 5, seed=8, t=2)
    modified = tanner.build_modified(mg, a, b, aux, 2)
    tanner.save_code(modified, path)
    loaded = tanner.load_code(path)
    assert loaded.parity == modified.parity
    assert loaded.info_set == modified.info_set
