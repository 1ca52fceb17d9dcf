"""Catalog codes and constrained-weight profiles."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from xlab import gf2, localcode
from xlab.errors import NotInformationSetError, ValidationError
from xlab.gf2 import QaryView


def test_hamming7_parameters():
    code = localcode.catalog_get("hamming7")
    assert (code.symbols, code.k) == (7, 4)
    assert localcode.binary_distance(code) == 3
    assert gf2.weight_distribution(list(code.generator), 7) == (1, 0, 0, 7, 7, 0, 0, 1)


def test_golay23_parameters():
    code = localcode.catalog_get("golay23")
    assert (code.symbols, code.k) == (23, 12)
    assert localcode.binary_distance(code) == 7


def test_repetition_and_spc():
    rep = localcode.catalog_get("rep(5)")
    assert (rep.symbols, rep.k) == (5, 1)
    assert localcode.binary_distance(rep) == 5
    spc = localcode.catalog_get("spc(4)")
    assert (spc.symbols, spc.k) == (4, 3)
    assert localcode.binary_distance(spc) == 2


def test_random_code_reproducible_and_full_rank():
    a = localcode.catalog_get("random(12,5,99)")
    b = localcode.catalog_get("random(12,5,99)")
    assert a.generator == b.generator
    assert a.k == 5
    assert gf2.rank(a.generator_matrix()) == 5


def test_catalog_rejects_unknown_and_bad_params():
    with pytest.raises(ValidationError):
        localcode.catalog_get("nonsense")
    with pytest.raises(ValidationError):
        localcode.catalog_get("rep(zero)")
    with pytest.raises(ValidationError):
        localcode.catalog_get("hamming7", t=7)


def test_code_file_roundtrip(tmp_path):
    code = localcode.random_code(8, 3, seed=4, t=2)
    path = tmp_path / "code.json"
    import json

    path.write_text(json.dumps(code.to_json_dict()))
    loaded = localcode.catalog_get(f"file({path})")
    assert loaded.generator == code.generator
    assert loaded.parity == code.parity


def test_parity_annihilates_generator():
    for name in ("hamming7", "golay23", "rep(4)", "spc(5)", "random(10,4,1)"):
        code = localcode.catalog_get(name)
        for g in code.generator:
            assert code.parity.annihilates(g)
        assert code.k + gf2.rank(code.parity) == code.nbits


def test_profile_rep2_t2():
    code = localcode.repetition(2, t=2)
    profile = localcode.constrained_qary_profile(code)
    assert profile.betas == (Fraction(1),)
    entry = profile.entries[0]
    assert entry.min_qary_weight == 2
    assert entry.min_binary_weight == 4


def test_profile_hamming_t1_single_beta():
    profile = localcode.constrained_qary_profile(localcode.hamming7())
    assert profile.betas == (Fraction(1),)
    assert profile.entries[0].min_binary_weight == 3


def test_profile_matches_bruteforce():
    code = localcode.random_code(12, 5, seed=21, t=3)
    profile = localcode.constrained_qary_profile(code)
    oracle: dict[Fraction, list[int]] = {}
    for word in gf2.enumerate_codewords(list(code.generator)):
        if word.bits == 0:
            continue
        view = QaryView(word, 3)
        qw = gf2.qary_weight(view)
        beta = Fraction(word.weight, 3 * qw)
        cur = oracle.setdefault(beta, [qw, word.weight])
        cur[0] = min(cur[0], qw)
        cur[1] = min(cur[1], word.weight)
    assert {e.beta: [e.min_qary_weight, e.min_binary_weight] for e in profile.entries} == oracle


def test_profile_minima_beat_distance():
    code = localcode.random_code(12, 6, seed=2, t=2)
    d = localcode.binary_distance(code)
    profile = localcode.constrained_qary_profile(code)
    for e in profile.entries:
        assert e.min_binary_weight >= d


def test_profile_subcode_dominance():
    code = localcode.random_code(12, 6, seed=13, t=2)
    sub = localcode.make_local_code("sub", code.symbols, code.t, list(code.generator[:4]))
    parent = {e.beta: e for e in localcode.constrained_qary_profile(code).entries}
    for e in localcode.constrained_qary_profile(sub).entries:
        assert e.beta in parent
        assert parent[e.beta].min_qary_weight <= e.min_qary_weight
        assert parent[e.beta].min_binary_weight <= e.min_binary_weight


def test_information_set_check():
    ham = localcode.hamming7()
    assert localcode.information_set_check(ham, (0, 1, 2, 3))
    assert not localcode.information_set_check(ham, (0, 1, 2))
    rep3 = localcode.repetition(3)
    assert localcode.information_set_check(rep3, (0,))
    assert not localcode.information_set_check(rep3, ())


def test_infoset_profile_full_space_matches_unrestricted():
    code = localcode.full_space(3, t=2)
    full = localcode.constrained_qary_profile(code)
    restricted = localcode.constrained_infoset_profile(code, (0, 1, 2))
    assert {e.beta for e in restricted.entries} == {e.beta for e in full.entries}
    for e in restricted.entries:
        match = full.entry(e.beta)
        assert match is not None
        assert match.min_binary_weight == e.min_binary_weight


def test_infoset_profile_requires_information_set():
    rep = localcode.repetition(4, t=1)
    with pytest.raises(NotInformationSetError):
        localcode.constrained_infoset_profile(rep, ())


def test_infoset_profile_matches_bruteforce():
    code = localcode.random_code(12, 6, seed=5, t=2)
    info = (0, 1, 2)
    assert localcode.information_set_check(code, info)
    profile = localcode.constrained_infoset_profile(code, info)
    oracle: dict[Fraction, int] = {}
    for word in gf2.enumerate_codewords(list(code.generator)):
        if word.bits == 0:
            continue
        sel_binary = 0
        sel_qary = 0
        for i in info:
            block = (word.bits >> (i * 2)) & 0b11
            if block:
                sel_qary += 1
                sel_binary += bin(block).count("1")
        assert sel_qary > 0  # information set: no codeword vanishes on it
        beta = Fraction(sel_binary, 2 * sel_qary)
        oracle[beta] = min(oracle.get(beta, 99), word.weight)
    assert {e.beta: e.min_binary_weight for e in profile.entries} == oracle


def test_profile_scan_skips_words_vanishing_on_restriction():
    # restriction that is not an information set: words may vanish on it
    code = localcode.full_space(3, t=1)
    profile = localcode._profile_scan(code, [0])
    # only words with bit 0 set contribute; all have beta = 1
    assert profile.betas == (Fraction(1),)
    assert profile.entries[0].min_binary_weight == 1


def test_search_constrained_code_reports_margins():
    code, report = localcode.search_constrained_code(4, 2, 0.5, trials=50, seed=17)
    assert code.k == 4
    assert report.entries, "margin report must list every observed beta"
    for entry in report.entries:
        assert 0 < entry.delta1 <= 1
        assert entry.target > 0
    assert report.worst_ratio == min(e.ratio for e in report.entries)


def test_search_constrained_code_deterministic():
    a = localcode.search_constrained_code(4, 2, 0.5, trials=1, seed=3)
    b = localcode.search_constrained_code(4, 2, 0.5, trials=1, seed=3)
    assert a[0].generator == b[0].generator
    assert a[1] == b[1]


def test_search_constrained_code_rejects_degenerate_rate():
    with pytest.raises(ValidationError):
        localcode.search_constrained_code(4, 2, 0.0, trials=1, seed=0)
    with pytest.raises(ValidationError):
        localcode.search_constrained_code(4, 2, 0.3, trials=1, seed=0)
