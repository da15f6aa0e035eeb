from __future__ import annotations

import math

import numpy as np
import pytest

from distver import CssCode, InfeasibleError, LinearCode, StabilizerCode, quantum_weight_filter, syndrome
from distver.ensembles import EnsembleSpec, sample_ensemble
from distver.field import gf
from distver.search import (
    ENGINES,
    SearchBudget,
    all_codewords,
    brute_force_distance,
    cs_distance,
    enumerate_ai_strings,
    group_cover,
    ic_distance,
    irreducible_codewords,
    mb_distance,
    pb_distance,
    sw_distance,
)
from distver.search.covering import covering_trials
from instances import FIVE_QUBIT, STEANE, hamming_matrix, witness_is_valid

REPETITION = LinearCode.from_dense([[1, 1, 0], [0, 1, 1]])
HAMMING = LinearCode.from_dense(hamming_matrix(3))
ALGOS = ["brute", "sw", "mb", "pb", "cs", "ic"]


@pytest.mark.parametrize("algo", ALGOS)
@pytest.mark.parametrize(
    "name, code, d",
    [
        ("repetition", REPETITION, 3),
        ("hamming", HAMMING, 3),
        ("five-qubit", StabilizerCode(FIVE_QUBIT), 3),
        ("steane", StabilizerCode(STEANE), 3),
        ("steane-css", CssCode.from_dense(hamming_matrix(3), hamming_matrix(3)), 3),
    ],
)
def test_small_codes(algo, name, code, d):
    kwargs = {"mode": "exhaustive"} if algo == "cs" else {}
    res = ENGINES[algo](code, **kwargs)
    assert res.exact and res.distance == d
    assert witness_is_valid(code, res.witness, d)
    if isinstance(code, StabilizerCode):
        assert quantum_weight_filter(res.witness, code)


def test_sw_repetition_window_two():
    res = sw_distance(REPETITION, window=2)
    assert res.distance == 3 and res.witness.entries == (1, 1, 1)


def test_cs_hamming_rho_three():
    res = cs_distance(HAMMING, set_size=3, mode="exhaustive")
    assert res.exact and res.distance == 3


def test_covering_trial_count():
    assert covering_trials(10, 5, 2) == 4.5
    assert covering_trials(10, 3, 4) == math.inf


def test_group_cover_covers_every_subset():
    import itertools
    for n, rho, d in ((10, 5, 2), (12, 6, 3), (9, 4, 2)):
        family = [set(J) for J in group_cover(n, rho, d)]
        for S in itertools.combinations(range(n), d):
            assert any(set(S) <= J for J in family)


@pytest.mark.parametrize("seed", range(4))
def test_ldpc_modes_match_oracle(seed):
    code = sample_ensemble(EnsembleSpec("A", 30, 3, 6, seed=seed))
    d = brute_force_distance(code).distance
    assert sw_distance(code, theta=0.483).distance == d
    assert cs_distance(code, theta=0.483, mode="exhaustive", budget=SearchBudget(b_max=10**6)).distance == d


@pytest.mark.parametrize("algo", ["brute", "sw", "mb", "cs"])
def test_syndrome_mode(algo):
    e = np.zeros(7, dtype=np.int64)
    e[[1, 4]] = 1
    h = syndrome(HAMMING.H, e)
    kwargs = {"mode": "exhaustive"} if algo == "cs" else {}
    res = ENGINES[algo](HAMMING, syndrome=h, **kwargs)
    # a weight-one coset leader exists for every Hamming syndrome
    assert res.distance == 1
    assert np.array_equal(syndrome(HAMMING.H, res.witness), h)


def test_syndrome_mode_qary():
    code = sample_ensemble(EnsembleSpec("random-linear", 10, q=3, k=5, seed=4))
    e = np.zeros(10, dtype=np.int64)
    e[[0, 7]] = [2, 1]
    h = syndrome(code.H, e)
    oracle = brute_force_distance(code, syndrome=h).distance
    assert oracle <= 2
    for algo in ("sw", "mb", "cs"):
        kwargs = {"mode": "exhaustive"} if algo == "cs" else {}
        res = ENGINES[algo](code, syndrome=h, **kwargs)
        assert res.distance == oracle
        assert np.array_equal(syndrome(code.H, res.witness), h)


def test_truncation_gives_bound():
    res = ic_distance(HAMMING, SearchBudget(max_weight=2))
    assert res.truncated and res.distance is None and res.lower_bound == 2
    assert res.summary() == "d > 2"
    for algo in ("sw", "mb", "pb", "cs"):
        r = ENGINES[algo](HAMMING, SearchBudget(max_weight=2))
        assert r.distance is None and r.truncated


def test_brute_force_refuses_large_enumeration():
    code = sample_ensemble(EnsembleSpec("random-linear", 30, q=2, k=20, seed=1))
    with pytest.raises(InfeasibleError):
        brute_force_distance(code, SearchBudget(enumeration_limit=1 << 10))


@pytest.mark.parametrize("algo", ["sw", "mb", "pb", "cs", "ic"])
def test_jobs_do_not_change_results(algo):
    code = sample_ensemble(EnsembleSpec("B", 24, 3, 6, q=3, seed=2))
    kwargs = {"mode": "random"} if algo == "cs" else {}
    one = ENGINES[algo](code, jobs=1, **kwargs)
    four = ENGINES[algo](code, jobs=4, **kwargs)
    assert one.to_dict() == four.to_dict()


def test_pb_full_window_is_mb():
    for seed in range(3):
        code = sample_ensemble(EnsembleSpec("random-linear", 14, q=2, k=7, seed=seed))
        pb = pb_distance(code, window=code.n)
        mb = mb_distance(code)
        assert (pb.distance, pb.witness) == (mb.distance, mb.witness)


def test_cs_exhaustive_is_seed_independent():
    code = sample_ensemble(EnsembleSpec("random-linear", 16, q=2, k=8, seed=3))
    results = {cs_distance(code, SearchBudget(seed=s, b_max=10**6), mode="exhaustive").witness
               for s in range(3)}
    assert len(results) == 1


def test_all_codewords_hamming():
    words = all_codewords(HAMMING.block, 7)
    weights = sorted(int(w.sum()) for w in words)
    assert weights == [3] * 7 + [4] * 7 + [7]


def test_irreducible_codewords_hamming():
    words = irreducible_codewords(HAMMING, 3)
    assert len(words) == 7 and all(w.weight == 3 for w in words)
    # the all-ones word is the sum of disjoint weight-3 and weight-4 codewords
    assert all(w.weight < 7 for w in irreducible_codewords(HAMMING, 7))


@pytest.mark.parametrize("q,v,expected", [(5, 4, 1), (8, 3, 24), (2, 2, 0), (2, 1, 1), (3, 2, 1), (4, 2, 2)])
def test_ai_string_counts(q, v, expected):
    assert enumerate_ai_strings(q, v).per_value == expected


@pytest.mark.parametrize("q", [4, 8])
def test_ai_strings_closed_form_char_two(q):
    # over (Z_2)^u an AI string is a linearly independent sequence with a prescribed sum
    u = q.bit_length() - 1
    for v in range(1, u + 1):
        independent = math.prod(q - 2**i for i in range(v))
        assert enumerate_ai_strings(q, v).count == independent
    assert enumerate_ai_strings(q, u + 1).count == 0


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_ai_strings_per_value(q):
    F = gf(q)
    for v in range(1, 4):
        ai = enumerate_ai_strings(q, v)
        assert ai.count == (q - 1) * ai.per_value
        sums = {}
        for s in ai.strings:
            acc = 0
            for x in s:
                acc = int(F.add[acc, x])
            sums[acc] = sums.get(acc, 0) + 1
        assert set(sums.values()) <= {ai.per_value}
