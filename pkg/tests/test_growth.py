"""Growth sequences, classification, exponent fits, multiplicities.

Expected values come from independent oracles computed in this file:
closed-form ball counts, ballot-path dynamic programming for Catalan
numbers, and brute-force word-ball BFS over multiplication tables.
"""

from __future__ import annotations

import math

import pytest

import qgrowth as qg
from qgrowth import RepVector
from qgrowth.errors import EnumerationCapError, QGrowthError, StrictGrowthError
from qgrowth.growth import _fast_level_counts, iter_ball_levels


SU2 = qg.load_ring("su2")
U1 = RepVector({1: 1})


def su2_cubic(n: int) -> int:
    return (n + 1) * (n + 2) * (2 * n + 3) // 6


def lattice_l1_ball(d: int, n: int) -> int:
    """Closed form for |{x in Z^d : |x|_1 <= n}|."""
    return sum(2 ** i * math.comb(d, i) * math.comb(n, i) for i in range(d + 1))


def ballot_paths(k: int) -> int:
    """Walks 0 -> 0 of length k on the nonnegative integers with steps
    +-1: the number of trivial summands in the k-th tensor power of the
    two-dimensional su2 irrep, counted without any fusion machinery."""
    row = {0: 1}
    for _ in range(k):
        nxt: dict = {}
        for pos, ways in row.items():
            for step in (1, -1):
                p = pos + step
                if p >= 0:
                    nxt[p] = nxt.get(p, 0) + ways
        row = nxt
    return row.get(0, 0)


# ---------------------------------------------------------------------------
# balls

def test_ball_su2_levels():
    b = qg.ball(SU2, U1, 3)
    assert b.first_power == {0: 0, 1: 1, 2: 2, 3: 3}


def test_ball_radius_zero():
    for spec in ("su2", "torus:d=2", "heisenberg"):
        ring = qg.load_ring(spec)
        gen = RepVector({ring.first_irreps(2)[1]: 1})
        b = qg.ball(ring, gen, 0)
        assert b.first_power == {ring.unit: 0}


def test_ball_free_group_17_words():
    ring = qg.load_ring("free:k=2")
    gen = RepVector({"a": 1, "b": 1, "A": 1, "B": 1})
    b = qg.ball(ring, gen, 2)
    assert len(b) == 17  # 1 + 4 + 12


def test_ball_su2_parity_union_is_full_interval():
    b = qg.ball(SU2, U1, 100)
    assert set(b.first_power) == set(range(101))
    assert all(b.first_power[i] == i for i in range(101))


def test_ball_monotone_and_minimal_levels():
    b5 = qg.ball(SU2, RepVector({2: 1}), 5)
    b6 = qg.ball(SU2, RepVector({2: 1}), 6)
    assert set(b5.first_power) <= set(b6.first_power)
    for label, k in b5.first_power.items():
        assert b6.first_power[label] == k


def test_ball_cap_exceeded():
    ring = qg.load_ring("free:k=2")
    gen = RepVector({"a": 1, "b": 1, "A": 1, "B": 1})
    with pytest.raises(EnumerationCapError):
        qg.ball(ring, gen, 10, cap=100)


# ---------------------------------------------------------------------------
# growth sequences

def test_su2_growth_matches_cubic_formula_exactly():
    seq = qg.growth_sequence(SU2, U1, qg.vector_dim(), 200)
    assert seq.values == [su2_cubic(n) for n in range(201)]
    assert all(isinstance(v, int) for v in seq.values)


def test_growth_at_zero_is_one():
    seq = qg.growth_sequence(SU2, U1, qg.vector_dim(), 0)
    assert seq.values == [1]


def test_torus_d1_growth_2n_plus_1():
    ring = qg.load_ring("torus:d=1")
    gen = RepVector({(1,): 1, (-1,): 1})
    seq = qg.growth_sequence(ring, gen, qg.vector_dim(), 50)
    assert seq.values == [2 * n + 1 for n in range(51)]


def test_torus_d3_growth_matches_closed_form():
    ring = qg.load_ring("torus:d=3")
    gen = RepVector({(1, 0, 0): 1, (-1, 0, 0): 1, (0, 1, 0): 1,
                     (0, -1, 0): 1, (0, 0, 1): 1, (0, 0, -1): 1})
    seq = qg.growth_sequence(ring, gen, qg.vector_dim(), 40)
    assert seq.values == [lattice_l1_ball(3, n) for n in range(41)]


def test_growth_monotone():
    for spec, gen in (("su2", U1), ("ao:n=3", U1),
                      ("heisenberg", RepVector({(1, 0, 0): 1, (-1, 0, 0): 1,
                                                (0, 1, 0): 1, (0, -1, 0): 1}))):
        ring = qg.load_ring(spec)
        seq = qg.growth_sequence(ring, gen, qg.vector_dim(), 25)
        assert all(a <= b for a, b in zip(seq.values, seq.values[1:]))


def test_vectorized_levels_equal_generic_levels():
    h = qg.load_ring("heisenberg")
    hgen = RepVector({(1, 0, 0): 1, (-1, 0, 0): 1, (0, 1, 0): 1, (0, -1, 0): 1})
    fast = _fast_level_counts(h, hgen, 14, 10 ** 7)
    slow = [len(level) for level in iter_ball_levels(h, hgen, 14)]
    assert fast == slow
    t = qg.load_ring("torus:d=2")
    tgen = RepVector({(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})
    fast = _fast_level_counts(t, tgen, 25, 10 ** 7)
    slow = [len(level) for level in iter_ball_levels(t, tgen, 25)]
    assert fast == slow


def test_heisenberg_matches_independent_word_ball_bfs():
    """Lemma-level cross-check: the fusion ball of the Heisenberg dual
    is the word ball of the group, computed here by a plain set BFS."""
    gens = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]

    def mul(x, y):
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    seen = {(0, 0, 0)}
    frontier = [(0, 0, 0)]
    counts = [1]
    for _ in range(12):
        new = []
        for x in frontier:
            for g in gens:
                w = mul(x, g)
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        counts.append(counts[-1] + len(new))
        frontier = new

    ring = qg.load_ring("heisenberg")
    gen = RepVector({g: 1 for g in gens})
    seq = qg.growth_sequence(ring, gen, qg.vector_dim(), 12)
    assert seq.values == counts


def test_group_dual_growth_equals_word_ball_on_mult_table(tmp_path):
    """For finite group duals, b(u, n) with the vector dimension counts
    the word ball of supp(u) in the group: checked against a direct BFS
    over the multiplication table."""
    import json
    # S3 as permutation composition table
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    names = ["e", "r", "r2", "s", "sr", "sr2"]

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    table = [[perms.index(compose(p, q)) for q in perms] for p in perms]
    path = tmp_path / "s3.json"
    path.write_text(json.dumps({"elements": names, "mult_table": table}))
    ring = qg.load_ring(f"group-dual:file={path}")

    gens = ["r", "s"]
    seen = {"e"}
    frontier = ["e"]
    counts = [1]
    for _ in range(4):
        new = []
        for x in frontier:
            for g in gens:
                w = names[table[names.index(x)][names.index(g)]]
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        counts.append(counts[-1] + len(new))
        frontier = new

    seq = qg.growth_sequence(ring, RepVector({"r": 1, "s": 1}),
                             qg.vector_dim(), 4)
    assert seq.values == counts


# ---------------------------------------------------------------------------
# classification

def test_classify_su2_polynomial_gamma_3():
    seq = qg.growth_sequence(SU2, U1, qg.vector_dim(), 200)
    rep = qg.classify(seq)
    assert rep.classification == "Polynomial"
    assert rep.gamma == pytest.approx(3.0, abs=0.1)


def test_classify_free_exponential_rate_3():
    ring = qg.load_ring("free:k=2")
    gen = RepVector({"a": 1, "b": 1, "A": 1, "B": 1})
    seq = qg.growth_sequence(ring, gen, qg.vector_dim(), 11)
    rep = qg.classify(seq, min_len=8)
    assert rep.classification == "Exponential"
    assert rep.rate == pytest.approx(3.0, rel=0.01)


def test_classify_ao3_exponential():
    ring = qg.load_ring("ao:n=3")
    seq = qg.growth_sequence(ring, U1, qg.vector_dim(), 60)
    rep = qg.classify(seq)
    assert rep.classification == "Exponential"
    golden = ((3 + math.sqrt(5)) / 2) ** 2
    assert rep.rate == pytest.approx(golden, rel=0.02)


def test_classify_requires_min_length():
    seq = qg.growth_sequence(SU2, U1, qg.vector_dim(), 10)
    with pytest.raises(QGrowthError, match="too short"):
        qg.classify(seq)


def test_classify_scale_robust():
    seq1 = qg.growth_sequence(SU2, U1, qg.vector_dim(), 100)
    seq2 = qg.growth_sequence(SU2, 2 * U1, qg.vector_dim(), 100)
    assert (qg.classify(seq1).classification
            == qg.classify(seq2).classification == "Polynomial")
    ring = qg.load_ring("free:k=2")
    gen = RepVector({"a": 1, "b": 1, "A": 1, "B": 1})
    s1 = qg.growth_sequence(ring, gen, qg.vector_dim(), 11)
    s2 = qg.growth_sequence(ring, 2 * gen, qg.vector_dim(), 11)
    assert (qg.classify(s1, min_len=8).classification
            == qg.classify(s2, min_len=8).classification == "Exponential")


def test_classify_trivial_generator_polynomial_degree_zero():
    seq = qg.growth_sequence(SU2, RepVector({0: 1}), qg.vector_dim(), 40)
    rep = qg.classify(seq)
    assert rep.classification == "Polynomial"
    assert rep.gamma == pytest.approx(0.0, abs=1e-9)


# ---------------------------------------------------------------------------
# exponent fits

def test_gk_fit_su2_500():
    seq = qg.growth_sequence(SU2, U1, qg.vector_dim(), 500)
    gamma, diag = qg.gk_fit(seq)
    assert gamma == pytest.approx(3.0, abs=0.1)
    assert diag["stderr"] < 0.05


def test_gk_fit_torus_d3():
    ring = qg.load_ring("torus:d=3")
    gen = RepVector({(1, 0, 0): 1, (-1, 0, 0): 1, (0, 1, 0): 1,
                     (0, -1, 0): 1, (0, 0, 1): 1, (0, 0, -1): 1})
    seq = qg.growth_sequence(ring, gen, qg.vector_dim(), 120)
    gamma, _ = qg.gk_fit(seq)
    assert gamma == pytest.approx(3.0, abs=0.05)


def test_gk_fit_heisenberg_bass_rank_4():
    ring = qg.load_ring("heisenberg")
    gen = RepVector({(1, 0, 0): 1, (-1, 0, 0): 1, (0, 1, 0): 1, (0, -1, 0): 1})
    seq = qg.growth_sequence(ring, gen, qg.vector_dim(), 60)
    gamma, _ = qg.gk_fit(seq)
    assert gamma == pytest.approx(4.0, abs=0.3)


def test_gk_fit_refuses_exponential_without_force():
    ring = qg.load_ring("ao:n=3")
    seq = qg.growth_sequence(ring, U1, qg.vector_dim(), 60)
    with pytest.raises(QGrowthError, match="polynomial"):
        qg.gk_fit(seq)
    gamma, _ = qg.gk_fit(seq, force=True)
    assert gamma > 10  # meaningless fit, but forced


def test_subring_growth_monotone_under_inclusion():
    """Fitted exponent of the even subring with generator u2 stays within
    stderr of the full su2 exponent with generator u1 (both are 3)."""
    sub = qg.subring_generated(SU2, [2], cap=2000)
    seq_sub = qg.growth_sequence(sub, RepVector({2: 1}), qg.vector_dim(), 300)
    seq_full = qg.growth_sequence(SU2, U1, qg.vector_dim(), 300)
    g_sub, d_sub = qg.gk_fit(seq_sub)
    g_full, d_full = qg.gk_fit(seq_full)
    tol = 3 * (d_sub["stderr"] + d_full["stderr"]) + 0.05
    assert g_sub <= g_full + tol
    assert g_sub == pytest.approx(3.0, abs=0.1)
    assert g_full == pytest.approx(3.0, abs=0.1)


# ---------------------------------------------------------------------------
# strict growth constants

def test_strict_growth_su2_cubic():
    seq = qg.growth_sequence(SU2, U1, qg.vector_dim(), 500)
    res = qg.strict_growth_constants(seq, 3.0, n_lo=50, n_hi=500)
    assert res.c >= 1 / 6
    assert res.d <= 2
    assert res.ratio < 20


def test_strict_growth_wrong_exponent_fails():
    # the b/n^2 ratio grows linearly; over a long window it blows past
    # the default stability bound
    seq = qg.growth_sequence(SU2, U1, qg.vector_dim(), 20000)
    with pytest.raises(StrictGrowthError):
        qg.strict_growth_constants(seq, 2.0)
    res = qg.strict_growth_constants(seq, 3.0)
    assert res.ratio < 2


def test_strict_growth_torus_linear():
    ring = qg.load_ring("torus:d=1")
    gen = RepVector({(1,): 1, (-1,): 1})
    seq = qg.growth_sequence(ring, gen, qg.vector_dim(), 400)
    res = qg.strict_growth_constants(seq, 1.0)
    assert res.c == pytest.approx(2.0, abs=0.2)
    assert res.d == pytest.approx(2.0, abs=0.2)


# ---------------------------------------------------------------------------
# trivial multiplicities and the coamenability witness

def test_trivial_multiplicity_catalan():
    expected = {2: 1, 4: 2, 6: 5}
    for k, ck in expected.items():
        assert qg.trivial_multiplicity(SU2, U1, k) == ck
        assert ballot_paths(k) == ck  # oracle agrees


def test_trivial_multiplicity_catalan_against_ballot_oracle():
    for k in range(0, 26, 2):
        assert qg.trivial_multiplicity(SU2, U1, k) == ballot_paths(k)


def test_trivial_multiplicity_odd_power_zero():
    assert qg.trivial_multiplicity(SU2, U1, 1) == 0
    assert qg.trivial_multiplicity(SU2, U1, 7) == 0


def test_trivial_multiplicity_torus_central_binomial():
    ring = qg.load_ring("torus:d=1")
    gen = RepVector({(1,): 1, (-1,): 1})
    assert qg.trivial_multiplicity(ring, gen, 2) == 2
    for k in range(0, 12, 2):
        assert qg.trivial_multiplicity(ring, gen, k) == math.comb(k, k // 2)


def test_coamenability_witness_su2_approaches_2():
    rep = qg.coamenability_witness(SU2, U1, 50)
    assert rep.dim_u == 2.0
    assert all(r2 >= r1 - 1e-12 for r1, r2 in zip(rep.running_max,
                                                  rep.running_max[1:]))
    assert rep.running_max[-1] >= 1.8
    assert rep.roots[-1] < 2.0


def test_coamenability_witness_torus():
    ring = qg.load_ring("torus:d=1")
    gen = RepVector({(1,): 1, (-1,): 1})
    rep = qg.coamenability_witness(ring, gen, 40)
    assert rep.running_max[-1] >= 1.75
    assert rep.dim_u == 2.0


def test_coamenability_witness_unit_constant_one():
    rep = qg.coamenability_witness(SU2, RepVector({0: 1}), 5)
    assert rep.roots == [1.0] * 5
    assert rep.gap == 0.0


def test_coamenability_requires_self_conjugate():
    ring = qg.load_ring("torus:d=1")
    with pytest.raises(QGrowthError, match="self-conjugate"):
        qg.coamenability_witness(ring, RepVector({(1,): 1}), 3)
