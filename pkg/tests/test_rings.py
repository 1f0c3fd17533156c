"""Fusion-ring data model: builtin families, files, validation, Kac tests."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qgrowth as qg
from qgrowth import RepVector
from qgrowth.errors import (
    EnumerationCapError,
    QGrowthError,
    SpecError,
    UnknownIrrepError,
)
from qgrowth.rings.registry import format_generator, split_outside_parens


# ---------------------------------------------------------------------------
# registry and builtin families

def test_su2_registry_dims():
    ring = qg.load_ring("su2")
    assert [ring.irrep(n).dim for n in range(6)] == [1, 2, 3, 4, 5, 6]
    assert ring.unit == 0
    assert ring.irrep(3).conj == 3


def test_torus_d1_is_integer_lattice():
    ring = qg.load_ring("torus:d=1")
    assert ring.fuse((2,), (3,)) == {(5,): 1}
    assert ring.irrep((7,)).dim == 1
    assert ring.irrep((5,)).conj == (-5,)


def test_ao3_chebyshev_dimension_sequence():
    ring = qg.load_ring("ao:n=3")
    assert [ring.irrep(k).dim for k in range(5)] == [1, 3, 8, 21, 55]
    # Kac normalisation ships qdim = dim
    assert [ring.irrep(k).qdim for k in range(5)] == [1, 3, 8, 21, 55]


def test_su2q_quantum_dimensions():
    ring = qg.load_ring("su2q:q=0.5")
    assert ring.irrep(1).qdim == 2.5  # q + 1/q at q = 1/2, exact in binary
    # stable recursion against the closed form
    q = 0.5
    for n in range(1, 30):
        closed = (q ** (n + 1) - q ** -(n + 1)) / (q - 1 / q)
        assert ring.irrep(n).qdim == pytest.approx(closed, rel=1e-12)
    assert ring.irrep(4).dim == 5


def test_registry_rejects_unknown_and_bad_params():
    with pytest.raises(SpecError):
        qg.load_ring("nope")
    with pytest.raises(SpecError):
        qg.load_ring("su2q:q=1.5")
    with pytest.raises(SpecError):
        qg.load_ring("ao:n=1")
    with pytest.raises(SpecError):
        qg.load_ring("torus:d=x")


def test_fuse_su2_and_unit_axiom():
    ring = qg.load_ring("su2")
    assert ring.fuse(1, 1) == {0: 1, 2: 1}
    assert ring.fuse(0, 4) == {4: 1}
    assert ring.fuse(2, 3) == {1: 1, 3: 1, 5: 1}
    with pytest.raises(UnknownIrrepError):
        ring.fuse(-1, 2)


def test_torus_d2_fuse_is_group_law():
    ring = qg.load_ring("torus:d=2")
    assert ring.fuse((1, 0), (0, 1)) == {(1, 1): 1}


def test_tensor_bilinearity_su2():
    ring = qg.load_ring("su2")
    out = qg.tensor(ring, RepVector({1: 2}), RepVector({1: 1}))
    assert out == RepVector({0: 2, 2: 2})
    a = RepVector({3: 2, 1: 1})
    assert qg.tensor(ring, a, RepVector({0: 1})) == a


def test_tensor_free_reduced_words():
    ring = qg.load_ring("free:k=2")
    out = qg.tensor(ring, RepVector({"a": 1, "A": 1}), RepVector({"b": 1}))
    assert out == RepVector({"ab": 1, "Ab": 1})
    # cancellation at the junction
    assert ring.fuse("ab", "Ba") == {"aa": 1}


def test_conjugate_su2_self_conjugacy_via_frobenius():
    ring = qg.load_ring("su2")
    assert qg.conjugate(ring, RepVector({3: 1})) == RepVector({3: 1})
    # independent witness: N(u3, u3 -> unit) = 1
    assert ring.fuse(3, 3).get(0) == 1


def test_conjugate_torus_and_involution():
    ring = qg.load_ring("torus:d=1")
    a = RepVector({(5,): 1, (-2,): 3})
    assert qg.conjugate(ring, a) == RepVector({(-5,): 1, (2,): 3})
    assert qg.conjugate(ring, qg.conjugate(ring, a)) == a


def test_heisenberg_group_law_and_inverse():
    ring = qg.load_ring("heisenberg")
    x, y = (1, 0, 0), (0, 1, 0)
    assert ring.fuse(x, y) == {(1, 1, 1): 1}
    assert ring.fuse(y, x) == {(1, 1, 0): 1}
    g = (2, -3, 5)
    inv = ring.irrep(g).conj
    assert ring.fuse(g, inv) == {(0, 0, 0): 1}
    assert ring.fuse(inv, g) == {(0, 0, 0): 1}


# ---------------------------------------------------------------------------
# products and subrings

def test_product_dims_multiply():
    p = qg.load_ring("product:su2+su2")
    assert p.irrep((1, 1)).dim == 4
    assert p.irrep((2, 3)).dim == 12
    assert p.unit == (0, 0)


def test_product_of_circles_matches_torus2():
    p = qg.load_ring("product:torus:d=1+torus:d=1")
    t2 = qg.load_ring("torus:d=2")
    # the bijection ((a,), (b,)) <-> (a, b) preserves fusion
    for a in range(-2, 3):
        for b in range(-2, 3):
            pa = ((a,), (b,))
            for c in range(-2, 3):
                for d in range(-2, 3):
                    pb = ((c,), (d,))
                    lhs = p.fuse(pa, pb)
                    rhs = t2.fuse((a, b), (c, d))
                    assert {(x[0][0], x[1][0]) for x in lhs} == set(rhs)


def test_subring_su2_even_indices():
    ring = qg.load_ring("su2")
    sub = qg.subring_generated(ring, [2])
    first = sub.first_irreps(6)
    assert first == [0, 2, 4, 6, 8, 10]
    assert sub.contains(4)


def test_subring_unit_only_is_trivial():
    ring = qg.load_ring("su2")
    sub = qg.subring_generated(ring, [0])
    assert sub.first_irreps(3) == [0]
    assert sub.size() == 1


def test_subring_torus_sublattice():
    ring = qg.load_ring("torus:d=2")
    sub = qg.subring_generated(ring, [(2, 0), (0, 1)])
    sample = sub.first_irreps(40)
    assert all(a % 2 == 0 for (a, b) in sample)
    assert (2, 1) in set(sample) or sub.contains((2, 1))
    # closure: fusing stays inside (membership check cannot fail)
    for u in sample[:6]:
        for v in sample[:6]:
            (w,) = sub.fuse(u, v)
            assert w[0] % 2 == 0


def test_subring_closure_cap():
    ring = qg.load_ring("su2")
    sub = qg.subring_generated(ring, [2], cap=5)
    with pytest.raises(EnumerationCapError):
        sub.first_irreps(10)


# ---------------------------------------------------------------------------
# validation

def test_validate_builtin_rings_clean():
    for spec in ("su2", "so3", "su2q:q=0.5", "ao:n=3", "torus:d=2",
                 "free:k=2", "heisenberg"):
        report = qg.validate_ring(qg.load_ring(spec), 12)
        assert report.ok, f"{spec}: {report}"


def _tiny_ring_json(tmp_path, *, break_frobenius=False, break_dims=False):
    """Z/2-like two-irrep ring, optionally with a planted violation."""
    irreps = [
        {"id": "e", "dim": 1, "conj": "e"},
        {"id": "g", "dim": 1, "conj": "g"},
    ]
    fusion = [
        {"left": "e", "right": "e", "out": {"e": 1}},
        {"left": "e", "right": "g", "out": {"g": 1}},
        {"left": "g", "right": "e", "out": {"g": 1}},
        {"left": "g", "right": "g", "out": {"e": 1}},
    ]
    if break_frobenius:
        # g (x) g -> g contradicts N(u, v -> unit) = delta(v, conj u)
        fusion[3]["out"] = {"g": 1}
    if break_dims:
        irreps[1]["dim"] = 2
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(
        {"unit": "e", "irreps": irreps, "fusion": fusion}))
    return path


def test_file_ring_roundtrip(tmp_path):
    ring = qg.load_ring(f"file:{_tiny_ring_json(tmp_path)}")
    assert ring.size() == 2
    assert ring.fuse("g", "g") == {"e": 1}
    assert qg.validate_ring(ring, 2).ok


def test_file_ring_frobenius_violation_reported(tmp_path):
    ring = qg.load_ring(f"file:{_tiny_ring_json(tmp_path, break_frobenius=True)}")
    report = qg.validate_ring(ring, 2)
    assert not report.ok
    assert any(v.rule.startswith("frobenius") for v in report.violations)
    witnesses = [v.witness for v in report.violations
                 if v.rule == "frobenius-unit"]
    assert ("g", "g") in witnesses


def test_file_ring_multiplicativity_violation_reported(tmp_path):
    ring = qg.load_ring(f"file:{_tiny_ring_json(tmp_path, break_dims=True)}")
    report = qg.validate_ring(ring, 2)
    assert any(v.rule == "multiplicativity-vector" for v in report.violations)


def test_file_ring_missing_fusion_entry_is_error(tmp_path):
    path = tmp_path / "partial.json"
    path.write_text(json.dumps({
        "unit": "e",
        "irreps": [{"id": "e", "dim": 1, "conj": "e"},
                   {"id": "g", "dim": 1, "conj": "g"}],
        "fusion": [{"left": "e", "right": "e", "out": {"e": 1}}],
    }))
    with pytest.raises(SpecError):
        qg.load_ring(f"file:{path}")


def test_malformed_file_is_spec_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SpecError):
        qg.load_ring(f"file:{path}")


def test_group_dual_from_file(tmp_path):
    # Z/3 by its multiplication table
    path = tmp_path / "z3.json"
    path.write_text(json.dumps({
        "elements": ["e", "g", "g2"],
        "mult_table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
    }))
    ring = qg.load_ring(f"group-dual:file={path}")
    assert ring.size() == 3
    assert ring.fuse("g", "g") == {"g2": 1}
    assert ring.irrep("g").conj == "g2"
    assert qg.validate_ring(ring, 3).ok


# ---------------------------------------------------------------------------
# Kac detection and dominance

def test_is_kac_su2_true():
    ring = qg.load_ring("su2")
    assert qg.is_kac(ring, RepVector({1: 1}), 6)


def test_is_kac_su2q_false_with_exact_qdim():
    ring = qg.load_ring("su2q:q=0.5")
    assert ring.irrep(1).qdim == 2.5
    assert not qg.is_kac(ring, RepVector({1: 1}), 1)


def test_is_kac_ao3_true():
    ring = qg.load_ring("ao:n=3")
    assert qg.is_kac(ring, RepVector({1: 1}), 4)


def test_dominance_su2q_quantum_over_vector():
    ring = qg.load_ring("su2q:q=0.5")
    rep = qg.dominance_check(ring, qg.vector_dim(), qg.quantum_dim(),
                             RepVector({1: 1}), 50)
    assert rep.ok
    assert rep.min_margin >= 0.0


def test_dominance_equal_functions_zero_margin():
    ring = qg.load_ring("su2")
    rep = qg.dominance_check(ring, qg.vector_dim(), qg.vector_dim(),
                             RepVector({1: 1}), 40)
    assert rep.ok
    assert rep.min_margin == 0


def test_dominance_rejects_non_multiplicative_table():
    ring = qg.load_ring("su2")
    table = {n: float(n + 1) for n in range(60)}
    table[1] = 1.5  # below the vector dimension; breaks multiplicativity
    with pytest.raises(QGrowthError, match="multiplicative"):
        qg.dominance_check(ring, qg.vector_dim(), qg.custom_dim(table),
                           RepVector({1: 1}), 40)


# ---------------------------------------------------------------------------
# generator parsing

def test_parse_generator_su2():
    ring = qg.load_ring("su2")
    gen = qg.parse_generator(ring, "u1:1,u2:3")
    assert gen == RepVector({1: 1, 2: 3})
    assert format_generator(ring, gen) == "u1:1,u2:3"


def test_parse_generator_torus_commas_inside_parens():
    ring = qg.load_ring("torus:d=2")
    gen = qg.parse_generator(ring, "(1,0):1,(0,1):2")
    assert gen == RepVector({(1, 0): 1, (0, 1): 2})


def test_parse_generator_free_words():
    ring = qg.load_ring("free:k=2")
    gen = qg.parse_generator(ring, "a:1,b:1,A:1,B:1")
    assert gen.total() == 4


def test_split_outside_parens():
    assert split_outside_parens("(1,2):1,(3,4):2") == ["(1,2):1", "(3,4):2"]
    with pytest.raises(SpecError):
        split_outside_parens("(1,2")


# ---------------------------------------------------------------------------
# property tests

@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
                min_size=1, max_size=5))
@settings(max_examples=50, deadline=None)
def test_torus_conjugation_involutive(points):
    ring = qg.load_ring("torus:d=2")
    a = RepVector({p: i + 1 for i, p in enumerate(points)})
    assert qg.conjugate(ring, qg.conjugate(ring, a)) == a


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
@settings(max_examples=60, deadline=None)
def test_su2_fusion_associative(a, b, c):
    ring = qg.load_ring("su2")
    lhs = qg.tensor(ring, RepVector(ring.fuse(a, b)), RepVector({c: 1}))
    rhs = qg.tensor(ring, RepVector({a: 1}), RepVector(ring.fuse(b, c)))
    assert lhs == rhs


@given(st.lists(st.sampled_from("abAB"), max_size=8),
       st.lists(st.sampled_from("abAB"), max_size=8))
@settings(max_examples=80, deadline=None)
def test_free_word_product_inverse(letters_x, letters_y):
    from qgrowth.rings.families import FreeGroup
    grp = FreeGroup(2)
    x = "".join(letters_x)
    y = "".join(letters_y)
    # reduce via repeated right multiplication by single letters
    rx = ""
    for c in x:
        rx = grp.mul(rx, c)
    ry = ""
    for c in y:
        ry = grp.mul(ry, c)
    prod = grp.mul(rx, ry)
    assert grp.mul(prod, grp.inv(prod)) == ""
    assert grp.mul(grp.inv(rx), rx) == ""


def test_repvector_rejects_negative():
    with pytest.raises(ValueError):
        RepVector({1: -1})
