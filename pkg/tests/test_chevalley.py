from __future__ import annotations

import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chevkit.chevalley import (
    LieMatrix,
    StructureError,
    StructureTable,
    algebra_for,
    audit_table,
    build_algebra,
    build_structure_table,
    compute_eta,
    elem_unipotent,
    preserves_bracket,
    radical_cases,
    verify_eta,
    verify_radical_action,
    verify_steinberg_relations,
    verify_structure,
    w_elem,
    w_elem_inverse,
)
from chevkit.rings import IntegerRing, PolyQuotient, ZMod, quotient_ideal
from chevkit.roots import parse_system

A2, A3, D4 = parse_system("A2"), parse_system("A3"), parse_system("D4")
Z = IntegerRing()


def test_a2_simple_root_bracket_sign():
    t = build_structure_table(A2)
    a1, a2 = 0, 1
    assert A2.roots[a1] == (1, 0) and A2.roots[a2] == (0, 1)
    assert t(a1, a2) == 1 and t(a2, a1) == -1


@pytest.mark.parametrize("label,dim", [("A2", 8), ("A3", 15), ("A4", 24), ("D4", 28), ("E6", 78)])
def test_dimension(label, dim):
    assert algebra_for(parse_system(label)).dim == dim


@pytest.mark.parametrize("label", ["A3", "D4", "D5", "E6"])
def test_table_audit(label):
    assert audit_table(build_structure_table(parse_system(label))) == []


def test_untwisted_cocycle_breaks_negation_rule():
    # the bare (-1)^B sign, without the positive/negative twist, is not a Chevalley table
    phi = D4
    base = build_structure_table(phi)
    x = phi.coords
    eps = np.where((x @ base.form @ x.T) % 2 == 0, 1, -1)
    raw = np.where(phi.add_table >= 0, eps, 0).astype(np.int8)
    assert audit_table(StructureTable(phi, raw, base.form))
    _, failures = build_algebra(phi, StructureTable(phi, raw, base.form), audit=False).jacobi_audit()
    assert failures


def test_broken_table_is_detected():
    t = build_structure_table(A3)
    a, b = map(int, np.argwhere(A3.add_table >= 0)[0])
    n = t.N.copy()
    n[a, b] *= -1
    n[b, a] *= -1
    n[A3.neg[a], A3.neg[b]] *= -1
    n[A3.neg[b], A3.neg[a]] *= -1
    broken = StructureTable(A3, n, t.form)
    assert audit_table(broken) == []
    with pytest.raises(StructureError):
        build_algebra(A3, broken)


def _dense_ad(alg):
    d = alg.dim
    ad = np.zeros((d, d, d), dtype=np.int64)
    for x in range(d):
        for y in range(d):
            for z, c in alg.bracket(x, y).items():
                ad[x, z, y] = c
    return ad


@pytest.mark.parametrize("label", ["A2", "A3"])
def test_jacobi_by_dense_triples(label):
    alg = algebra_for(parse_system(label))
    ad = _dense_ad(alg)
    d = alg.dim
    for x, y in product(range(d), repeat=2):
        br = np.zeros((d, d), dtype=np.int64)
        for z, c in alg.bracket(x, y).items():
            br += c * ad[z]
        assert np.array_equal(br, ad[x] @ ad[y] - ad[y] @ ad[x])
    assert alg.antisymmetry_audit() == []


@pytest.mark.parametrize("label", ["A3", "D4"])
def test_unipotent_matches_dense_exponential(label):
    alg = algebra_for(parse_system(label))
    ad = _dense_ad(alg)
    eye = np.eye(alg.dim, dtype=np.int64)
    for a in range(alg.nroots):
        x = ad[a]
        assert not np.any(x @ x @ x)
        half = x @ x
        assert not np.any(half % 2)
        for xi in (1, -2, 3):
            dense = eye + xi * x + xi * xi * (half // 2)
            assert np.array_equal(np.array(elem_unipotent(alg, Z, a, xi).to_dense()), dense)


alg_a3 = algebra_for(A3)
Z8 = ZMod(8)


@given(st.integers(0, 11), st.integers(0, 7), st.integers(0, 7))
def test_unipotent_additive(a, xi, eta):
    t = lambda r, v: elem_unipotent(alg_a3, Z8, r, v)  # noqa: E731
    assert t(a, xi) @ t(a, eta) == t(a, (xi + eta) % 8)
    assert (t(a, xi) @ t(a, (-xi) % 8)).is_identity()


@given(st.integers(0, 11), st.sampled_from([1, 3, 5, 7]))
def test_w_element_inverse_and_automorphism(a, xi):
    w = w_elem(alg_a3, Z8, a, xi)
    assert (w @ w_elem_inverse(alg_a3, Z8, a, xi)).is_identity()
    assert preserves_bracket(alg_a3, w) == []
    assert preserves_bracket(alg_a3, elem_unipotent(alg_a3, Z8, a, xi)) == []


def test_eta_values():
    r = verify_eta(A3)
    assert r.ok and r.cases == 144
    # w_a sends x_a(z) to x_-a(-z)
    assert compute_eta(alg_a3, 0, 0) == -1


def test_liematrix_product_matches_dense():
    rng = random.Random(5)
    m = LieMatrix.identity(Z8, alg_a3.dim)
    for _ in range(4):
        m = m @ elem_unipotent(alg_a3, Z8, rng.randrange(12), rng.randrange(8))
    dense = np.eye(alg_a3.dim, dtype=np.int64)
    rng = random.Random(5)
    for _ in range(4):
        dense = dense @ np.array(elem_unipotent(alg_a3, Z8, rng.randrange(12), rng.randrange(8)).to_dense()) % 8
    assert np.array_equal(np.array(m.to_dense()) % 8, dense % 8)


@pytest.mark.parametrize("ring", [ZMod(3), ZMod(4), PolyQuotient(ZMod(2), (0, 0, 1), "x")])
def test_steinberg_relations_a3(ring):
    r = verify_steinberg_relations(A3, ring)
    assert r.ok
    assert r.cases == (144 - 12) * ring.size ** 2


def test_commutator_sign_matters():
    ring = ZMod(3)
    a, b = map(int, np.argwhere(A3.add_table >= 0)[0])
    c = int(A3.add_table[a, b])
    t = lambda r, v: elem_unipotent(alg_a3, ring, r, v)  # noqa: E731
    n = alg_a3.table(a, b)
    assert t(a, 1) @ t(b, 1) == t(c, n % 3) @ t(b, 1) @ t(a, 1)
    assert not (t(a, 1) @ t(b, 1) == t(c, -n % 3) @ t(b, 1) @ t(a, 1))


def test_structure_report():
    r = verify_structure(D4)
    assert r.ok and r.details["dim"] == 28


@pytest.mark.parametrize("label", ["A4", "D5"])
def test_radical_action(label):
    phi = parse_system(label)
    ring = ZMod(4)
    cases = radical_cases(phi)
    assert set(cases) == ({"A4"} if label == "A4" else {"A4", "D4"})
    for psi, alpha in cases.values():
        assert verify_radical_action(phi, psi, alpha, ring, quotient_ideal(ring, "2"), samples=10).ok
