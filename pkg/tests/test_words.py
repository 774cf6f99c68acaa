from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chevkit.chevalley import algebra_for
from chevkit.rings import PolyQuotient, ZMod, quotient_ideal
from chevkit.roots import enumerate_subsystems, parse_system
from chevkit.words import (
    RelativeContext,
    commutator,
    embed_word,
    embedding_commutes,
    empty_word,
    factor_titslemma2,
    free_reduce,
    glue_t_triples,
    letter,
    map_word,
    phi_eval,
    random_word,
    restrict_word,
    sub_algebra,
    verify_beta_chain,
    verify_beta_specializations,
    verify_glue_t_identity,
    verify_swan_relations,
    verify_titslemma2,
    verify_u_pm_decomposition,
    verify_zrels,
    words_equal,
)

A2, A3 = parse_system("A2"), parse_system("A3")
Z4, Z8 = ZMod(4), ZMod(8)
ALG = algebra_for(A3)


@given(st.integers(0, 2**32), st.integers(0, 8))
def test_free_reduction_preserves_image(seed, length):
    w = random_word(A3, Z4, length, random.Random(seed), roots=[0, 1, 6])
    assert phi_eval(free_reduce(w), ALG) == phi_eval(w, ALG)
    assert len(free_reduce(w)) <= len(w)


@given(st.integers(0, 2**32))
def test_inverse_and_commutator_images(seed):
    rng = random.Random(seed)
    u, v = random_word(A3, Z4, 3, rng), random_word(A3, Z4, 3, rng)
    assert phi_eval(u * u.inverse(), ALG).is_identity()
    mu, mv = phi_eval(u, ALG), phi_eval(v, ALG)
    mui, mvi = phi_eval(u.inverse(), ALG), phi_eval(v.inverse(), ALG)
    assert phi_eval(commutator(u, v), ALG) == mu @ mv @ mui @ mvi


def test_words_equal_is_letterwise():
    x = letter(A3, Z4, 0, 1)
    assert words_equal(x * x, letter(A3, Z4, 0, 2))
    assert words_equal(x * x.inverse(), empty_word(A3, Z4))
    assert not words_equal(x, letter(A3, Z4, 1, 1))


def test_map_word_commutes_with_evaluation():
    ring = Z8
    pi = quotient_ideal(ring, "4").quotient
    w = random_word(A3, ring, 5, random.Random(3))
    lhs = phi_eval(map_word(pi, w), ALG)
    rhs = phi_eval(w, ALG)
    assert all(lhs.ring.eq(lhs.entry(i, j), pi(rhs.entry(i, j))) for i in range(ALG.dim) for j in range(ALG.dim))


def test_support_is_enforced():
    sub = enumerate_subsystems(A3, 2)[0]
    w = restrict_word(letter(A3, Z4, sub[0], 1), sub)
    assert embed_word(w).support is None
    outside = next(r for r in range(12) if r not in sub)
    with pytest.raises(ValueError):
        restrict_word(letter(A3, Z4, outside, 1), sub)


@pytest.mark.parametrize("label,n", [("A3", 2), ("D4", 3), ("E6", 3)])
def test_subsystem_embedding_commutes(label, n):
    phi = parse_system(label)
    alg = algebra_for(phi)
    sub = enumerate_subsystems(phi, n)[0]
    sa = sub_algebra(alg, sub)
    rng = random.Random(1)
    letters = [(rng.randrange(sa.algebra.nroots), rng.randrange(1, 4), rng.choice((1, -1))) for _ in range(4)]
    assert embedding_commutes(sa, Z4, letters)


def test_relative_letters_reject_outside_ideal():
    ctx = RelativeContext(A3, Z4, quotient_ideal(Z4, "2"))
    with pytest.raises(ValueError):
        ctx.y(0, 1)
    assert phi_eval(ctx.p2(ctx.y(0, 2)), ALG) == phi_eval(ctx.x(0, 2), ALG)


def test_titslemma2_factorization_shape():
    k = PolyQuotient(ZMod(2), (0, 0, 1), "x")
    ctx = RelativeContext(A3, k, quotient_ideal(k, "x"))
    factors = factor_titslemma2(ctx, 0, k.gen(), k.one)
    assert len(factors) == 3


def test_glue_t_triples_are_summable():
    for a, b, g in glue_t_triples(A3):
        assert A3.add_table[b, a] == g and ALG.table(b, a) == 1


def test_relative_suites_small():
    ideal = quotient_ideal(Z4, "2")
    rng = random.Random(0)
    assert verify_zrels(A3, Z4, ideal, samples=4, rng=rng, pair_limit=12).ok
    assert verify_swan_relations(A3, Z4, ideal, samples=4, rng=rng, pair_limit=12).ok
    k = PolyQuotient(ZMod(2), (0, 0, 1), "x")
    assert verify_titslemma2(A3, k, quotient_ideal(k, "x"), samples=8, rng=rng).ok
    assert verify_glue_t_identity(A2, Z4, samples=16, rng=rng).ok


def test_beta_chain_small():
    r = verify_beta_chain(A3, Z8, 2, 3, 1, 2, 7, words=4, rng=random.Random(2), matrix_checks=1)
    assert r.ok and r.cases == 4
    assert verify_beta_specializations(A3, Z8, 2, 3, 1, 2, 7, words=2, rng=random.Random(2)).ok


def test_u_pm_small():
    assert verify_u_pm_decomposition(A3, 1, ZMod(5), samples=5, rng=random.Random(0)).ok
