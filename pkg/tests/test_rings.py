from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chevkit.ring_checks import (
    verify_colimit,
    verify_double,
    verify_eval_chain,
    verify_localization,
    verify_ring_axioms,
    verify_theta,
)
from chevkit.rings import (
    DoubleRing,
    IntegerRing,
    Localization,
    PolyQuotient,
    PolyRing,
    ProductRing,
    RingError,
    ZMod,
    check_hom,
    localize,
    maximal_localizations,
    parse_ring,
    quotient_ideal,
    sample_pairs,
    split_double_iso,
)

DESCRIPTORS = [
    "int", "zmod:4", "zmod:12", "poly:zmod:4:t", "poly:int:x", "loc:int:2", "loc:zmod:12:2",
    "quot:poly:zmod:2:x:x^2", "quot:poly:zmod:3:x:x^3", "double:zmod:4:2", "double:int:6",
    "semi:zmod:4:2", "semi:int:tloc2", "semi:zmod:12:tloc2", "double:quot:poly:zmod:2:x:x^2:x",
]
RINGS = {d: parse_ring(d) for d in DESCRIPTORS}


@pytest.mark.parametrize("desc", DESCRIPTORS)
def test_descriptor_round_trip(desc):
    assert RINGS[desc].descriptor == desc


@given(st.sampled_from(DESCRIPTORS), st.integers(0, 2**32))
def test_ring_axioms_on_samples(desc, seed):
    ring = RINGS[desc]
    rng = random.Random(seed)
    x, y, z = (ring.random(rng) for _ in range(3))
    R = ring
    assert R.eq(R.add(x, y), R.add(y, x))
    assert R.eq(R.mul(x, y), R.mul(y, x))
    assert R.eq(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z)))
    assert R.eq(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z)))
    assert R.is_zero(R.sub(x, x))
    assert R.eq(R.mul(R.one, x), x)
    assert not R.eq(R.one, R.zero)


@pytest.mark.parametrize("desc", ["zmod:6", "loc:zmod:12:2", "quot:poly:zmod:2:x:x^2", "double:zmod:4:2"])
def test_bulk_axioms(desc):
    assert verify_ring_axioms(RINGS.get(desc) or parse_ring(desc), random.Random(1), count=300).ok


def test_elem_operators():
    r = ZMod(7)
    x = r(3)
    assert x * 5 == 1 and x.inverse() == 5 and (x + 4) == 0 and x ** 6 == 1 and -x == 4


@pytest.mark.parametrize("desc", ["zmod:4", "loc:zmod:12:2", "quot:poly:zmod:2:x:x^2"])
def test_equality_is_an_equivalence(desc):
    r = RINGS[desc]
    els = list(r.elements())
    for x in els[:12]:
        assert r.eq(x, x)
        for y in els[:12]:
            assert r.eq(x, y) == r.eq(y, x)


def _brute_loc_eq(n, a, x, y):
    """``x0/a^k = y0/a^m`` in ``(Z/n)_a`` iff ``a^j (x0 a^m - y0 a^k) = 0`` for some ``j <= n``."""
    (x0, k), (y0, m) = x, y
    d = (x0 * a ** m - y0 * a ** k) % n
    return any(d * a ** j % n == 0 for j in range(n + 1))


@given(st.integers(0, 11), st.integers(0, 3), st.integers(0, 11), st.integers(0, 3))
def test_localization_equality_matches_brute_force(x0, k, y0, m):
    loc = RINGS["loc:zmod:12:2"]
    assert loc.eq((x0, k), (y0, m)) == _brute_loc_eq(12, 2, (x0, k), (y0, m))


def test_localization_examples():
    z12 = ZMod(12)
    loc, lam = localize(z12, 2)
    assert loc.is_zero(lam(3))
    assert loc.size == 3
    assert loc.is_unit(lam(2))
    with pytest.raises(RingError):
        Localization(ZMod(8), 2)
    _, lam_z = localize(IntegerRing(), 2)
    half = (1, 1)
    assert lam_z.target.eq(lam_z.target.mul(half, lam_z(2)), lam_z.target.one)


def test_annihilator_bound_on_product_ring():
    # 2-torsion in F2[x]/(x^8) x F2 needs the full nilpotency length of x
    f2 = ZMod(2)
    q = PolyQuotient(f2, (0,) * 8 + (1,), "x")
    r = ProductRing(q, f2)
    a = (q.gen(), 1)
    loc = Localization(r, a)
    x = (q.pow(q.gen(), 0), 0)
    # a^7 x != 0 but a^8 x = 0
    assert not r.is_zero(r.mul(r.pow(a, 7), x)) and r.is_zero(r.mul(r.pow(a, 8), x))
    assert loc.is_zero((x, 0))


def test_maximal_localizations_of_z12():
    found = {p: f.target.n for p, f in maximal_localizations(ZMod(12))}
    assert found == {2: 4, 3: 3}


def test_ideal_membership_is_kernel():
    r = ZMod(12)
    ideal = quotient_ideal(r, "4")
    assert sorted(ideal.elements()) == [0, 4, 8]
    assert all(ideal.contains(g) for g in ideal.generators)
    p = PolyRing(ZMod(3), "x")
    ix = quotient_ideal(p, "x")
    assert ix.contains(p.gen()) and not ix.contains(p.one)
    assert ix.section is not None


@pytest.mark.parametrize("bad", ["", "zmod", "zmod:x", "poly:int", "foo:1", "double:zmod:4:y", "int:extra",
                                 "quot:poly:zmod:2:x:x^3:y"])
def test_bad_descriptors_raise(bad):
    with pytest.raises((RingError, ValueError)):
        parse_ring(bad)


def test_double_ring_payloads():
    d = RINGS["double:zmod:4:2"]
    els = list(d.elements())
    assert len(els) == 8
    assert all((a1 - a2) % 2 == 0 for a1, a2 in els)
    assert d.to_semi((3, 1)) == (3, 2)
    assert d.from_semi(3, 2) == (3, 1)


@given(st.integers(0, 2**32))
def test_diagonal_splits_projections(seed):
    d = RINGS["double:int:6"]
    rng = random.Random(seed)
    x = d.base.random(rng)
    assert d.p1(d.diag(x)) == x == d.p2(d.diag(x))


def test_split_iso_is_bijective_and_multiplicative():
    ring = PolyQuotient(ZMod(2), (0, 0, 1), "x")
    d = DoubleRing(ring, quotient_ideal(ring, "x"))
    target, fwd, back = split_double_iso(d)
    els = list(d.elements())
    assert len({fwd(x) for x in els}) == len(els) == 8
    assert check_hom(fwd, [(x, y) for x in els for y in els])[1] == []
    assert all(d.eq(back(fwd(x)), x) for x in els)


@pytest.mark.parametrize("desc,tok", [("zmod:4", "2"), ("zmod:12", "6"), ("quot:poly:zmod:3:x:x^2", "x"),
                                      ("poly:int:x", "x^2")])
def test_double_ring_suite(desc, tok):
    r = parse_ring(desc)
    assert verify_double(r, quotient_ideal(r, tok), random.Random(2), count=200).ok


@pytest.mark.parametrize("base", [IntegerRing(), ZMod(12), ZMod(20)])
def test_theta_and_evaluation(base):
    a = base.from_int(2)
    assert verify_theta(base, a, random.Random(3), count=50, hom_pairs=200).ok
    assert verify_eval_chain(base, a, random.Random(3), count=20).ok
    assert verify_localization(base, a, random.Random(3), count=200).ok


def test_colimit_small():
    r = verify_colimit(ZMod(12), 2, random.Random(4), samples=10)
    assert r.ok and r.details["preimages"] == 10


def test_sample_pairs_is_seeded():
    r = RINGS["poly:zmod:4:t"]
    assert sample_pairs(r, 5, random.Random(9)) == sample_pairs(r, 5, random.Random(9))
