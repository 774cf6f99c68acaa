from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chevkit.rings import ZMod, quotient_ideal
from chevkit.transvections import (
    X,
    elementary,
    eye,
    linear_root_pairs,
    make_unimodular_samples,
    mat_eq,
    matmul,
    sign_character_matrix,
    sign_character_solve,
    transvection,
    vdk_generator_map_check,
    verify_ap_relations,
)

Z4 = ZMod(4)


@given(st.integers(0, 2**32))
def test_transvection_matches_numpy(seed):
    rng = random.Random(seed)
    p = make_unimodular_samples(Z4, 4, 1, rng=rng)[0]
    dense = (np.eye(4, dtype=np.int64) + np.outer(p.v, p.u)) % 4
    assert np.array_equal(np.array(X(Z4, p.v, p.u)), dense)
    assert transvection(Z4, p.v, p.u).verify(Z4)


def test_elementary_is_a_transvection():
    e = [[1 if k == i else 0 for k in range(5)] for i in range(5)]
    assert mat_eq(Z4, elementary(Z4, 5, 1, 3, 3), X(Z4, e[1], [3 * x for x in e[3]]))


@pytest.mark.parametrize("mode", ["orbit", "raw"])
def test_unimodular_samples_check(mode):
    ring = ZMod(9)
    ideal = quotient_ideal(ring, "3")
    pairs = make_unimodular_samples(ring, 4, 20, mode=mode, rng=random.Random(1), ideal=ideal)
    assert all(p.check(ring, ideal) for p in pairs)
    assert all(all(x % 3 == 0 for x in p.u) for p in pairs)


def test_unknown_sampling_mode():
    with pytest.raises(ValueError):
        make_unimodular_samples(Z4, 3, 1, mode="bogus")


@pytest.mark.parametrize("ring,tok", [(ZMod(3), None), (ZMod(4), None), (ZMod(4), "2"), (ZMod(6), "3")])
def test_ap_relations(ring, tok):
    ideal = quotient_ideal(ring, tok) if tok else None
    r = verify_ap_relations(ring, n=4, samples=20, rng=random.Random(0), ideal=ideal)
    assert r.ok and r.cases >= 60


def test_linear_root_pairs_cover_a_n():
    pairs, index = linear_root_pairs(5)
    assert len(pairs) == 20 and sorted(index.values()) == list(range(20))


def test_sign_character():
    m = sign_character_matrix(5)
    assert m is not None
    off = m[~np.eye(5, dtype=bool)]
    assert set(off.tolist()) <= {1, -1}
    assert sign_character_solve(4) is not None


def test_vdk_map_small():
    r = vdk_generator_map_check(ZMod(3), n=4, samples=8, rng=random.Random(0))
    assert r.ok and r.cases > 0


def test_elementary_matrices_multiply_like_steinberg_generators():
    # [e + a E_12, e + b E_23] = e + ab E_13
    a, b = 3, 2
    x, y = elementary(Z4, 3, 0, 1, a), elementary(Z4, 3, 1, 2, b)
    xi, yi = elementary(Z4, 3, 0, 1, -a % 4), elementary(Z4, 3, 1, 2, -b % 4)
    comm = matmul(Z4, matmul(Z4, matmul(Z4, x, y), xi), yi)
    assert mat_eq(Z4, comm, elementary(Z4, 3, 0, 2, a * b % 4))
    assert mat_eq(Z4, matmul(Z4, x, xi), eye(Z4, 3))
