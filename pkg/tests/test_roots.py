from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chevkit.roots import (
    RootSystemError,
    additive_closure,
    closure,
    enumerate_subsystems,
    enumerate_subsystems_by_orbits,
    is_closed,
    levi_subsystem,
    parabolic_decompose,
    parse_system,
    phi_prime,
    reflect,
    span_subsystem,
    special_part,
    subsystem_type,
    weyl_orbits_on_subsystems,
)

# Coxeter numbers; |roots| = rank * h is an independent count.
COXETER = {"A2": 3, "A3": 4, "A4": 5, "D4": 6, "D5": 8, "D6": 10, "E6": 12, "E7": 18, "E8": 30}


@pytest.mark.parametrize("label", sorted(COXETER))
def test_root_count_matches_rank_times_coxeter_number(label):
    phi = parse_system(label)
    assert len(phi.roots) == phi.rank * COXETER[label]
    assert phi.npos * 2 == len(phi.roots)


@pytest.mark.parametrize("label", sorted(COXETER))
def test_highest_root_has_height_h_minus_one(label):
    phi = parse_system(label)
    assert sum(phi.roots[phi.max_root]) == COXETER[label] - 1


@pytest.mark.parametrize("label", ["A3", "D5", "E6"])
def test_tables_are_consistent(label):
    phi = parse_system(label)
    n = len(phi.roots)
    roots = np.array(phi.roots)
    assert np.all(np.diag(phi.gram) == 2)
    assert np.array_equal(roots[phi.neg], -roots)
    heights = roots[: phi.npos].sum(axis=1)
    assert np.all(heights > 0) and np.all(np.diff(heights) >= 0)
    for a in range(n):
        for b in range(n):
            s = phi.add_table[a, b]
            assert (s >= 0) == (phi.gram[a, b] == -1)
            if s >= 0:
                assert np.array_equal(roots[s], roots[a] + roots[b])


E6 = parse_system("E6")
root_e6 = st.integers(0, len(E6.roots) - 1)


@given(root_e6, root_e6, root_e6)
def test_reflections_are_isometric_involutions(a, b, c):
    rb, rc = reflect(E6, a, b), reflect(E6, a, c)
    assert reflect(E6, a, rb) == b
    assert E6.gram[rb, rc] == E6.gram[b, c]
    assert reflect(E6, a, a) == E6.neg[a]


def test_orthogonal_complement_types():
    # identify D2 = A1+A1 and D3 = A3
    expected = {"A3": "A1", "A4": "A2", "A5": "A3", "A6": "A4", "D4": "A1+A1+A1",
                "D5": "A1+A3", "D6": "A1+D4", "E6": "A5", "E7": "D6", "E8": "E7"}
    assert {k: phi_prime(parse_system(k)).type_string for k in expected} == expected


def _brute_a2_count(phi):
    found = set()
    for a in range(len(phi.roots)):
        for b in range(len(phi.roots)):
            s = phi.add_table[a, b]
            if s >= 0:
                found.add(frozenset({a, b, s, phi.neg[a], phi.neg[b], phi.neg[s]}))
    return len(found)


@pytest.mark.parametrize("label", ["A3", "D4", "E6"])
def test_a2_count_matches_brute_force(label):
    phi = parse_system(label)
    assert len(enumerate_subsystems(phi, 2)) == _brute_a2_count(phi)


@pytest.mark.parametrize("label,n", [("D5", 3), ("A5", 3), ("E6", 3), ("D6", 4)])
def test_enumeration_strategies_agree(label, n):
    phi = parse_system(label)
    assert sorted(enumerate_subsystems(phi, n)) == sorted(enumerate_subsystems_by_orbits(phi, n))


def test_a3_subsystems_of_a4_are_the_five_coordinate_deletions():
    assert len(enumerate_subsystems(parse_system("A4"), 3)) == 5


def test_d5_orbits_on_a3():
    assert sorted(weyl_orbits_on_subsystems(parse_system("D5"), 3)) == [10, 40]
    assert weyl_orbits_on_subsystems(E6, 3) == [270]


def test_containing_filter():
    subs = enumerate_subsystems(E6, 3, containing=0)
    assert subs and all(0 in s for s in subs)
    assert len(subs) * len(E6.roots) == len(enumerate_subsystems(E6, 3)) * 12


def test_span_and_closure():
    a, b = next((a, b) for a, b in combinations(range(E6.npos), 2) if E6.gram[a, b] == -1)
    assert span_subsystem(E6, [a, b]).type_string == "A2"
    assert len(closure(E6, [a, b])) == 6
    ortho = next(c for c in range(E6.npos) if E6.gram[a, c] == 0)
    assert subsystem_type(E6, closure(E6, [a, ortho])) == "A1+A1"


@pytest.mark.parametrize("k", range(6))
def test_parabolic_decomposition_of_standard_parabolics(k):
    s = levi_subsystem(E6, k) + special_part(E6, k)
    assert is_closed(E6, s)
    dec = parabolic_decompose(E6, s)
    neg = set(E6.neg[list(dec.special)].tolist())
    assert not neg & set(dec.special)
    assert set(E6.neg[list(dec.reductive)].tolist()) == set(dec.reductive)
    assert len(dec.special) + len(dec.reductive) == len(s)
    assert len(s) + len(dec.special) == len(E6.roots)


def test_additive_closure_is_closed():
    s = additive_closure(E6, [0, 1, 2])
    assert is_closed(E6, s)


@pytest.mark.parametrize("label", ["B3", "A0", "E9", "D3", "x", ""])
def test_bad_labels_raise(label):
    with pytest.raises(RootSystemError):
        parse_system(label)
