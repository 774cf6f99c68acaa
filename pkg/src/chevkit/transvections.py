"""Transvections ``e + v u`` over a ring and the relations among them.

Matrices are lists of rows of ring payloads; ``n`` is small (default 5), so
plain loops are enough.  Unimodularity is always certified by a witness row.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .chevalley import algebra_for
from .report import CheckReport, timed
from .rings import Ideal, Ring
from .roots import build_root_system

Matrix = list[list[Any]]
Vector = list[Any]


def eye(ring: Ring, n: int) -> Matrix:
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def matmul(ring: Ring, a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b[0]), len(b)
    add, mul, z = ring.add, ring.mul, ring.zero
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = z
            for t in range(k):
                acc = add(acc, mul(ai[t], b[t][j]))
            row.append(acc)
        out.append(row)
    return out


def matadd(ring: Ring, a: Matrix, b: Matrix) -> Matrix:
    return [[ring.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(ring: Ring, a: Matrix, b: Matrix) -> bool:
    return all(ring.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def outer(ring: Ring, v: Vector, u: Vector) -> Matrix:
    return [[ring.mul(x, y) for y in u] for x in v]


def dot(ring: Ring, u: Vector, v: Vector):
    acc = ring.zero
    for x, y in zip(u, v):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def row_times(ring: Ring, u: Vector, m: Matrix) -> Vector:
    return matmul(ring, [list(u)], m)[0]


def times_col(ring: Ring, m: Matrix, v: Vector) -> Vector:
    return [r[0] for r in matmul(ring, m, [[x] for x in v])]


def elementary(ring: Ring, n: int, i: int, j: int, xi) -> Matrix:
    m = eye(ring, n)
    m[i][j] = ring.add(m[i][j], xi)
    return m


@dataclass(frozen=True)
class UnimodularPair:
    """Column ``v`` and row ``u`` with ``u v = 0``; ``witness . v = 1``."""

    v: tuple
    u: tuple
    witness: tuple
    word: tuple = ()  # elementary letters (i, j, xi) with v = E e1
    ideal_flag: bool = False

    def check(self, ring: Ring, ideal: Ideal | None = None) -> bool:
        ok = ring.is_zero(dot(ring, self.u, self.v)) and ring.eq(dot(ring, self.witness, self.v), ring.one)
        if self.ideal_flag and ideal is not None:
            ok = ok and all(ideal.contains(x) for x in self.u)
        if self.word:
            n = len(self.v)
            e = replay_word(ring, n, self.word)
            ok = ok and all(ring.eq(e[i][0], self.v[i]) for i in range(n))
        return ok


@dataclass(frozen=True)
class Transvection:
    matrix: tuple
    inverse: tuple

    def verify(self, ring: Ring) -> bool:
        n = len(self.matrix)
        return mat_eq(ring, matmul(ring, [list(r) for r in self.matrix], [list(r) for r in self.inverse]), eye(ring, n))


def transvection(ring: Ring, v: Sequence, u: Sequence) -> Transvection:
    n = len(v)
    vu = outer(ring, list(v), list(u))
    plus = matadd(ring, eye(ring, n), vu)
    minus = matadd(ring, eye(ring, n), [[ring.neg(x) for x in r] for r in vu])
    return Transvection(tuple(map(tuple, plus)), tuple(map(tuple, minus)))


def X(ring: Ring, v: Sequence, u: Sequence) -> Matrix:
    return [list(r) for r in transvection(ring, v, u).matrix]


def replay_word(ring: Ring, n: int, word: Sequence[tuple[int, int, Any]]) -> Matrix:
    m = eye(ring, n)
    for i, j, xi in word:
        m = matmul(ring, m, elementary(ring, n, i, j, xi))
    return m


def _random_elementary(ring: Ring, n: int, length: int, rng: random.Random) -> tuple[tuple, Matrix, Matrix]:
    word = []
    for _ in range(length):
        i, j = rng.sample(range(n), 2)
        word.append((i, j, ring.random(rng)))
    e = replay_word(ring, n, word)
    inv = replay_word(ring, n, [(i, j, ring.neg(xi)) for i, j, xi in reversed(word)])
    return tuple(word), e, inv


def _random_row(ring: Ring, n: int, rng: random.Random, ideal: Ideal | None, zero_slots: int) -> Vector:
    pick = ideal.random if ideal is not None else ring.random
    return [ring.zero if k < zero_slots else pick(rng) for k in range(n)]


def make_unimodular_samples(ring: Ring, n: int, count: int, mode: str = "orbit",
                            rng: random.Random | None = None, ideal: Ideal | None = None,
                            word_length: int = 5, max_tries: int = 1000) -> list[UnimodularPair]:
    """Pairs ``(v, u)`` with ``u v = 0``.

    ``orbit``: ``v = E e1`` for a random elementary word ``E``; the witness is the
    first row of ``E^-1`` and ``u = w E^-1`` with ``w_1 = 0``.
    ``raw``: random ``v`` kept only if some ``w`` with a unit entry certifies it;
    then ``u`` is projected to ``u - (u v) witness``.
    """
    rng = rng or random.Random(0)
    out: list[UnimodularPair] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError("could not generate enough unimodular pairs")
        if mode == "orbit":
            word, e, inv = _random_elementary(ring, n, word_length, rng)
            v = [e[i][0] for i in range(n)]
            witness = inv[0]
            u = row_times(ring, _random_row(ring, n, rng, ideal, 1), inv)
        elif mode == "raw":
            word = ()
            v = [ring.random(rng) for _ in range(n)]
            units = [k for k, x in enumerate(v) if ring.is_unit(x)]
            if not units:
                continue
            k = units[0]
            witness = [ring.zero] * n
            witness[k] = ring.inverse(v[k])
            u0 = _random_row(ring, n, rng, ideal, 0)
            c = dot(ring, u0, v)
            u = [ring.sub(a, ring.mul(c, w)) for a, w in zip(u0, witness)]
        else:
            raise ValueError(f"unknown mode {mode!r}")
        pair = UnimodularPair(tuple(v), tuple(u), tuple(witness), word, ideal is not None)
        if pair.check(ring, ideal):
            out.append(pair)
    return out


def verify_ap_relations(ring: Ring, n: int = 5, samples: int = 100, rng: random.Random | None = None,
                        ideal: Ideal | None = None) -> CheckReport:
    """Additivity, conjugation and column-splitting relations among transvections."""
    rng = rng or random.Random(0)
    report = CheckReport("ap-relations", "AP1-AP3")
    report.details = {"ring": ring.descriptor, "n": n}
    counts = {"AP1": 0, "AP2": 0, "AP3": 0, "inverse": 0}
    R = ring
    with timed(report):
        pairs = make_unimodular_samples(R, n, samples, "orbit", rng, ideal)
        others = make_unimodular_samples(R, n, samples, "orbit", rng)
        for p, q in zip(pairs, others):
            v, u = list(p.v), list(p.u)
            # AP1: a second row killing v, from the same witness projection
            u2 = _random_row(R, n, rng, ideal, 0)
            c = dot(R, u2, v)
            u2 = [R.sub(a, R.mul(c, w)) for a, w in zip(u2, p.witness)]
            if ideal is None or all(ideal.contains(x) for x in u2):
                lhs = X(R, v, [R.add(a, b) for a, b in zip(u, u2)])
                rhs = matmul(R, X(R, v, u), X(R, v, u2))
                report.cases += 1
                counts["AP1"] += 1
                if not mat_eq(R, lhs, rhs):
                    report.refute({"relation": "AP1", "v": _fmt(R, v), "u1": _fmt(R, u), "u2": _fmt(R, u2)})
            # AP2: X_{v,u} ** X_{v',u'} = X_{(e - v'u')v, u(e + v'u')}
            v1, u1 = list(q.v), list(q.u)
            t = transvection(R, v1, u1)
            g, g_inv = [list(r) for r in t.matrix], [list(r) for r in t.inverse]
            lhs = matmul(R, matmul(R, g_inv, X(R, v, u)), g)
            rhs = X(R, times_col(R, g_inv, v), row_times(R, u, g))
            report.cases += 1
            counts["AP2"] += 1
            if not mat_eq(R, lhs, rhs):
                report.refute({"relation": "AP2", "v": _fmt(R, v), "u": _fmt(R, u), "v'": _fmt(R, v1), "u'": _fmt(R, u1)})
            counts["inverse"] += 1
            if not t.verify(R):
                report.refute({"relation": "inverse", "v": _fmt(R, v1), "u": _fmt(R, u1)})
        for _ in range(samples):
            # AP3: (v1, v2) = first two columns of an elementary matrix, u kills both
            _, e, inv = _random_elementary(R, n, 6, rng)
            v1 = [e[i][0] for i in range(n)]
            v2 = [e[i][1] for i in range(n)]
            u = row_times(R, _random_row(R, n, rng, ideal, 2), inv)
            b = R.random(rng)
            lhs = X(R, [R.add(x, R.mul(b, y)) for x, y in zip(v1, v2)], u)
            rhs = matmul(R, X(R, v1, u), X(R, v2, [R.mul(b, x) for x in u]))
            report.cases += 1
            counts["AP3"] += 1
            if not (R.is_zero(dot(R, u, v1)) and R.is_zero(dot(R, u, v2))):
                report.refute({"relation": "AP3", "reason": "side condition u v1 = u v2 = 0 violated"})
            if not mat_eq(R, lhs, rhs):
                report.refute({"relation": "AP3", "v1": _fmt(R, v1), "v2": _fmt(R, v2), "u": _fmt(R, u), "b": R.fmt(b)})
        report.details["by_relation"] = counts
    return report


def _fmt(ring: Ring, v: Sequence) -> list[str]:
    return [ring.fmt(x) for x in v]


def linear_root_pairs(n: int) -> tuple[list[tuple[int, int]], dict[tuple[int, int], int]]:
    """Ordered index pairs ``(i, j)`` and the matching root index of ``e_i - e_j`` in ``A_{n-1}``."""
    phi = build_root_system("A", n - 1)
    index = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                lo, hi = min(i, j), max(i, j)
                coeffs = [0] * (n - 1)
                for k in range(lo, hi):
                    coeffs[k] = 1 if i < j else -1
                index[(i, j)] = phi.root(coeffs)
    return sorted(index), index


def vdk_generator_map_check(ring: Ring, n: int = 5, samples: int = 64, rng: random.Random | None = None) -> CheckReport:
    """Images of all ``A_{n-1}`` Steinberg relations under ``x_ij(xi) -> X_{e_i, xi e_j^t}``."""
    rng = rng or random.Random(0)
    phi = build_root_system("A", n - 1)
    table = algebra_for(phi).table
    pairs, index = linear_root_pairs(n)
    R = ring
    report = CheckReport("vdk-map", "vdkTheorem", system=phi.name)
    with timed(report):
        c = sign_character_solve(n)
        if c is None:
            report.refute({"reason": "no sign character relates the adjoint and linear structure constants"})
            return report
        report.details = {"ring": ring.descriptor, "n": n,
                          "nontrivial_signs": sorted(f"{i + 1}{j + 1}" for (i, j), s in c.items() if s < 0)}
        if R.size is not None and R.size <= 16:
            params = [(x, y) for x in R.elements() for y in R.elements()]
        else:
            params = [(R.random(rng), R.random(rng)) for _ in range(samples)]

        def img(p, xi, sign=1):
            i, j = p
            return X(R, [R.one if k == i else R.zero for k in range(n)],
                     [R.scale(sign, xi) if k == j else R.zero for k in range(n)])

        counts = {"generator": 0, "Radd": 0, "Rcf21": 0, "Rcf22": 0}
        for p in pairs:
            for xi in sorted({x for x, _ in params}, key=repr) if R.canonical else [x for x, _ in params]:
                m = img(p, xi)
                expect = elementary(R, n, p[0], p[1], xi)
                counts["generator"] += 1
                report.cases += 1
                if not mat_eq(R, m, expect):
                    report.refute({"relation": "generator", "ij": p})
        for p in pairs:
            for q in pairs:
                if q == (p[1], p[0]):
                    continue
                a, b = index[p], index[q]
                s = table.phi.add_table[a, b]
                for xi, eta in params:
                    A, B = img(p, xi, c[p]), img(q, eta, c[q])
                    if p == q:
                        kind = "Radd"
                        ok = mat_eq(R, matmul(R, A, B), img(p, R.add(xi, eta), c[p]))
                    elif s < 0:
                        kind = "Rcf21"
                        ok = mat_eq(R, matmul(R, A, B), matmul(R, B, A))
                    else:
                        kind = "Rcf22"
                        r = (p[0], q[1]) if p[1] == q[0] else (q[0], p[1])
                        C = img(r, R.scale(table(a, b), R.mul(xi, eta)), c[r])
                        ok = mat_eq(R, matmul(R, A, B), matmul(R, matmul(R, C, B), A))
                    counts[kind] += 1
                    report.cases += 1
                    if not ok:
                        report.refute({"relation": kind, "ij": p, "kl": q, "xi": R.fmt(xi), "eta": R.fmt(eta)})
        report.details["by_relation"] = counts
    return report


def _nlin(p: tuple[int, int], q: tuple[int, int]) -> int:
    """Linear structure constant: ``[e + xi E_ij, e + eta E_jk] = e + xi eta E_ik``."""
    return 1 if p[1] == q[0] else -1


def sign_character_solve(n: int) -> dict[tuple[int, int], int] | None:
    """Signs ``c`` with ``N_adj(a, b) c(a + b) = N_lin(a, b) c(a) c(b)`` on all summable pairs.

    Written additively over GF(2) and solved by elimination; free variables are set to ``+1``.
    """
    phi = build_root_system("A", n - 1)
    table = algebra_for(phi).table
    pairs, index = linear_root_pairs(n)
    col = {p: k for k, p in enumerate(pairs)}
    rows = []
    for p in pairs:
        for q in pairs:
            if phi.add_table[index[p], index[q]] >= 0:
                r = (p[0], q[1]) if p[1] == q[0] else (q[0], p[1])
                eq = np.zeros(len(pairs) + 1, dtype=np.uint8)
                for x in (p, q, r):
                    eq[col[x]] ^= 1
                eq[-1] = (table(index[p], index[q]) * _nlin(p, q)) < 0
                rows.append(eq)
    m = np.array(rows, dtype=np.uint8)
    pivots = []
    r = 0
    for k in range(len(pairs)):
        hits = np.nonzero(m[r:, k])[0]
        if not len(hits):
            continue
        h = r + hits[0]
        m[[r, h]] = m[[h, r]]
        others = np.nonzero(m[:, k])[0]
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(k)
        r += 1
        if r == len(m):
            break
    if np.any(m[r:, -1]):
        return None
    x = np.zeros(len(pairs), dtype=np.uint8)
    for i, k in enumerate(pivots):
        x[k] = m[i, -1]
    c = {p: (-1 if x[col[p]] else 1) for p in pairs}
    add = phi.add_table
    for p in pairs:
        for q in pairs:
            if add[index[p], index[q]] >= 0:
                r_ = (p[0], q[1]) if p[1] == q[0] else (q[0], p[1])
                if table(index[p], index[q]) * c[r_] != _nlin(p, q) * c[p] * c[q]:
                    return None
    return c


def sign_character_matrix(n: int) -> np.ndarray | None:
    c = sign_character_solve(n)
    if c is None:
        return None
    out = np.zeros((n, n), dtype=np.int64)
    for (i, j), s in c.items():
        out[i, j] = s
    return out
