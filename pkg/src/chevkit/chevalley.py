"""Chevalley basis, structure constants and the adjoint representation.

Basis order: ``e_alpha`` for every root index, then ``h_1 .. h_rank``.  Matrices
act on column vectors, so column ``j`` of ``t_alpha(xi)`` is the image of basis
vector ``j``.

All relation checks run in the adjoint representation.  Every relation checked
is a consequence of the Steinberg presentation, so a failure refutes the
structure table while a pass confirms it (the adjoint group only sees the
group modulo its centre, which no checked relation depends on).
"""

from __future__ import annotations

import multiprocessing
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .report import CheckReport, timed
from .rings import IntegerRing, PolyRing, Ring, RingError
from .roots import (
    RootSystem,
    additive_closure,
    enumerate_subsystems,
    parabolic_decompose,
    span_subsystem,
    subsystem_type,
)


class StructureError(RuntimeError):
    """The built table or algebra failed its own audit."""


# --- structure constants ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StructureTable:
    """``N[a, b]`` in ``{+1, -1}`` when ``roots[a] + roots[b]`` is a root, else 0.

    ``N = (-1)^B(a, b) * c(a) c(b) c(a+b)`` with ``B`` the asymmetric form
    (lower triangle of the Cartan matrix, ones on the diagonal) and ``c`` the
    sign of the root.  The sign twist makes ``[e_a, e_-a] = h_a`` hold for
    every root, not only the positive ones.
    """

    phi: RootSystem
    N: np.ndarray
    form: np.ndarray

    def __call__(self, a: int, b: int) -> int:
        return int(self.N[a, b])

    def restrict(self, indices: Iterable[int]) -> dict[tuple[int, int], int]:
        idx = sorted(set(int(i) for i in indices))
        return {(a, b): int(self.N[a, b]) for a in idx for b in idx if self.N[a, b]}


def cocycle_form(phi: RootSystem) -> np.ndarray:
    c = phi.cartan
    return np.tril(c, -1) + np.eye(phi.rank, dtype=c.dtype)


def build_structure_table(phi: RootSystem) -> StructureTable:
    form = cocycle_form(phi)
    x = phi.coords
    eps = np.where((x @ form @ x.T) % 2 == 0, 1, -1)
    n = len(phi.roots)
    sign = np.where(np.arange(n) < phi.npos, 1, -1)
    add = phi.add_table
    summable = add >= 0
    N = np.where(summable, eps * sign[:, None] * sign[None, :] * sign[np.maximum(add, 0)], 0).astype(np.int8)
    table = StructureTable(phi, N, form)
    problems = audit_table(table)
    if problems:
        raise StructureError(f"structure table for {phi.name} fails: {problems[:3]}")
    return table


def audit_table(table: StructureTable) -> list[str]:
    """Antisymmetry, the negation rule and ``+-1`` values, checked on every summable pair."""
    N, phi = table.N.astype(np.int64), table.phi
    summable = phi.add_table >= 0
    out = []
    if np.any(np.abs(N[summable]) != 1) or np.any(N[~summable] != 0):
        out.append("N outside {+1,-1} on summable pairs")
    if np.any(N != -N.T):
        out.append("N_ab != -N_ba")
    neg = phi.neg
    if np.any(N != -N[np.ix_(neg, neg)]):
        out.append("N_ab != -N_{-a,-b}")
    return out


# --- the Lie algebra ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChevalleyAlgebra:
    phi: RootSystem
    table: StructureTable

    @property
    def nroots(self) -> int:
        return len(self.phi.roots)

    @property
    def rank(self) -> int:
        return self.phi.rank

    @property
    def dim(self) -> int:
        return self.nroots + self.rank

    def h(self, i: int) -> int:
        return self.nroots + i

    @cached_property
    def weights(self) -> np.ndarray:
        """``weights[b, i] = (roots[b], alpha_i)``, the ``h_i`` eigenvalue on ``e_b``."""
        return self.phi.coords @ self.phi.cartan

    @cached_property
    def structure(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Nonzero brackets as arrays ``(x, y, z, c)``: ``[x, y]`` has ``c`` at ``z``."""
        phi, n = self.phi, self.nroots
        add, neg, N, w = phi.add_table, phi.neg, self.table.N, self.weights
        xs, ys, zs, cs = [], [], [], []
        a, b = np.nonzero(add >= 0)
        xs.append(a), ys.append(b), zs.append(add[a, b]), cs.append(N[a, b].astype(np.int64))
        a, i = np.nonzero(phi.coords)
        xs.append(a), ys.append(neg[a]), zs.append(n + i), cs.append(phi.coords[a, i])
        b, i = np.nonzero(w)
        xs.append(n + i), ys.append(b), zs.append(b), cs.append(w[b, i])
        xs.append(b), ys.append(n + i), zs.append(b), cs.append(-w[b, i])
        return tuple(np.concatenate(v).astype(np.int64) for v in (xs, ys, zs, cs))  # type: ignore[return-value]

    @cached_property
    def bracket_table(self) -> dict[tuple[int, int], dict[int, int]]:
        out: dict[tuple[int, int], dict[int, int]] = {}
        for x, y, z, c in zip(*(v.tolist() for v in self.structure)):
            out.setdefault((x, y), {})[z] = c
        return out

    def bracket(self, x: int, y: int) -> dict[int, int]:
        return dict(self.bracket_table.get((x, y), {}))

    def h_alpha(self, a: int) -> dict[int, int]:
        """``h_a = sum m_i h_i`` (simply laced: coroot coordinates equal root coordinates)."""
        return {self.h(i): int(m) for i, m in enumerate(self.phi.coords[a]) if m}

    def ad(self, x: int) -> sp.csr_matrix:
        return self.ad_matrices[x]

    @cached_property
    def ad_matrices(self) -> list[sp.csr_matrix]:
        x, y, z, c = self.structure
        d = self.dim
        out = []
        order = np.argsort(x, kind="stable")
        x, y, z, c = x[order], y[order], z[order], c[order]
        bounds = np.searchsorted(x, np.arange(d + 1))
        for k in range(d):
            s = slice(bounds[k], bounds[k + 1])
            out.append(sp.csr_matrix((c[s], (z[s], y[s])), shape=(d, d), dtype=np.int64))
        return out

    def jacobi_audit(self) -> tuple[int, list[tuple[int, int]]]:
        """Check ``ad[x, y] = [ad x, ad y]`` for every ordered basis pair.

        Equivalent to the Jacobi identity on all basis triples.  Per ``x`` the
        ``ad y`` are stacked so three sparse products cover every ``y`` at once.
        """
        d = self.dim
        stacked = sp.vstack(self.ad_matrices, format="csr")
        eye = sp.identity(d, dtype=np.int64, format="csr")
        failures: list[tuple[int, int]] = []
        for x in range(d):
            adx = self.ad_matrices[x]
            left = sp.kron(eye, adx, format="csr") @ stacked
            right = stacked @ adx
            target = sp.kron(adx.T, eye, format="csr") @ stacked
            diff = (left - right - target).tocoo()
            bad = np.unique(diff.row[diff.data != 0] // d)
            failures.extend((x, int(y)) for y in bad.tolist())
        return d * d, failures

    def antisymmetry_audit(self) -> list[tuple[int, int]]:
        bt = self.bracket_table
        return [(x, y) for (x, y), v in bt.items() if bt.get((y, x), {}) != {k: -c for k, c in v.items()}]


def build_algebra(phi: RootSystem, table: StructureTable | None = None, audit: bool = True) -> ChevalleyAlgebra:
    alg = ChevalleyAlgebra(phi, table or build_structure_table(phi))
    if audit:
        bad = alg.antisymmetry_audit()
        if bad:
            raise StructureError(f"antisymmetry fails for {bad[:3]}")
        _, bad = alg.jacobi_audit()
        if bad:
            raise StructureError(f"Jacobi fails for {bad[:3]}")
    return alg


_ALGEBRAS: dict[str, ChevalleyAlgebra] = {}


def algebra_for(phi: RootSystem) -> ChevalleyAlgebra:
    """Audited algebra, cached per root system label."""
    if phi.name not in _ALGEBRAS:
        _ALGEBRAS[phi.name] = build_algebra(phi)
    return _ALGEBRAS[phi.name]


# --- matrices over a ring ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LieMatrix:
    """``I + delta`` over ``ring``; ``delta`` maps row -> {col: payload}, zeros dropped."""

    ring: Ring
    dim: int
    delta: dict[int, dict[int, Any]] = field(default_factory=dict)

    @classmethod
    def identity(cls, ring: Ring, dim: int) -> "LieMatrix":
        return cls(ring, dim, {})

    def entry(self, i: int, j: int):
        r = self.ring
        v = self.delta.get(i, {}).get(j, r.zero)
        return r.add(v, r.one) if i == j else v

    def __matmul__(self, other: "LieMatrix") -> "LieMatrix":
        r = self.ring
        add, mul, is_zero = r.add, r.mul, r.is_zero
        out = {i: dict(row) for i, row in self.delta.items()}
        for i, row in other.delta.items():
            tgt = out.setdefault(i, {})
            for j, v in row.items():
                tgt[j] = add(tgt[j], v) if j in tgt else v
        bd = other.delta
        for i, row in self.delta.items():
            tgt = out[i]
            for k, v in row.items():
                brow = bd.get(k)
                if not brow:
                    continue
                for j, w in brow.items():
                    p = mul(v, w)
                    tgt[j] = add(tgt[j], p) if j in tgt else p
        clean = {}
        for i, row in out.items():
            row = {j: v for j, v in row.items() if not is_zero(v)}
            if row:
                clean[i] = row
        return LieMatrix(r, self.dim, clean)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieMatrix):
            return NotImplemented
        r = self.ring
        rows = set(self.delta) | set(other.delta)
        for i in rows:
            a, b = self.delta.get(i, {}), other.delta.get(i, {})
            for j in set(a) | set(b):
                if not r.eq(a.get(j, r.zero), b.get(j, r.zero)):
                    return False
        return True

    __hash__ = None  # type: ignore[assignment]

    def is_identity(self) -> bool:
        return all(self.ring.is_zero(v) for row in self.delta.values() for v in row.values())

    def apply(self, vec: dict[int, Any]) -> dict[int, Any]:
        """``M v`` for a sparse column vector."""
        r = self.ring
        out = dict(vec)
        for i, row in self.delta.items():
            acc = out.get(i, r.zero)
            for j, v in row.items():
                if j in vec:
                    acc = r.add(acc, r.mul(v, vec[j]))
            out[i] = acc
        return {i: v for i, v in out.items() if not r.is_zero(v)}

    def column(self, j: int) -> dict[int, Any]:
        return self.apply({j: self.ring.one})

    def block(self, indices: Sequence[int]) -> list[list[Any]]:
        return [[self.entry(i, j) for j in indices] for i in indices]

    def to_dense(self) -> list[list[Any]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def describe(self) -> dict[str, str]:
        r = self.ring
        return {f"{i},{j}": r.fmt(v) for i, row in sorted(self.delta.items()) for j, v in sorted(row.items())}


def unipotent_template(alg: ChevalleyAlgebra, a: int) -> list[tuple[int, int, int, int]]:
    """Entries ``(row, col, coeff, degree)`` of ``t_a(xi) - I = xi X + xi^2 X^2/2``.

    ``X = ad e_a``; ``X^2/2`` only sends ``e_-a`` to ``-e_a`` and ``X^3 = 0``.
    """
    cache = alg.__dict__.setdefault("_templates", {})
    if a not in cache:
        ad = alg.ad(a).tocoo()
        entries = [(int(i), int(j), int(c), 1) for i, j, c in zip(ad.row, ad.col, ad.data) if c]
        entries.append((a, int(alg.phi.neg[a]), -1, 2))
        cache[a] = entries
    return cache[a]


def elem_unipotent(alg: ChevalleyAlgebra, ring: Ring, a: int, xi) -> LieMatrix:
    """``t_a(xi) = exp(xi ad e_a)`` with exact integral coefficients."""
    if ring.is_zero(xi):
        return LieMatrix.identity(ring, alg.dim)
    pw = {1: xi, 2: ring.mul(xi, xi)}
    delta: dict[int, dict[int, Any]] = {}
    for i, j, c, d in unipotent_template(alg, a):
        v = ring.scale(c, pw[d])
        if not ring.is_zero(v):
            delta.setdefault(i, {})[j] = v
    return LieMatrix(ring, alg.dim, delta)


def w_elem(alg: ChevalleyAlgebra, ring: Ring, a: int, xi, inverse=None) -> LieMatrix:
    """``w_a(xi) = t_a(xi) t_-a(-xi^-1) t_a(xi)``."""
    inv = inverse if inverse is not None else ring.inverse(xi)
    if not ring.eq(ring.mul(xi, inv), ring.one):
        raise RingError("supplied inverse is wrong")
    na = int(alg.phi.neg[a])
    t = elem_unipotent(alg, ring, a, xi)
    return t @ elem_unipotent(alg, ring, na, ring.neg(inv)) @ t


def w_elem_inverse(alg: ChevalleyAlgebra, ring: Ring, a: int, xi, inverse=None) -> LieMatrix:
    inv = inverse if inverse is not None else ring.inverse(xi)
    na = int(alg.phi.neg[a])
    t = elem_unipotent(alg, ring, a, ring.neg(xi))
    return t @ elem_unipotent(alg, ring, na, inv) @ t


def bracket_vectors(alg: ChevalleyAlgebra, ring: Ring, u: dict[int, Any], v: dict[int, Any]) -> dict[int, Any]:
    out: dict[int, Any] = {}
    bt = alg.bracket_table
    for i, x in u.items():
        for j, y in v.items():
            br = bt.get((i, j))
            if not br:
                continue
            p = ring.mul(x, y)
            for k, c in br.items():
                out[k] = ring.add(out.get(k, ring.zero), ring.scale(c, p))
    return {k: x for k, x in out.items() if not ring.is_zero(x)}


def preserves_bracket(alg: ChevalleyAlgebra, m: LieMatrix, pairs: Iterable[tuple[int, int]] | None = None) -> list[tuple[int, int]]:
    """Basis pairs where ``M[x, y] != [Mx, My]``."""
    r = m.ring
    cols = [m.column(j) for j in range(alg.dim)]
    if pairs is None:
        pairs = product(range(alg.dim), repeat=2)
    bad = []
    for x, y in pairs:
        lhs = m.apply({k: r.from_int(c) for k, c in alg.bracket(x, y).items()})
        rhs = bracket_vectors(alg, r, cols[x], cols[y])
        keys = set(lhs) | set(rhs)
        if any(not r.eq(lhs.get(k, r.zero), rhs.get(k, r.zero)) for k in keys):
            bad.append((x, y))
    return bad


# --- eta signs ----------------------------------------------------------------------------

def compute_eta(alg: ChevalleyAlgebra, a: int, b: int) -> int:
    """Sign ``eta`` in ``w_a(1) t_b(z) w_a(1)^-1 = t_{s_a b}(eta z)`` over ``Z[z]``."""
    ring = PolyRing(IntegerRing(), "z")
    z = ring.gen()
    lhs = w_elem(alg, ring, a, ring.one) @ elem_unipotent(alg, ring, b, z) @ w_elem_inverse(alg, ring, a, ring.one)
    g = int(alg.phi.reflection_table[a, b])
    matches = [s for s in (1, -1) if lhs == elem_unipotent(alg, ring, g, ring.scale(s, z))]
    if len(matches) != 1:
        raise StructureError(f"eta({a},{b}): {len(matches)} matches among t_{g}(+-z)")
    return matches[0]


def eta_table(alg: ChevalleyAlgebra) -> np.ndarray:
    n = alg.nroots
    out = np.zeros((n, n), dtype=np.int8)
    for a in range(n):
        for b in range(n):
            out[a, b] = compute_eta(alg, a, b)
    return out


def eta_orthogonal_rule_holds(alg: ChevalleyAlgebra) -> bool:
    """For orthogonal roots the reflection fixes ``b`` and ``eta = +1``."""
    g = alg.phi.gram
    return all(compute_eta(alg, a, b) == 1 for a, b in zip(*np.nonzero(g == 0)))


# --- Steinberg relations ---------------------------------------------------------------------

def relation_kind(phi: RootSystem, a: int, b: int) -> str:
    if a == b:
        return "Radd"
    if b == int(phi.neg[a]):
        return "opposite"
    if phi.add_table[a, b] >= 0:
        return "Rcf22"
    return "Rcf21"


def check_relation(alg: ChevalleyAlgebra, ring: Ring, a: int, b: int, xi, eta,
                   cache: dict | None = None) -> bool:
    """One instance of (Radd), (Rcf21) or (Rcf22) in the adjoint representation."""
    def t(r, x):
        if cache is None:
            return elem_unipotent(alg, ring, r, x)
        key = (r, x)
        if key not in cache:
            cache[key] = elem_unipotent(alg, ring, r, x)
        return cache[key]

    kind = relation_kind(alg.phi, a, b)
    if kind == "Radd":
        return t(a, xi) @ t(a, eta) == t(a, ring.add(xi, eta))
    if kind == "Rcf21":
        return t(a, xi) @ t(b, eta) == t(b, eta) @ t(a, xi)
    if kind == "Rcf22":
        c = int(alg.phi.add_table[a, b])
        z = ring.scale(alg.table(a, b), ring.mul(xi, eta))
        return t(a, xi) @ t(b, eta) == t(c, z) @ t(b, eta) @ t(a, xi)
    raise ValueError("no Steinberg relation between opposite roots")


def ring_pairs(ring: Ring, sample_size: int | None, rng: random.Random, exhaustive_limit: int = 16) -> list[tuple[Any, Any]]:
    if ring.size is not None and ring.size <= exhaustive_limit:
        els = list(ring.elements())
        return [(x, y) for x in els for y in els]
    count = sample_size or 64
    xs, ys = ring.sample(rng, count), ring.sample(rng, count)
    rng.shuffle(ys)
    return list(zip(xs, ys))


_JOB: dict[str, Any] = {}


def _relation_chunk(pairs: list[tuple[int, int]]) -> tuple[int, dict[str, int], list[dict]]:
    alg, ring, samples = _JOB["alg"], _JOB["ring"], _JOB["samples"]
    hashable = ring.canonical
    cache: dict | None = {} if hashable else None
    cases, counts, bad = 0, {"Radd": 0, "Rcf21": 0, "Rcf22": 0}, []
    for a, b in pairs:
        kind = relation_kind(alg.phi, a, b)
        for xi, eta in samples:
            cases += 1
            counts[kind] += 1
            if not check_relation(alg, ring, a, b, xi, eta, cache):
                bad.append({"relation": kind, "alpha": alg.phi.roots[a], "beta": alg.phi.roots[b],
                            "xi": ring.fmt(xi), "eta": ring.fmt(eta)})
        if cache is not None and len(cache) > 20000:
            cache.clear()
    return cases, counts, bad


def verify_steinberg_relations(phi: RootSystem, ring: Ring, sample_size: int | None = None,
                               rng: random.Random | None = None, jobs: int = 1,
                               alg: ChevalleyAlgebra | None = None) -> CheckReport:
    """Every ordered root pair ``(a, b)``, ``b != -a``, against ring samples."""
    rng = rng or random.Random(0)
    alg = alg or algebra_for(phi)
    samples = ring_pairs(ring, sample_size, rng)
    n = alg.nroots
    pairs = [(a, b) for a in range(n) for b in range(n) if b != int(phi.neg[a])]
    report = CheckReport("steinberg-relations", "Radd/Rcf21/Rcf22", system=phi.name,
                         expected_cases=len(pairs) * len(samples))
    report.details = {"ring": ring.descriptor, "ring_pairs": len(samples),
                      "exhaustive_ring": ring.size is not None and ring.size <= 16}
    with timed(report):
        _JOB.update(alg=alg, ring=ring, samples=samples)
        chunks = [pairs[i::max(jobs, 1)] for i in range(max(jobs, 1))]
        if jobs > 1 and "fork" in multiprocessing.get_all_start_methods():
            with multiprocessing.get_context("fork").Pool(jobs) as pool:
                results = pool.map(_relation_chunk, chunks)
        else:
            results = [_relation_chunk(c) for c in chunks]
        counts = {"Radd": 0, "Rcf21": 0, "Rcf22": 0}
        for cases, cnt, bad in results:
            report.cases += cases
            for k, v in cnt.items():
                counts[k] += v
            if bad:
                report.refute(bad[0])
                report.details.setdefault("violations", 0)
                report.details["violations"] += len(bad)
        report.details["by_relation"] = counts
    return report


# --- the radical representation ----------------------------------------------------------------

@dataclass(frozen=True)
class RadicalSetup:
    psi: tuple[int, ...]
    alpha: int
    closed_set: tuple[int, ...]
    sigma: tuple[int, ...]
    envelope_type: str


def radical_setup(phi: RootSystem, psi: Sequence[int], alpha: int) -> RadicalSetup:
    """Closed set ``S`` generated by ``psi`` and ``alpha`` with its special part ``Sigma``."""
    psi = tuple(sorted(int(i) for i in psi))
    if subsystem_type(phi, psi) != "A3" or len(psi) != 12:
        raise ValueError("psi must be an A3 subsystem")
    if alpha in psi:
        raise ValueError("alpha lies in psi")
    if not np.any(phi.gram[alpha, list(psi)] != 0):
        raise ValueError("alpha is orthogonal to psi")
    s = additive_closure(phi, psi + (alpha,))
    env = span_subsystem(phi, s)
    dec = parabolic_decompose(phi, s)
    if dec.reductive != psi or alpha not in dec.special:
        raise StructureError("unexpected parabolic decomposition")
    return RadicalSetup(psi, alpha, s, dec.special, env.type_string)


def rho(m: LieMatrix, sigma: Sequence[int]) -> list[list[Any]]:
    """The ``Sigma x Sigma`` block of an adjoint matrix."""
    return m.block(sigma)


def _radical_element(alg: ChevalleyAlgebra, ring: Ring, sigma: Sequence[int], coeffs: Sequence[Any]) -> LieMatrix:
    m = LieMatrix.identity(ring, alg.dim)
    for d, s in zip(sigma, coeffs):
        m = m @ elem_unipotent(alg, ring, d, s)
    return m


def verify_radical_action(phi: RootSystem, psi: Sequence[int], alpha: int, ring: Ring, ideal,
                          samples: int = 40, rng: random.Random | None = None) -> CheckReport:
    """``h u = rho(h)(u) h`` for ``h = t_g(xi)``, ``g`` in ``psi``, and ``u`` in ``U(Sigma, I)``."""
    rng = rng or random.Random(0)
    alg = algebra_for(phi)
    setup = radical_setup(phi, psi, alpha)
    sigma = setup.sigma
    report = CheckReport("radical-action", "reprRels", system=phi.name)
    report.details = {"envelope": setup.envelope_type, "sigma_size": len(sigma), "ring": ring.descriptor}
    expected = {"A4": 4, "D4": 6}.get(setup.envelope_type)
    with timed(report):
        if expected != len(sigma):
            report.refute({"envelope": setup.envelope_type, "sigma": len(sigma)})
            return report
        outside = [i for i in range(alg.dim) if i not in set(sigma)]
        for _ in range(samples):
            g = rng.choice(setup.psi)
            h = elem_unipotent(alg, ring, g, ring.random(rng))
            # Sigma is normalized: no leakage from span(e_Sigma) into other coordinates
            leak = any(not ring.is_zero(h.entry(i, j)) for j in sigma for i in outside)
            block = rho(h, sigma)
            s = [ideal.random(rng) for _ in sigma]
            image = [ring.zero] * len(sigma)
            for i in range(len(sigma)):
                for j in range(len(sigma)):
                    image[i] = ring.add(image[i], ring.mul(block[i][j], s[j]))
            u = _radical_element(alg, ring, sigma, s)
            u2 = _radical_element(alg, ring, sigma, image)
            report.cases += 1
            if leak or not (h @ u == u2 @ h) or not all(ideal.contains(x) for x in image):
                report.refute({"gamma": phi.roots[g], "s": [ring.fmt(x) for x in s], "leak": leak})
    return report


def radical_cases(phi: RootSystem) -> dict[str, tuple[tuple[int, ...], int]]:
    """One ``(psi, alpha)`` per envelope type met by an A3 subsystem and a non-orthogonal root."""
    found: dict[str, tuple[tuple[int, ...], int]] = {}
    for psi in enumerate_subsystems(phi, 3):
        inside = set(psi)
        for alpha in range(len(phi.roots)):
            if alpha in inside or not np.any(phi.gram[alpha, list(psi)] != 0):
                continue
            env = span_subsystem(phi, additive_closure(phi, tuple(psi) + (alpha,))).type_string
            found.setdefault(env, (tuple(psi), alpha))
        if len(found) >= 2:
            break
    return found


# --- report wrappers ---------------------------------------------------------------------------

def verify_structure(phi: RootSystem) -> CheckReport:
    """Structure-table invariants plus antisymmetry and the full Jacobi audit of the algebra."""
    report = CheckReport("structure-table", "Rcf22 / structure constants", system=phi.name)
    with timed(report):
        table = StructureTable(phi, build_structure_table(phi).N, cocycle_form(phi))
        problems = audit_table(table)
        alg = build_algebra(phi, table, audit=False)
        anti = alg.antisymmetry_audit()
        pairs, jac = alg.jacobi_audit()
        report.cases = int((phi.add_table >= 0).sum()) + pairs
        report.details = {"dim": alg.dim, "summable_pairs": int((phi.add_table >= 0).sum()),
                          "jacobi_pairs": pairs}
        if problems or anti or jac:
            report.refute({"table": problems, "antisymmetry": anti[:5], "jacobi": jac[:5]})
    return report


def verify_eta(phi: RootSystem) -> CheckReport:
    """``compute_eta`` yields a unique sign for every ordered root pair."""
    alg = algebra_for(phi)
    n = alg.nroots
    report = CheckReport("eta", "RW (eta signs)", system=phi.name, expected_cases=n * n)
    with timed(report):
        try:
            table = eta_table(alg)
        except StructureError as exc:
            report.refute({"reason": str(exc)})
            return report
        report.cases = n * n
        report.details["plus"] = int((table == 1).sum())
        report.details["minus"] = int((table == -1).sum())
        if not eta_orthogonal_rule_holds(alg):
            report.refute({"reason": "eta != 1 on an orthogonal pair"})
    return report.finish()
