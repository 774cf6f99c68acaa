"""Formal words in Steinberg generators and the identities built from them.

A word is a tuple of letters ``(root, value, exp)`` standing for
``x_root(value) ** exp``.  Group elements are only ever compared through the
adjoint evaluation ``phi_eval``; no normal form for the Steinberg group is
attempted, so every passed check means "the identity holds in E(Phi, R)".

Relative letters ``y``/``z`` live over the double ring ``D(R, I)``:
``y_a(s) = x_a((0, s))`` and ``z_a(s, xi) = y_a(s) ** x_-a(diag xi)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .chevalley import (
    ChevalleyAlgebra,
    LieMatrix,
    StructureTable,
    algebra_for,
    elem_unipotent,
)
from .report import CheckReport, timed
from .rings import (
    DoubleRing,
    Ideal,
    PolyRing,
    Ring,
    RingError,
    RingHom,
    eval_map,
    identity,
)
from .roots import RootSystem, _positive_roots, levi_subsystem, simple_base, special_part

Letter = tuple[int, Any, int]


@dataclass(frozen=True, eq=False)
class SteinbergWord:
    phi: RootSystem
    ring: Ring
    letters: tuple[Letter, ...] = ()
    support: frozenset[int] | None = None  # allowed roots, None for all of phi

    def __post_init__(self) -> None:
        for r, _, e in self.letters:
            if e not in (1, -1):
                raise ValueError("letter exponent must be +-1")
            if self.support is not None and r not in self.support:
                raise ValueError(f"root {r} outside the word's subsystem")

    def _same(self, other: "SteinbergWord") -> None:
        if other.phi is not self.phi or other.ring is not self.ring:
            raise ValueError("words over different systems or rings")

    def __mul__(self, other: "SteinbergWord") -> "SteinbergWord":
        self._same(other)
        sup = self.support if self.support == other.support else None
        return SteinbergWord(self.phi, self.ring, self.letters + other.letters, sup)

    def inverse(self) -> "SteinbergWord":
        return SteinbergWord(self.phi, self.ring, tuple((r, v, -e) for r, v, e in reversed(self.letters)),
                             self.support)

    def conj(self, g: "SteinbergWord") -> "SteinbergWord":
        """``self ** g = g^-1 self g``."""
        return g.inverse() * self * g

    def __len__(self) -> int:
        return len(self.letters)

    def __repr__(self) -> str:
        f = self.ring.fmt
        body = " ".join(f"x{list(self.phi.roots[r])}({f(v)})" + ("^-1" if e < 0 else "")
                        for r, v, e in self.letters)
        return f"<{body or '1'}>"


def letter(phi: RootSystem, ring: Ring, root: int, value, exp: int = 1) -> SteinbergWord:
    return SteinbergWord(phi, ring, ((int(root), value, exp),))


def empty_word(phi: RootSystem, ring: Ring) -> SteinbergWord:
    return SteinbergWord(phi, ring, ())


def product_of(words: Iterable[SteinbergWord]) -> SteinbergWord:
    words = list(words)
    out = words[0]
    for w in words[1:]:
        out = out * w
    return out


def commutator(x: SteinbergWord, y: SteinbergWord) -> SteinbergWord:
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * x.inverse() * y.inverse()


def phi_eval(w: SteinbergWord, alg: ChevalleyAlgebra | None = None) -> LieMatrix:
    """Product of ``t_root(value)``; an inverse letter uses ``t_root(-value)``."""
    alg = alg or algebra_for(w.phi)
    r = w.ring
    m = LieMatrix.identity(r, alg.dim)
    for root, v, e in w.letters:
        m = m @ elem_unipotent(alg, r, root, v if e > 0 else r.neg(v))
    return m


def map_word(f: RingHom, w: SteinbergWord) -> SteinbergWord:
    """The induced map ``f^*``: apply ``f`` to every letter value."""
    if f.source is not w.ring:
        raise ValueError("hom source differs from the word's ring")
    return SteinbergWord(w.phi, f.target, tuple((r, f(v), e) for r, v, e in w.letters), w.support)


def map_matrix(f: RingHom, m: LieMatrix) -> LieMatrix:
    """Entrywise image of ``I + delta``; a ring map fixes ``I`` so only ``delta`` moves."""
    t = f.target
    delta = {}
    for i, row in m.delta.items():
        new = {j: f(v) for j, v in row.items()}
        new = {j: v for j, v in new.items() if not t.is_zero(v)}
        if new:
            delta[i] = new
    return LieMatrix(t, m.dim, delta)


def embed_word(w: SteinbergWord, target: Iterable[int] | None = None) -> SteinbergWord:
    """Reinterpret ``w`` inside a larger subsystem (``None`` = the whole system)."""
    sup = None if target is None else frozenset(int(i) for i in target)
    if w.support is not None and sup is not None and not w.support <= sup:
        raise ValueError("source subsystem is not contained in the target")
    return SteinbergWord(w.phi, w.ring, w.letters, sup)


def restrict_word(w: SteinbergWord, roots: Iterable[int]) -> SteinbergWord:
    """Declare ``w`` a word of the subsystem ``roots`` (rejects foreign letters)."""
    return SteinbergWord(w.phi, w.ring, w.letters, frozenset(int(i) for i in roots))


def free_reduce(w: SteinbergWord) -> SteinbergWord:
    """Merge adjacent letters on the same root, ``x(u)^e x(v)^f = x(eu + fv)``, and drop ``x(0)``."""
    r = w.ring
    stack: list[Letter] = []
    for root, v, e in w.letters:
        val = v if e > 0 else r.neg(v)
        if stack and stack[-1][0] == root:
            _, u, _ = stack.pop()
            val = r.add(u, val)
        if not r.is_zero(val):
            stack.append((root, val, 1))
    return SteinbergWord(w.phi, w.ring, tuple(stack), w.support)


def words_equal(u: SteinbergWord, v: SteinbergWord) -> bool:
    """Letterwise equality after free reduction."""
    a, b = free_reduce(u).letters, free_reduce(v).letters
    r = u.ring
    return len(a) == len(b) and all(x[0] == y[0] and r.eq(x[1], y[1]) for x, y in zip(a, b))


def random_word(phi: RootSystem, ring: Ring, length: int, rng: random.Random,
                values: Callable[[random.Random], Any] | None = None,
                roots: Sequence[int] | None = None) -> SteinbergWord:
    values = values or ring.random
    pool = list(roots) if roots is not None else list(range(len(phi.roots)))
    return SteinbergWord(phi, ring, tuple((rng.choice(pool), values(rng), rng.choice((1, -1)))
                                          for _ in range(length)))


# --- subsystem functoriality -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubAlgebra:
    """Chevalley algebra of a subsystem with the restricted structure constants."""

    algebra: ChevalleyAlgebra
    root_map: tuple[int, ...]  # sub root index -> ambient root index
    base: tuple[int, ...]
    ambient: ChevalleyAlgebra

    def embed_vector(self, ring: Ring, vec: dict[int, Any]) -> dict[int, Any]:
        n_sub, amb = self.algebra.nroots, self.ambient
        out: dict[int, Any] = {}
        for k, v in vec.items():
            if k < n_sub:
                out[self.root_map[k]] = ring.add(out.get(self.root_map[k], ring.zero), v)
            else:
                for j, m in enumerate(amb.phi.coords[self.base[k - n_sub]]):
                    if m:
                        key = amb.nroots + j
                        out[key] = ring.add(out.get(key, ring.zero), ring.scale(int(m), v))
        return {k: v for k, v in out.items() if not ring.is_zero(v)}


def sub_algebra(alg: ChevalleyAlgebra, indices: Iterable[int]) -> SubAlgebra:
    from .chevalley import build_algebra

    phi = alg.phi
    idx = sorted(set(int(i) for i in indices))
    base = simple_base(phi, idx)
    cartan = phi.gram[np.ix_(base, base)]
    pos = _positive_roots(cartan)
    roots = tuple(pos) + tuple(tuple(-c for c in r) for r in pos)
    sub = RootSystem("sub", len(base), cartan, roots)
    bc = phi.coords[base]
    root_map = tuple(phi.index[tuple(int(c) for c in np.array(r) @ bc)] for r in roots)
    if sorted(root_map) != idx:
        raise ValueError("index set is not a subsystem")
    rm = np.array(root_map)
    N = alg.table.N[np.ix_(rm, rm)].copy()
    table = StructureTable(sub, N, np.zeros((len(base), len(base)), dtype=np.int64))
    return SubAlgebra(build_algebra(sub, table), root_map, tuple(base), alg)


def embedding_commutes(sa: SubAlgebra, ring: Ring, letters: Sequence[tuple[int, Any, int]]) -> bool:
    """``phi_ambient(i(w)) . i(v) = i(phi_sub(w) . v)`` for every basis vector ``v`` of the subalgebra."""
    sub_phi = sa.algebra.phi
    w_sub = SteinbergWord(sub_phi, ring, tuple(letters))
    amb_letters = tuple((sa.root_map[r], v, e) for r, v, e in letters)
    w_amb = SteinbergWord(sa.ambient.phi, ring, amb_letters)
    m_sub, m_amb = phi_eval(w_sub, sa.algebra), phi_eval(w_amb, sa.ambient)
    for k in range(sa.algebra.dim):
        lhs = m_amb.apply(sa.embed_vector(ring, {k: ring.one}))
        rhs = sa.embed_vector(ring, m_sub.column(k))
        keys = set(lhs) | set(rhs)
        if any(not ring.eq(lhs.get(i, ring.zero), rhs.get(i, ring.zero)) for i in keys):
            return False
    return True


# --- relative letters ------------------------------------------------------------------------

@dataclass(frozen=True)
class RelativeLetter:
    """``Z`` over ``R``, or ``y``/``z`` over ``D(R, I)``; ``s`` must lie in ``I``."""

    kind: str
    root: int
    s: Any
    xi: Any = None


@dataclass(eq=False)
class RelativeContext:
    """Word constructors for ``St(Phi, R)`` and the relative letters over ``D(R, I)``."""

    phi: RootSystem
    ring: Ring
    ideal: Ideal
    double: DoubleRing = field(init=False)

    def __post_init__(self) -> None:
        self.double = DoubleRing(self.ring, self.ideal)

    def neg(self, a: int) -> int:
        return int(self.phi.neg[a])

    def x(self, a: int, xi) -> SteinbergWord:
        return letter(self.phi, self.ring, a, xi)

    def xD(self, a: int, d) -> SteinbergWord:
        return letter(self.phi, self.double, a, d)

    def Z(self, a: int, s, xi) -> SteinbergWord:
        """``Z_a(s, xi) = x_a(s) ** x_-a(xi)`` in ``St(Phi, R)``."""
        return self.x(a, s).conj(self.x(self.neg(a), xi))

    def _check(self, s) -> None:
        if not self.ideal.contains(s):
            raise RingError(f"{self.ring.fmt(s)} is not in {self.ideal.name}")

    def y(self, a: int, s) -> SteinbergWord:
        self._check(s)
        return self.xD(a, (self.ring.zero, s))

    def z(self, a: int, s, xi) -> SteinbergWord:
        return self.y(a, s).conj(self.delta(self.x(self.neg(a), xi)))

    def g1(self, a: int, s) -> SteinbergWord:
        """Generator ``x_a((0, s))`` of ``G_1``."""
        return self.y(a, s)

    def g2(self, a: int, s) -> SteinbergWord:
        """Generator ``x_a((s, 0))`` of ``G_2``."""
        self._check(s)
        return self.xD(a, (s, self.ring.zero))

    def delta(self, g: SteinbergWord) -> SteinbergWord:
        return map_word(self.double.diag, g)

    def act(self, w: SteinbergWord, g: SteinbergWord) -> SteinbergWord:
        """Right action of ``g`` in ``St(Phi, R)`` on a word over ``D(R, I)``."""
        return w.conj(self.delta(g))

    def p2(self, w: SteinbergWord) -> SteinbergWord:
        return map_word(self.double.p2, w)

    def expand(self, rl: RelativeLetter) -> SteinbergWord:
        if rl.kind == "Z":
            return self.Z(rl.root, rl.s, rl.xi)
        if rl.kind == "y":
            return self.y(rl.root, rl.s)
        if rl.kind == "z":
            return self.z(rl.root, rl.s, rl.xi)
        raise ValueError(f"unknown relative letter kind {rl.kind!r}")


def _sweep(ring: Ring, ideal: Ideal | None, slots: str, rng: random.Random, samples: int,
           exhaustive_limit: int = 16) -> tuple[list[tuple], bool]:
    """Parameter tuples: ``slots`` has ``s`` for ideal slots and ``r`` for ring slots."""
    if ring.size is not None and ring.size <= exhaustive_limit:
        els = list(ring.elements())
        mem = ideal.elements() if ideal is not None else []
        pools = [mem if c == "s" else els for c in slots]
        return list(product(*pools)), True
    out = []
    for _ in range(samples):
        out.append(tuple(ideal.random(rng) if c == "s" else ring.random(rng) for c in slots))
    return out, False


class _Checker:
    """Accumulates identity checks into a report."""

    def __init__(self, report: CheckReport, alg_cache: dict) -> None:
        self.report = report
        self.counts: dict[str, int] = {}
        self.alg_cache = alg_cache

    def eq(self, tag: str, lhs: SteinbergWord, rhs: SteinbergWord, witness: Callable[[], dict]) -> None:
        self.report.cases += 1
        self.counts[tag] = self.counts.get(tag, 0) + 1
        alg = self.alg_cache.setdefault(lhs.phi.name, algebra_for(lhs.phi))
        if not phi_eval(lhs, alg) == phi_eval(rhs, alg):
            w = witness()
            w["identity"] = tag
            self.report.refute(w)
            self.report.details["violations"] = self.report.details.get("violations", 0) + 1


def _root_pairs(phi: RootSystem, kind: str, limit: int | None, rng: random.Random) -> list[tuple[int, int]]:
    n = len(phi.roots)
    g, add, neg = phi.gram, phi.add_table, phi.neg
    if kind == "sum":
        pairs = [(a, b) for a in range(n) for b in range(n) if add[a, b] >= 0]
    elif kind == "orth":
        pairs = [(a, b) for a in range(n) for b in range(n) if g[a, b] == 0]
    elif kind == "nosum":
        pairs = [(a, b) for a in range(n) for b in range(n) if add[a, b] < 0 and b != neg[a]]
    else:
        pairs = [(a, b) for a in range(n) for b in range(n)]
    if limit is not None and len(pairs) > limit:
        pairs = sorted(rng.sample(pairs, limit))
    return pairs


def verify_zrels(phi: RootSystem, ring: Ring, ideal: Ideal, samples: int = 200,
                 rng: random.Random | None = None, pair_limit: int | None = None) -> CheckReport:
    """Conjugation rules for ``z_a(s, xi)`` under ``x_-a``, ``x_b``, ``x_-b`` and orthogonal ``x_g``."""
    rng = rng or random.Random(0)
    ctx = RelativeContext(phi, ring, ideal)
    report = CheckReport("zrels", "Zrels", system=phi.name)
    params, exhaustive = _sweep(ring, ideal, "srr", rng, samples)
    report.details = {"ring": ring.descriptor, "ideal": ideal.name, "exhaustive_ring": exhaustive}
    chk = _Checker(report, {})
    R, neg = ring, phi.neg
    with timed(report):
        for a in range(len(phi.roots)) if pair_limit is None else rng.sample(range(len(phi.roots)), min(pair_limit, len(phi.roots))):
            for s, xi, eta in params:
                chk.eq("Z1", ctx.act(ctx.z(a, s, xi), ctx.x(neg[a], eta)), ctx.z(a, s, R.add(xi, eta)),
                       lambda: {"alpha": phi.roots[a], "s": R.fmt(s), "xi": R.fmt(xi), "eta": R.fmt(eta)})
        for a, b in _root_pairs(phi, "sum", pair_limit, rng):
            c, N = int(phi.add_table[a, b]), int(algebra_for(phi).table(a, b))
            for s, xi, eta in params:
                z = ctx.z(a, s, xi)
                sxe = R.mul(R.mul(s, xi), eta)
                rhs2 = ctx.y(b, R.neg(sxe)) * ctx.y(c, R.scale(N, R.mul(s, eta))) * z
                wit = lambda: {"alpha": phi.roots[a], "beta": phi.roots[b], "s": R.fmt(s),  # noqa: E731
                               "xi": R.fmt(xi), "eta": R.fmt(eta)}
                chk.eq("Z2", ctx.act(z, ctx.x(b, eta)), rhs2, wit)
                rhs3 = ctx.y(int(neg[b]), sxe) * ctx.y(int(neg[c]), R.scale(N, R.mul(sxe, xi))) * z
                chk.eq("Z3", ctx.act(z, ctx.x(int(neg[b]), eta)), rhs3, wit)
        for a, g in _root_pairs(phi, "orth", pair_limit, rng):
            for s, xi, eta in params:
                z = ctx.z(a, s, xi)
                chk.eq("Z4", ctx.act(z, ctx.x(g, eta)), z,
                       lambda: {"alpha": phi.roots[a], "gamma": phi.roots[g], "s": R.fmt(s)})
        report.details["by_identity"] = chk.counts
    return report


def _sample_g(ctx: RelativeContext, a: int, rng: random.Random, count: int) -> list[tuple[str, SteinbergWord]]:
    """Short products of generators, plus ``x_-a(xi)`` for every ``xi`` of a small ring."""
    phi, R = ctx.phi, ctx.ring
    out: list[tuple[str, SteinbergWord]] = [("1", empty_word(phi, R))]
    if R.size is not None and R.size <= 16:
        xis = list(R.elements())
    else:
        xis = R.sample(rng, 4)
    out += [("x_-a", ctx.x(ctx.neg(a), xi)) for xi in xis]
    for _ in range(count):
        out.append(("short", random_word(phi, R, rng.randint(1, 3), rng)))
    return out


def verify_swan_relations(phi: RootSystem, ring: Ring, ideal: Ideal, samples: int = 200,
                          rng: random.Random | None = None, pair_limit: int | None = None,
                          g_samples: int = 3) -> CheckReport:
    """The presentation relations for ``y_a(s)``.

    The first five hold already in ``St(Phi, D(R, I))`` and are evaluated there.
    The last holds only modulo ``C = [G1, G2]``; ``p2`` kills ``C`` and is
    injective on ``G1/C`` when ``R -> R/I`` splits, so it is evaluated after ``p2``.
    """
    rng = rng or random.Random(0)
    ctx = RelativeContext(phi, ring, ideal)
    report = CheckReport("swan", "SwanP", system=phi.name)
    R, n = ring, len(phi.roots)
    ss, exhaustive = _sweep(ring, ideal, "ss", rng, samples)
    sr, _ = _sweep(ring, ideal, "sr", rng, samples)
    report.details = {"ring": ring.descriptor, "ideal": ideal.name, "exhaustive_ring": exhaustive}
    chk = _Checker(report, {})
    N = algebra_for(phi).table
    with timed(report):
        for a in range(n):
            for s1, s2 in ss:
                chk.eq("R1", ctx.y(a, s1) * ctx.y(a, s2), ctx.y(a, R.add(s1, s2)),
                       lambda: {"alpha": phi.roots[a], "s1": R.fmt(s1), "s2": R.fmt(s2)})
        for a, b in _root_pairs(phi, "nosum", pair_limit, rng) + [(a, a) for a in range(n)]:
            for s1, s2 in ss:
                chk.eq("R2", commutator(ctx.y(a, s1), ctx.y(b, s2)), empty_word(phi, ctx.double),
                       lambda: {"alpha": phi.roots[a], "beta": phi.roots[b], "s1": R.fmt(s1), "s2": R.fmt(s2)})
            for s, xi in sr:
                chk.eq("R4", ctx.act(ctx.y(a, s), ctx.x(b, xi)), ctx.y(a, s),
                       lambda: {"alpha": phi.roots[a], "beta": phi.roots[b], "s": R.fmt(s), "xi": R.fmt(xi)})
        for a, b in _root_pairs(phi, "sum", pair_limit, rng):
            c, nab = int(phi.add_table[a, b]), N(a, b)
            for s1, s2 in ss:
                chk.eq("R3", commutator(ctx.y(a, s1), ctx.y(b, s2)), ctx.y(c, R.scale(nab, R.mul(s1, s2))),
                       lambda: {"alpha": phi.roots[a], "beta": phi.roots[b], "s1": R.fmt(s1), "s2": R.fmt(s2)})
            for s, xi in sr:
                chk.eq("R5", ctx.act(ctx.y(a, s), ctx.x(b, xi)), ctx.y(a, s) * ctx.y(c, R.scale(nab, R.mul(xi, s))),
                       lambda: {"alpha": phi.roots[a], "beta": phi.roots[b], "s": R.fmt(s), "xi": R.fmt(xi)})
        g_kinds: dict[str, int] = {}
        for a, b in _root_pairs(phi, "all", pair_limit, rng):
            for label, g in _sample_g(ctx, a, rng, g_samples):
                for s, t in ss:
                    g_kinds[label] = g_kinds.get(label, 0) + 1
                    lhs = ctx.act(ctx.y(a, s), g * ctx.x(b, t))
                    rhs = ctx.y(b, R.neg(t)) * ctx.act(ctx.y(a, s), g) * ctx.y(b, t)
                    chk.eq("R6", ctx.p2(lhs), ctx.p2(rhs),
                           lambda: {"alpha": phi.roots[a], "beta": phi.roots[b], "g": repr(g),
                                    "s": R.fmt(s), "t": R.fmt(t)})
        report.details["by_identity"] = chk.counts
        report.details["r6_g_kinds"] = g_kinds
    return report


def factor_titslemma2(ctx: RelativeContext, a: int, s, xi) -> tuple[RelativeLetter, RelativeLetter, RelativeLetter]:
    """``Z_a(s, xi) = Z_-a(-s', 0) Z_a(s, f pi xi) Z_-a(s', 0)`` with ``s' = xi - f pi xi``."""
    f, pi = ctx.ideal.section, ctx.ideal.quotient
    if f is None:
        raise RingError("the quotient map has no registered section")
    R = ctx.ring
    lifted = f(pi(xi))
    s1 = R.sub(xi, lifted)
    na = ctx.neg(a)
    return (RelativeLetter("Z", na, R.neg(s1), R.zero), RelativeLetter("Z", a, s, lifted),
            RelativeLetter("Z", na, s1, R.zero))


def verify_section(ideal: Ideal, rng: random.Random, count: int = 64) -> bool:
    f, pi = ideal.section, ideal.quotient
    q = pi.target
    pool = list(q.elements()) if q.size is not None and q.size <= 64 else q.sample(rng, count)
    return all(q.eq(pi(f(x)), x) for x in pool)


def verify_titslemma2(phi: RootSystem, ring: Ring, ideal: Ideal, samples: int = 200,
                      rng: random.Random | None = None) -> CheckReport:
    rng = rng or random.Random(0)
    ctx = RelativeContext(phi, ring, ideal)
    report = CheckReport("titslemma2", "titsLemma2", system=phi.name)
    params, exhaustive = _sweep(ring, ideal, "sr", rng, samples)
    report.details = {"ring": ring.descriptor, "ideal": ideal.name, "exhaustive_ring": exhaustive}
    chk = _Checker(report, {})
    R = ring
    with timed(report):
        if ideal.section is None or not verify_section(ideal, rng):
            report.refute({"reason": "no valid section for the quotient map"})
            return report
        for a in range(len(phi.roots)):
            for s, xi in params:
                parts = factor_titslemma2(ctx, a, s, xi)
                if any(not ideal.contains(p.s) for p in parts):
                    report.refute({"alpha": phi.roots[a], "reason": "factor outside the ideal"})
                chk.eq("factorization", ctx.Z(a, s, xi), product_of(ctx.expand(p) for p in parts),
                       lambda: {"alpha": phi.roots[a], "s": R.fmt(s), "xi": R.fmt(xi)})
        report.details["by_identity"] = chk.counts
    return report


def glue_t_triples(phi: RootSystem) -> list[tuple[int, int, int]]:
    """``(alpha, beta, gamma)`` with ``gamma = alpha + beta`` and ``N_{beta, alpha} = 1``."""
    table = algebra_for(phi).table
    add = phi.add_table
    return [(a, b, int(add[a, b])) for a, b in zip(*np.nonzero(add >= 0)) if table(int(b), int(a)) == 1]


def glue_t_words(ctx: RelativeContext, a: int, b: int, g: int, u, bb, xi) -> tuple[SteinbergWord, SteinbergWord, SteinbergWord]:
    """The two rewritings of ``z_g(ub, xi)``, evaluated as absolute words over ``R``."""
    R, neg = ctx.ring, ctx.neg
    x, Z = ctx.x, ctx.Z
    conj = ctx.x(neg(g), xi)
    ub = R.mul(u, bb)
    lhs = Z(g, ub, xi)
    mid = commutator(x(b, u).conj(conj), x(a, bb).conj(conj))
    b2 = R.mul(bb, bb)
    xi2 = R.mul(xi, xi)
    rhs = product_of([
        x(neg(a), R.neg(R.mul(u, xi))),
        x(b, u),
        x(a, R.mul(R.mul(u, b2), xi)),
        x(g, ub),
        Z(b, R.neg(u), R.neg(R.mul(bb, xi))),
        x(neg(b), R.neg(R.mul(R.mul(u, b2), xi2))),
        x(neg(g), R.neg(R.mul(ub, xi2))),
        Z(neg(a), R.mul(u, xi), R.neg(bb)),
    ])
    return lhs, mid, rhs


def verify_glue_t_identity(phi: RootSystem, ring: Ring, samples: int = 200, rng: random.Random | None = None,
                           b_values: Sequence | None = None, triple_limit: int | None = None) -> CheckReport:
    """Commutator and eight-factor forms of ``z_g(ub, xi)`` for every admissible ``(alpha, beta)``.

    The identity is ring-generic, so it is checked on the image of the
    relative group in ``St(Phi, R)`` (``y -> x``, ``z -> Z``).
    """
    rng = rng or random.Random(0)
    ctx = RelativeContext(phi, ring, _whole_ring_ideal(ring))
    report = CheckReport("glue-t", "glue_t", system=phi.name)
    R = ring
    if b_values is None:
        params, exhaustive = _sweep(ring, None, "rrr", rng, samples)
    else:
        params = [(u, bb, xi) for bb in b_values for u, xi in _sweep(ring, None, "rr", rng, samples)[0]]
        exhaustive = ring.size is not None and ring.size <= 16
    report.details = {"ring": ring.descriptor, "exhaustive_ring": exhaustive}
    chk = _Checker(report, {})
    triples = glue_t_triples(phi)
    if triple_limit is not None and len(triples) > triple_limit:
        triples = sorted(rng.sample(triples, triple_limit))
    report.details["triples"] = len(triples)
    with timed(report):
        for a, b, g in triples:
            for u, bb, xi in params:
                lhs, mid, rhs = glue_t_words(ctx, a, b, g, u, bb, xi)
                wit = lambda: {"alpha": phi.roots[a], "beta": phi.roots[b], "u": R.fmt(u),  # noqa: E731
                               "b": R.fmt(bb), "xi": R.fmt(xi)}
                chk.eq("commutator-form", lhs, mid, wit)
                chk.eq("eight-factor-form", mid, rhs, wit)
        report.details["by_identity"] = chk.counts
    return report


def _whole_ring_ideal(ring: Ring) -> Ideal:
    from .rings import ZMod

    triv = ZMod(1)
    return Ideal(ring, RingHom(ring, triv, lambda x: 0, "zero"), name="(1)")


# --- dilation bookkeeping: beta words ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BetaSetup:
    """Rings ``T = R[t]``, ``S = T[t1]``, ``S2 = S[t2]`` and the two substitutions of ``alpha``."""

    base: Ring
    T: PolyRing
    S: PolyRing
    S2: PolyRing

    @classmethod
    def over(cls, base: Ring) -> "BetaSetup":
        T = PolyRing(base, "t")
        S = PolyRing(T, "t1")
        return cls(base, T, S, PolyRing(S, "t2"))

    def t(self):
        return self.T.gen()

    def into_S2(self, p) -> Any:
        return self.S2.const(self.S.const(p))

    def t_times(self, factor) -> RingHom:
        """``R[t] -> S2``, ``t -> factor`` (``factor`` an element of ``S2``)."""
        T, S2 = self.T, self.S2
        return eval_map(T, S2, factor, RingHom(self.base, S2, lambda c: self.into_S2(T.const(c)), "const"))

    def specialize(self, t1_value, t2_value) -> RingHom:
        """``S2 -> T``: ``t1 -> t1_value``, ``t2 -> t2_value``, both in ``T``."""
        inner = eval_map(self.S, self.T, t1_value, identity(self.T))
        return eval_map(self.S2, self.T, t2_value, inner)

    def scale_t(self, c) -> RingHom:
        """``alpha(t) -> alpha(c t)`` on ``R[t]``."""
        T = self.T
        return eval_map(T, T, T.monomial(c, 1), RingHom(self.base, T, T.const, "const"))


def beta_word(setup: BetaSetup, alpha: SteinbergWord) -> SteinbergWord:
    """``beta(t, t1, t2) = alpha(t1 t) alpha^-1((t1 + t2) t)`` over ``R[t, t1][t2]``."""
    S, S2, T = setup.S, setup.S2, setup.T
    t_in_S2 = setup.into_S2(T.gen())
    t1 = S2.const(S.gen())
    t2 = S2.gen()
    first = map_word(setup.t_times(S2.mul(t1, t_in_S2)), alpha)
    second = map_word(setup.t_times(S2.mul(S2.add(t1, t2), t_in_S2)), alpha.inverse())
    return first * second


def random_relative_alpha(phi: RootSystem, setup: BetaSetup, length: int, rng: random.Random,
                          roots: Sequence[int] | None = None) -> SteinbergWord:
    """A word over ``R[t]`` whose letters lie in ``tR[t]`` (so it dies at ``t = 0``)."""
    T, base = setup.T, setup.base

    def value(r: random.Random):
        d = r.randint(1, 2)
        return T._trim([base.zero] + [base.random(r) for _ in range(d)])

    return random_word(phi, T, length, rng, value, roots)


def verify_beta_chain(phi: RootSystem, base: Ring, a: int, b: int, n: int, r: int, s: int,
                      words: int = 20, length: int = 6, rng: random.Random | None = None,
                      matrix_checks: int = 3) -> CheckReport:
    """``beta(t, 1, -s b^n) beta(t, r a^n, -r a^n)`` reduces to ``alpha(t)``.

    The reduction is formal (substitution, cancellation, dropping ``x(0)``);
    the adjoint images over ``R[t]`` are compared as an independent check.
    """
    rng = rng or random.Random(0)
    setup = BetaSetup.over(base)
    T = setup.T
    an, bn = base.pow(base.from_int(a), n), base.pow(base.from_int(b), n)
    ran = base.mul(base.from_int(r), an)
    sbn = base.mul(base.from_int(s), bn)
    report = CheckReport("beta-calculus", "T23", system=phi.name)
    report.details = {"ring": base.descriptor, "a": a, "b": b, "n": n, "r": r, "s": s}
    with timed(report):
        if not base.eq(base.add(ran, sbn), base.one):
            report.refute({"reason": "r a^n + s b^n != 1"})
            return report
        spec1 = setup.specialize(T.one, T.const(base.neg(sbn)))
        spec2 = setup.specialize(T.const(ran), T.const(base.neg(ran)))
        zero_t2 = eval_map(setup.S2, setup.S, setup.S.zero, identity(setup.S))
        alg = algebra_for(phi)
        formal = matrices = kernel = 0
        for k in range(words):
            alpha = random_relative_alpha(phi, setup, length, rng)
            beta = beta_word(setup, alpha)
            chain = map_word(spec1, beta) * map_word(spec2, beta)
            expected = product_of([alpha, map_word(setup.scale_t(ran), alpha).inverse(),
                                   map_word(setup.scale_t(ran), alpha), map_word(setup.scale_t(base.zero), alpha).inverse()])
            report.cases += 1
            if not (words_equal(chain, alpha) and words_equal(chain, expected)):
                report.refute({"alpha": repr(alpha), "reduced": repr(free_reduce(chain))})
                continue
            formal += 1
            if not free_reduce(map_word(zero_t2, beta)).letters:
                kernel += 1
            if k < matrix_checks:
                matrices += 1
                if not phi_eval(chain, alg) == phi_eval(alpha, alg):
                    report.refute({"alpha": repr(alpha), "reason": "adjoint images differ"})
        report.details.update({"formal_reductions": formal, "matrix_confirmations": matrices,
                               "ev_t2_zero_trivial": kernel})
        if kernel != formal:
            report.refute({"reason": "beta(t, t1, 0) did not reduce to the empty word"})
    return report


def verify_beta_specializations(phi: RootSystem, base: Ring, a: int, b: int, n: int, r: int, s: int,
                                words: int = 5, length: int = 4, rng: random.Random | None = None) -> CheckReport:
    """Adjoint images of the chain after ``t -> c`` for every ``c`` of a finite ring."""
    rng = rng or random.Random(1)
    setup = BetaSetup.over(base)
    T = setup.T
    ran = base.mul(base.from_int(r), base.pow(base.from_int(a), n))
    sbn = base.mul(base.from_int(s), base.pow(base.from_int(b), n))
    spec1 = setup.specialize(T.one, T.const(base.neg(sbn)))
    spec2 = setup.specialize(T.const(ran), T.const(base.neg(ran)))
    alg = algebra_for(phi)
    report = CheckReport("beta-phi-images", "T23", system=phi.name)
    with timed(report):
        for _ in range(words):
            alpha = random_relative_alpha(phi, setup, length, rng)
            beta = beta_word(setup, alpha)
            chain = map_word(spec1, beta) * map_word(spec2, beta)
            for c in base.elements():
                at_c = eval_map(T, base, c)
                report.cases += 1
                if not phi_eval(map_word(at_c, chain), alg) == phi_eval(map_word(at_c, alpha), alg):
                    report.refute({"alpha": repr(alpha), "t": base.fmt(c)})
    return report


# --- U+- decomposition around a simple root -------------------------------------------------------

def verify_u_pm_decomposition(phi: RootSystem, k: int, ring: Ring, samples: int = 50,
                              rng: random.Random | None = None) -> CheckReport:
    """Normalization of ``U+-`` by the Levi part and commutator expressions for Levi generators.

    ``k`` is the 0-based index of the simple root.
    """
    rng = rng or random.Random(0)
    alg = algebra_for(phi)
    report = CheckReport("u-pm", "centrality", system=phi.name)
    sigma = special_part(phi, k)
    levi = levi_subsystem(phi, k)
    neg, add, R = phi.neg, phi.add_table, ring
    minus = tuple(sorted(int(neg[i]) for i in sigma))
    report.details = {"simple_root": k + 1, "sigma": len(sigma), "levi": len(levi), "ring": ring.descriptor}
    counts = {"reassembly": 0, "levi-commutator": 0, "missing-commutator": 0}

    def x(r, v):
        return letter(phi, R, r, v)

    with timed(report):
        for part in (sigma, minus):
            pset = set(part)
            for b in part:
                for g in levi:
                    for _ in range(max(1, samples // 10)):
                        xi, eta = R.random(rng), R.random(rng)
                        lhs = x(b, xi).conj(x(g, eta))
                        c = int(add[b, g])
                        if c >= 0:
                            rhs = x(c, R.scale(alg.table(b, g), R.mul(xi, eta))) * x(b, xi)
                            in_part = c in pset
                        else:
                            rhs = x(b, xi)
                            in_part = True
                        report.cases += 1
                        counts["reassembly"] += 1
                        if not in_part or not phi_eval(lhs, alg) == phi_eval(rhs, alg):
                            report.refute({"beta": phi.roots[b], "gamma": phi.roots[g], "xi": R.fmt(xi),
                                           "eta": R.fmt(eta), "in_part": in_part})
        for b in levi:
            gammas = [g for g in sigma if add[g, int(neg[g])] < 0 and int(add[b, int(neg[g])]) in set(minus)]
            if not gammas:
                counts["missing-commutator"] += 1
                report.refute({"beta": phi.roots[b], "reason": "no commutator expression"})
                continue
            g = gammas[0]
            d = int(add[b, int(neg[g])])
            for _ in range(max(1, samples // 10)):
                xi = R.random(rng)
                lhs = x(b, xi)
                rhs = commutator(x(g, R.scale(alg.table(g, d), xi)), x(d, R.one))
                report.cases += 1
                counts["levi-commutator"] += 1
                if not phi_eval(lhs, alg) == phi_eval(rhs, alg):
                    report.refute({"beta": phi.roots[b], "gamma": phi.roots[g], "xi": R.fmt(xi)})
        report.details["by_identity"] = counts
    return report
