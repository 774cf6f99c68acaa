"""Simply-laced root systems in simple-root coordinates.

Roots are integer tuples ``m`` with ``alpha = sum(m[i] * alpha_i)``; every inner
product goes through the Cartan matrix, so no irrational coordinates appear.
Subsystems are identified by their sorted index tuples into the ambient system.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Root = tuple[int, ...]


class RootSystemError(ValueError):
    """Unsupported (type, rank) or a malformed root subset."""

    def __init__(self, code: str, message: str) -> None:
        super().__init__(f"{code}: {message}")
        self.code = code


# Bourbaki numbering, 1-based edges of the Dynkin diagram.
def _edges(type_label: str, rank: int) -> list[tuple[int, int]]:
    if type_label == "A":
        if rank < 1:
            raise RootSystemError("bad-rank", f"A_{rank} needs rank >= 1")
        return [(i, i + 1) for i in range(1, rank)]
    if type_label == "D":
        if rank < 4:
            raise RootSystemError("bad-rank", f"D_{rank} needs rank >= 4")
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if type_label == "E":
        if rank not in (6, 7, 8):
            raise RootSystemError("bad-rank", f"E_{rank} is not a finite root system")
        return [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, rank)]
    raise RootSystemError("bad-type", f"type {type_label!r} is not simply laced (A, D, E only)")


def cartan_matrix(type_label: str, rank: int) -> np.ndarray:
    c = 2 * np.eye(rank, dtype=np.int64)
    for i, j in _edges(type_label, rank):
        c[i - 1, j - 1] = c[j - 1, i - 1] = -1
    return c


def _positive_roots(cartan: np.ndarray) -> list[Root]:
    """BFS closure of the simple roots under simple reflections, positives only."""
    rank = cartan.shape[0]
    simple = [tuple(int(i == k) for i in range(rank)) for k in range(rank)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        v = np.array(r)
        for k in range(rank):
            p = int(v @ cartan[:, k])
            if p == 0:
                continue
            w = list(r)
            w[k] -= p
            w = tuple(w)
            if all(c >= 0 for c in w) and any(w) and w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r)))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Simply-laced irreducible root system.

    ``roots[:npos]`` are the positive roots ordered by height (the first
    ``rank`` of them are the simple roots ``alpha_1..alpha_rank``) and
    ``roots[npos + i] == -roots[i]``.
    """

    type_label: str
    rank: int
    cartan: np.ndarray = field(repr=False)
    roots: tuple[Root, ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, {len(self.roots)} roots)"

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def npos(self) -> int:
        return len(self.roots) // 2

    @cached_property
    def index(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array(self.roots, dtype=np.int64)

    @cached_property
    def gram(self) -> np.ndarray:
        """Matrix of inner products ``(roots[i], roots[j])``."""
        return self.coords @ self.cartan @ self.coords.T

    @cached_property
    def neg(self) -> np.ndarray:
        n = self.npos
        return np.concatenate([np.arange(n, 2 * n), np.arange(n)])

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of ``roots[i] + roots[j]`` or -1."""
        n = len(self.roots)
        out = -np.ones((n, n), dtype=np.int64)
        ii, jj = np.nonzero(self.gram == -1)
        for i, j in zip(ii.tolist(), jj.tolist()):
            out[i, j] = self.index[tuple(a + b for a, b in zip(self.roots[i], self.roots[j]))]
        return out

    @cached_property
    def reflection_table(self) -> np.ndarray:
        """``reflection_table[a, b]`` is the index of ``sigma_a(b)``."""
        n = len(self.roots)
        g = self.gram
        out = np.tile(np.arange(n), (n, 1))
        out[g == -1] = self.add_table[g == -1]  # b + a
        ii, jj = np.nonzero(g == 1)
        neg = self.neg
        for a, b in zip(ii.tolist(), jj.tolist()):
            out[a, b] = self.add_table[neg[a], b]  # b - a
        out[np.arange(n), np.arange(n)] = neg
        out[np.arange(n), neg] = np.arange(n)
        return out

    @cached_property
    def simple_reflections(self) -> list[np.ndarray]:
        return [self.reflection_table[k] for k in range(self.rank)]

    @cached_property
    def max_root(self) -> int:
        return self.npos - 1

    def root(self, coeffs: Sequence[int]) -> int:
        try:
            return self.index[tuple(int(c) for c in coeffs)]
        except KeyError:
            raise RootSystemError("not-a-root", f"{tuple(coeffs)} is not a root of {self.name}") from None

    def is_positive(self, i: int) -> bool:
        return i < self.npos

    def height(self, i: int) -> int:
        return sum(self.roots[i])


def build_root_system(type_label: str, rank: int) -> RootSystem:
    type_label = type_label.upper()
    cartan = cartan_matrix(type_label, rank)
    pos = _positive_roots(cartan)
    roots = tuple(pos) + tuple(tuple(-c for c in r) for r in pos)
    phi = RootSystem(type_label, rank, cartan, roots)
    _check_root_system(phi)
    return phi


_EXPECTED_COUNTS = {"A": lambda n: n * (n + 1), "D": lambda n: 2 * n * (n - 1),
                    "E": lambda n: {6: 72, 7: 126, 8: 240}[n]}


def _check_root_system(phi: RootSystem) -> None:
    expected = _EXPECTED_COUNTS[phi.type_label](phi.rank)
    if len(phi.roots) != expected:
        raise RootSystemError("bad-count", f"{phi.name}: {len(phi.roots)} roots, expected {expected}")
    if not np.all(np.diag(phi.gram) == 2):
        raise RootSystemError("bad-norm", f"{phi.name}: root of norm != 2")
    top = phi.coords[phi.max_root]
    if not np.all(phi.coords[: phi.npos] <= top):
        raise RootSystemError("bad-max-root", f"{phi.name}: maximal root does not dominate")


def parse_system(label: str) -> RootSystem:
    """``"E6"`` -> E6, ``"a3"`` -> A3."""
    label = label.strip()
    if len(label) < 2 or not label[1:].isdigit():
        raise RootSystemError("bad-label", f"cannot parse root system {label!r}")
    return build_root_system(label[0], int(label[1:]))


def pairing(phi: RootSystem, beta: int, alpha: int) -> int:
    """``<beta, alpha> = 2(beta, alpha)/(alpha, alpha)``; equals ``(beta, alpha)`` here."""
    return int(phi.gram[beta, alpha])


def reflect(phi: RootSystem, alpha: int, beta: int) -> int:
    """Index of ``sigma_alpha(beta) = beta - <beta, alpha> alpha``."""
    return int(phi.reflection_table[alpha, beta])


# --- subsystem type classification -------------------------------------------

def classify_cartan(cartan: np.ndarray) -> str:
    """ADE label of a simply-laced Cartan matrix, components joined by ``+``.

    Components sort by (letter, rank); ``D3`` never appears (it is ``A3``) and
    ``D2`` is ``A1+A1``.
    """
    n = cartan.shape[0]
    if n == 0:
        return ""
    adj = [[j for j in range(n) if j != i and cartan[i, j] != 0] for i in range(n)]
    if any(cartan[i, j] not in (0, -1) for i in range(n) for j in adj[i]):
        raise RootSystemError("not-simply-laced", "off-diagonal Cartan entry outside {0, -1}")
    seen: set[int] = set()
    parts: list[tuple[str, int]] = []
    for start in range(n):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        parts.append(_classify_component(comp, adj))
    parts.sort()
    return "+".join(f"{t}{r}" for t, r in parts)


def _classify_component(comp: list[int], adj: list[list[int]]) -> tuple[str, int]:
    k = len(comp)
    nedges = sum(len(adj[v]) for v in comp) // 2
    if nedges != k - 1:
        raise RootSystemError("not-finite-type", "Dynkin graph has a cycle")
    degrees = {v: len(adj[v]) for v in comp}
    branch = [v for v in comp if degrees[v] >= 3]
    if not branch:
        return ("A", k)
    if len(branch) > 1 or degrees[branch[0]] > 3:
        raise RootSystemError("not-finite-type", "Dynkin graph is not ADE")
    c = branch[0]
    arms = []
    for first in adj[c]:
        length, prev, cur = 1, c, first
        while degrees[cur] == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", k)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", k)
    raise RootSystemError("not-finite-type", f"arms {arms} give an infinite type")


@dataclass(frozen=True)
class Subsystem:
    root_indices: tuple[int, ...]
    type_string: str

    def __len__(self) -> int:
        return len(self.root_indices)

    def __contains__(self, i: int) -> bool:
        return i in self.root_indices


def simple_base(phi: RootSystem, indices: Iterable[int]) -> list[int]:
    """Indecomposable positives of a subsystem.

    Ambient positivity is cut out by a linear functional that is nonzero on
    every root, so its restriction is a positive system of the subsystem.
    """
    idx = set(indices)
    pos = [i for i in idx if phi.is_positive(i)]
    pos_set = set(pos)
    add = phi.add_table
    decomposable = {int(add[i, j]) for i in pos for j in pos if add[i, j] >= 0} & pos_set
    return sorted(pos_set - decomposable)


def subsystem_type(phi: RootSystem, indices: Iterable[int]) -> str:
    base = simple_base(phi, indices)
    return classify_cartan(phi.gram[np.ix_(base, base)])


def closure(phi: RootSystem, indices: Iterable[int]) -> tuple[int, ...]:
    """Smallest reflection-closed set containing ``indices``."""
    cur = set(int(i) for i in indices)
    refl = phi.reflection_table
    frontier = list(cur)
    while frontier:
        new: set[int] = set()
        members = list(cur)
        for a in frontier:
            new.update(refl[a, members].tolist())
            new.update(refl[members, a].tolist())
        new -= cur
        cur |= new
        frontier = list(new)
    return tuple(sorted(cur))


def span_subsystem(phi: RootSystem, indices: Iterable[int]) -> Subsystem:
    idx = list(indices)
    if not idx:
        raise RootSystemError("empty", "cannot span the empty set")
    roots = closure(phi, idx)
    return Subsystem(roots, subsystem_type(phi, roots))


def make_subsystem(phi: RootSystem, indices: Iterable[int]) -> Subsystem:
    """Wrap an index set that is already claimed to be a subsystem; checks closure."""
    roots = tuple(sorted(set(int(i) for i in indices)))
    if closure(phi, roots) != roots:
        raise RootSystemError("not-closed", "index set is not reflection closed")
    return Subsystem(roots, subsystem_type(phi, roots))


def phi_prime(phi: RootSystem) -> Subsystem:
    """Roots orthogonal to the maximal root."""
    orth = np.nonzero(phi.gram[phi.max_root] == 0)[0]
    return make_subsystem(phi, orth.tolist())


# --- parabolic sets -------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicDecomposition:
    special: tuple[int, ...]
    reductive: tuple[int, ...]


def is_closed(phi: RootSystem, indices: Iterable[int]) -> bool:
    s = set(int(i) for i in indices)
    arr = np.array(sorted(s), dtype=np.int64)
    sums = phi.add_table[np.ix_(arr, arr)]
    return all(int(k) in s for k in sums[sums >= 0].tolist())


def parabolic_decompose(phi: RootSystem, indices: Iterable[int]) -> ParabolicDecomposition:
    """Split a closed set ``S`` as ``Sigma_S`` (special) and ``Delta_S = S & -S``."""
    s = set(int(i) for i in indices)
    if not is_closed(phi, s):
        raise RootSystemError("not-closed", "root set is not closed under addition")
    neg = phi.neg
    reductive = tuple(sorted(i for i in s if int(neg[i]) in s))
    special = tuple(sorted(s.difference(reductive)))
    return ParabolicDecomposition(special, reductive)


def levi_subsystem(phi: RootSystem, k: int) -> tuple[int, ...]:
    """Roots with zero coefficient at the simple root ``k`` (0-based)."""
    return tuple(int(i) for i in np.nonzero(phi.coords[:, k] == 0)[0])


def special_part(phi: RootSystem, k: int) -> tuple[int, ...]:
    """Roots with positive coefficient at the simple root ``k`` (0-based)."""
    return tuple(int(i) for i in np.nonzero(phi.coords[:, k] > 0)[0])


def additive_closure(phi: RootSystem, indices: Iterable[int]) -> tuple[int, ...]:
    """Smallest set closed under root addition containing ``indices``."""
    cur = set(int(i) for i in indices)
    add = phi.add_table
    changed = True
    while changed:
        arr = np.array(sorted(cur))
        sums = add[np.ix_(arr, arr)]
        new = set(sums[sums >= 0].tolist()) - cur
        changed = bool(new)
        cur |= new
    return tuple(sorted(cur))


# --- enumeration of A_n subsystems -------------------------------------------------

def _chain_roots(phi: RootSystem, chain: Sequence[int]) -> tuple[int, ...]:
    """Roots of the A_n spanned by a chain base: all ``+-(b_i + ... + b_j)``."""
    out = []
    coords = phi.coords
    for i in range(len(chain)):
        acc = np.zeros(phi.rank, dtype=np.int64)
        for j in range(i, len(chain)):
            acc = acc + coords[chain[j]]
            r = phi.index[tuple(int(c) for c in acc)]
            out.append(r)
            out.append(int(phi.neg[r]))
    return tuple(sorted(out))


def subsystems_with_bases(phi: RootSystem, n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Map each A_n subsystem (sorted index tuple) to one chain base of it.

    Level-by-level chain extension: an A_{k+1} is spanned by an A_k chain base
    plus a root at pairing -1 with its last member and orthogonal to the rest.
    Results are cached per root system.
    """
    if not 1 <= n <= phi.rank:
        raise RootSystemError("bad-n", f"n={n} outside 1..{phi.rank}")
    cache = phi.__dict__.setdefault("_an_cache", {})
    if n in cache:
        return cache[n]
    if n == 1:
        level: dict[tuple[int, ...], tuple[int, ...]] = {}
        for i in range(len(phi)):
            level.setdefault(tuple(sorted((i, int(phi.neg[i])))), (i,))
    else:
        g = phi.gram
        level = {}
        for chain in subsystems_with_bases(phi, n - 1).values():
            mask = g[chain[-1]] == -1
            for c in chain[:-1]:
                mask &= g[c] == 0
            for gamma in np.nonzero(mask)[0].tolist():
                new_chain = chain + (gamma,)
                key = _chain_roots(phi, new_chain)
                if key not in level:
                    level[key] = new_chain
    cache[n] = level
    return level


def enumerate_subsystems(phi: RootSystem, n: int, containing: int | None = None) -> list[tuple[int, ...]]:
    """All subsystems of type A_n as sorted index tuples, in lexicographic order."""
    out = sorted(subsystems_with_bases(phi, n))
    if containing is not None:
        out = [s for s in out if containing in s]
    return out


def dynkin_witnesses(phi: RootSystem, n: int) -> list[tuple[int, ...]]:
    """A_n subsystems spanned by chains of nodes of the (extended) Dynkin diagram."""
    nodes = list(range(phi.rank)) + [int(phi.neg[phi.max_root])]
    g = phi.gram
    found: set[tuple[int, ...]] = set()

    def grow(chain: list[int]) -> None:
        if len(chain) == n:
            found.add(_chain_roots(phi, chain))
            return
        for v in nodes:
            if v in chain or g[chain[-1], v] != -1:
                continue
            if any(g[c, v] != 0 for c in chain[:-1]):
                continue
            grow(chain + [v])

    for v in nodes:
        grow([v])
    return sorted(found)


def _act(perm: np.ndarray, sub: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(perm[list(sub)].tolist()))


def weyl_orbits(phi: RootSystem, seeds: Iterable[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    """W-orbits (BFS over simple reflections) of the given subsystems."""
    orbits: list[list[tuple[int, ...]]] = []
    seen: set[tuple[int, ...]] = set()
    gens = phi.simple_reflections
    for seed in seeds:
        if seed in seen:
            continue
        seen.add(seed)
        orbit, queue = [seed], deque([seed])
        while queue:
            s = queue.popleft()
            for p in gens:
                t = _act(p, s)
                if t not in seen:
                    seen.add(t)
                    orbit.append(t)
                    queue.append(t)
        orbits.append(sorted(orbit))
    return orbits


def enumerate_subsystems_by_orbits(phi: RootSystem, n: int) -> list[tuple[int, ...]]:
    """Second strategy: Weyl-orbit expansion of Dynkin-diagram witnesses."""
    orbits = weyl_orbits(phi, dynkin_witnesses(phi, n))
    return sorted(s for orbit in orbits for s in orbit)


def weyl_orbits_on_subsystems(phi: RootSystem, n: int) -> list[int]:
    """Orbit sizes of W on A_n(phi), ordered by each orbit's smallest member."""
    orbits = weyl_orbits(phi, enumerate_subsystems(phi, n))
    return [len(o) for o in orbits]
