"""Exact commutative rings built as a construction tree.

A ring object owns the arithmetic; elements are plain payloads (ints, tuples)
that only make sense together with their ring.  ``ring(x)`` wraps a payload in
:class:`Elem` when operator syntax is more readable.

Ideals are kernels of ring homomorphisms, so membership is always decidable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Any, Callable, Iterable, Iterator, Sequence


class RingError(ValueError):
    pass


class Ring:
    """Base class; subclasses implement the payload arithmetic."""

    zero: Any
    one: Any
    size: int | None = None  # None for infinite rings
    canonical = True  # payload equality decides ring equality

    @property
    def descriptor(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{self.descriptor}>"

    def __call__(self, x: Any) -> "Elem":
        if isinstance(x, int) and not isinstance(x, bool):
            x = self.from_int(x)
        return Elem(self, x)

    # arithmetic ------------------------------------------------------------
    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x) -> bool:
        return x == self.zero

    def eq(self, x, y) -> bool:
        if self.canonical:
            return x == y
        return self.is_zero(self.sub(x, y))

    def from_int(self, n: int):
        acc, base = self.zero, self.one
        if n < 0:
            n, base = -n, self.neg(base)
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def scale(self, n: int, x):
        return self.mul(self.from_int(n), x) if n not in (0, 1, -1) else (
            self.zero if n == 0 else x if n == 1 else self.neg(x))

    def pow(self, x, k: int):
        if k < 0:
            return self.pow(self.inverse(x), -k)
        acc = self.one
        while k:
            if k & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            k >>= 1
        return acc

    def inverse(self, x):
        if self.size is not None:
            for y in self.elements():
                if self.eq(self.mul(x, y), self.one):
                    return y
        raise RingError(f"{self.fmt(x)} is not invertible in {self.descriptor}")

    def is_unit(self, x) -> bool:
        try:
            self.inverse(x)
        except RingError:
            return False
        return True

    # enumeration and sampling ----------------------------------------------
    def elements(self) -> Iterator[Any]:
        raise RingError(f"{self.descriptor} is infinite")

    def random(self, rng: random.Random):
        raise NotImplementedError

    def spanning(self) -> list[Any]:
        """A few fixed elements always included in samples."""
        return [self.zero, self.one, self.neg(self.one)]

    def sample(self, rng: random.Random, count: int) -> list[Any]:
        fixed = self.spanning()[:count]
        return fixed + [self.random(rng) for _ in range(count - len(fixed))]

    def fmt(self, x) -> str:
        return str(x)

    # localization support ----------------------------------------------------
    def ann_bound(self, a) -> int:
        """``N`` such that ``a^k x = 0`` for some ``k`` implies ``a^N x = 0``."""
        if self.size is not None:
            return (self.size - 1).bit_length()
        raise RingError(f"no annihilator bound for {self.descriptor}")

    def is_nilpotent(self, a) -> bool:
        return self.is_zero(self.pow(a, self.ann_bound(a) + 1))


@dataclass(frozen=True, eq=False)
class Elem:
    """A payload bound to its ring, with operator syntax."""

    ring: Ring
    value: Any

    def _lift(self, other) -> Any:
        if isinstance(other, Elem):
            if other.ring is not self.ring:
                raise RingError("mixed rings")
            return other.value
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return Elem(self.ring, self.ring.add(self.value, self._lift(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.ring, self.ring.sub(self.value, self._lift(other)))

    def __rsub__(self, other):
        return Elem(self.ring, self.ring.sub(self._lift(other), self.value))

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.value))

    def __mul__(self, other):
        return Elem(self.ring, self.ring.mul(self.value, self._lift(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return Elem(self.ring, self.ring.pow(self.value, k))

    def __eq__(self, other) -> bool:
        try:
            return self.ring.eq(self.value, self._lift(other))
        except RingError:
            return False

    def __hash__(self) -> int:
        if not self.ring.canonical:
            raise TypeError(f"elements of {self.ring.descriptor} have no canonical form")
        return hash((id(self.ring), self.value))

    def inverse(self) -> "Elem":
        return Elem(self.ring, self.ring.inverse(self.value))

    def __repr__(self) -> str:
        return self.ring.fmt(self.value)


# --- base rings -------------------------------------------------------------------

class IntegerRing(Ring):
    zero, one = 0, 1

    @property
    def descriptor(self) -> str:
        return "int"

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def from_int(self, n):
        return n

    def inverse(self, x):
        if x in (1, -1):
            return x
        raise RingError(f"{x} is not a unit of Z")

    def random(self, rng):
        return rng.randint(-9, 9)

    def ann_bound(self, a) -> int:
        return 0

    def is_nilpotent(self, a) -> bool:
        return a == 0

    def spanning(self):
        return [0, 1, -1, 2]


class ZMod(Ring):
    def __init__(self, n: int) -> None:
        if n < 1:
            raise RingError("modulus must be positive")
        self.n = n
        self.zero, self.one = 0, 1 % n
        self.size = n

    @property
    def descriptor(self) -> str:
        return f"zmod:{self.n}"

    def add(self, x, y):
        return (x + y) % self.n

    def neg(self, x):
        return -x % self.n

    def sub(self, x, y):
        return (x - y) % self.n

    def mul(self, x, y):
        return x * y % self.n

    def from_int(self, n):
        return n % self.n

    def inverse(self, x):
        if gcd(x, self.n) != 1:
            raise RingError(f"{x} is not a unit mod {self.n}")
        return pow(x, -1, self.n)

    def elements(self):
        return iter(range(self.n))

    def random(self, rng):
        return rng.randrange(self.n)


class ProductRing(Ring):
    def __init__(self, left: Ring, right: Ring) -> None:
        self.left, self.right = left, right
        self.zero = (left.zero, right.zero)
        self.one = (left.one, right.one)
        self.canonical = left.canonical and right.canonical
        self.size = left.size * right.size if left.size and right.size else None

    @property
    def descriptor(self) -> str:
        return f"prod({self.left.descriptor},{self.right.descriptor})"

    def add(self, x, y):
        return (self.left.add(x[0], y[0]), self.right.add(x[1], y[1]))

    def neg(self, x):
        return (self.left.neg(x[0]), self.right.neg(x[1]))

    def mul(self, x, y):
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def is_zero(self, x):
        return self.left.is_zero(x[0]) and self.right.is_zero(x[1])

    def from_int(self, n):
        return (self.left.from_int(n), self.right.from_int(n))

    def elements(self):
        right = list(self.right.elements())
        return ((a, b) for a in self.left.elements() for b in right)

    def random(self, rng):
        return (self.left.random(rng), self.right.random(rng))

    def fmt(self, x):
        return f"({self.left.fmt(x[0])}, {self.right.fmt(x[1])})"


# --- polynomials ----------------------------------------------------------------

class PolyRing(Ring):
    """``base[var]``: dense coefficient tuples, trailing zeros trimmed."""

    max_random_degree = 3

    def __init__(self, base: Ring, var: str = "t") -> None:
        self.base, self.var = base, var
        self.zero, self.one = (), self._trim((base.one,))
        self.canonical = base.canonical

    @property
    def descriptor(self) -> str:
        return f"poly:{self.base.descriptor}:{self.var}"

    def _trim(self, c: Sequence) -> tuple:
        c = list(c)
        z = self.base.is_zero
        while c and z(c[-1]):
            c.pop()
        return tuple(c)

    def const(self, c) -> tuple:
        return self._trim((c,))

    def gen(self) -> tuple:
        return self._trim((self.base.zero, self.base.one))

    def monomial(self, c, k: int) -> tuple:
        return self._trim((self.base.zero,) * k + (c,))

    def coeff(self, p, k: int):
        return p[k] if k < len(p) else self.base.zero

    def degree(self, p) -> int:
        return len(p) - 1

    def add(self, x, y):
        b = self.base
        if len(x) < len(y):
            x, y = y, x
        out = list(x)
        for i, c in enumerate(y):
            out[i] = b.add(out[i], c)
        return self._trim(out) if len(x) == len(y) else tuple(out)

    def neg(self, x):
        return tuple(self.base.neg(c) for c in x)

    def mul(self, x, y):
        if not x or not y:
            return ()
        b = self.base
        out = [b.zero] * (len(x) + len(y) - 1)
        for i, c in enumerate(x):
            if b.is_zero(c):
                continue
            for j, d in enumerate(y):
                out[i + j] = b.add(out[i + j], b.mul(c, d))
        return self._trim(out)

    def is_zero(self, x):
        return not x

    def eq(self, x, y):
        if self.canonical:
            return x == y
        return len(x) == len(y) and all(self.base.eq(a, b) for a, b in zip(x, y))

    def from_int(self, n):
        return self.const(self.base.from_int(n))

    def inverse(self, x):
        if len(x) == 1:
            return (self.base.inverse(x[0]),)
        raise RingError(f"{self.fmt(x)}: only invertible constants are handled")

    def random(self, rng):
        d = rng.randint(0, self.max_random_degree)
        return self._trim([self.base.random(rng) for _ in range(d + 1)])

    def spanning(self):
        return [self.zero, self.one, self.gen(), self.add(self.one, self.gen())]

    def ann_bound(self, a) -> int:
        if len(a) <= 1:
            return self.base.ann_bound(a[0] if a else self.base.zero)
        if isinstance(self.base, IntegerRing):
            return 0
        raise RingError(f"no annihilator bound for non-constant {self.fmt(a)} in {self.descriptor}")

    def is_nilpotent(self, a) -> bool:
        if len(a) <= 1:
            return not a or self.base.is_nilpotent(a[0])
        if isinstance(self.base, IntegerRing):
            return False
        return super().is_nilpotent(a)

    def evaluate(self, p, value, target: Ring, structure: Callable[[Any], Any]):
        """Horner evaluation of ``p`` at ``value`` in ``target``."""
        acc = target.zero
        for c in reversed(p):
            acc = target.add(target.mul(acc, value), structure(c))
        return acc

    def fmt(self, x):
        if not x:
            return "0"
        terms = []
        for k, c in enumerate(x):
            if self.base.is_zero(c):
                continue
            s = self.base.fmt(c)
            if k:
                s = f"({s})*{self.var}" + (f"^{k}" if k > 1 else "")
            terms.append(s)
        return " + ".join(terms)


class PolyQuotient(Ring):
    """``base[var]/(f)`` for a monic ``f``; payloads are remainders of fixed length."""

    def __init__(self, base: Ring, modulus: Sequence, var: str = "x") -> None:
        if not modulus or not base.eq(modulus[-1], base.one):
            raise RingError("modulus must be monic")
        self.base, self.var = base, var
        self.modulus = tuple(modulus)
        self.d = len(modulus) - 1
        if self.d < 1:
            raise RingError("modulus must have positive degree")
        self.zero = (base.zero,) * self.d
        self.one = (base.one,) + (base.zero,) * (self.d - 1)
        self.canonical = base.canonical
        self.size = base.size ** self.d if base.size else None

    @property
    def descriptor(self) -> str:
        if all(self.base.is_zero(c) for c in self.modulus[:-1]):
            return f"quot:poly:{self.base.descriptor}:{self.var}:{self.var}^{self.d}"
        return f"quot:poly:{self.base.descriptor}:{self.var}:{self.modulus}"

    def gen(self):
        if self.d == 1:
            return (self.base.neg(self.modulus[0]),)
        return (self.base.zero, self.base.one) + (self.base.zero,) * (self.d - 2)

    def add(self, x, y):
        return tuple(self.base.add(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(self.base.neg(a) for a in x)

    def mul(self, x, y):
        b = self.base
        prod = [b.zero] * (2 * self.d - 1)
        for i, c in enumerate(x):
            if b.is_zero(c):
                continue
            for j, e in enumerate(y):
                prod[i + j] = b.add(prod[i + j], b.mul(c, e))
        return self._reduce(prod)

    def _reduce(self, prod: list) -> tuple:
        b, d, f = self.base, self.d, self.modulus
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if b.is_zero(c):
                continue
            for i in range(d):
                prod[k - d + i] = b.sub(prod[k - d + i], b.mul(c, f[i]))
            prod[k] = b.zero
        return tuple(prod[:d]) if len(prod) >= d else tuple(prod) + (b.zero,) * (d - len(prod))

    def is_zero(self, x):
        return all(self.base.is_zero(c) for c in x)

    def eq(self, x, y):
        return all(self.base.eq(a, b) for a, b in zip(x, y))

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.d - 1)

    def const(self, c):
        return (c,) + (self.base.zero,) * (self.d - 1)

    def elements(self):
        from itertools import product

        return (tuple(c) for c in product(list(self.base.elements()), repeat=self.d))

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.d))

    def fmt(self, x):
        terms = []
        for k, c in enumerate(x):
            if self.base.is_zero(c):
                continue
            s = self.base.fmt(c)
            terms.append(s if k == 0 else f"{s}*{self.var}" + (f"^{k}" if k > 1 else ""))
        return " + ".join(terms) or "0"


# --- localization ---------------------------------------------------------------

class Localization(Ring):
    """``base[1/a]``; payload ``(x, k)`` stands for ``x / a^k``, stored unreduced."""

    canonical = False

    def __init__(self, base: Ring, a) -> None:
        if base.is_nilpotent(a):
            raise RingError(f"localization of {base.descriptor} at nilpotent {base.fmt(a)} is the zero ring")
        self.base, self.a = base, a
        self.bound = base.ann_bound(a)
        self._apow = [base.one]
        self.zero, self.one = (base.zero, 0), (base.one, 0)
        self._size: int | None = None

    @property
    def descriptor(self) -> str:
        return f"loc:{self.base.descriptor}:{self.base.fmt(self.a)}"

    def apow(self, k: int):
        while len(self._apow) <= k:
            self._apow.append(self.base.mul(self._apow[-1], self.a))
        return self._apow[k]

    @property
    def size(self):  # type: ignore[override]
        if self.base.size is None:
            return None
        if self._size is None:
            self._size = len(list(self.elements()))
        return self._size

    def add(self, x, y):
        b = self.base
        (p, k), (q, m) = x, y
        if k == m:
            return (b.add(p, q), k)
        if k < m:
            return (b.add(b.mul(p, self.apow(m - k)), q), m)
        return (b.add(p, b.mul(q, self.apow(k - m))), k)

    def neg(self, x):
        return (self.base.neg(x[0]), x[1])

    def mul(self, x, y):
        return (self.base.mul(x[0], y[0]), x[1] + y[1])

    def is_zero(self, x):
        return self.base.is_zero(self.base.mul(self.apow(self.bound), x[0]))

    def eq(self, x, y):
        b = self.base
        (p, k), (q, m) = x, y
        return self.is_zero((b.sub(b.mul(p, self.apow(m)), b.mul(q, self.apow(k))), 0))

    def from_int(self, n):
        return (self.base.from_int(n), 0)

    def embed(self, x):
        return (x, 0)

    def inverse(self, x):
        p, k = x
        for j in range(self.bound + 2):
            # p * y = a^j for some y in base  =>  (p/a^k)^{-1} = y a^k / a^j
            try:
                y = self.base.inverse(p)
                return (self.base.mul(y, self.apow(k)), 0)
            except RingError:
                pass
            if self.base.size is not None:
                target = self.apow(j)
                for y in self.base.elements():
                    if self.base.eq(self.base.mul(p, y), target):
                        return (self.base.mul(y, self.apow(k)), j)
            elif self.base.eq(p, self.apow(j)):
                return (self.apow(k), j)
        raise RingError(f"{self.fmt(x)} is not recognised as a unit of {self.descriptor}")

    def elements(self):
        # lambda_a is onto when the base is finite: a is a unit of the finite ring R_a
        if self.base.size is None:
            raise RingError(f"{self.descriptor} is infinite")
        reps: list = []
        for x in self.base.elements():
            e = (x, 0)
            if not any(self.eq(e, r) for r in reps):
                reps.append(e)
        return iter(reps)

    def random(self, rng):
        return (self.base.random(rng), rng.randint(0, 3))

    def spanning(self):
        return [self.zero, self.one, (self.base.one, 1)]

    def ann_bound(self, a) -> int:
        return self.bound

    def fmt(self, x):
        p, k = x
        return self.base.fmt(p) if k == 0 else f"({self.base.fmt(p)})/{self.base.fmt(self.a)}^{k}"


# --- ideals, doubles, semidirect products ------------------------------------------

class RingHom:
    """A ring map given by a payload function."""

    def __init__(self, source: Ring, target: Ring, fn: Callable[[Any], Any], tag: str = "custom") -> None:
        self.source, self.target, self.fn, self.tag = source, target, fn, tag

    def __call__(self, x):
        if isinstance(x, Elem):
            return Elem(self.target, self.fn(x.value))
        return self.fn(x)

    def __matmul__(self, other: "RingHom") -> "RingHom":
        """``self @ other`` is ``self`` after ``other``."""
        return RingHom(other.source, self.target, lambda x: self.fn(other.fn(x)), f"{self.tag}.{other.tag}")

    def __repr__(self) -> str:
        return f"RingHom[{self.tag}]({self.source.descriptor} -> {self.target.descriptor})"


def identity(ring: Ring) -> RingHom:
    return RingHom(ring, ring, lambda x: x, "id")


def check_hom(f: RingHom, samples: Iterable[tuple[Any, Any]]) -> tuple[int, list[dict]]:
    """Exact check of ``f(x+y)``, ``f(xy)``, ``f(0)``, ``f(1)`` on sample pairs."""
    s, t = f.source, f.target
    bad: list[dict] = []
    if not t.eq(f(s.one), t.one) or not t.is_zero(f(s.zero)):
        bad.append({"unit": True})
    n = 0
    for x, y in samples:
        n += 1
        fx, fy = f(x), f(y)
        if not t.eq(f(s.add(x, y)), t.add(fx, fy)):
            bad.append({"op": "+", "x": s.fmt(x), "y": s.fmt(y)})
        if not t.eq(f(s.mul(x, y)), t.mul(fx, fy)):
            bad.append({"op": "*", "x": s.fmt(x), "y": s.fmt(y)})
    return n, bad


def sample_pairs(ring: Ring, count: int, rng: random.Random) -> list[tuple[Any, Any]]:
    xs = ring.sample(rng, count)
    ys = ring.sample(rng, count)
    rng.shuffle(ys)
    return list(zip(xs, ys))


class Ideal:
    """``ker(quotient)``, optionally annotated with generators and a ring section."""

    def __init__(self, ring: Ring, quotient: RingHom, generators: Sequence = (), name: str = "",
                 section: RingHom | None = None) -> None:
        self.ring, self.quotient = ring, quotient
        self.generators = tuple(generators)
        self.name = name
        self.section = section
        for g in self.generators:
            if not self.contains(g):
                raise RingError(f"generator {ring.fmt(g)} is not in the kernel")

    def __repr__(self) -> str:
        return f"Ideal({self.name} in {self.ring.descriptor})"

    def contains(self, x) -> bool:
        return self.quotient.target.is_zero(self.quotient(x))

    def elements(self) -> list:
        return [x for x in self.ring.elements() if self.contains(x)]

    def random(self, rng: random.Random):
        r = self.ring
        if r.size is not None:
            cache = self.__dict__.setdefault("_members", self.elements())
            return rng.choice(cache)
        acc = r.zero
        for g in self.generators:
            acc = r.add(acc, r.mul(g, r.random(rng)))
        return acc


def quotient_ideal(ring: Ring, token: str) -> Ideal:
    """Ideal named by ``token`` (an integer ``m`` or a power ``x^k`` of the variable)."""
    token = token.strip()
    if isinstance(ring, (IntegerRing, ZMod)) and token.lstrip("-").isdigit():
        m = int(token)
        if isinstance(ring, IntegerRing):
            if m == 0:
                raise RingError("the zero ideal has no registered quotient")
            q = ZMod(abs(m))
        else:
            q = ZMod(gcd(m, ring.n))
        pi = RingHom(ring, q, q.from_int, "pi")
        return Ideal(ring, pi, [ring.from_int(m)], name=f"({m})")
    if isinstance(ring, (PolyRing, PolyQuotient)):
        var = ring.var
        if token == var:
            k = 1
        elif token.startswith(var + "^") and token[len(var) + 1:].isdigit():
            k = int(token[len(var) + 1:])
        else:
            raise RingError(f"unknown ideal {token!r} for {ring.descriptor}")
        b = ring.base
        if isinstance(ring, PolyQuotient):
            if any(not b.is_zero(c) for c in ring.modulus[:-1]) or k > ring.d:
                raise RingError(f"({token}) does not contain the modulus of {ring.descriptor}")
        if k == 1:
            pi = RingHom(ring, b, lambda p: p[0] if p else b.zero, "pi")
            embed = ring.const if isinstance(ring, PolyRing) else ring.const
            section = RingHom(b, ring, embed, "f")
        else:
            target = PolyQuotient(b, (b.zero,) * k + (b.one,), var)
            pi = RingHom(ring, target, lambda p: tuple(p[:k]) + (b.zero,) * max(0, k - len(p)), "pi")
            section = None
        gen = ring.gen() if k == 1 else ring.pow(ring.gen(), k)
        return Ideal(ring, pi, [gen], name=f"({token})", section=section)
    raise RingError(f"no registered quotient {token!r} for {ring.descriptor}")


class DoubleRing(Ring):
    """``D(R, I) = R x_{R/I} R``: pairs ``(a1, a2)`` with ``a1 - a2`` in ``I``."""

    def __init__(self, base: Ring, ideal: Ideal) -> None:
        self.base, self.ideal = base, ideal
        self.zero, self.one = (base.zero, base.zero), (base.one, base.one)
        self.canonical = base.canonical
        self.size = None
        if base.size is not None:
            self.size = base.size * len(ideal.elements())
        self.p1 = RingHom(self, base, lambda x: x[0], "p1")
        self.p2 = RingHom(self, base, lambda x: x[1], "p2")
        self.diag = RingHom(base, self, lambda x: (x, x), "diag")

    @property
    def descriptor(self) -> str:
        return f"double:{self.base.descriptor}:{self.ideal.name.strip('()')}"

    def make(self, a1, a2):
        if not self.ideal.contains(self.base.sub(a1, a2)):
            raise RingError("components differ by an element outside the ideal")
        return (a1, a2)

    def from_semi(self, a, s):
        """``(a; s) = (a, a + s)_I``."""
        return self.make(a, self.base.add(a, s))

    def to_semi(self, x):
        """``(a1, a2)_I = (a1; a2 - a1)``."""
        return (x[0], self.base.sub(x[1], x[0]))

    def add(self, x, y):
        b = self.base
        return (b.add(x[0], y[0]), b.add(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        b = self.base
        return (b.mul(x[0], y[0]), b.mul(x[1], y[1]))

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def eq(self, x, y):
        return self.base.eq(x[0], y[0]) and self.base.eq(x[1], y[1])

    def from_int(self, n):
        c = self.base.from_int(n)
        return (c, c)

    def elements(self):
        members = self.ideal.elements()
        return ((a, self.base.add(a, s)) for a in self.base.elements() for s in members)

    def random(self, rng):
        a = self.base.random(rng)
        return (a, self.base.add(a, self.ideal.random(rng)))

    def fmt(self, x):
        return f"({self.base.fmt(x[0])}, {self.base.fmt(x[1])})_I"


def double_ring(base: Ring, ideal: Ideal) -> DoubleRing:
    return DoubleRing(base, ideal)


@dataclass
class Algebra:
    """A non-unital ``R``-algebra living inside an ambient ring.

    ``structure`` maps ``R`` into the ambient ring; ``member`` cuts out the subset.
    """

    ambient: Ring
    structure: RingHom
    member: Callable[[Any], bool]
    sampler: Callable[[random.Random], Any]
    name: str
    finite_members: Callable[[], list] | None = None


class SemidirectRing(Ring):
    """``R |x A`` with ``(a; b)(c; d) = (ac; ad + bc + bd)``."""

    def __init__(self, base: Ring, algebra: Algebra) -> None:
        self.base, self.alg = base, algebra
        amb = algebra.ambient
        self.zero, self.one = (base.zero, amb.zero), (base.one, amb.zero)
        self.canonical = base.canonical and amb.canonical
        self.size = None
        if base.size is not None and algebra.finite_members is not None:
            self.size = base.size * len(algebra.finite_members())

    @property
    def descriptor(self) -> str:
        return f"semi:{self.base.descriptor}:{self.alg.name}"

    def make(self, a, b):
        if not self.alg.member(b):
            raise RingError("second component is outside the algebra")
        return (a, b)

    def add(self, x, y):
        amb = self.alg.ambient
        return (self.base.add(x[0], y[0]), amb.add(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.alg.ambient.neg(x[1]))

    def mul(self, x, y):
        amb, phi = self.alg.ambient, self.alg.structure
        (a, b), (c, d) = x, y
        second = amb.add(amb.add(amb.mul(phi(a), d), amb.mul(b, phi(c))), amb.mul(b, d))
        return (self.base.mul(a, c), second)

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.alg.ambient.is_zero(x[1])

    def eq(self, x, y):
        return self.base.eq(x[0], y[0]) and self.alg.ambient.eq(x[1], y[1])

    def from_int(self, n):
        return (self.base.from_int(n), self.alg.ambient.zero)

    def elements(self):
        if self.alg.finite_members is None:
            raise RingError(f"{self.descriptor} is infinite")
        members = self.alg.finite_members()
        return ((a, b) for a in self.base.elements() for b in members)

    def random(self, rng):
        return (self.base.random(rng), self.alg.sampler(rng))

    def fmt(self, x):
        return f"({self.base.fmt(x[0])}; {self.alg.ambient.fmt(x[1])})"


def ideal_algebra(ideal: Ideal) -> Algebra:
    r = ideal.ring
    finite = ideal.elements if r.size is not None else None
    return Algebra(r, identity(r), ideal.contains, ideal.random, ideal.name.strip("()"), finite)


def semidirect(base: Ring, algebra: Algebra) -> SemidirectRing:
    return SemidirectRing(base, algebra)


def double_to_semidirect(d: DoubleRing) -> tuple[SemidirectRing, RingHom, RingHom]:
    """``D(R, I) ~ R |x I`` via ``(a1, a2) -> (a1; a2 - a1)``; returns target, map, inverse."""
    semi = SemidirectRing(d.base, ideal_algebra(d.ideal))
    fwd = RingHom(d, semi, d.to_semi, "to_semi")
    back = RingHom(semi, d, lambda x: d.from_semi(x[0], x[1]), "from_semi")
    return semi, fwd, back


def split_double_iso(d: DoubleRing) -> tuple[SemidirectRing, RingHom, RingHom]:
    """For a split quotient ``pi`` with section ``f``: ``D(R, I) ~ R/I |x (I x I)``.

    ``(a1, a2) -> (pi(a1); (a1 - f pi a1, a2 - f pi a2))``.
    """
    ideal = d.ideal
    f, pi = ideal.section, ideal.quotient
    if f is None:
        raise RingError(f"{ideal} has no registered section")
    r, q = d.base, pi.target
    pair = ProductRing(r, r)
    finite = None
    if r.size is not None:
        members = ideal.elements()
        finite = lambda: [(a, b) for a in members for b in members]  # noqa: E731
    alg = Algebra(
        pair,
        RingHom(q, pair, lambda x: (f(x), f(x)), "diag.f"),
        lambda x: ideal.contains(x[0]) and ideal.contains(x[1]),
        lambda rng: (ideal.random(rng), ideal.random(rng)),
        f"{ideal.name.strip('()')}x{ideal.name.strip('()')}",
        finite,
    )
    target = SemidirectRing(q, alg)

    def fwd(x):
        a1, a2 = x
        return (pi(a1), (r.sub(a1, f(pi(a1))), r.sub(a2, f(pi(a2)))))

    def back(y):
        xi, (s1, s2) = y
        base = f(xi)
        return (r.add(base, s1), r.add(base, s2))

    return target, RingHom(d, target, fwd, "split_iso"), RingHom(target, d, back, "split_iso_inv")


def split_thetas(d: DoubleRing) -> tuple[RingHom, RingHom]:
    """``theta_1: x -> (x, f pi x)`` and ``theta_2: x -> (f pi x, x)``, both ``R -> D(R, I)``."""
    f, pi = d.ideal.section, d.ideal.quotient
    if f is None:
        raise RingError("quotient does not split")
    return (RingHom(d.base, d, lambda x: (x, f(pi(x))), "theta1"),
            RingHom(d.base, d, lambda x: (f(pi(x)), x), "theta2"))


# --- localization plumbing ----------------------------------------------------------

def localize(base: Ring, a) -> tuple[Localization, RingHom]:
    loc = Localization(base, a)
    return loc, RingHom(base, loc, loc.embed, "lambda")


def t_localized(base: Ring, a, var: str = "t") -> tuple[Algebra, Localization, PolyRing]:
    """``t R_a[t]`` as an ``R``-algebra inside ``R_a[t]``."""
    loc = Localization(base, a)
    ring = PolyRing(loc, var)

    def sampler(rng):
        d = rng.randint(1, 3)
        return ring._trim([loc.zero] + [loc.random(rng) for _ in range(d)])

    alg = Algebra(
        ring,
        RingHom(base, ring, lambda r: ring.const((r, 0)), "lambda.const"),
        lambda p: not p or loc.is_zero(p[0]),
        sampler,
        f"tloc{base.fmt(a)}",
    )
    return alg, loc, ring


def theta_map(base: Ring, a, var: str = "t") -> tuple[RingHom, RingHom]:
    """``theta: R[t] -> R |x tR_a[t]`` and ``iota: R |x tR_a[t] -> R_a[t]``."""
    alg, loc, loc_poly = t_localized(base, a, var)
    semi = SemidirectRing(base, alg)
    src = PolyRing(base, var)

    def theta(p):
        c0 = p[0] if p else base.zero
        rest = loc_poly._trim([loc.zero] + [(c, 0) for c in p[1:]])
        return (c0, rest)

    def iota(x):
        r, q = x
        return loc_poly.add(loc_poly.const((r, 0)), q)

    return RingHom(src, semi, theta, "theta"), RingHom(semi, loc_poly, iota, "iota")


def poly_lambda(base: Ring, a, var: str = "t") -> RingHom:
    """Coefficientwise localization ``R[t] -> R_a[t]``."""
    loc = Localization(base, a)
    src, dst = PolyRing(base, var), PolyRing(loc, var)
    return RingHom(src, dst, lambda p: dst._trim([(c, 0) for c in p]), "lambda")


def eval_map(source: PolyRing, target: Ring, value, structure: RingHom | None = None) -> RingHom:
    """``Ev: A[t] -> B`` evaluating at ``value`` along ``structure: A -> B``."""
    if structure is None:
        structure = identity(source.base)
    return RingHom(source, target, lambda p: source.evaluate(p, value, target, structure), "Ev")


def substitution(ring: PolyRing, factor) -> RingHom:
    """``p(t) -> p(factor * t)`` on ``ring = A[t]`` with ``factor`` in ``A``."""
    return eval_map(ring, ring, ring.monomial(factor, 1), RingHom(ring.base, ring, ring.const, "const"))


@dataclass
class ColimitResult:
    status: str
    preimages: list[dict]
    identifications: list[dict]
    failures: list[dict]


def colimit_stabilization_check(base: Ring, a, samples: int, depth: int, rng: random.Random,
                                var: str = "t") -> ColimitResult:
    """Directed system ``A_i = R[t]``, ``f_ij = Ev at a^{j-i} t``, colimit ``R |x tR_a[t]``.

    Finds stage-``j`` preimages of sampled colimit elements and, for sampled
    pairs with equal images, the stage where they already agree.
    """
    alg, loc, loc_poly = t_localized(base, a, var)
    semi = SemidirectRing(base, alg)
    src = PolyRing(base, var)

    def to_colimit(p, j):
        c0 = p[0] if p else base.zero
        rest = loc_poly._trim([loc.zero] + [(c, j * k) for k, c in enumerate(p) if k])
        return (c0, rest)

    def transition(p, i, j):
        return substitution(src, base.pow(a, j - i))(p) if j > i else p

    preimages, idents, failures = [], [], []
    for _ in range(samples):
        x = semi.random(rng)
        r, q = x
        found = None
        for j in range(depth + 1):
            coeffs = [r]
            for k, (num, e) in enumerate(q):
                if k == 0:
                    continue
                if j * k < e:
                    break
                coeffs.append(base.mul(num, base.pow(a, j * k - e)))
            else:
                p = src._trim(coeffs)
                if semi.eq(to_colimit(p, j), x):
                    found = (j, p)
                    break
        if found is None:
            failures.append({"kind": "preimage", "x": semi.fmt(x)})
        else:
            preimages.append({"x": semi.fmt(x), "stage": found[0], "preimage": src.fmt(found[1])})
    for _ in range(samples):
        i, j = rng.randint(0, 2), rng.randint(0, 2)
        p = src.random(rng)
        killed = src._trim([base.zero] + [_killed_by_power(base, a, rng) for _ in range(2)])
        if j >= i:
            q = src.add(transition(p, i, j), killed)
        else:
            q = transition(p, 0, j)
            p = src.add(transition(q, j, i), killed)
            i, j = j, i
            p, q = q, p
        if not semi.eq(to_colimit(p, i), to_colimit(q, j)):
            failures.append({"kind": "not-identified", "p": src.fmt(p), "q": src.fmt(q)})
            continue
        for k in range(max(i, j), max(i, j) + depth + 1):
            if src.eq(transition(p, i, k), transition(q, j, k)):
                idents.append({"p": src.fmt(p), "i": i, "q": src.fmt(q), "j": j, "stage": k})
                break
        else:
            failures.append({"kind": "stage", "p": src.fmt(p), "q": src.fmt(q)})
    status = "verified" if not failures else "inconclusive"
    return ColimitResult(status, preimages, idents, failures)


def _killed_by_power(base: Ring, a, rng: random.Random):
    """A random element of ``ker(lambda_a)`` (zero for domains)."""
    if base.size is None:
        return base.zero
    loc = Localization(base, a)
    members = base.__dict__.setdefault(("_kernel", a), [x for x in base.elements() if loc.is_zero((x, 0))])
    return rng.choice(members)


# --- descriptor grammar ---------------------------------------------------------------

def parse_ring(descriptor: str) -> Ring:
    """Parse ``int | zmod:<n> | poly:<ring>:<var> | loc:<ring>:<elt> |
    double:<ring>:<ideal> | semi:<ring>:<alg> | quot:<ring>:<ideal>``.

    ``<ideal>`` names a registered quotient map: an integer ``m`` over ``int``
    or ``zmod``, or ``x^k`` / ``x`` over a polynomial ring in ``x``.  ``<alg>``
    is an ideal token (``A = I``) or ``tloc<a>`` for ``t R_a[t]``.
    """
    tokens = descriptor.strip().split(":")
    ring, rest = _parse(tokens)
    if rest:
        raise RingError(f"trailing tokens {rest} in {descriptor!r}")
    return ring


def _parse(tokens: list[str]) -> tuple[Ring, list[str]]:
    if not tokens or not tokens[0]:
        raise RingError("empty ring descriptor")
    head, rest = tokens[0].lower(), tokens[1:]

    def need(k: int) -> None:
        if len(rest) < k:
            raise RingError(f"{head}: missing arguments")

    if head == "int":
        return IntegerRing(), rest
    if head == "zmod":
        need(1)
        if not rest[0].isdigit():
            raise RingError(f"zmod modulus {rest[0]!r} is not a positive integer")
        return ZMod(int(rest[0])), rest[1:]
    if head in ("poly", "loc", "double", "semi", "quot"):
        inner, rest = _parse(rest)
        if not rest:
            raise RingError(f"{head}: missing final argument")
        arg, rest = rest[0], rest[1:]
        if head == "poly":
            return PolyRing(inner, arg), rest
        if head == "loc":
            return Localization(inner, inner.from_int(int(arg))), rest
        if head == "double":
            return DoubleRing(inner, quotient_ideal(inner, arg)), rest
        if head == "quot":
            return quotient_ideal(inner, arg).quotient.target, rest
        if arg.startswith("tloc"):
            alg, _, _ = t_localized(inner, inner.from_int(int(arg[4:])))
            return SemidirectRing(inner, alg), rest
        return SemidirectRing(inner, ideal_algebra(quotient_ideal(inner, arg))), rest
    raise RingError(f"unknown ring constructor {head!r}")


def parse_ideal(ring: Ring, token: str) -> Ideal:
    return quotient_ideal(ring, token)


def maximal_localizations(ring: ZMod) -> list[tuple[int, RingHom]]:
    """``lambda_M: Z/n -> (Z/n)_M = Z/p^e`` for each maximal ideal ``M = (p)``."""
    n, out, p = ring.n, [], 2
    m = n
    while p * p <= m or m > 1:
        if p * p > m:
            p = m
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            q = ZMod(p ** e)
            out.append((p, RingHom(ring, q, q.from_int, "lambda_M")))
        p += 1
    return out
