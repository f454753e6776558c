"""Arithmetic in GF(p^t) using the polynomial basis.

Elements are stored as coefficient tuples ``(c_0, ..., c_{t-1})`` of the
residue ``c_0 + c_1 x + ... + c_{t-1} x^{t-1}`` modulo a fixed monic
irreducible polynomial.  Each element also has an integer *index*, the
coefficient vector read as a base-``p`` number with ``c_0`` least
significant.  The index is what the vectorized geometry code works with,
via the lookup tables on :class:`FieldContext`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import isprime

MAX_ORDER = 2**16
TABLE_LIMIT = 2**12


def _poly_mod(a, m, p):
    """Remainder of ``a`` modulo monic ``m``; coefficient lists, low degree first."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    out = [c % p for c in a[:dm]]
    return out + [0] * (dm - len(out))


def _is_irreducible(m, p):
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_poly_mod(m, divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, t: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``t`` over Z/p.

    Candidates are compared on ``(c_0, c_1, ..., c_{t-1})``, low degree first.
    """
    for low in itertools.product(range(p), repeat=t):
        m = list(low) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldContext:
    """The finite field GF(p^t) realized as Z/p[x] / (modulus)."""

    p: int
    t: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.t < 1:
            raise ValueError(f"t={self.t} must be at least 1")
        object.__setattr__(self, "q", self.p**self.t)
        if self.q > MAX_ORDER:
            raise ValueError(f"q={self.q} exceeds the supported bound {MAX_ORDER}")
        m = tuple(int(c) % self.p for c in self.modulus)
        if len(m) != self.t + 1 or m[-1] != 1:
            raise ValueError("modulus must be monic of degree t")
        if not _is_irreducible(m, self.p):
            raise ValueError(f"modulus {m} is reducible over Z/{self.p}")
        object.__setattr__(self, "modulus", m)

    def __repr__(self):
        return f"FieldContext(p={self.p}, t={self.t}, modulus={self.modulus})"

    # -- index <-> coefficient conversion ---------------------------------

    def coeffs_of(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.t):
            index, c = divmod(index, self.p)
            out.append(c)
        return tuple(out)

    def index_of(self, coeffs) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(coeffs))

    # -- scalar arithmetic on indices --------------------------------------

    def _add(self, a: int, b: int) -> int:
        ca, cb = self.coeffs_of(a), self.coeffs_of(b)
        return self.index_of((x + y) % self.p for x, y in zip(ca, cb))

    def _neg(self, a: int) -> int:
        return self.index_of((-x) % self.p for x in self.coeffs_of(a))

    def _mul(self, a: int, b: int) -> int:
        ca, cb = self.coeffs_of(a), self.coeffs_of(b)
        prod = [0] * (2 * self.t - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.index_of(_poly_mod(prod, self.modulus, self.p))

    def _pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self._inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(q)")
        return self._pow(a, self.q - 2)

    # -- lookup tables (used by the geometry code) -------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        digits = np.array([self.coeffs_of(i) for i in range(self.q)], dtype=np.int64)
        weights = self.p ** np.arange(self.t, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % self.p
        return (summed @ weights).astype(np.int32)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        # discrete log tables from a generator of the multiplicative group
        gen = next(g for g in range(2, self.q) if self._order(g) == self.q - 1) if self.q > 2 else 1
        exp = np.empty(self.q - 1, dtype=np.int64)
        x = 1
        for k in range(self.q - 1):
            exp[k] = x
            x = self._mul(x, gen)
        log = np.zeros(self.q, dtype=np.int64)
        log[exp] = np.arange(self.q - 1)
        table = np.zeros((self.q, self.q), dtype=np.int32)
        nz = np.arange(1, self.q)
        table[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (self.q - 1)]
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self._neg(a) for a in range(self.q)], dtype=np.int32)

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int32)
        for a in range(1, self.q):
            inv[a] = self._inv(a)
        return inv

    def _order(self, g: int) -> int:
        x, k = g, 1
        while x != 1:
            x = self._mul(x, g)
            k += 1
        return k

    def _require_tables(self):
        if self.q > TABLE_LIMIT:
            raise ValueError(f"lookup tables are only built for q <= {TABLE_LIMIT}")

    # -- element construction ----------------------------------------------

    def element(self, value) -> FieldElement:
        """Build an element from an index or a coefficient sequence."""
        if isinstance(value, (int, np.integer)):
            if not 0 <= value < self.q:
                raise ValueError(f"index {value} outside [0, {self.q})")
            return FieldElement(self, self.coeffs_of(int(value)))
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) != self.t:
            raise ValueError(f"expected {self.t} coefficients, got {len(coeffs)}")
        return FieldElement(self, tuple(c % self.p for c in coeffs))

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def elements(self) -> list[FieldElement]:
        return enumerate_elements(self)


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldContext
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.ctx.index_of(self.coeffs)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ValueError("field elements belong to different contexts")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, tuple((a + b) % self.ctx.p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FieldElement(self.ctx, tuple((-a) % self.ctx.p for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.ctx.element(self.ctx._mul(self.index, other.index))

    def inverse(self) -> FieldElement:
        return self.ctx.element(self.ctx._inv(self.index))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        return self.ctx.element(self.ctx._pow(self.index, int(e)))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = str(c) if (c != 1 or i == 0) else ""
                terms.append(f"{coef}{mono}")
        return " + ".join(reversed(terms)) or "0"


def make_field(p: int, t: int = 1) -> FieldContext:
    """GF(p^t) with the lexicographically smallest monic irreducible modulus.

    >>> make_field(3, 2).modulus
    (1, 0, 1)
    """
    if not isprime(p):
        raise ValueError(f"p={p} is not prime")
    if t < 1:
        raise ValueError(f"t={t} must be at least 1")
    if p**t > MAX_ORDER:
        raise ValueError(f"q={p**t} exceeds the supported bound {MAX_ORDER}")
    return FieldContext(p, t, smallest_irreducible(p, t))


def enumerate_elements(ctx: FieldContext) -> list[FieldElement]:
    """All ``q`` elements ordered by index; position 0 is zero, position 1 is one."""
    return [ctx.element(i) for i in range(ctx.q)]


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    return a**e
