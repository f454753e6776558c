"""Closed-form elementary divisor multiplicities for skew incidence matrices.

Everything here is exact integer arithmetic on small combinatorial objects:
the coefficients ``d_k`` of ``(1 + x + ... + x^(p-1))^(n+1)``, tuples
``s = (s_0, ..., s_{t-1})`` with ``1 <= s_i <= n`` and their weights
``d(s) = prod d_{p s_{i+1} - s_i}`` (indices mod t), and the tuple families
that sum to each multiplicity.

Tuple sums run over all of ``[n]^t`` rather than the admissible subset,
since inadmissible tuples have weight zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, prod

from sympy import factorint, isprime

from .profile import DivisorProfile


# -- q-binomials and coefficient tables -----------------------------------------


def q_binomial(m: int, l: int, q: int) -> int:
    """Gaussian binomial [m, l]_q, the number of l-subspaces of GF(q)^m."""
    if l < 0 or m < 0 or l > m:
        raise ValueError(f"q_binomial needs 0 <= l <= m, got m={m}, l={l}")
    num = prod(q ** (m - i) - 1 for i in range(l))
    den = prod(q ** (i + 1) - 1 for i in range(l))
    out, rem = divmod(num, den)
    assert rem == 0
    return out


@dataclass(frozen=True)
class CoefficientTable:
    p: int
    n_plus_1: int
    d: tuple[int, ...]

    @property
    def degree(self) -> int:
        return (self.p - 1) * self.n_plus_1

    def __getitem__(self, k: int) -> int:
        # d_k vanishes outside [0, (p-1)(n+1)]
        if 0 <= k <= self.degree:
            return self.d[k]
        return 0


def _dk_convolution(p: int, n_plus_1: int) -> list[int]:
    coeffs = [1]
    for _ in range(n_plus_1):
        nxt = [0] * (len(coeffs) + p - 1)
        for i, c in enumerate(coeffs):
            for j in range(p):
                nxt[i + j] += c
        coeffs = nxt
    return coeffs


def _dk_alternating(p: int, n_plus_1: int, k: int) -> int:
    n = n_plus_1 - 1
    return sum((-1) ** j * comb(n + 1, j) * comb(n + k - j * p, n) for j in range(k // p + 1))


def dk_table(p: int, n_plus_1: int) -> CoefficientTable:
    """Coefficients of ``(1 + x + ... + x^(p-1))^(n+1)``, cross-checked two ways."""
    if not isprime(p):
        raise ValueError(f"p={p} is not prime")
    if n_plus_1 < 1:
        raise ValueError(f"n+1={n_plus_1} must be positive")
    conv = _dk_convolution(p, n_plus_1)
    alt = [_dk_alternating(p, n_plus_1, k) for k in range(len(conv))]
    if conv != alt:
        raise AssertionError(f"d_k mismatch for p={p}, n+1={n_plus_1}: {conv} != {alt}")
    return CoefficientTable(p, n_plus_1, tuple(conv))


# -- tuples -------------------------------------------------------------------


@dataclass(frozen=True)
class HamadaTuple:
    s: tuple[int, ...]
    lam: tuple[int, ...] = field(compare=False)
    d: int = field(compare=False)

    @property
    def admissible(self) -> bool:
        return self.d != 0


def _lambdas(s: tuple[int, ...], p: int) -> tuple[int, ...]:
    t = len(s)
    return tuple(p * s[(i + 1) % t] - s[i] for i in range(t))


def make_tuple(s, p: int, table: CoefficientTable) -> HamadaTuple:
    s = tuple(s)
    lam = _lambdas(s, p)
    return HamadaTuple(s, lam, prod(table[k] for k in lam))


def all_tuples(n: int, t: int, p: int) -> list[HamadaTuple]:
    """Every tuple of [n]^t with its weight, in lexicographic order."""
    table = dk_table(p, n + 1)
    return [make_tuple(s, p, table) for s in itertools.product(range(1, n + 1), repeat=t)]


def hamada_set(n: int, t: int, p: int) -> list[HamadaTuple]:
    """Tuples with 1 <= s_i <= n and 0 <= p s_{i+1} - s_i <= (p-1)(n+1)."""
    if n < 1 or t < 1:
        raise ValueError("hamada_set needs n >= 1 and t >= 1")
    top = (p - 1) * (n + 1)
    return [h for h in all_tuples(n, t, p) if all(0 <= x <= top for x in h.lam)]


def weight(s, n: int, p: int) -> int:
    """d(s) for a single tuple."""
    return make_tuple(s, p, dk_table(p, n + 1)).d


def family_H(i: int, t: int) -> list[tuple[int, ...]]:
    """Tuples in [3]^t with exactly i twos."""
    if not 0 <= i <= t:
        raise ValueError(f"need 0 <= i <= t, got i={i}, t={t}")
    return [s for s in itertools.product((1, 2, 3), repeat=t) if s.count(2) == i]


def _alpha(s: tuple[int, ...], dim: int) -> int:
    return sum(max(0, dim - x) for x in s)


def _beta(s: tuple[int, ...], dim: int, n: int) -> int:
    return sum(max(0, x - (n + 1 - dim)) for x in s)


def family_H_alpha(alpha: int, s: int, n: int, t: int, p: int) -> list[tuple[int, ...]]:
    """Admissible tuples with sum of max(0, s - s_i) equal to alpha."""
    return [h.s for h in hamada_set(n, t, p) if _alpha(h.s, s) == alpha]


def family_beta_H(beta: int, r: int, n: int, t: int, p: int) -> list[tuple[int, ...]]:
    """Admissible tuples with sum of max(0, s_i - (n+1-r)) equal to beta.

    Equivalently the reflections ``n+1-s_i`` of the tuples in
    ``family_H_alpha(beta, r, ...)``.
    """
    return [h.s for h in hamada_set(n, t, p) if _beta(h.s, r, n) == beta]


def family_Gamma(i: int, r: int, s: int, n: int, t: int, p: int, *, admissible_only: bool = True):
    """Tuples contributing to exponent i of the product A_{r,1} A_{1,s}.

    A tuple belongs when its alpha (w.r.t. s) and beta (w.r.t. r) sum to i,
    with 0 <= alpha <= t(s-1) and 0 <= beta <= t(r-1).  With
    ``admissible_only=False`` the tuples range over all of [n]^t.
    """
    pool = hamada_set(n, t, p) if admissible_only else all_tuples(n, t, p)
    out = []
    for h in pool:
        a, b = _alpha(h.s, s), _beta(h.s, r, n)
        if a + b == i and 0 <= a <= t * (s - 1) and 0 <= b <= t * (r - 1):
            out.append(h.s)
    return out


# -- profiles -----------------------------------------------------------------


def _check_params(n: int, t: int, p: int, r: int, s: int):
    if not isprime(p):
        raise ValueError(f"p={p} is not prime")
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    for name, val in (("r", r), ("s", s)):
        if not 1 <= val <= n:
            raise ValueError(f"{name}={val} must satisfy 1 <= {name} <= n={n}")


def _gamma_sums(n: int, t: int, p: int, r: int, s: int) -> dict[int, int]:
    sums: dict[int, int] = {}
    for h in all_tuples(n, t, p):
        if not h.d:
            continue
        a, b = _alpha(h.s, s), _beta(h.s, r, n)
        if a <= t * (s - 1) and b <= t * (r - 1):
            sums[a + b] = sums.get(a + b, 0) + h.d
    return sums


def theoremC_profile(n: int, t: int, p: int, r: int, s: int) -> DivisorProfile:
    """p-adic elementary divisor multiplicities of A_{r,1} A_{1,s} in PG(n, p^t)."""
    _check_params(n, t, p, r, s)
    mult = _gamma_sums(n, t, p, r, s)
    top = t * (r + s)
    # the all-ones vector contributes a single divisor p^{t(r+s)}; Gamma sums stop at t(r+s-2)
    mult[top] = mult.get(top, 0) + 1
    return DivisorProfile(p, mult)


def corollary_pranks(n: int, t: int, p: int, r: int, s: int) -> dict[int, int]:
    """Multiplicities e_i(A_{r,s}) for 0 <= i < t; entry 0 is the p-rank."""
    _check_params(n, t, p, r, s)
    sums = _gamma_sums(n, t, p, r, s)
    return {i: sums.get(i, 0) for i in range(t)}


def theoremB_values(t: int, p: int) -> dict[int, int]:
    """e_{2t+i}(A_{2,2}) in PG(3, p^t) for 0 <= i <= t."""
    table = dk_table(p, 4)
    return {2 * t + i: sum(make_tuple(s, p, table).d for s in family_H(i, t)) for i in range(t + 1)}


def theoremA_full_profile(t: int, p: int) -> DivisorProfile:
    """Complete elementary divisor profile of the skew-lines matrix of PG(3, p^t)."""
    q = p**t
    upper = theoremB_values(t, p)
    mult = dict(upper)
    for i in range(t):
        mult[i] = upper[3 * t - i]
    mult[t] = q**4 + q**2 - sum(mult[i] for i in range(t))
    mult[4 * t] = 1
    return DivisorProfile(p, mult)


# -- strongly regular graph data ------------------------------------------------


@dataclass(frozen=True)
class SrgSpectrum:
    q: int
    v: int
    k: int
    lam: int
    mu: int
    eigenvalues: tuple[int, int, int]
    multiplicities: tuple[int, int, int]


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, t) with q = p^t, or raise ValueError."""
    f = factorint(q) if q > 1 else {}
    if len(f) != 1:
        raise ValueError(f"q={q} is not a prime power")
    ((p, t),) = f.items()
    return p, t


def srg_spectrum(q: int) -> SrgSpectrum:
    """Parameters and spectrum of the skew-lines graph of PG(3, q)."""
    prime_power(q)
    return SrgSpectrum(
        q=q,
        v=q**4 + q**3 + 2 * q**2 + q + 1,
        k=q**4,
        lam=q**4 - q**3 - q**2 + q,
        mu=q**4 - q**3,
        eigenvalues=(q, -(q**2), q**4),
        multiplicities=(q**4 + q**2, q**3 + q**2 + q, 1),
    )


def determinant_valuation(t: int, q: int) -> int:
    """p-adic valuation of det A_{2,2} in PG(3, q), read off the spectrum."""
    return t * (q**4 + q**2) + 2 * t * (q**3 + q**2 + q) + 4 * t
