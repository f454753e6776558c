"""Exact integer linear algebra: Smith forms, p-local divisors, ranks.

Two independent routes compute elementary divisors:

* :func:`smith_normal_form` reduces a copy of the matrix over the integers
  with gcd pivoting and Python's arbitrary precision ints.
* :func:`p_elementary_divisors` works over Z/p^K with numpy, always
  choosing a pivot of minimal p-adic valuation.  Divisors ``p^i`` with
  ``i < K`` are read off exactly; ``K`` is doubled until the number of
  divisors found equals the rank of the matrix over Q.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from sympy import isprime, prevprime

from .profile import DivisorProfile

# products of two residues below this bound fit in int64
_INT64_MODULUS_LIMIT = 2**31


def as_integer_matrix(M) -> np.ndarray:
    """Exact 2-D integer array; int64 when it fits, Python ints otherwise."""
    if hasattr(M, "to_int"):
        M = M.to_int()
    arr = np.asarray(M)
    if arr.ndim != 2:
        arr = np.array(M, dtype=object)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D matrix")
    if arr.dtype.kind in "iub":
        return arr.astype(np.int64)
    if arr.dtype == object:
        if arr.size == 0 or all(isinstance(x, (int, np.integer)) for x in arr.flat):
            big = max((abs(int(x)) for x in arr.flat), default=0)
            if big < 2**62:
                return arr.astype(np.int64)
            return np.vectorize(int, otypes=[object])(arr)
    raise TypeError(f"matrix entries must be integers, got dtype {arr.dtype}")


def _to_rows(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in as_integer_matrix(M)]


def _max_abs(M: np.ndarray) -> int:
    return max((abs(int(x)) for x in M.flat), default=0) if M.dtype == object else int(np.abs(M).max(initial=0))


# -- products and identities ------------------------------------------------------


def mat_mul(A, B) -> np.ndarray:
    """Exact product, in int64 when an a-priori bound allows it."""
    A, B = as_integer_matrix(A), as_integer_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    bound = _max_abs(A) * _max_abs(B) * A.shape[1]
    if A.dtype != object and B.dtype != object and bound < 2**63:
        return A @ B
    return as_integer_matrix(A.astype(object) @ B.astype(object))


def mat_identity_residual(coeffs, matrices) -> np.ndarray:
    """Exact linear combination sum(c_k * M_k), e.g. to check a matrix identity is zero."""
    coeffs, matrices = list(coeffs), [as_integer_matrix(M) for M in matrices]
    if len(coeffs) != len(matrices):
        raise ValueError("need one coefficient per matrix")
    if not matrices:
        raise ValueError("need at least one matrix")
    shape = matrices[0].shape
    if any(M.shape != shape for M in matrices):
        raise ValueError("all matrices must have the same shape")
    out = np.zeros(shape, dtype=object)
    for c, M in zip(coeffs, matrices):
        out = out + int(c) * M.astype(object)
    return as_integer_matrix(out)


def congruent_mod(M1, M2, p: int, k: int) -> bool:
    """True iff every entry of M1 - M2 is divisible by p^k."""
    A, B = as_integer_matrix(M1), as_integer_matrix(M2)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    m = p**k
    diff = A.astype(object) - B.astype(object)
    return all(int(x) % m == 0 for x in diff.flat)


# -- valuations -------------------------------------------------------------------


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- full integer Smith normal form --------------------------------------------------


def smith_normal_form(M) -> list[int]:
    """Invariant factors d_1 | d_2 | ... | d_rank of an integer matrix.

    Plain elimination with Python ints: the pivot is always an entry of least
    absolute value in the remaining block, its row and column are cleared by
    Euclidean steps, and the resulting diagonal is put into divisor-chain
    form by gcd/lcm exchanges.
    """
    a = _to_rows(M)
    diag: list[int] = []
    while a and a[0]:
        # locate a nonzero entry of least absolute value
        best = None
        for i, row in enumerate(a):
            for j, x in enumerate(row):
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[0], a[pi] = a[pi], a[0]
        if pj:
            for row in a:
                row[0], row[pj] = row[pj], row[0]
        while True:
            piv = a[0][0]
            done = True
            # clear column 0
            for i in range(1, len(a)):
                x = a[i][0]
                if x:
                    qt = x // piv
                    if qt:
                        p0 = a[0]
                        a[i] = [u - qt * v for u, v in zip(a[i], p0)]
                    if a[i][0]:
                        done = False
            # clear row 0
            row0 = a[0]
            for j in range(1, len(row0)):
                x = row0[j]
                if x:
                    qt = x // piv
                    if qt:
                        for row in a:
                            row[j] -= qt * row[0]
                    if row0[j]:
                        done = False
            if done:
                break
            # bring a smaller remainder into the pivot position
            cand = [(abs(a[i][0]), i, 0) for i in range(1, len(a)) if a[i][0]]
            cand += [(abs(a[0][j]), 0, j) for j in range(1, len(a[0])) if a[0][j]]
            _, ci, cj = min(cand)
            if ci:
                a[0], a[ci] = a[ci], a[0]
            else:
                for row in a:
                    row[0], row[cj] = row[cj], row[0]
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:]]
    return _divisor_chain(diag)


def _divisor_chain(diag: list[int]) -> list[int]:
    d = sorted(x for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] // g * d[j]
    return d


def snf_profile(M, p: int) -> DivisorProfile:
    """p-parts of the invariant factors from :func:`smith_normal_form`."""
    mult: dict[int, int] = {}
    for d in smith_normal_form(M):
        v = valuation(d, p)
        mult[v] = mult.get(v, 0) + 1
    return DivisorProfile(p, mult)


# -- modular ranks ------------------------------------------------------------------


def _reduce_mod(M: np.ndarray, m: int) -> np.ndarray:
    if M.dtype == object:
        return np.vectorize(lambda x: int(x) % m, otypes=[np.int64])(M) if M.size else M.astype(np.int64)
    return np.mod(M, m)


def rank_mod_prime(M, ell: int) -> int:
    """Rank of M over Z/ell by Gaussian elimination (ell < 2^31)."""
    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    if ell >= _INT64_MODULUS_LIMIT:
        raise ValueError("modulus too large for int64 elimination")
    W = np.ascontiguousarray(_reduce_mod(as_integer_matrix(M), ell))
    m, n = W.shape
    rank = 0
    while m and n:
        sub = W[:m, :n]
        nz = np.flatnonzero(sub)
        if nz.size == 0:
            break
        i, j = divmod(int(nz[0]), n)
        col = sub[:, j]
        rows = np.flatnonzero(col)
        rows = rows[rows != i]
        if rows.size:
            factors = (col[rows] * pow(int(sub[i, j]), -1, ell)) % ell
            sub[rows] = (sub[rows] - np.outer(factors, sub[i]) % ell) % ell
        # retire the pivot row and column by swapping them past the active block
        sub[[i, m - 1]] = sub[[m - 1, i]]
        sub[:, [j, n - 1]] = sub[:, [n - 1, j]]
        m, n = m - 1, n - 1
        rank += 1
    return rank


def p_rank(M, p: int) -> int:
    """Rank of M over the field Z/p."""
    return rank_mod_prime(M, p)


def _row_norm_bounds(M: np.ndarray) -> list[int]:
    """Integer upper bounds for the Euclidean norms of the nonzero rows, largest first."""
    norms = []
    for row in M:
        sq = sum(int(x) * int(x) for x in row)
        if sq:
            norms.append(math.isqrt(sq) + 1)
    return sorted(norms, reverse=True)


@lru_cache(maxsize=None)
def _large_primes(count: int) -> tuple[int, ...]:
    out, x = [], _INT64_MODULUS_LIMIT
    while len(out) < count:
        x = prevprime(x)
        out.append(x)
    return tuple(out)


def rational_rank(M) -> int:
    """Rank of M over Q, certified deterministically.

    Suppose every prime tried so far gives rank at most rho.  If the rank over
    Q were larger, some (rho+1)-minor would be a nonzero integer divisible by
    all of those primes, so their product could not exceed the Hadamard bound
    for (rho+1)-minors.  Primes are added until that bound is beaten.
    """
    A = as_integer_matrix(M)
    full = min(A.shape)
    if full == 0 or not np.any(A != 0):
        return 0
    norms = _row_norm_bounds(A)
    rho, product, count = 0, 1, 0
    while True:
        count += 1
        ell = _large_primes(count)[-1]
        rho = max(rho, rank_mod_prime(A, ell))
        product *= ell
        if rho == full or product > math.prod(norms[: rho + 1]):
            return rho


# -- p-local elimination ------------------------------------------------------------


def _local_pass(A: np.ndarray, p: int, K: int) -> dict[int, int]:
    """Elementary divisor valuations below K, eliminating over Z/p^K."""
    pk = p**K
    if pk < _INT64_MODULUS_LIMIT:
        W = _reduce_mod(A, pk)
    else:
        W = A.astype(object) % pk
    mult: dict[int, int] = {}
    level, scale = 0, 1
    while W.size and level < K:
        # entries are all divisible by p^level; look for one that is not divisible by p^(level+1)
        units = (W // scale) % p != 0
        flat = np.flatnonzero(units)
        if flat.size == 0:
            level += 1
            scale *= p
            continue
        i, j = divmod(int(flat[0]), W.shape[1])
        unit = int(W[i, j]) // scale
        uinv = pow(unit, -1, pk)
        factors = ((W[:, j] // scale) * uinv) % pk
        factors[i] = 0
        W = (W - np.outer(factors, W[i]) % pk) % pk
        W = np.delete(np.delete(W, i, axis=0), j, axis=1)
        mult[level] = mult.get(level, 0) + 1
    return mult


def p_elementary_divisors(M, p: int, *, start_exponent: int = 8) -> DivisorProfile:
    """Multiplicities of p^i among the elementary divisors of an integer matrix."""
    if not isprime(p):
        raise ValueError(f"p={p} is not prime")
    A = as_integer_matrix(M)
    if A.size == 0:
        return DivisorProfile(p, {})
    K = max(1, start_exponent)
    target = None
    while True:
        mult = _local_pass(A, p, K)
        found = sum(mult.values())
        if found == min(A.shape):
            return DivisorProfile(p, mult)
        if target is None:
            target = rational_rank(A)
        if found == target:
            return DivisorProfile(p, mult)
        K *= 2
