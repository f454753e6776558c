"""Subspaces of V = GF(q)^(n+1) and their skew/meet incidence matrices.

Subspaces are kept in reduced row echelon form with entries given as field
element indices (see :mod:`skewsnf.field`).  Incidence matrices are built
from point-membership matrices: two subspaces meet nontrivially exactly when
they share a projective point, so ``MEET = (P_r @ P_s.T) > 0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .field import FieldContext, FieldElement, make_field
from .formulas import q_binomial

SKEW = "skew"
MEET = "meet"
RELATIONS = (SKEW, MEET)


@dataclass(frozen=True)
class GeometryContext:
    field: FieldContext
    n_plus_1: int

    def __post_init__(self):
        if self.n_plus_1 < 2:
            raise ValueError(f"dimension n+1={self.n_plus_1} must be at least 2")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.n_plus_1 - 1

    @cached_property
    def _subspace_cache(self) -> dict:
        return {}

    @cached_property
    def _membership_cache(self) -> dict:
        return {}


def make_geometry(p: int, t: int, n_plus_1: int) -> GeometryContext:
    return GeometryContext(make_field(p, t), n_plus_1)


@dataclass(frozen=True)
class Subspace:
    """An r-subspace given by its RREF basis (rows of field element indices)."""

    geo: GeometryContext
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def rows(self) -> list[list[FieldElement]]:
        """The basis as a matrix of :class:`FieldElement`."""
        f = self.geo.field
        return [[f.element(x) for x in row] for row in self.basis]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={self.basis})"


def _rref_rank(rows, field: FieldContext) -> int:
    """Rank over GF(q) of a small matrix of element indices."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = field._inv(m[rank][c])
        m[rank] = [field._mul(inv, x) for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                factor = field._neg(m[i][c])
                m[i] = [field._add(x, field._mul(factor, y)) for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank_over_field(rows, field: FieldContext) -> int:
    """Rank over GF(q) of a matrix whose entries are indices or FieldElements."""
    return _rref_rank([[x.index if isinstance(x, FieldElement) else int(x) for x in r] for r in rows], field)


def enumerate_subspaces(geo: GeometryContext, r: int) -> list[Subspace]:
    """All r-subspaces in RREF, ordered by pivot set then free entries (base q, row-major)."""
    N = geo.n_plus_1
    if not 0 <= r <= N:
        raise ValueError(f"subspace dimension r={r} outside [0, {N}]")
    cache = geo._subspace_cache
    if r in cache:
        return cache[r]
    q = geo.q
    out = []
    for pivots in itertools.combinations(range(N), r):
        pivset = set(pivots)
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, N) if c not in pivset]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * N for _ in range(r)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            out.append(Subspace(geo, tuple(tuple(row) for row in rows)))
    cache[r] = out
    return out


def subspace_from_rows(geo: GeometryContext, rows) -> Subspace:
    """Canonical RREF representative of the row space of ``rows``."""
    f = geo.field
    m = [[x.index if isinstance(x, FieldElement) else int(x) for x in r] for r in rows]
    if any(len(r) != geo.n_plus_1 for r in m):
        raise ValueError(f"rows must have length {geo.n_plus_1}")
    rank = 0
    for c in range(geo.n_plus_1):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = f._inv(m[rank][c])
        m[rank] = [f._mul(inv, x) for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                factor = f._neg(m[i][c])
                m[i] = [f._add(x, f._mul(factor, y)) for x, y in zip(m[i], m[rank])]
        rank += 1
    return Subspace(geo, tuple(tuple(r) for r in m[:rank]))


def intersection_dim(U: Subspace, W: Subspace) -> int:
    """dim(U ∩ W) = dim U + dim W - rank of the stacked bases."""
    if U.geo != W.geo:
        raise ValueError("subspaces belong to different geometries")
    return U.dim + W.dim - _rref_rank(U.basis + W.basis, U.geo.field)


# -- points and membership ----------------------------------------------------


def _point_coefficients(q: int, r: int) -> np.ndarray:
    """Normalized nonzero coefficient vectors of length r (first nonzero = 1)."""
    rows = []
    for lead in range(r):
        for tail in itertools.product(range(q), repeat=r - lead - 1):
            rows.append((0,) * lead + (1,) + tail)
    return np.array(rows, dtype=np.int64).reshape(-1, r)


def point_index(geo: GeometryContext, vectors: np.ndarray) -> np.ndarray:
    """Position in ``enumerate_subspaces(geo, 1)`` of normalized nonzero vectors."""
    N, q = geo.n_plus_1, geo.q
    vectors = np.asarray(vectors, dtype=np.int64)
    weights = q ** np.arange(N - 1, -1, -1, dtype=np.int64)
    # points with leading coordinate k come after all points leading at j < k
    offsets = np.cumsum(np.concatenate([[0], weights[:-1]]))
    lead = np.argmax(vectors != 0, axis=-1)
    return offsets[lead] + vectors @ weights - weights[lead]


def membership_matrix(geo: GeometryContext, r: int) -> np.ndarray:
    """Boolean |L_r| x |L_1| matrix: entry (i, j) says point j lies in subspace i."""
    cache = geo._membership_cache
    if r in cache:
        return cache[r]
    subs = enumerate_subspaces(geo, r)
    npoints = q_binomial(geo.n_plus_1, 1, geo.q)
    out = np.zeros((len(subs), npoints), dtype=bool)
    if r > 0:
        f = geo.field
        add, mul = f.add_table, f.mul_table
        basis = np.array([s.basis for s in subs], dtype=np.int64)  # (count, r, N)
        coeffs = _point_coefficients(geo.q, r)  # (m, r)
        vec = np.zeros((len(subs), len(coeffs), geo.n_plus_1), dtype=np.int64)
        for i in range(r):
            term = mul[coeffs[None, :, i, None], basis[:, None, i, :]]
            vec = add[vec, term]
        idx = point_index(geo, vec)
        out[np.arange(len(subs))[:, None], idx] = True
    cache[r] = out
    return out


def count_points_avoiding(x: Subspace, y: Subspace) -> int:
    """Number of points z with z ∩ x = 0 and z ∩ y = 0."""
    if x.geo != y.geo:
        raise ValueError("subspaces belong to different geometries")
    geo = x.geo
    px = _points_of(x)
    py = _points_of(y)
    return q_binomial(geo.n_plus_1, 1, geo.q) - len(px | py)


def _points_of(x: Subspace) -> set[int]:
    if x.dim == 0:
        return set()
    f = x.geo.field
    basis = np.array(x.basis, dtype=np.int64)
    coeffs = _point_coefficients(x.geo.q, x.dim)
    vec = np.zeros((len(coeffs), x.geo.n_plus_1), dtype=np.int64)
    for i in range(x.dim):
        vec = f.add_table[vec, f.mul_table[coeffs[:, i, None], basis[None, i, :]]]
    return set(point_index(x.geo, vec).tolist())


# -- incidence matrices -------------------------------------------------------


@dataclass
class IncidenceMatrix:
    """0/1 incidence between r-subspaces (rows) and s-subspaces (columns)."""

    geo: GeometryContext
    r: int
    s: int
    relation: str
    entries: np.ndarray

    @property
    def rows(self) -> list[Subspace]:
        return enumerate_subspaces(self.geo, self.r)

    @property
    def cols(self) -> list[Subspace]:
        return enumerate_subspaces(self.geo, self.s)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def to_int(self) -> np.ndarray:
        return self.entries.astype(np.int64)

    def header(self) -> str:
        f = self.geo.field
        return f"{f.p} {f.t} {self.geo.n_plus_1} {self.r} {self.s} {self.relation}"

    def to_text(self) -> str:
        rows, cols = self.entries.shape
        lines = [self.header(), f"{rows} {cols}"]
        table = np.array(["0", "1"])[self.entries.astype(np.int8)]
        lines.extend("".join(row) for row in table)
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    def __eq__(self, other):
        if not isinstance(other, IncidenceMatrix):
            return NotImplemented
        return (
            self.geo == other.geo
            and (self.r, self.s, self.relation) == (other.r, other.s, other.relation)
            and np.array_equal(self.entries, other.entries)
        )


def _check_rs(geo: GeometryContext, r: int, s: int):
    n = geo.n
    for name, val in (("r", r), ("s", s)):
        if not 1 <= val <= n:
            raise ValueError(f"{name}={val} must satisfy 1 <= {name} <= n={n} (n+1={geo.n_plus_1})")


def build_incidence(geo: GeometryContext, r: int, s: int, relation: str = SKEW) -> IncidenceMatrix:
    """A_{r,s} (relation ``skew``) or its complement A'_{r,s} (``meet``)."""
    _check_rs(geo, r, s)
    if relation not in RELATIONS:
        raise ValueError(f"relation must be one of {RELATIONS}, got {relation!r}")
    pr = membership_matrix(geo, r).astype(np.float32)
    ps = membership_matrix(geo, s).astype(np.float32)
    meet = np.empty((pr.shape[0], ps.shape[0]), dtype=bool)
    block = 1024
    for start in range(0, pr.shape[0], block):
        meet[start : start + block] = (pr[start : start + block] @ ps.T) > 0.5
    entries = meet if relation == MEET else ~meet
    return IncidenceMatrix(geo, r, s, relation, entries.astype(np.uint8))


def parse_matrix(text: str) -> IncidenceMatrix:
    """Inverse of :meth:`IncidenceMatrix.to_text`."""
    lines = text.split("\n")
    if len(lines) < 2:
        raise ValueError("matrix file is truncated")
    head = lines[0].split()
    if len(head) != 6:
        raise ValueError(f"bad header line {lines[0]!r}")
    p, t, n_plus_1, r, s = (int(x) for x in head[:5])
    relation = head[5]
    nrows, ncols = (int(x) for x in lines[1].split())
    body = lines[2 : 2 + nrows]
    if len(body) != nrows or lines[2 + nrows :] != [""]:
        raise ValueError("row count does not match header")
    for row in body:
        if len(row) != ncols or set(row) - {"0", "1"}:
            raise ValueError("malformed matrix row")
    geo = make_geometry(p, t, n_plus_1)
    _check_rs(geo, r, s)
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    if nrows:
        entries = (np.frombuffer("".join(body).encode(), dtype=np.uint8) - ord("0")).reshape(nrows, ncols)
    else:
        entries = np.zeros((0, ncols), dtype=np.uint8)
    expected = (q_binomial(n_plus_1, r, p**t), q_binomial(n_plus_1, s, p**t))
    if entries.shape != expected:
        raise ValueError(f"matrix shape {entries.shape} does not match geometry {expected}")
    return IncidenceMatrix(geo, r, s, relation, entries.copy())


def read_matrix(path) -> IncidenceMatrix:
    return parse_matrix(Path(path).read_text())
