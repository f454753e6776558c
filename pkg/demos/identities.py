"""
Matrix identities behind the spectrum
=====================================

The skew-lines graph of PG(3, q) is strongly regular.  Its adjacency
matrix A satisfies a quadratic identity, and the point-line incidence
matrix B gives a second one.  Both hold exactly over the integers.
"""

# %%
import numpy as np

from skewsnf import build_incidence, make_geometry
from skewsnf import exact_linalg as xl
from skewsnf import formulas as fm

q = 3
geo = make_geometry(3, 1, 4)
A = build_incidence(geo, 2, 2).to_int()
B = build_incidence(geo, 1, 2).to_int()
I, J = np.eye(len(A), dtype=np.int64), np.ones_like(A)

# %%
# A^2 = k I + lambda A + mu (J - I - A)
g = fm.srg_spectrum(q)
res = xl.mat_identity_residual([1, -g.k, -g.lam, -g.mu], [xl.mat_mul(A, A), I, A, J - A - I])
print("srg residual zero:", not res.any())

# %%
# B^T B counts common points of two lines, which rewrites in terms of A.
res = xl.mat_identity_residual(
    [1, -(q**3 + q**2), -(q**3 + q**2 - q - 1), -(q**3 + q**2 - q)],
    [xl.mat_mul(B.T, B), I, A, J - A - I],
)
print("B^T B residual zero:", not res.any())

# %%
# Going through points: the product of line-point and point-line matrices
# is congruent to -A modulo q.
prod = xl.mat_mul(build_incidence(geo, 2, 1).to_int(), B)
print("congruent to -A mod q:", xl.congruent_mod(prod, -A, 3, 1))
print("its divisors:", xl.snf_profile(prod, 3).mult, fm.theoremC_profile(3, 1, 3, 2, 2).mult)

# %%
# The eigenvalues fix the 3-adic valuation of det A.
print(xl.p_elementary_divisors(A, 3).valuation, fm.determinant_valuation(1, q))
