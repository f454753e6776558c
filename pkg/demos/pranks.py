"""
p-ranks of skew incidence matrices
==================================

For subspaces of dimensions r and s in GF(q)^(n+1), the 0/1 matrix
recording trivial intersection has p-rank given by a tuple sum.  This
script compares that prediction with Gaussian elimination mod p.
"""

# %%
from skewsnf import build_incidence, make_geometry
from skewsnf import exact_linalg as xl
from skewsnf import formulas as fm

cases = [(4, 2, 2, 2, 1), (4, 2, 2, 3, 1), (4, 2, 2, 2, 2), (5, 2, 2, 2, 1), (5, 2, 3, 2, 1), (4, 2, 3, 2, 1)]

# %%
for n_plus_1, r, s, p, t in cases:
    A = build_incidence(make_geometry(p, t, n_plus_1), r, s)
    predicted = fm.corollary_pranks(n_plus_1 - 1, t, p, r, s)[0]
    print(f"n+1={n_plus_1} r={r} s={s} q={p**t}  shape={A.shape}  rank={xl.p_rank(A, p)}  predicted={predicted}")

# %%
# When r + s exceeds n + 1 no two subspaces are skew, and the matrix is zero.
print(build_incidence(make_geometry(2, 1, 4), 2, 3).to_int().any())
