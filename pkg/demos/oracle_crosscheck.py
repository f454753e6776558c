"""
Formula versus direct computation
=================================

Build the skew-lines matrix of PG(3, q) for small q, compute its
elementary divisors two different ways, and compare with the closed form.
"""

# %%
import time

from skewsnf import build_incidence, make_geometry
from skewsnf import exact_linalg as xl
from skewsnf import formulas as fm

# %%
# q = 3 gives a 130 x 130 matrix with q^4 = 81 skew lines per row.
geo = make_geometry(3, 1, 4)
A = build_incidence(geo, 2, 2)
print(A.shape, A.to_int().sum(axis=1)[:5])

# %%
# The p-local elimination only tracks powers of p, so it stays in int64.
local = xl.p_elementary_divisors(A, 3)
print("p-local :", local.mult)

# %%
# The integer Smith form is slower but shares no code with the local route.
print("full SNF:", xl.snf_profile(A, 3).mult)
print("formula :", fm.theoremA_full_profile(1, 3).mult)

# %%
# q = 4 has two levels of p-adic structure per exponent of q.
for p, t in ((2, 1), (2, 2)):
    A = build_incidence(make_geometry(p, t, 4), 2, 2)
    start = time.perf_counter()
    got = xl.p_elementary_divisors(A, p)
    print(f"q={p**t}", got == fm.theoremA_full_profile(t, p), f"{time.perf_counter() - start:.2f}s")
