"""
Elementary divisors of the skew-lines matrix of PG(3, 9)
=========================================================

The multiplicities of the powers of 3 dividing the skew-lines matrix of
PG(3, 9) follow from weighted sums over small tuples.  This script
walks through those ingredients and reassembles the full table.
"""

# %%
# The coefficients d_k of (1 + x + x^2)^4 weigh every tuple.
from skewsnf import formulas as fm

table = fm.dk_table(3, 4)
print("d_k:", table.d)

# %%
# A tuple s = (s_0, s_1) gets weight d(s) = d_{3 s_1 - s_0} d_{3 s_0 - s_1}.
for s in fm.family_H(1, 2):
    print(s, fm.weight(s, 3, 3))

# %%
# Summing the weights over tuples with i twos gives e_{4+i}.
print(fm.theoremB_values(2, 3))

# %%
# Symmetry and the known rank of the eigenspace fill in the remaining entries.
profile = fm.theoremA_full_profile(2, 3)
print(profile.mult, "total", profile.total)

# %%
# The same numbers as a two-row table.
from skewsnf.cli import render_table

print(render_table(profile))
