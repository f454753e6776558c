import itertools
from math import comb

import numpy as np
import pytest

from skewsnf import formulas as fm
from skewsnf.geometry import enumerate_subspaces, make_geometry
from skewsnf.profile import DivisorProfile


def _dk_oracle(p, n_plus_1):
    poly = np.array([1], dtype=object)
    for _ in range(n_plus_1):
        poly = np.convolve(poly, np.ones(p, dtype=object))
    return [int(c) for c in poly]


def test_dk_examples():
    assert fm.dk_table(3, 4).d == (1, 4, 10, 16, 19, 16, 10, 4, 1)
    assert fm.dk_table(2, 4).d == (1, 4, 6, 4, 1)
    assert fm.dk_table(2, 1).d == (1, 1)
    t = fm.dk_table(3, 4)
    assert t[-1] == 0 and t[9] == 0 and t[4] == 19


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("n_plus_1", range(1, 7))
def test_dk_identities(p, n_plus_1):
    d = list(fm.dk_table(p, n_plus_1).d)
    assert d == _dk_oracle(p, n_plus_1)
    assert d == d[::-1]
    assert sum(d) == p**n_plus_1
    assert [fm._dk_alternating(p, n_plus_1, k) for k in range(len(d))] == d


def test_q_binomial():
    assert fm.q_binomial(5, 0, 7) == 1
    assert fm.q_binomial(4, 2, 2) == 35
    assert fm.q_binomial(4, 2, 3) == 130 == fm.srg_spectrum(3).v
    with pytest.raises(ValueError):
        fm.q_binomial(2, 3, 2)
    with pytest.raises(ValueError):
        fm.q_binomial(-1, 0, 2)


@pytest.mark.parametrize("p,t,N", [(2, 1, 5), (3, 1, 4), (2, 2, 4), (5, 1, 3)])
def test_q_binomial_counts_subspaces(p, t, N):
    geo = make_geometry(p, t, N)
    for r in range(N + 1):
        assert fm.q_binomial(N, r, p**t) == len(enumerate_subspaces(geo, r))


def test_admissible_tuple_examples():
    assert [h.s for h in fm.hamada_set(3, 1, 2)] == [(1,), (2,), (3,)]
    got = {h.s for h in fm.hamada_set(3, 2, 2)}
    assert got == set(itertools.product((1, 2, 3), repeat=2)) - {(1, 3), (3, 1)}
    h = fm.make_tuple((2, 1), 3, fm.dk_table(3, 4))
    assert h.lam == (1, 5) and h.d == 4 * 16


def _brute_weight(s, p, n):
    d = _dk_oracle(p, n + 1)
    t = len(s)
    out = 1
    for i in range(t):
        k = p * s[(i + 1) % t] - s[i]
        out *= d[k] if 0 <= k < len(d) else 0
    return out


GRID = [(n, t, p) for n in (1, 2, 3, 4) for t in (1, 2, 3) for p in (2, 3, 5) if p**t <= 27]


@pytest.mark.parametrize("n,t,p", GRID)
def test_tuple_weights_sum_to_points_minus_one(n, t, p):
    q = p**t
    brute = sum(_brute_weight(s, p, n) for s in itertools.product(range(1, n + 1), repeat=t))
    assert brute == sum(h.d for h in fm.hamada_set(n, t, p))
    assert brute == (q ** (n + 1) - 1) // (q - 1) - 1
    assert all(h.d > 0 for h in fm.hamada_set(n, t, p))


def test_family_H():
    assert fm.family_H(1, 2) == [(1, 2), (2, 1), (2, 3), (3, 2)]
    assert fm.family_H(2, 2) == [(2, 2)]
    assert set(fm.family_H(0, 2)) == {(1, 1), (1, 3), (3, 1), (3, 3)}
    for t in range(1, 5):
        for i in range(t + 1):
            assert len(fm.family_H(i, t)) == comb(t, i) * 2 ** (t - i)


@pytest.mark.parametrize("t,p", [(1, 2), (2, 2), (2, 3), (3, 2), (1, 5)])
def test_alpha_beta_families_for_lines(t, p):
    admissible = {h.s for h in fm.hamada_set(3, t, p)}
    for a in range(t + 1):
        assert set(fm.family_H_alpha(a, 2, 3, t, p)) == {s for s in admissible if s.count(1) == a}
        assert set(fm.family_beta_H(a, 2, 3, t, p)) == {s for s in admissible if s.count(3) == a}
    for i in range(t + 1):
        everything = fm.family_Gamma(i, 2, 2, 3, t, p, admissible_only=False)
        assert set(everything) == set(fm.family_H(t - i, t))
        assert set(fm.family_Gamma(i, 2, 2, 3, t, p)) == set(fm.family_H(t - i, t)) & admissible


@pytest.mark.parametrize("n,t,p", [(3, 2, 2), (4, 2, 3), (5, 1, 2), (4, 3, 2)])
def test_beta_family_is_reflection_of_alpha_family(n, t, p):
    for r in range(1, n + 1):
        for b in range(t * r + 1):
            reflected = {tuple(n + 1 - x for x in s) for s in fm.family_H_alpha(b, r, n, t, p)}
            assert set(fm.family_beta_H(b, r, n, t, p)) == reflected


def test_alpha_bound_empties_family():
    for n, t, p, s in [(3, 2, 2, 2), (4, 1, 3, 3), (4, 2, 2, 2)]:
        assert fm.family_H_alpha(t * (s - 1) + 1, s, n, t, p) == []


def test_gamma_zero_t1():
    assert fm.family_Gamma(0, 2, 2, 3, 1, 3) == [(2,)]


def test_upper_exponents_examples():
    assert fm.theoremB_values(2, 3) == {4: 202, 5: 256, 6: 361}
    assert fm.theoremB_values(1, 2) == {2: 8, 3: 6}
    assert fm.theoremB_values(2, 2) == {4: 32, 5: 16, 6: 36}


@pytest.mark.parametrize("p,t", [(p, t) for p in (2, 3, 5, 7) for t in range(1, 7) if p**t <= 81])
def test_upper_exponents_total(p, t):
    q = p**t
    assert sum(fm.theoremB_values(t, p).values()) == q**3 + q**2 + q


def test_lines_profile_examples():
    assert fm.theoremA_full_profile(2, 3).mult == {0: 361, 1: 256, 2: 6025, 4: 202, 5: 256, 6: 361, 8: 1}
    assert fm.theoremA_full_profile(1, 2).mult == {0: 6, 1: 14, 2: 8, 3: 6, 4: 1}


@pytest.mark.parametrize("p,t", [(p, t) for p in (2, 3, 5, 7) for t in range(1, 7) if p**t <= 81])
def test_lines_profile_shape(p, t):
    q = p**t
    prof = fm.theoremA_full_profile(t, p)
    assert prof.total == fm.srg_spectrum(q).v
    assert prof.valuation == fm.determinant_valuation(t, q)
    assert all(prof[i] == prof[3 * t - i] for i in range(t))
    assert sum(prof[i] for i in range(t + 1)) == q**4 + q**2
    assert sum(prof[i] for i in range(2 * t, 3 * t + 1)) == q**3 + q**2 + q
    assert prof[4 * t] == 1
    assert all(i <= t or 2 * t <= i <= 3 * t or i == 4 * t for i in prof.mult)


def test_product_profile_examples():
    assert fm.theoremC_profile(3, 1, 2, 2, 2) == DivisorProfile(2, {0: 6, 1: 8, 4: 1})
    prof = fm.theoremC_profile(3, 2, 3, 2, 2)
    # e_{t-i}(B^T B) = e_{2t+i}(A) for 0 <= i <= t
    a = fm.theoremA_full_profile(2, 3)
    assert [prof[2 - i] for i in range(3)] == [a[4 + i] for i in range(3)]
    assert prof[8] == 1
    with pytest.raises(ValueError):
        fm.theoremC_profile(3, 1, 2, 4, 2)


@pytest.mark.parametrize("n,t,p", [g for g in GRID if g[0] >= 2])
def test_product_profile_total_is_number_of_points(n, t, p):
    q = p**t
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            prof = fm.theoremC_profile(n, t, p, r, s)
            assert prof.total == fm.q_binomial(n + 1, 1, q)
            assert max(prof.mult) == t * (r + s)
            assert all(i <= t * (r + s - 2) for i in prof.mult if i != t * (r + s))


def test_low_exponent_examples():
    assert fm.corollary_pranks(3, 2, 2, 2, 2) == {0: 36, 1: 16}
    assert fm.corollary_pranks(3, 1, 2, 2, 3) == {0: 0}
    assert fm.corollary_pranks(4, 1, 2, 2, 2) == {0: 20}


def test_srg_spectrum():
    g = fm.srg_spectrum(2)
    assert (g.v, g.k, g.lam, g.mu) == (35, 16, 6, 8)
    assert fm.srg_spectrum(9).v == 7462 == fm.theoremA_full_profile(2, 3).total
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 16, 27):
        g = fm.srg_spectrum(q)
        assert g.k * (g.k - g.lam - 1) == (g.v - g.k - 1) * g.mu
        assert sum(g.multiplicities) == g.v
    with pytest.raises(ValueError):
        fm.srg_spectrum(6)
    with pytest.raises(ValueError):
        fm.srg_spectrum(1)
