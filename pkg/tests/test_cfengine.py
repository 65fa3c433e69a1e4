from math import comb

import pytest

from perm132.bigseries import eval_y_one
from perm132.cfengine import (
    ExtensionWarning,
    LevelExponents,
    binom,
    cf_F,
    cf_G,
    level_exponent,
    omega_series,
    s_ladder,
    s_series,
)
from perm132.permcore import brute_one132_table, brute_table, catalan


def test_binom_convention():
    assert binom(2, 3) == 0
    assert binom(3, -1) == 0
    assert binom(0, 0) == 1
    assert binom(6, 2) == 15


@pytest.mark.parametrize("i, k, expected", [(1, 3, 0), (3, 3, 1), (5, 3, 6), (1, 1, 1), (4, 1, 1)])
def test_level_exponent(i, k, expected):
    assert level_exponent(i, k) == expected


def test_level_exponents_substituted_q2():
    # q^{d,2} = prod_j q_j^C(d, j-2); with q_1 = x, q_2..q_{k-1} = 1, q_k = y only y^C(d, k-2) survives
    for k in range(2, 7):
        for d in range(0, 9):
            ex = LevelExponents.at(k, d)
            exps = {j: comb(d, j - 2) if j >= 2 and d >= j - 2 else 0 for j in range(1, k + 1)}
            assert exps[1] == 0
            assert ex.e2 == exps[k]
            assert ex.e1 == (comb(d, k - 1) if d >= k - 1 else 0)
    assert LevelExponents.at(3, 2).e1 == 1


def test_cf_F_examples():
    assert cf_F(3, 5).coeff(3, 1) == 1
    for k in range(1, 7):
        assert eval_y_one(cf_F(k, 6)) == [1, 1, 2, 5, 14, 42, 132]
    F1 = cf_F(1, 10)
    assert all(r == n for n, r, _ in F1.items())
    assert [F1.coeff(n, n) for n in range(11)] == [catalan(n) for n in range(11)]


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_cf_F_matches_brute_force(k):
    F = cf_F(k, 9)
    for n in range(10):
        assert F.row(n) == brute_table(n, k)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_cf_F_support_and_catalan(k):
    F = cf_F(k, 14)
    for n, r, c in F.items():
        assert c > 0
        assert r <= comb(n, k)
    assert eval_y_one(F) == [catalan(n) for n in range(15)]


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_deepening_is_stable(k):
    deep = cf_F(k, 16)
    for m in (0, 3, 9, 12):
        assert cf_F(k, m) == deep.truncate(m)
    om = omega_series(3, 12)
    assert omega_series(3, 8) == om.truncate(8)


def test_cf_G_examples():
    for k in range(1, 6):
        G = cf_G(k, 6)
        assert G.coeff(0, 1) == 1
        assert G.coeff(1, k + 1) == 1
        assert G.coeff(1, 0) == 0
        assert all(r >= 1 for _, r, _ in G.items())


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_ladder_equals_cf(k):
    assert s_ladder(k, 16) == cf_F(k, 16)


def test_ladder_single_step_for_k1():
    G = cf_G(1, 8)
    assert s_series(1, 1, 8) == s_ladder(1, 8)
    assert s_series(0, 1, 8) == G


def test_y_cap_preserves_low_slices():
    full = cf_F(3, 14)
    capped = cf_F(3, 14, y_cap=4)
    for r in range(5):
        assert capped.y_slice(r) == full.y_slice(r)
    assert all(r <= 4 for _, r, _ in capped.items())


def test_omega_examples():
    O = omega_series(3, 8)
    assert O.coeff(3, 0) == 1
    for n in range(3):
        assert O.row(n) == {}
    big_k = omega_series(9, 4)
    assert eval_y_one(big_k)[4] == sum(brute_one132_table(4, 9).values()) == 5


@pytest.mark.parametrize("k", [3, 4, 5])
def test_omega_matches_brute_force(k):
    O = omega_series(k, 9)
    for n in range(10):
        assert O.row(n) == brute_one132_table(n, k)


def test_omega_k2_is_flagged_but_matches_brute_force():
    with pytest.warns(ExtensionWarning):
        O = omega_series(2, 8)
    for n in range(9):
        assert O.row(n) == brute_one132_table(n, 2)


def test_omega_rejects_k1():
    with pytest.raises(ValueError):
        omega_series(1, 5)
