import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import perm132.bigseries as bs
from perm132.bigseries import (
    BiSeries,
    OrderMismatchError,
    eval_y_one,
    geometric_level,
    monomial,
    reciprocal_unit,
    y_slice,
)

N = 5


def series(order, small=True, unit=False, max_r=6):
    coeff = st.integers(-3, 3) if small else st.integers(-(10**30), 10**30)
    lo = 1 if unit else 0
    terms = st.dictionaries(
        st.tuples(st.integers(lo, order), st.integers(0, max_r)), coeff, max_size=12
    )
    if unit:
        return terms.map(lambda t: BiSeries(order, t) + BiSeries.one(order))
    return terms.map(lambda t: BiSeries(order, t))


def test_monomial_examples():
    assert monomial(1, 0, 0, 10) == BiSeries.one(10)
    assert monomial(1, 1, 3, 10).terms == {(1, 3): 1}
    assert monomial(5, 11, 0, 10).is_zero()
    assert monomial(0, 1, 1, 10).is_zero()


def test_mul_and_add_examples():
    one_plus_x = BiSeries(1, {(0, 0): 1, (1, 0): 1})
    assert (one_plus_x * one_plus_x).terms == {(0, 0): 1, (1, 0): 2}
    xy = monomial(1, 1, 1, 5)
    assert (xy * xy).terms == {(2, 2): 1}
    s = BiSeries(4, {(0, 0): 3, (2, 5): -7})
    assert (s + (-s)).is_zero()
    assert not (s - s).terms


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        BiSeries.one(3) + BiSeries.one(4)
    with pytest.raises(OrderMismatchError):
        BiSeries.one(3) * BiSeries.one(4)


def test_canonical_form_drops_zeros():
    s = BiSeries(3, {(1, 1): 2}) + BiSeries(3, {(1, 1): -2, (2, 0): 1})
    assert s.terms == {(2, 0): 1}
    assert len(s) == 1


@pytest.mark.parametrize(
    "a, expected",
    [
        (BiSeries(4, {(0, 0): 1, (1, 0): -1}), {(n, 0): 1 for n in range(5)}),
        (BiSeries(3, {(0, 0): 1, (1, 1): -1}), {(n, n): 1 for n in range(4)}),
        (BiSeries.one(6), {(0, 0): 1}),
    ],
)
def test_reciprocal_examples(a, expected):
    assert reciprocal_unit(a).terms == expected


def test_reciprocal_preconditions():
    with pytest.raises(ValueError, match="constant term"):
        reciprocal_unit(BiSeries(3, {(0, 0): 2}))
    with pytest.raises(ValueError, match="x-degree 0"):
        reciprocal_unit(BiSeries(3, {(0, 0): 1, (0, 2): 1}))


def test_slices_and_y_one():
    s = BiSeries(3, {(0, 0): 1, (1, 1): 1})
    assert y_slice(s, 1) == [0, 1, 0, 0]
    assert y_slice(BiSeries.zero(4), 5) == [0] * 5
    assert eval_y_one(BiSeries(1, {(0, 0): 1, (1, 1): 1, (1, 2): 1})) == [1, 2]
    assert eval_y_one(BiSeries.zero(2)) == [0, 0, 0]


@given(series(N), series(N), series(N))
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)


@given(series(N, small=False), series(N, small=False))
def test_big_coefficients_stay_exact(a, b):
    # forces the Python-int fallback
    lhs = a * b
    manual = {}
    for (n1, r1), c1 in a.terms.items():
        for (n2, r2), c2 in b.terms.items():
            if n1 + n2 <= N:
                manual[(n1 + n2, r1 + r2)] = manual.get((n1 + n2, r1 + r2), 0) + c1 * c2
    assert lhs.terms == {k: v for k, v in manual.items() if v}


@settings(max_examples=100)
@given(series(N, unit=True))
def test_reciprocal_is_inverse(a):
    assert a * reciprocal_unit(a) == BiSeries.one(N)


@given(series(N), series(N), st.integers(0, N))
def test_truncation_consistency(a, b, m):
    assert (a * b).truncate(m) == a.truncate(m) * b.truncate(m)
    assert (a + b).truncate(m) == a.truncate(m) + b.truncate(m)


@given(series(N, unit=True), st.integers(0, N))
def test_reciprocal_truncation_consistency(a, m):
    assert reciprocal_unit(a).truncate(m) == reciprocal_unit(a.truncate(m))


@given(series(N), series(N), st.integers(0, 8))
def test_y_cap_keeps_low_layers(a, b, cap):
    capped = a.with_cap(cap) * b.with_cap(cap)
    full = a * b
    assert capped.terms == {(n, r): c for (n, r), c in full.terms.items() if r <= cap}


@given(series(N), st.integers(0, 4))
def test_geometric_level_matches_reciprocal(t, e):
    assert geometric_level(t, e) == reciprocal_unit(BiSeries.one(N) - t.shift(1, e))


def _dense_rows(n_rows, width, seed):
    import random

    rnd = random.Random(seed)
    return BiSeries(
        n_rows, {(n, rnd.randrange(width)): rnd.randrange(1, 1000) for n in range(n_rows + 1) for _ in range(120)}
    )


@pytest.mark.parametrize("width", [200, 10**6])
def test_numpy_kernel_matches_python_path(monkeypatch, width):
    a, b = _dense_rows(6, width, 1), _dense_rows(6, width, 2)
    fast = a * b
    assert max(len(a.row(n)) * len(b.row(n)) for n in range(7)) >= bs._NUMPY_MIN_WORK
    monkeypatch.setattr(bs, "_NUMPY_MIN_WORK", 10**18)
    slow = a * b
    assert fast == slow


def test_overflow_bound_switches_to_python_ints(monkeypatch):
    big = 2**40
    a = BiSeries(3, {(0, r): big for r in range(80)})
    sq = a * a
    # each coefficient of x^0 y^r is big^2 times the number of ways to write r
    assert sq.coeff(0, 0) == big * big
    assert sq.coeff(0, 79) == 80 * big * big


def test_shift_and_pow():
    x = monomial(1, 1, 0, 4)
    assert (x ** 3).terms == {(3, 0): 1}
    assert (x ** 5).is_zero()
    assert monomial(2, 1, 1, 3).shift(2, 3).terms == {(3, 4): 2}
    assert monomial(2, 1, 1, 3).shift(3, 0).is_zero()
