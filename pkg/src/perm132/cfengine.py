"""Continued fractions for 132-avoiders counted by occurrences of 12...k.

All evaluations are bottom-up at a fixed truncation order N.  Every level of
each fraction multiplies by a monomial x * y^e with x-degree exactly one, so
levels deeper than N cannot touch coefficients of x^0 .. x^N.  Seeding the
tail with 1 (for the total-weight fractions) or 0 (for the exactly-one-132
recursion) is therefore exact, not an approximation.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb
from typing import Optional

from .bigseries import BiSeries, geometric_level

__all__ = [
    "binom",
    "LevelExponents",
    "level_exponent",
    "cf_F",
    "cf_G",
    "s_series",
    "s_ladder",
    "omega_series",
    "ExtensionWarning",
]


class ExtensionWarning(UserWarning):
    """Result computed outside the range the closed formulas were stated for."""


def binom(a: int, b: int) -> int:
    """C(a, b), taken as 0 whenever a < b or b < 0."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def level_exponent(i: int, k: int) -> int:
    """y-exponent of the i-th partial numerator (i >= 1): C(i-1, k-1)."""
    if i < 1 or k < 1:
        raise ValueError("level and pattern length start at 1")
    return binom(i - 1, k - 1)


@dataclass(frozen=True)
class LevelExponents:
    """y-exponents of the monomials q^{d,1} and q^{d,2} at depth d.

    Under q_1 = x, q_2 = ... = q_{k-1} = 1, q_k = y, the monomial
    q^{d,m} = prod_j q_j^C(d, j-m) keeps only its q_1 and q_k factors.
    For m = 1 that is x * y^C(d, k-1).  For m = 2 the q_1 exponent is
    C(d, -1) = 0, leaving the pure power y^C(d, k-2).
    """

    k: int
    d: int
    e1: int
    e2: int

    @classmethod
    def at(cls, k: int, d: int) -> "LevelExponents":
        if d < 0:
            raise ValueError("depth must be non-negative")
        return cls(k, d, level_exponent(d + 1, k), binom(d, k - 2))


def _fraction_from(exponents, N: int, y_cap: Optional[int]) -> BiSeries:
    # 1 / (1 - x y^e_1 / (1 - x y^e_2 / ...)) with the tail beyond depth N seeded by 1
    t = BiSeries.one(N, y_cap)
    for e in reversed(exponents):
        t = geometric_level(t, e)
    return t


def cf_F(k: int, N: int, y_cap: Optional[int] = None) -> BiSeries:
    """F(x, y; k) = sum_{n, r} f_n^r(k) x^n y^r, exact through x^N."""
    if k < 1:
        raise ValueError("pattern length k must be >= 1")
    return _fraction_from([level_exponent(i, k) for i in range(1, N + 1)], N, y_cap)


def cf_G(k: int, N: int, y_cap: Optional[int] = None) -> BiSeries:
    """The tail fraction G(x, y; k) = y / (1 - x y^C(k,1) / (1 - x y^C(k+1,2) / ...)).

    Exponents are taken directly as C(k-1+j, j); they coincide with the
    level exponents of F shifted by k levels.
    """
    if k < 1:
        raise ValueError("pattern length k must be >= 1")
    inner = _fraction_from([binom(k - 1 + j, j) for j in range(1, N + 1)], N, y_cap)
    return inner.shift(0, 1)


def s_series(j: int, k: int, N: int, y_cap: Optional[int] = None) -> BiSeries:
    """S_j: apply T -> 1/(1 - x T) j times to T_0 = G(x, y; k)."""
    if j < 0:
        raise ValueError("ladder index must be non-negative")
    t = cf_G(k, N, y_cap)
    for _ in range(j):
        t = geometric_level(t, 0)
    return t


def s_ladder(k: int, N: int, y_cap: Optional[int] = None) -> BiSeries:
    """S_k, which must coincide with cf_F(k, N)."""
    return s_series(k, k, N, y_cap)


def omega_series(k: int, N: int, y_cap: Optional[int] = None) -> BiSeries:
    """Phi(x, y; k): permutations with exactly one 132, by occurrences of 12...k.

    Runs the depth recursion
        W_d = 1 / (1 - x y^a_d W_{d+1}),
        Omega_d = x y^(a_d + 2 b_d) (W_d - 1)^2 + x y^a_d W_d^2 Omega_{d+1},
    with a_d = C(d, k-1), b_d = C(d, k-2), from d = N down to 0, seeded by
    W_{N+1} = 1 and Omega_{N+1} = 0.  k = 2 is computed but flagged with an
    :class:`ExtensionWarning`.
    """
    if k < 2:
        raise ValueError("omega_series needs k >= 2")
    if k == 2:
        warnings.warn("omega_series with k=2 is an extension beyond k >= 3", ExtensionWarning, stacklevel=2)
    one = BiSeries.one(N, y_cap)
    w = one
    omega = BiSeries.zero(N, y_cap)
    for d in range(N, -1, -1):
        ex = LevelExponents.at(k, d)
        w = geometric_level(w, ex.e1)
        wm1 = w - one
        omega = (wm1 * wm1).shift(1, ex.e1 + 2 * ex.e2) + (w * w * omega).shift(1, ex.e1)
    return omega
