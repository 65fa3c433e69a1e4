"""Chebyshev closed forms with every square root cleared.

With t = 1/(2 sqrt(x)), the polynomial b_j(x) = x^(j/2) U_j(t) has integer
coefficients: U_{j+1} = 2t U_j - U_{j-1} becomes b_{j+1} = b_j - x b_{j-1},
with b_0 = b_1 = 1.  Substituting U_j(t) = b_j x^(-j/2) into the closed forms
turns every half-integer power of x into an integer one:

* R_j = U_{j-1} / (sqrt(x) U_j) = b_{j-1} / b_j.
* x^((r-1)/2) U_{k-1}^(r-1) / U_k^(r+1) = x^(k+r-1) b_{k-1}^(r-1) / b_k^(r+1),
  since (r-1)/2 - (k-1)(r-1)/2 + k(r+1)/2 = k + r - 1.
* (U_k / (x^((k-2)/(2k)) U_{k-1}))^(kj) = (b_k / b_{k-1})^(kj) x^(-j(k-1)),
  since U_k / U_{k-1} = (b_k / b_{k-1}) x^(-1/2).
* x U_j^2 / U_k^2 = b_j^2 x^(k+1-j) / b_k^2.

Every closed form is checked against the continued-fraction series in the
test suite; an exponent slip shows up there as a coefficient mismatch.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, List, Sequence, Tuple

from .bigseries import BiSeries, reciprocal_unit
from .cfengine import cf_G

__all__ = [
    "XPolynomial",
    "RationalGF",
    "ClosedFormRangeError",
    "InternalConsistencyError",
    "b_poly",
    "r_rational",
    "closed_x_exponent",
    "f_closed",
    "f_closed_extended",
    "extended_max_r",
    "phi0_closed",
    "expand",
    "cheb_identity_residual",
    "lift",
    "approximant_series",
    "s_series_closed",
]


class ClosedFormRangeError(ValueError):
    """Requested (r, k) lies outside the range a closed form is valid for."""


class InternalConsistencyError(RuntimeError):
    """A closed form failed a structural self-check; this is a bug, not bad input."""


class XPolynomial:
    """Dense polynomial in x with integer coefficients; ``coeffs[i]`` is the x^i term."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[int, ...] = tuple(c)

    @classmethod
    def x_power(cls, m: int, a: int = 1) -> "XPolynomial":
        if m < 0:
            raise ValueError("negative power of x")
        return cls([0] * m + [a])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = XPolynomial([other])
        if not isinstance(other, XPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "XPolynomial(0)"
        parts = []
        for i, a in enumerate(self.coeffs):
            if a:
                parts.append(str(a) if i == 0 else f"{a}*x" if i == 1 else f"{a}*x^{i}")
        return f"XPolynomial({' + '.join(parts)})"

    def __add__(self, other: "XPolynomial") -> "XPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return XPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "XPolynomial":
        return XPolynomial(-a for a in self.coeffs)

    def __sub__(self, other: "XPolynomial") -> "XPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "XPolynomial":
        if isinstance(other, int):
            return XPolynomial(a * other for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return XPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return XPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "XPolynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = XPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, m: int) -> "XPolynomial":
        """Multiply by x^m."""
        if m < 0:
            raise ValueError("negative shift")
        if not self.coeffs:
            return self
        return XPolynomial([0] * m + list(self.coeffs))


class RationalGF:
    """num/den with den(0) = 1, so the expansion has integer coefficients.

    No gcd reduction is done; ``==`` compares by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: XPolynomial, den: XPolynomial):
        if den[0] != 1:
            raise ValueError(f"denominator must have constant term 1, got {den[0]}")
        self.num = num
        self.den = den

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalGF is unhashable (equality is up to common factors)")

    def __repr__(self) -> str:
        return f"RationalGF({self.num!r} / {self.den!r})"

    def __add__(self, other: "RationalGF") -> "RationalGF":
        return RationalGF(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalGF") -> "RationalGF":
        return RationalGF(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalGF") -> "RationalGF":
        return RationalGF(self.num * other.num, self.den * other.den)

    def expand(self, N: int) -> List[int]:
        return expand(self, N)


@lru_cache(maxsize=None)
def _b_table(j: int) -> Tuple[XPolynomial, ...]:
    if j <= 1:
        return (XPolynomial([1]), XPolynomial([1]))[: j + 1]
    prev = _b_table(j - 1)
    return prev + (prev[-1] - prev[-2].shift(1),)


def b_poly(j: int) -> XPolynomial:
    """b_j(x) = x^(j/2) U_j(1/(2 sqrt x)), via b_{j+1} = b_j - x b_{j-1}.

    >>> b_poly(4)
    XPolynomial(1 + -3*x + 1*x^2)
    """
    if j < 0:
        raise ValueError("index must be non-negative")
    return _b_table(j)[j]


def r_rational(j: int) -> RationalGF:
    """The j-th approximant R_j = b_{j-1} / b_j of the Catalan continued fraction."""
    if j < 1:
        raise ValueError("R_j is defined for j >= 1")
    return RationalGF(b_poly(j - 1), b_poly(j))


def closed_x_exponent(r: int, k: int) -> int:
    """Integer power of x left in F_r(x; k) once the square roots are cleared."""
    return k + r - 1


def f_closed(r: int, k: int) -> RationalGF:
    """F_r(x; k) for 0 <= r <= k.

    r = 0 gives R_k = b_{k-1}/b_k; otherwise x^(k+r-1) b_{k-1}^(r-1) / b_k^(r+1).
    """
    if k < 1:
        raise ValueError("pattern length k must be >= 1")
    if not 0 <= r <= k:
        raise ClosedFormRangeError(
            f"f_closed covers 0 <= r <= k = {k}, got r = {r}; "
            f"use f_closed_extended for 1 <= r <= {extended_max_r(k)}"
        )
    if r == 0:
        return r_rational(k)
    num = (b_poly(k - 1) ** (r - 1)).shift(closed_x_exponent(r, k))
    return RationalGF(num, b_poly(k) ** (r + 1))


def extended_max_r(k: int) -> int:
    return k * (k + 3) // 2


def f_closed_extended(r: int, k: int) -> RationalGF:
    """F_r(x; k) for 1 <= r <= k(k+3)/2.

    F_r = x^(k+r-1) b_{k-1}^(r-1) / b_k^(r+1)
          * sum_{j=0}^{floor((r-1)/k)} C(r-kj+j-1, j) (b_k/b_{k-1})^(kj) x^(-j(k-1)),
    put over one denominator.  Since kj <= r-1 the power of b_{k-1} in each
    term never goes negative; the general common denominator is kept anyway
    and the non-negativity of every x-power is asserted.
    """
    if k < 1:
        raise ValueError("pattern length k must be >= 1")
    if not 1 <= r <= extended_max_r(k):
        raise ClosedFormRangeError(f"f_closed_extended covers 1 <= r <= {extended_max_r(k)} for k = {k}, got r = {r}")
    bk, bk1 = b_poly(k), b_poly(k - 1)
    jmax = (r - 1) // k
    extra = max(0, k * jmax - (r - 1))
    num = XPolynomial()
    for j in range(jmax + 1):
        xpow = closed_x_exponent(r, k) - j * (k - 1)
        bk1_pow = r - 1 - k * j + extra
        if xpow < 0 or bk1_pow < 0:
            raise InternalConsistencyError(f"negative exponent in term j={j} for (r={r}, k={k})")
        num = num + ((bk1 ** bk1_pow) * (bk ** (k * j))).shift(xpow) * comb(r - k * j + j - 1, j)
    return RationalGF(num, (bk ** (r + 1)) * (bk1 ** extra))


def phi0_closed(k: int) -> RationalGF:
    """Phi_0(x; k) = (sum_{j=1}^{k-2} b_j^2 x^(k+1-j)) / b_k^2, for k >= 3."""
    if k < 3:
        raise ClosedFormRangeError(f"phi0_closed needs k >= 3, got k = {k}")
    num = XPolynomial()
    for j in range(1, k - 1):
        num = num + (b_poly(j) ** 2).shift(k + 1 - j)
    return RationalGF(num, b_poly(k) ** 2)


def expand(f: RationalGF, N: int) -> List[int]:
    """Coefficients of x^0 .. x^N of num/den.

    With den(0) = 1, c_n = num_n - sum_{i>=1} den_i c_{n-i}; exact integers.
    """
    if f.den[0] != 1:
        raise ValueError("denominator must have constant term 1")
    den = f.den.coeffs
    out: List[int] = []
    for n in range(N + 1):
        c = f.num[n]
        for i in range(1, min(n, len(den) - 1) + 1):
            c -= den[i] * out[n - i]
        out.append(c)
    return out


def cheb_identity_residual(n: int) -> XPolynomial:
    """b_{n-1}^2 - b_n b_{n-2} - x^(n-1); zero for every n >= 2.

    This is the cleared form of U_{n-1}^2 - U_n U_{n-2} = 1.
    """
    if n < 2:
        raise ValueError("identity is stated for n >= 2")
    return b_poly(n - 1) ** 2 - b_poly(n) * b_poly(n - 2) - XPolynomial.x_power(n - 1)


def lift(coeffs: Sequence[int], N: int, y_cap=None) -> BiSeries:
    """A univariate x-series as a y-free BiSeries of order N."""
    return BiSeries(N, {(n, 0): c for n, c in enumerate(coeffs[: N + 1])}, y_cap)


def approximant_series(k: int, N: int, y_cap=None) -> BiSeries:
    """R_k + (R_k - R_{k-1}) sum_{m>=1} (x R_k G)^m, truncated at order N.

    The geometric sum is taken after truncation, as 1/(1 - q) - 1 with
    q = x R_k G of positive x-order.  Should equal ``cf_F(k, N)``.
    """
    if k < 1:
        raise ValueError("pattern length k must be >= 1")
    rk = lift(expand(r_rational(k), N), N, y_cap)
    rk1 = lift(expand(r_rational(k - 1), N), N, y_cap) if k > 1 else BiSeries.zero(N, y_cap)
    one = BiSeries.one(N, y_cap)
    q = (rk * cf_G(k, N, y_cap)).shift(1, 0)
    tail = reciprocal_unit(one - q) - one
    return rk + (rk - rk1) * tail


def s_series_closed(j: int, k: int, N: int, y_cap=None) -> BiSeries:
    """S_j = R_j (1 - x R_{j-1} G) / (1 - x R_j G) as a truncated series."""
    if j < 1:
        raise ValueError("j must be >= 1")
    g = cf_G(k, N, y_cap)
    one = BiSeries.one(N, y_cap)
    rj = lift(expand(r_rational(j), N), N, y_cap)
    rj1 = lift(expand(r_rational(j - 1), N), N, y_cap) if j > 1 else BiSeries.zero(N, y_cap)
    return rj * (one - (rj1 * g).shift(1, 0)) * reciprocal_unit(one - (rj * g).shift(1, 0))
