"""Truncated bivariate power series in x and y with exact integer coefficients.

A :class:`BiSeries` keeps the coefficients of x^0 .. x^N; each x-degree holds
a sparse map from y-degree to coefficient.  Optionally every operation drops
terms whose y-degree exceeds a cap, which is safe for the retained terms
because no operation here lowers y-degree.

Products go through an int64 numpy kernel only when an L1-norm bound proves
no partial sum can overflow; otherwise plain Python integers are used.
Results are identical either way.
"""
from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import numpy as np

__all__ = [
    "BiSeries",
    "OrderMismatchError",
    "monomial",
    "reciprocal_unit",
    "geometric_level",
    "y_slice",
    "eval_y_one",
]

YPoly = Dict[int, int]

_INT64_MAX = 2**63 - 1
# below this many coefficient products the plain dict loop is faster
_NUMPY_MIN_WORK = 2000
_CHUNK = 1 << 20
# dense accumulators are used while max degree <= factor * work + slack
_DENSE_FACTOR = 8
_DENSE_SLACK = 1 << 16


class OrderMismatchError(ValueError):
    """Two series with different truncation orders were combined."""


def _merge_cap(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _clean(p: YPoly, cap: Optional[int]) -> YPoly:
    if cap is None:
        return {r: c for r, c in p.items() if c}
    return {r: c for r, c in p.items() if c and r <= cap}


def _ymul(p: YPoly, q: YPoly, cap: Optional[int], out: YPoly) -> None:
    # out += p * q, keeping y-degrees <= cap
    if len(p) > len(q):
        p, q = q, p
    if cap is None:
        for r1, c1 in p.items():
            for r2, c2 in q.items():
                r = r1 + r2
                out[r] = out.get(r, 0) + c1 * c2
    else:
        for r1, c1 in p.items():
            if r1 > cap:
                continue
            lim = cap - r1
            for r2, c2 in q.items():
                if r2 <= lim:
                    r = r1 + r2
                    out[r] = out.get(r, 0) + c1 * c2


class _Packed:
    """One sparse row, held as a dict and/or as int64 arrays, built lazily.

    ``l1`` (sum of absolute values) drives the overflow bound; arrays exist
    only when ``l1`` fits in int64.
    """

    __slots__ = ("_row", "_deg", "_coef", "_l1")

    def __init__(self, row: Optional[YPoly] = None, deg=None, coef=None, l1: Optional[int] = None):
        self._row = row
        self._deg = deg
        self._coef = coef
        self._l1 = l1

    @property
    def row(self) -> YPoly:
        if self._row is None:
            self._row = dict(zip(self._deg.tolist(), self._coef.tolist()))
        return self._row

    @property
    def l1(self) -> int:
        if self._l1 is None:
            if self._row is None:
                self._l1 = int(np.abs(self._coef).sum())
            else:
                self._l1 = sum(abs(c) for c in self._row.values())
        return self._l1

    def arrays(self):
        if self._deg is None and self._row and self.l1 <= _INT64_MAX:
            row = self._row
            self._deg = np.fromiter(row.keys(), dtype=np.int64, count=len(row))
            self._coef = np.fromiter(row.values(), dtype=np.int64, count=len(row))
        return self._deg, self._coef

    def __len__(self) -> int:
        return len(self._row) if self._row is not None else len(self._deg)

    def top(self) -> int:
        if self._deg is not None:
            return int(self._deg.max()) if len(self._deg) else -1
        return max(self._row) if self._row else -1

    def shifted(self, dy: int) -> "_Packed":
        if dy == 0:
            return self
        if self._deg is not None:
            return _Packed(None, self._deg + dy, self._coef, self._l1)
        return _Packed({r + dy: c for r, c in self._row.items()}, l1=self._l1)


_EMPTY = _Packed({})


def _conv_sum(pairs: List[Tuple[_Packed, _Packed]], cap: Optional[int]) -> _Packed:
    """Sum of p*q over the pairs, with y-degrees above ``cap`` dropped."""
    pairs = [(a, b) for a, b in pairs if len(a) and len(b)]
    if not pairs:
        return _EMPTY
    work = sum(len(a) * len(b) for a, b in pairs)
    # every accumulator cell is bounded by sum |p|_1 |q|_1
    bound = sum(a.l1 * b.l1 for a, b in pairs)
    if work < _NUMPY_MIN_WORK or bound > _INT64_MAX:
        out: YPoly = {}
        for a, b in pairs:
            _ymul(a.row, b.row, cap, out)
        return _Packed(_clean(out, cap))
    top = max(a.top() + b.top() for a, b in pairs)
    if cap is not None:
        top = min(top, cap)
    if top > _DENSE_FACTOR * work + _DENSE_SLACK:
        return _conv_sum_sorted(pairs, cap)
    acc = np.zeros(top + 1, dtype=np.int64)
    for a, b in pairs:
        if len(a) > len(b):
            a, b = b, a
        (adeg, acoef), (bdeg, bcoef) = a.arrays(), b.arrays()
        step = max(1, _CHUNK // len(bdeg))
        for s in range(0, len(adeg), step):
            deg = np.add.outer(adeg[s:s + step], bdeg).ravel()
            coef = np.multiply.outer(acoef[s:s + step], bcoef).ravel()
            if cap is not None:
                keep = deg <= cap
                deg, coef = deg[keep], coef[keep]
            np.add.at(acc, deg, coef)
    idx = np.flatnonzero(acc)
    coef = acc[idx]
    return _Packed(deg=idx.astype(np.int64), coef=coef)


def _conv_sum_sorted(pairs, cap):
    # for rows whose y-degrees are too spread out for a dense accumulator
    degs, coefs = [], []
    for a, b in pairs:
        (adeg, acoef), (bdeg, bcoef) = a.arrays(), b.arrays()
        deg = np.add.outer(adeg, bdeg).ravel()
        coef = np.multiply.outer(acoef, bcoef).ravel()
        if cap is not None:
            keep = deg <= cap
            deg, coef = deg[keep], coef[keep]
        degs.append(deg)
        coefs.append(coef)
    deg = np.concatenate(degs)
    coef = np.concatenate(coefs)
    if not len(deg):
        return _EMPTY
    uniq, inv = np.unique(deg, return_inverse=True)
    acc = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(acc, inv, coef)
    keep = acc != 0
    return _Packed(deg=uniq[keep], coef=acc[keep])


class BiSeries:
    """Element of Z[[x, y]] modulo x^(N+1), optionally modulo y^(cap+1).

    Values are treated as immutable; arithmetic always returns new series.
    """

    __slots__ = ("order", "y_cap", "_packs")

    def __init__(
        self,
        order: int,
        terms: Optional[Mapping[Tuple[int, int], int]] = None,
        y_cap: Optional[int] = None,
    ):
        if order < 0:
            raise ValueError("order must be non-negative")
        if y_cap is not None and y_cap < 0:
            raise ValueError("y_cap must be non-negative")
        self.order = order
        self.y_cap = y_cap
        rows: List[YPoly] = [{} for _ in range(order + 1)]
        for (n, r), c in (terms or {}).items():
            if n < 0 or r < 0:
                raise ValueError(f"negative exponent in term {(n, r)}")
            if n > order or (y_cap is not None and r > y_cap):
                continue
            rows[n][r] = rows[n].get(r, 0) + int(c)
        self._packs = tuple(_Packed(_clean(row, None)) for row in rows)

    @classmethod
    def _from_packs(cls, order: int, packs: Iterable[_Packed], y_cap: Optional[int]) -> "BiSeries":
        s = object.__new__(cls)
        s.order = order
        s.y_cap = y_cap
        s._packs = tuple(packs)
        return s

    @classmethod
    def _from_rows(cls, order: int, rows: Iterable[YPoly], y_cap: Optional[int]) -> "BiSeries":
        return cls._from_packs(order, (_Packed(_clean(row, y_cap)) for row in rows), y_cap)

    @classmethod
    def zero(cls, order: int, y_cap: Optional[int] = None) -> "BiSeries":
        return cls._from_rows(order, [{} for _ in range(order + 1)], y_cap)

    @classmethod
    def one(cls, order: int, y_cap: Optional[int] = None) -> "BiSeries":
        return monomial(1, 0, 0, order, y_cap)

    @property
    def _rows(self) -> Tuple[YPoly, ...]:
        return tuple(p.row for p in self._packs)

    # -- inspection --

    @property
    def terms(self) -> Dict[Tuple[int, int], int]:
        return {(n, r): c for n, r, c in self.items()}

    def coeff(self, n: int, r: int) -> int:
        if n < 0 or n > self.order:
            raise IndexError(f"x-degree {n} outside 0..{self.order}")
        return self._packs[n].row.get(r, 0)

    def row(self, n: int) -> Dict[int, int]:
        """Coefficients of x^n as a sorted map y-degree -> value."""
        return dict(sorted(self._packs[n].row.items()))

    def items(self) -> Iterator[Tuple[int, int, int]]:
        """Yield (n, r, coefficient) in (n, r) order."""
        for n, p in enumerate(self._packs):
            row = p.row
            for r in sorted(row):
                yield n, r, row[r]

    def is_zero(self) -> bool:
        return not any(len(p) for p in self._packs)

    def __len__(self) -> int:
        return sum(len(p) for p in self._packs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.order == other.order and self._rows == other._rows

    def __hash__(self):
        return hash((self.order, tuple(frozenset(r.items()) for r in self._rows)))

    def __repr__(self) -> str:
        shown = " + ".join(f"{c}*x^{n}*y^{r}" for n, r, c in list(self.items())[:8])
        more = " + ..." if len(self) > 8 else ""
        return f"BiSeries(order={self.order}, {shown or '0'}{more})"

    # -- arithmetic --

    def _check(self, other: "BiSeries") -> Optional[int]:
        if not isinstance(other, BiSeries):
            raise TypeError(f"cannot combine BiSeries with {type(other).__name__}")
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")
        return _merge_cap(self.y_cap, other.y_cap)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        cap = self._check(other)
        rows = []
        for a, b in zip(self._rows, other._rows):
            row = dict(a)
            for r, c in b.items():
                row[r] = row.get(r, 0) + c
            rows.append(row)
        return BiSeries._from_rows(self.order, rows, cap)

    def __neg__(self) -> "BiSeries":
        return BiSeries._from_rows(self.order, [{r: -c for r, c in row.items()} for row in self._rows], self.y_cap)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __mul__(self, other) -> "BiSeries":
        if isinstance(other, int):
            return BiSeries._from_rows(
                self.order, [{r: c * other for r, c in row.items()} for row in self._rows], self.y_cap
            )
        cap = self._check(other)
        pa, pb = self._packs, other._packs
        packs = [_conv_sum([(pa[i], pb[n - i]) for i in range(n + 1)], cap) for n in range(self.order + 1)]
        return BiSeries._from_packs(self.order, packs, cap)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiSeries":
        if e < 0:
            raise ValueError("negative powers are not supported; use reciprocal_unit")
        result = BiSeries.one(self.order, self.y_cap)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, dx: int = 0, dy: int = 0) -> "BiSeries":
        """Multiply by x^dx * y^dy."""
        if dx < 0 or dy < 0:
            raise ValueError("shifts must be non-negative")
        packs = [_EMPTY] * min(dx, self.order + 1)
        packs += [p.shifted(dy) for p in self._packs[: self.order + 1 - dx]]
        out = BiSeries._from_packs(self.order, packs, self.y_cap)
        return out.with_cap(self.y_cap) if self.y_cap is not None and dy else out

    def truncate(self, order: int) -> "BiSeries":
        if order > self.order:
            raise ValueError(f"cannot raise order from {self.order} to {order}")
        return BiSeries._from_packs(order, self._packs[: order + 1], self.y_cap)

    def with_cap(self, y_cap: Optional[int]) -> "BiSeries":
        cap = _merge_cap(self.y_cap, y_cap)
        return BiSeries._from_rows(self.order, self._rows, cap)

    def reciprocal_unit(self) -> "BiSeries":
        return reciprocal_unit(self)

    def y_slice(self, r: int) -> List[int]:
        return y_slice(self, r)

    def eval_y_one(self) -> List[int]:
        return eval_y_one(self)


def monomial(a: int, n: int, r: int, N: int, y_cap: Optional[int] = None) -> BiSeries:
    """The series a * x^n * y^r truncated at x-order N."""
    if n < 0 or r < 0:
        raise ValueError("exponents must be non-negative")
    return BiSeries(N, {(n, r): a}, y_cap)


def _unit_inverse(u: List[_Packed], order: int, cap: Optional[int]) -> BiSeries:
    # b = 1 / (1 - u) with u_0 = 0:  b_n = sum_{i=1..n} u_i b_{n-i}
    out = [_Packed({0: 1})]
    for n in range(1, order + 1):
        out.append(_conv_sum([(u[i], out[n - i]) for i in range(1, n + 1)], cap))
    return BiSeries._from_packs(order, out, cap)


def reciprocal_unit(a: BiSeries) -> BiSeries:
    """Inverse of a series with constant term 1 and no other x^0 terms.

    Writing a = 1 - u, the inverse is computed one x-degree at a time from
    b_n = sum_{i=1..n} u_i b_{n-i}, so every coefficient stays an integer.
    """
    row0 = a._packs[0].row
    if row0.get(0, 0) != 1:
        raise ValueError(f"constant term must be 1, got {row0.get(0, 0)}")
    if len(row0) > 1:
        raise ValueError("x^0 part must be exactly 1 (found y-dependent terms at x-degree 0)")
    u = [_EMPTY] + [_Packed({r: -c for r, c in p.row.items()}) for p in a._packs[1:]]
    return _unit_inverse(u, a.order, a.y_cap)


def geometric_level(t: BiSeries, dy: int = 0) -> BiSeries:
    """1 / (1 - x y^dy t), the step used by every continued-fraction level.

    Same result as ``reciprocal_unit(one - t.shift(1, dy))`` without building
    the intermediate series.
    """
    if dy < 0:
        raise ValueError("y-shift must be non-negative")
    u = [_EMPTY] + [p.shifted(dy) for p in t._packs[:-1]]
    return _unit_inverse(u, t.order, t.y_cap)


def y_slice(a: BiSeries, r: int) -> List[int]:
    """Coefficients of x^0 .. x^N in the y^r layer."""
    if r < 0:
        raise ValueError("y-degree must be non-negative")
    return [p.row.get(r, 0) for p in a._packs]


def eval_y_one(a: BiSeries) -> List[int]:
    """Substitute y = 1: per x-degree, the sum over all y-degrees."""
    return [sum(p.row.values()) for p in a._packs]
