"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[x]/(Phi_n(x)) with :class:`fractions.Fraction` coefficients.  Operands of
different orders are embedded into the lcm order before combining, so values
coming from characters of different orders mix freely.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "euler_phi",
    "power_table",
    "cyclo_add",
    "cyclo_mul",
    "cyclo_galois",
    "cyclo_conjugate",
    "cyclo_is_zero",
    "cyclo_to_complex",
]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p in _factorize(n):
        result -= result // p
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d.
    """
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        q = num[i]
        quot[i - dd] = q
        if q:
            for k in range(dd + 1):
                num[i - dd + k] -= q * den[k]
    if any(num[:dd]):
        raise ArithmeticError("non-exact cyclotomic division")
    return quot


@lru_cache(maxsize=None)
def _power_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced form of x^k modulo Phi_n for k = 0 .. n-1."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def power_table(n: int) -> np.ndarray:
    """``power_table(n)[k]`` is x^k mod Phi_n as an int64 row, shape (n, phi(n))."""
    arr = np.array(_power_rows(n), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class CyclotomicNumber:
    """Immutable element of Q(zeta_order) in canonical reduced form."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable):
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        deg = euler_phi(order)
        if len(coeffs) != deg:
            coeffs = _reduce(order, coeffs)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls(order, (Fraction(0),) * euler_phi(order))

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.rational(1, order)

    @classmethod
    def rational(cls, r, order: int = 1) -> "CyclotomicNumber":
        deg = euler_phi(order)
        return cls(order, (_as_fraction(r),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CyclotomicNumber":
        """zeta_n ** k."""
        return cls(n, (Fraction(v) for v in _power_rows(n)[k % n]))

    @classmethod
    def from_exponent_counts(cls, order: int, counts: Sequence[int], denominator: int = 1) -> "CyclotomicNumber":
        """Build ``sum(counts[k] * zeta^k) / denominator`` with integer counts."""
        rows = _power_rows(order)
        deg = euler_phi(order)
        acc = [0] * deg
        for k, v in enumerate(counts):
            if v:
                row = rows[k % order]
                for i in range(deg):
                    if row[i]:
                        acc[i] += v * row[i]
        return cls(order, (Fraction(v, denominator) for v in acc))

    # -- order changes ----------------------------------------------------
    def embed(self, m: int) -> "CyclotomicNumber":
        """Image in Q(zeta_m); requires order | m."""
        n = self.order
        if m == n:
            return self
        if m % n:
            raise ValueError(f"cannot embed order {n} into order {m}")
        step = m // n
        rows = _power_rows(m)
        deg = euler_phi(m)
        acc = [Fraction(0)] * deg
        for i, c in enumerate(self.coeffs):
            if c:
                row = rows[(i * step) % m]
                for t in range(deg):
                    if row[t]:
                        acc[t] += c * row[t]
        return CyclotomicNumber(m, acc)

    def restrict(self, d: int) -> "CyclotomicNumber | None":
        """The same element written in Q(zeta_d) for d | order, or None if it is not there."""
        n = self.order
        if d == n:
            return self
        if n % d:
            raise ValueError(f"{d} does not divide {n}")
        basis = [CyclotomicNumber.zeta(d, i).embed(n).coeffs for i in range(euler_phi(d))]
        sol = _solve_in_span(basis, self.coeffs)
        if sol is None:
            return None
        return CyclotomicNumber(d, sol)

    def canonicalize_order(self) -> "CyclotomicNumber":
        """Rewrite in the smallest order dividing ``self.order`` that contains the element."""
        for d in _divisors(self.order):
            r = self.restrict(d)
            if r is not None:
                return r
        return self  # unreachable: d = order always succeeds

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            return other
        return CyclotomicNumber.rational(_as_fraction(other), 1)

    def _common(self, other) -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        other = self._coerce(other)
        if other.order == self.order:
            return self, other
        m = math.lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber(x.order, (p + q for p, q in zip(x.coeffs, y.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, (-c for c in self.coeffs))

    def __sub__(self, other):
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber(x.order, (p - q for p, q in zip(x.coeffs, y.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CyclotomicNumber(self.order, (c * f for c in self.coeffs))
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        n = x.order
        deg = len(x.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, p in enumerate(x.coeffs):
            if p:
                for j, q in enumerate(y.coeffs):
                    if q:
                        prod[i + j] += p * q
        return CyclotomicNumber(n, _reduce(n, prod))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.order
        deg = len(self.coeffs)
        # columns: self * zeta^i
        cols = [(self * CyclotomicNumber.zeta(n, i)).coeffs for i in range(deg)]
        target = (Fraction(1),) + (Fraction(0),) * (deg - 1)
        sol = _solve_in_span(cols, target)
        assert sol is not None
        return CyclotomicNumber(n, sol)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- field automorphisms ----------------------------------------------
    def galois(self, k: int) -> "CyclotomicNumber":
        """Apply sigma_k: zeta_n -> zeta_n^k."""
        n = self.order
        if math.gcd(k, n) != 1:
            raise ValueError(f"k={k} is not coprime to the order {n}")
        rows = _power_rows(n)
        deg = len(self.coeffs)
        acc = [Fraction(0)] * deg
        for i, c in enumerate(self.coeffs):
            if c:
                row = rows[(i * k) % n]
                for t in range(deg):
                    if row[t]:
                        acc[t] += c * row[t]
        return CyclotomicNumber(n, acc)

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(-1)

    # -- predicates and conversion -----------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        c = self.canonicalize_order()
        if not c.is_rational():
            raise ValueError(f"{self} is not rational")
        return c.coeffs[0]

    def __complex__(self) -> complex:
        n = self.order
        return sum(
            (float(c) * cmath.exp(2j * math.pi * i / n) for i, c in enumerate(self.coeffs) if c),
            0j,
        )

    def to_complex(self) -> complex:
        return complex(self)

    def __eq__(self, other):
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return x.coeffs == y.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            c = self.canonicalize_order()
            h = hash((c.order, c.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = f"z{self.order}" + (f"^{i}" if i > 1 else "")
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def _reduce(n: int, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    rows = _power_rows(n)
    deg = euler_phi(n)
    acc = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if c:
            row = rows[k % n]
            for t in range(deg):
                if row[t]:
                    acc[t] += c * row[t]
    return tuple(acc)


def _solve_in_span(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Exact solve of sum(x_i * columns[i]) == target; None when no solution exists."""
    nrows = len(target)
    ncols = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(target[i])] for i in range(nrows)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][col]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    if any(mat[i][ncols] for i in range(r, nrows)):
        return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = mat[i][ncols]
    return sol


# Functional surface mirroring the operator methods.

def cyclo_add(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x + y


def cyclo_mul(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x * y


def cyclo_galois(x: CyclotomicNumber, k: int) -> CyclotomicNumber:
    return x.galois(k)


def cyclo_conjugate(x: CyclotomicNumber) -> CyclotomicNumber:
    return x.conjugate()


def cyclo_is_zero(x: CyclotomicNumber) -> bool:
    return x.is_zero()


def cyclo_to_complex(x: CyclotomicNumber) -> complex:
    return complex(x)
