"""Slow, independent reference computations used to check the fast paths.

Nothing here touches the histogram evaluator or the unit-group tables: the
characters are rebuilt from scratch by brute-force discrete logarithms and
the double sum is evaluated term by term.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from dedekind_kernels.cyclotomic import CyclotomicNumber


def b1(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def naive_sum_exact(chi1, chi2, a: int, c: int) -> CyclotomicNumber:
    """Term-by-term double sum with CyclotomicNumber multiplication, c > 0."""
    q1 = chi1.modulus
    total = CyclotomicNumber.zero(1)
    for j in range(c):
        bj = b1(Fraction(j, c))
        if not bj:
            continue
        x2 = chi2(j).conjugate()
        if x2.is_zero():
            continue
        for n in range(q1):
            x1 = chi1(n).conjugate()
            if x1.is_zero():
                continue
            total = total + x2 * x1 * (bj * b1(Fraction(n, q1) + Fraction(a * j, c)))
    return total


def _primitive_roots_brute(p: int) -> int:
    for g in range(2, p * p):
        if g % p == 0:
            continue
        if len({pow(g, k, p) for k in range(p - 1)}) == p - 1 and pow(g, p - 1, p * p) != 1:
            return g
    raise ValueError


def conrey_complex(q: int, n: int, m: int) -> complex:
    """chi_q(n, m) from the Conrey formula, odd q only, brute-force logs."""
    if math.gcd(m, q) != 1:
        return 0j
    val = 1 + 0j
    qq = q
    p = 2
    fac = {}
    while p * p <= qq:
        while qq % p == 0:
            fac[p] = fac.get(p, 0) + 1
            qq //= p
        p += 1
    if qq > 1:
        fac[qq] = fac.get(qq, 0) + 1
    for p, e in fac.items():
        assert p != 2, "oracle only handles odd moduli"
        pe = p**e
        phi = pe - pe // p
        g = _primitive_roots_brute(p)
        logs = {}
        x = 1
        for k in range(phi):
            logs[x] = k
            x = x * g % pe
        val *= cmath.exp(2j * math.pi * logs[n % pe] * logs[m % pe] / phi)
    return val


def naive_sum_complex(q1: int, n1: int, q2: int, n2: int, a: int, c: int) -> complex:
    total = 0j
    for j in range(1, c):
        bj = float(b1(Fraction(j, c)))
        x2 = conrey_complex(q2, n2, j).conjugate()
        if x2 == 0:
            continue
        for n in range(1, q1):
            x1 = conrey_complex(q1, n1, n).conjugate()
            total += x2 * x1 * bj * float(b1(Fraction(n, q1) + Fraction(a * j, c)))
    return total


def conductor_brute(chi) -> int:
    """Smallest d | q with chi(n) = 1 whenever n = 1 mod d and gcd(n, q) = 1."""
    q = chi.modulus
    for d in range(1, q + 1):
        if q % d:
            continue
        if all(
            chi.exponent(n) == 0
            for n in range(1, q)
            if n % d == 1 % d and math.gcd(n, q) == 1
        ):
            return d
    return q


def l_value_partial(values, q: int, terms: int) -> complex:
    """sum_{n <= N} chi(n)/n, N the largest multiple of q not above ``terms``."""
    import numpy as np

    N = (terms // q) * q
    n = np.arange(1, N + 1)
    chi = np.asarray(values)[n % q]
    return complex(np.sum(chi / n))
