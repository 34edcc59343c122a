"""Newform Dedekind sums S_{chi1,chi2}(a, c) and the identities they satisfy.

For c > 0 the value is the finite double sum

    S(a, c) = sum_{j mod c} sum_{n mod q1} conj(chi2)(j) conj(chi1)(n) B1(j/c) B1(n/q1 + a j/c).

The inner sum only depends on r = a*j mod c through m = floor(r*q1/c) and
whether c divides r*q1, so it is tabulated once per character (q1 entries)
and the outer sum becomes a histogram over (value of chi2(j), m, flag).
All accumulation is in integers over the common denominator 4*c*q1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .characters import DirichletCharacter, gauss_sum, gen_bernoulli_1, nebentypus
from .cyclotomic import CyclotomicNumber, euler_phi, power_table
from .modular import UnimodularMatrix, fricke_partner

__all__ = [
    "IdentityViolation",
    "DedekindSumSpec",
    "bernoulli_b1",
    "dedekind_sum",
    "dedekind_sum_is_zero",
    "dedekind_sum_matrix",
    "crossed_hom_defect",
    "reciprocity_defect",
    "reciprocity_constant",
    "symmetry_negation_defect",
    "symmetry_inverse_defect",
    "fourier_coefficients",
    "eisenstein_cross_check",
]

_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62
_CHUNK = 1 << 20
_C_LIMIT = 3_000_000_000  # keeps a*j and the histogram inside int64


class IdentityViolation(AssertionError):
    """An exact identity evaluated to something nonzero; carries the witness."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True)
class DedekindSumSpec:
    chi1: DirichletCharacter
    chi2: DirichletCharacter

    def __post_init__(self):
        for chi in (self.chi1, self.chi2):
            if chi.modulus < 2:
                raise ValueError("both moduli must exceed 1")
            if not chi.is_primitive:
                raise ValueError(f"{chi.label} is not primitive")
        if self.chi1.parity * self.chi2.parity != 1:
            raise ValueError(f"chi1*chi2(-1) = -1 for ({self.chi1.label}, {self.chi2.label})")

    @classmethod
    def from_labels(cls, chi1: str, chi2: str) -> "DedekindSumSpec":
        from .characters import parse_label

        return cls(parse_label(chi1), parse_label(chi2))

    @property
    def q1(self) -> int:
        return self.chi1.modulus

    @property
    def q2(self) -> int:
        return self.chi2.modulus

    @property
    def Q(self) -> int:
        return self.q1 * self.q2

    @property
    def is_even(self) -> bool:
        return self.chi1.is_even

    @property
    def value_order(self) -> int:
        return math.lcm(self.chi1.order, self.chi2.order)

    @property
    def label(self) -> str:
        return f"({self.chi1.label},{self.chi2.label})"

    @cached_property
    def psi(self) -> DirichletCharacter:
        return nebentypus(self.chi1, self.chi2)

    def swapped(self) -> "DedekindSumSpec":
        return DedekindSumSpec(self.chi2, self.chi1)

    def galois(self, k: int) -> "DedekindSumSpec":
        return DedekindSumSpec(self.chi1.galois(k), self.chi2.galois(k))


def bernoulli_b1(x) -> Fraction:
    """First periodic Bernoulli function; 0 at the integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


class _Evaluator:
    """Per-spec tables for the histogram evaluation."""

    def __init__(self, spec: DedekindSumSpec):
        chi1, chi2 = spec.chi1, spec.chi2
        q1, q2 = spec.q1, spec.q2
        m1, m2 = chi1.order, chi2.order
        L = math.lcm(m1, m2)
        self.q1, self.q2, self.m1, self.m2, self.L = q1, q2, m1, m2, L
        e1 = chi1.exponent_table
        # inner[m, flag, k]: coefficient of zeta_m1^k in 2*q1*T, T the inner sum
        inner = np.zeros((q1, 2, m1), dtype=np.int64)
        for m in range(q1):
            for k in range(q1):
                e = e1[(k - m) % q1]
                if e >= 0:
                    inner[m, :, (-e) % m1] += 2 * k
            e = e1[(-m) % q1]
            if e >= 0:
                inner[m, 1, (-e) % m1] += q1
        self.inner = inner.reshape(2 * q1, m1)
        self.inner_max = int(np.abs(self.inner).max()) if self.inner.size else 0
        # class index of conj(chi2)(j) for j mod q2, -1 where chi2 vanishes
        e2 = np.array(chi2.exponent_table, dtype=np.int64)
        self.chi2_class = np.where(e2 >= 0, (-e2) % m2, -1)
        # exponent of zeta_L for (class of chi2-bar, exponent of chi1-bar)
        s1, s2 = L // m1, L // m2
        self.combine = (np.arange(m2)[:, None] * s2 + np.arange(m1)[None, :] * s1) % L
        self.reduce = power_table(L)
        self.deg = euler_phi(L)

    def numerators(self, a: int, c: int) -> list[int]:
        """Integer coefficients N_i with S(a, c) = sum N_i zeta_L^i / (4 c q1), c > 0."""
        if c >= _C_LIMIT:
            raise ValueError(f"c={c} exceeds the evaluator limit {_C_LIMIT} (int64 histogram)")
        q1, m2 = self.q1, self.m2
        a %= c
        nbins = m2 * 2 * q1
        hist = np.zeros(nbins, dtype=np.int64)
        exact_float = _CHUNK * c < _FLOAT_EXACT
        # blocks of j keep memory flat for large c
        for start in range(1, c, _CHUNK):
            j = np.arange(start, min(start + _CHUNK, c), dtype=np.int64)
            cls = self.chi2_class[j % self.q2]
            keep = cls >= 0
            j, cls = j[keep], cls[keep]
            rq = ((a * j) % c) * q1
            key = cls * (2 * q1) + (rq // c) * 2 + (rq % c == 0)
            w = 2 * j - c
            if exact_float:
                hist += np.rint(np.bincount(key, weights=w, minlength=nbins)).astype(np.int64)
            else:
                np.add.at(hist, key, w)
        hist = hist.reshape(m2, 2 * q1)
        bound = c * c * max(self.inner_max, 1) * self.L * (int(np.abs(self.reduce).max()) or 1)
        if bound < _INT64_SAFE:
            grid = hist @ self.inner
            acc = np.zeros(self.L, dtype=np.int64)
            np.add.at(acc, self.combine.ravel(), grid.ravel())
            return [int(v) for v in acc @ self.reduce]
        grid = hist.astype(object) @ self.inner.astype(object)
        acc = [0] * self.L
        for idx, v in zip(self.combine.ravel(), grid.ravel()):
            acc[int(idx)] += int(v)
        rows = self.reduce.tolist()
        out = [0] * self.deg
        for k, v in enumerate(acc):
            if v:
                for i, rv in enumerate(rows[k]):
                    if rv:
                        out[i] += v * rv
        return out


@lru_cache(maxsize=256)
def _evaluator(spec: DedekindSumSpec) -> _Evaluator:
    return _Evaluator(spec)


def _normalize_column(spec: DedekindSumSpec, a: int, c: int) -> tuple[int, int]:
    if math.gcd(a, c) != 1:
        raise ValueError(f"gcd({a}, {c}) != 1")
    if c % spec.Q:
        raise ValueError(f"c={c} not divisible by q1*q2={spec.Q}")
    if c < 0:
        a, c = -a, -c
    return a, c


def dedekind_sum(spec: DedekindSumSpec, a: int, c: int) -> CyclotomicNumber:
    """Exact S_{chi1,chi2}(a, c) as an element of Q(zeta_L), L = lcm of the character orders."""
    a, c = _normalize_column(spec, a, c)
    ev = _evaluator(spec)
    if c == 0:
        return CyclotomicNumber.zero(ev.L)
    den = 4 * c * spec.q1
    return CyclotomicNumber(ev.L, (Fraction(v, den) for v in ev.numerators(a, c)))


def dedekind_sum_is_zero(spec: DedekindSumSpec, a: int, c: int) -> bool:
    a, c = _normalize_column(spec, a, c)
    if c == 0:
        return True
    return not any(_evaluator(spec).numerators(a, c))


def dedekind_sum_matrix(spec: DedekindSumSpec, g: UnimodularMatrix) -> CyclotomicNumber:
    if g.c % spec.Q:
        raise ValueError(f"{g} is not in Gamma0({spec.Q})")
    return dedekind_sum(spec, g.a, g.c)


def _psi_of(spec: DedekindSumSpec, g: UnimodularMatrix) -> CyclotomicNumber:
    return spec.psi(g.d)


def crossed_hom_defect(spec: DedekindSumSpec, g1: UnimodularMatrix, g2: UnimodularMatrix) -> CyclotomicNumber:
    """S(g1 g2) - S(g1) - psi(g1) S(g2)."""
    return (
        dedekind_sum_matrix(spec, g1 @ g2)
        - dedekind_sum_matrix(spec, g1)
        - _psi_of(spec, g1) * dedekind_sum_matrix(spec, g2)
    )


def reciprocity_constant(spec: DedekindSumSpec) -> CyclotomicNumber:
    """tau(conj chi1) tau(conj chi2) L(1,chi1) L(1,chi2) / (pi i)^2 = B_{1,conj chi1} B_{1,conj chi2}."""
    if spec.is_even:
        raise ValueError("the reciprocity constant is only defined for odd characters")
    return gen_bernoulli_1(spec.chi1.conjugate()) * gen_bernoulli_1(spec.chi2.conjugate())


def reciprocity_defect(spec: DedekindSumSpec, g: UnimodularMatrix) -> CyclotomicNumber:
    gp = fricke_partner(g, spec.q1, spec.q2)
    lhs = dedekind_sum_matrix(spec, g)
    rhs = dedekind_sum_matrix(spec.swapped(), gp)
    if spec.is_even:
        return lhs - rhs
    return lhs + rhs - (1 - _psi_of(spec, g)) * reciprocity_constant(spec)


def symmetry_negation_defect(spec: DedekindSumSpec, a: int, c: int) -> CyclotomicNumber:
    """S(-a, c) + chi2(-1) S(a, c)."""
    return dedekind_sum(spec, -a, c) + spec.chi2.parity * dedekind_sum(spec, a, c)


def symmetry_inverse_defect(spec: DedekindSumSpec, a: int, c: int) -> CyclotomicNumber:
    """S(a^-1 mod c, c) - chi2(-1) psi(a) S(a, c)."""
    abar = pow(a, -1, c)
    return dedekind_sum(spec, abar, c) - spec.chi2.parity * spec.psi(a) * dedekind_sum(spec, a, c)


def _complex_values(chi: DirichletCharacter) -> np.ndarray:
    tab = np.array(chi.exponent_table, dtype=np.int64)
    vals = np.exp(2j * np.pi * np.where(tab >= 0, tab, 0) / chi.order)
    return np.where(tab >= 0, vals, 0)


def fourier_coefficients(spec: DedekindSumSpec, N: int) -> np.ndarray:
    """c_n = sum_{uv = n} chi1(u) conj(chi2)(v) / u for n = 0..N (c_0 = 0)."""
    v1 = _complex_values(spec.chi1)
    v2 = np.conj(_complex_values(spec.chi2))
    coeffs = np.zeros(N + 1, dtype=complex)
    for u in range(1, N + 1):
        x = v1[u % spec.q1]
        if x == 0:
            continue
        v = np.arange(1, N // u + 1)
        coeffs[u * v] += (x / u) * v2[v % spec.q2]
    return coeffs


def _f_series(coeffs: np.ndarray, z: complex) -> complex:
    n = np.arange(len(coeffs))
    return complex(np.sum(coeffs * np.exp(2j * np.pi * n * z)))


def eisenstein_cross_check(spec: DedekindSumSpec, g: UnimodularMatrix, truncation: int) -> float:
    """|pi i / tau(conj chi1) * S(g) - (f(gz) - psi(g) f(z))| at z = (-d + i)/C."""
    C = g.c
    if C <= 0:
        raise ValueError("lower-left entry must be positive")
    coeffs = fourier_coefficients(spec, truncation)
    z = complex(-g.d, 1) / C
    gz = (g.a * z + g.b) / (C * z + g.d)
    rhs = _f_series(coeffs, gz) - complex(_psi_of(spec, g)) * _f_series(coeffs, z)
    tau = complex(gauss_sum(spec.chi1.conjugate()))
    lhs = cmath.pi * 1j / tau * complex(dedekind_sum_matrix(spec, g))
    return abs(lhs - rhs)
