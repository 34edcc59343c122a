"""Integer 2x2 matrices of determinant one and congruence-subgroup utilities."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "UnimodularMatrix",
    "Membership",
    "mat_mul",
    "subgroup_membership",
    "complete_column",
    "fricke_partner",
    "phi_map",
    "scaling_family",
    "commutator",
    "random_gamma0",
    "random_gamma1",
    "random_principal",
]


@dataclass(frozen=True)
class UnimodularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self} is not 1")

    @classmethod
    def identity(cls) -> "UnimodularMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def parse(cls, text: str) -> "UnimodularMatrix":
        parts = [p.strip() for p in text.replace(";", ",").split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected 'a,b,c,d', got {text!r}")
        return cls(*(int(p) for p in parts))

    def __str__(self):
        return f"{self.a},{self.b},{self.c},{self.d}"

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "UnimodularMatrix":
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    def __neg__(self):
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> "UnimodularMatrix":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = UnimodularMatrix.identity()
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    @property
    def column(self) -> tuple[int, int]:
        return self.a, self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def max_entry(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))


class Membership(NamedTuple):
    gamma0: bool
    gamma1: bool
    gamma: bool


def mat_mul(x: UnimodularMatrix, y: UnimodularMatrix) -> UnimodularMatrix:
    return x @ y


def subgroup_membership(g: UnimodularMatrix, N: int) -> Membership:
    if N < 1:
        raise ValueError("level must be positive")
    g0 = g.c % N == 0
    g1 = g0 and g.a % N == 1 % N and g.d % N == 1 % N
    return Membership(g0, g1, g1 and g.b % N == 0)


def complete_column(a: int, c: int) -> UnimodularMatrix:
    """A matrix with first column (a, c); d is the inverse of a mod |c| in [0, |c|)."""
    if math.gcd(a, c) != 1:
        raise ValueError(f"gcd({a}, {c}) != 1")
    if c == 0:
        return UnimodularMatrix(a, 0, 0, a)
    m = abs(c)
    d = pow(a, -1, m) if m > 1 else 0
    b, rem = divmod(a * d - 1, c)
    assert rem == 0
    return UnimodularMatrix(a, b, c, d)


def fricke_partner(g: UnimodularMatrix, q1: int, q2: int) -> UnimodularMatrix:
    """(a, b; cQ, d) -> (d, -c; -bQ, a) with Q = q1*q2."""
    Q = q1 * q2
    if g.c % Q:
        raise ValueError(f"{g} is not in Gamma0({Q})")
    return UnimodularMatrix(g.d, -(g.c // Q), -g.b * Q, g.a)


def phi_map(A: UnimodularMatrix, Q: int) -> tuple[int, int, int, int]:
    """((A - I) / Q) mod Q, entrywise, for A in Gamma(Q)."""
    entries = (A.a - 1, A.b, A.c, A.d - 1)
    if any(x % Q for x in entries):
        raise ValueError(f"{A} is not in Gamma({Q})")
    return tuple((x // Q) % Q for x in entries)


def scaling_family(n: int, d: int, k: int, Q: int) -> UnimodularMatrix:
    """I + kQ * (nd, -n^2; d^2, -nd); the direction matrix is nilpotent."""
    s = k * Q
    return UnimodularMatrix(1 + s * n * d, -s * n * n, s * d * d, 1 - s * n * d)


def commutator(x: UnimodularMatrix, y: UnimodularMatrix) -> UnimodularMatrix:
    return x @ y @ x.inverse() @ y.inverse()


# -- seeded sampling -------------------------------------------------------

def random_gamma0(rng: random.Random, N: int, max_k: int = 3, max_shift: int = 2) -> UnimodularMatrix:
    """Element of Gamma0(N) with lower-left entry k*N, |k| <= max_k (k = 0 allowed)."""
    while True:
        k = rng.randint(-max_k, max_k)
        c = k * N
        if c == 0:
            a = rng.choice((1, -1))
        else:
            a = rng.randrange(-abs(c) + 1, abs(c))
            if math.gcd(a, c) != 1:
                continue
        g = complete_column(a, c)
        t = rng.randint(-max_shift, max_shift)
        return g @ UnimodularMatrix(1, t, 0, 1)


def random_gamma1(rng: random.Random, N: int, max_k: int = 3, max_shift: int = 2) -> UnimodularMatrix:
    while True:
        g = random_gamma0(rng, N, max_k, max_shift)
        if g.a % N == 1 % N:
            return g
        if (-g.a) % N == 1 % N:
            return -g


_CONJUGATORS = (
    UnimodularMatrix(1, 0, 0, 1),
    UnimodularMatrix(0, -1, 1, 0),
    UnimodularMatrix(1, 1, 0, 1),
    UnimodularMatrix(1, -1, 0, 1),
    UnimodularMatrix(1, 0, 1, 1),
    UnimodularMatrix(1, 0, -1, 1),
    UnimodularMatrix(2, 1, 1, 1),
)


def random_principal(rng: random.Random, Q: int, length: int = 2, max_power: int = 1) -> UnimodularMatrix:
    """Word in (1 Q; 0 1), (1 0; Q 1) and their conjugates by small SL2(Z) elements."""
    out = UnimodularMatrix.identity()
    for _ in range(rng.randint(1, length)):
        e = rng.choice([s * p for p in range(1, max_power + 1) for s in (1, -1)])
        gen = UnimodularMatrix(1, Q * e, 0, 1) if rng.random() < 0.5 else UnimodularMatrix(1, 0, Q * e, 1)
        h = rng.choice(_CONJUGATORS)
        out = out @ h @ gen @ h.inverse()
    return out
