"""Dirichlet characters addressed by Conrey label.

A character mod q is stored as its Conrey index n; everything else (values,
order, conductor, parity) is derived from the CRT decomposition of (Z/q)^*
into cyclic factors and cached.  Values are roots of unity of order
``chi.order`` and come back as :class:`CyclotomicNumber` of that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .cyclotomic import CyclotomicNumber, _factorize

__all__ = [
    "UnitGroup",
    "unit_group",
    "DirichletCharacter",
    "char_value",
    "enumerate_primitive",
    "enumerate_pairs",
    "nebentypus",
    "gauss_sum",
    "gen_bernoulli_1",
    "char_galois",
    "parse_label",
]


def _primitive_root(p: int) -> int:
    """Least g that is a primitive root mod p and mod p^2 (the Conrey convention)."""
    phi = p - 1
    primes = list(_factorize(phi))
    for g in range(2, p * p):
        if g % p == 0:
            continue
        if all(pow(g, phi // r, p) != 1 for r in primes) and pow(g, phi, p * p) != 1:
            return g
    raise ArithmeticError(f"no primitive root found for {p}")


@dataclass(frozen=True)
class _Cyclic:
    """One cyclic factor of (Z/q)^*: generator (lifted mod q) of the given order."""

    prime: int
    prime_power: int
    local_generator: int
    order: int
    generator: int  # CRT lift: local_generator mod prime_power, 1 mod the cofactor


class UnitGroup:
    """(Z/q)^* as a product of cyclic factors with discrete-log tables."""

    def __init__(self, q: int):
        if q < 1:
            raise ValueError("modulus must be positive")
        self.modulus = q
        self.factorization = tuple(sorted(_factorize(q).items()))
        comps: list[_Cyclic] = []
        for p, e in self.factorization:
            pe = p**e
            cof = q // pe
            lift = lambda g: _crt(g, pe, 1, cof)  # noqa: E731
            if p == 2:
                if e == 2:
                    comps.append(_Cyclic(2, 4, 3, 2, lift(3)))
                elif e >= 3:
                    comps.append(_Cyclic(2, pe, pe - 1, 2, lift(pe - 1)))
                    comps.append(_Cyclic(2, pe, 5, 2 ** (e - 2), lift(5)))
            else:
                g = _primitive_root(p)
                comps.append(_Cyclic(p, pe, g, pe - pe // p, lift(g)))
        self.components = tuple(comps)
        self.exponent = math.lcm(*(c.order for c in comps)) if comps else 1
        self._logs = self._build_logs()

    def _build_logs(self) -> list:
        q = self.modulus
        per_pp: dict[int, dict[int, tuple[int, ...]]] = {}
        for p, e in self.factorization:
            pe = p**e
            table: dict[int, tuple[int, ...]] = {}
            if p == 2 and e >= 3:
                x = 1
                for a in range(2 ** (e - 2)):
                    table[x] = (0, a)
                    table[(-x) % pe] = (1, a)
                    x = x * 5 % pe
            elif p == 2 and e == 2:
                table = {1: (0,), 3: (1,)}
            elif p == 2:
                table = {1: ()}
            else:
                g = _primitive_root(p)
                x = 1
                for a in range(pe - pe // p):
                    table[x] = (a,)
                    x = x * g % pe
            per_pp[pe] = table
        logs: list = [None] * q
        for m in range(q):
            if math.gcd(m, q) != 1:
                continue
            vec: list[int] = []
            for p, e in self.factorization:
                pe = p**e
                vec.extend(per_pp[pe][m % pe])
            logs[m] = tuple(vec)
        if q == 1:
            logs[0] = ()
        return logs

    def log(self, m: int) -> tuple[int, ...] | None:
        """Exponent vector of m on the generators, or None for non-units."""
        return self._logs[m % self.modulus]

    def element(self, exponents) -> int:
        x = 1
        for comp, k in zip(self.components, exponents):
            x = x * pow(comp.generator, k % comp.order, self.modulus) % self.modulus
        return x % self.modulus if self.modulus > 1 else 0


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 * m2 * pow(m2, -1, m1) + r2 * m1 * pow(m1, -1, m2)) % (m1 * m2) if m2 > 1 else r1 % m1


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroup:
    return UnitGroup(q)


@dataclass(frozen=True, order=True)
class DirichletCharacter:
    """The Conrey character chi_q(index, .)."""

    modulus: int
    index: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        idx = self.index % self.modulus if self.modulus > 1 else 1
        if self.modulus > 1 and math.gcd(idx, self.modulus) != 1:
            raise ValueError(f"Conrey index {self.index} is not a unit mod {self.modulus}")
        object.__setattr__(self, "index", idx)

    @classmethod
    def from_exponents(cls, q: int, exponents) -> "DirichletCharacter":
        """Character with chi(g_i) = zeta_{d_i}^{e_i} on the unit-group generators."""
        G = unit_group(q)
        n = 1
        for p, e in G.factorization:
            pe = p**e
            local = 1
            for comp, k in zip(G.components, exponents):
                if comp.prime_power == pe:
                    local = local * pow(comp.local_generator, k % comp.order, pe) % pe
            n = _combine(n, local, pe, q)
        return cls(q, n)

    # -- structure -------------------------------------------------------
    @cached_property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @cached_property
    def exponents(self) -> tuple[int, ...]:
        """e_i with chi(g_i) = zeta_{d_i}^{e_i}; equals the discrete log of the index."""
        if self.modulus == 1:
            return ()
        return self.group.log(self.index)

    @cached_property
    def _table(self) -> tuple[int, tuple[int, ...]]:
        G = self.group
        L = G.exponent
        comps = G.components
        weights = [(e * (L // c.order)) % L for e, c in zip(self.exponents, comps)]
        raw: list[int] = []
        for m in range(self.modulus):
            lg = G.log(m)
            if lg is None:
                raw.append(-1)
            else:
                raw.append(sum(w * k for w, k in zip(weights, lg)) % L)
        g = L
        for w in weights:
            g = math.gcd(g, w)
        order = L // g
        table = tuple(-1 if x < 0 else x // g for x in raw)
        return order, table

    @property
    def order(self) -> int:
        return self._table[0]

    @property
    def exponent_table(self) -> tuple[int, ...]:
        """chi(m) = zeta_order^table[m]; -1 marks m not coprime to the modulus."""
        return self._table[1]

    @cached_property
    def conductor(self) -> int:
        f = 1
        G = self.group
        for (p, e) in G.factorization:
            pe = p**e
            idx = [i for i, c in enumerate(G.components) if c.prime_power == pe]
            if p == 2:
                if e == 1:
                    continue
                sign = self.exponents[idx[0]]
                if e == 2:
                    f *= 4 if sign else 1
                    continue
                c5 = G.components[idx[1]]
                o5 = c5.order // math.gcd(c5.order, self.exponents[idx[1]])
                if o5 > 1:
                    f *= 2 ** (o5.bit_length() - 1 + 2)
                elif sign:
                    f *= 4
            else:
                c = G.components[idx[0]]
                o = c.order // math.gcd(c.order, self.exponents[idx[0]])
                if o > 1:
                    v = 0
                    while o % p == 0:
                        o //= p
                        v += 1
                    f *= p ** (v + 1)
        return f

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @cached_property
    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        k = self.exponent_table[self.modulus - 1] if self.modulus > 1 else 0
        return 1 if k == 0 else -1

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    @property
    def label(self) -> str:
        return f"{self.modulus}.{self.index}"

    def __str__(self):
        return self.label

    # -- evaluation -------------------------------------------------------
    def exponent(self, n: int) -> int:
        return self.exponent_table[n % self.modulus]

    def __call__(self, n: int) -> CyclotomicNumber:
        k = self.exponent_table[n % self.modulus]
        if k < 0:
            return CyclotomicNumber.zero(self.order)
        return CyclotomicNumber.zeta(self.order, k)

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, pow(self.index, -1, self.modulus) if self.modulus > 1 else 1)

    def galois(self, k: int) -> "DirichletCharacter":
        return char_galois(self, k)


def _combine(n: int, local: int, pe: int, q: int) -> int:
    """Set the residue of n modulo the prime power pe to ``local``, keeping the rest."""
    cof = q // pe
    rest = n % cof if cof > 1 else 0
    return _crt(local, pe, rest, cof)


def parse_label(label: str, modulus: int | None = None) -> DirichletCharacter:
    """Parse "q.n" (or bare "n" when the modulus is given)."""
    text = label.strip()
    if "." in text:
        q_s, n_s = text.split(".", 1)
        q, n = int(q_s), int(n_s)
        if modulus is not None and q != modulus:
            raise ValueError(f"character {label} has modulus {q}, expected {modulus}")
    else:
        if modulus is None:
            raise ValueError(f"label {label!r} needs a modulus")
        q, n = modulus, int(text)
    return DirichletCharacter(q, n)


def char_value(chi: DirichletCharacter, n: int) -> CyclotomicNumber:
    return chi(n)


@lru_cache(maxsize=None)
def enumerate_primitive(q: int) -> tuple[DirichletCharacter, ...]:
    """Primitive characters mod q ordered by Conrey index."""
    if q < 2:
        raise ValueError("modulus must be at least 2")
    chars = (DirichletCharacter(q, n) for n in range(1, q) if math.gcd(n, q) == 1)
    return tuple(ch for ch in chars if ch.is_primitive)


def enumerate_pairs(q1: int, q2: int) -> list[tuple[DirichletCharacter, DirichletCharacter]]:
    """Ordered pairs of primitive characters with chi1*chi2(-1) = 1."""
    return [
        (c1, c2)
        for c1 in enumerate_primitive(q1)
        for c2 in enumerate_primitive(q2)
        if c1.parity == c2.parity
    ]


def nebentypus(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    """psi = chi1 * conj(chi2) as a (generally imprimitive) character mod q1*q2."""
    Q = chi1.modulus * chi2.modulus
    G = unit_group(Q)
    L = math.lcm(chi1.order, chi2.order)
    exps = []
    for comp in G.components:
        g = comp.generator
        x = (chi1.exponent(g) * (L // chi1.order) - chi2.exponent(g) * (L // chi2.order)) % L
        # psi(g) = zeta_L^x has order dividing comp.order
        num = x * comp.order
        if num % L:
            raise ArithmeticError("nebentypus value order does not divide the generator order")
        exps.append(num // L)
    return DirichletCharacter.from_exponents(Q, exps)


def gauss_sum(chi: DirichletCharacter) -> CyclotomicNumber:
    """tau(chi) = sum_n chi(n) zeta_q^n, in Q(zeta_lcm(order, q))."""
    if not chi.is_primitive:
        raise ValueError(f"{chi.label} is not primitive")
    q = chi.modulus
    L = math.lcm(chi.order, q)
    so, sq = L // chi.order, L // q
    counts = [0] * L
    for n, k in enumerate(chi.exponent_table):
        if k >= 0:
            counts[(k * so + n * sq) % L] += 1
    return CyclotomicNumber.from_exponent_counts(L, counts)


def gen_bernoulli_1(chi: DirichletCharacter) -> CyclotomicNumber:
    """B_{1,chi} = (1/q) sum_{a=1}^{q} chi(a) a."""
    q = chi.modulus
    counts = [0] * chi.order
    for a in range(1, q + 1):
        k = chi.exponent_table[a % q]
        if k >= 0:
            counts[k] += a
    return CyclotomicNumber.from_exponent_counts(chi.order, counts, q)


def char_galois(chi: DirichletCharacter, k: int) -> DirichletCharacter:
    """The character n -> sigma_k(chi(n)) = chi(n)^k."""
    if math.gcd(k, chi.order) != 1:
        raise ValueError(f"k={k} shares a factor with the order {chi.order} of {chi.label}")
    if chi.modulus == 1:
        return chi
    return DirichletCharacter(chi.modulus, pow(chi.index, k, chi.modulus))
