import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dedekind_kernels.cyclotomic import (
    CyclotomicNumber,
    cyclotomic_polynomial,
    cyclo_add,
    cyclo_conjugate,
    cyclo_galois,
    cyclo_is_zero,
    cyclo_mul,
    cyclo_to_complex,
    euler_phi,
    power_table,
)

ORDERS = [1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 20]


def numbers(orders=ORDERS):
    @st.composite
    def build(draw):
        n = draw(st.sampled_from(orders))
        k = euler_phi(n)
        coeffs = draw(st.lists(st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12)),
                               min_size=k, max_size=k))
        return CyclotomicNumber(n, coeffs)

    return build()


def close(x, z, tol=1e-9):
    return abs(complex(x) - z) < tol * max(1.0, abs(z))


def test_phi_values():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_zeta_relations():
    z = CyclotomicNumber.zeta(5)
    assert z ** 5 == 1
    assert sum((z ** k for k in range(5)), CyclotomicNumber.zero(5)).is_zero()
    assert CyclotomicNumber.zeta(4) ** 2 == -1


def test_power_table_matches_embedding():
    for n in (7, 12):
        tab = power_table(n)
        for k in range(n):
            row = CyclotomicNumber(n, [Fraction(int(v)) for v in tab[k]])
            assert row == CyclotomicNumber.zeta(n) ** k


def test_rendering():
    x = CyclotomicNumber(4, [Fraction(-3, 5), Fraction(-1, 5)])
    assert str(x) == "-3/5 - 1/5*z4"
    assert str(CyclotomicNumber.zero(7)) == "0"
    assert str(CyclotomicNumber.rational(Fraction(2, 3))) == "2/3"


def test_galois_rejects_noncoprime():
    with pytest.raises(ValueError):
        CyclotomicNumber.zeta(6).galois(3)


def test_mixed_orders_embed():
    i = CyclotomicNumber.zeta(4)
    w = CyclotomicNumber.zeta(3)
    s = i + w
    assert s.order == 12
    assert close(s, 1j + cmath.exp(2j * cmath.pi / 3))


def test_canonicalize_drops_to_rational():
    z = CyclotomicNumber.zeta(8)
    x = (z ** 2) * (z ** 6)
    assert x.canonicalize_order().order == 1
    assert x.to_fraction() == 1
    assert hash(x) == hash(CyclotomicNumber.one(1))


@given(numbers(), numbers())
def test_ring_ops_match_complex(x, y):
    assert close(x + y, complex(x) + complex(y))
    assert close(x - y, complex(x) - complex(y))
    assert close(x * y, complex(x) * complex(y), 1e-7)
    assert cyclo_add(x, y) == x + y
    assert cyclo_mul(x, y) == x * y


@given(numbers(), numbers(), numbers())
def test_distributive(x, y, w):
    assert x * (y + w) == x * y + x * w


@given(numbers())
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@given(numbers())
def test_conjugate_and_norm(x):
    assert close(cyclo_conjugate(x), complex(x).conjugate())
    nx = x * x.conjugate()
    assert close(nx, abs(complex(x)) ** 2, 1e-7)
    assert abs(complex(nx).imag) < 1e-9


@given(numbers(), numbers(), st.integers(1, 60))
def test_galois_is_ring_hom(x, y, k):
    import math

    n = math.lcm(x.order, y.order)
    if math.gcd(k, n) != 1:
        return
    assert cyclo_galois(x * y, k) == cyclo_galois(x, k) * cyclo_galois(y, k)
    assert (x + y).galois(k) == x.galois(k) + y.galois(k)


@given(numbers())
def test_equality_after_embedding(x):
    big = x.embed(x.order * 3)
    assert big == x
    assert hash(big) == hash(x)
    assert cyclo_is_zero(big - x)
    assert close(big, cyclo_to_complex(x))
