import math
import random

import pytest
from hypothesis import given, strategies as st

from dedekind_kernels.modular import (
    UnimodularMatrix,
    commutator,
    complete_column,
    fricke_partner,
    phi_map,
    random_gamma0,
    random_gamma1,
    random_principal,
    scaling_family,
    subgroup_membership,
)

seeds = st.integers(0, 2**32 - 1)


def test_determinant_enforced():
    with pytest.raises(ValueError):
        UnimodularMatrix(1, 1, 1, 1)


def test_parse_and_render():
    g = UnimodularMatrix.parse("2,1,9,5")
    assert (g.a, g.b, g.c, g.d) == (2, 1, 9, 5)
    assert str(g) == "2,1,9,5"
    with pytest.raises(ValueError):
        UnimodularMatrix.parse("1,2,3")


def test_membership():
    assert subgroup_membership(UnimodularMatrix(1, 0, 9, 1), 9) == (True, True, True)
    assert subgroup_membership(UnimodularMatrix(1, 1, 9, 10), 9) == (True, True, False)
    assert subgroup_membership(UnimodularMatrix(2, 1, 9, 5), 9) == (True, False, False)
    assert subgroup_membership(UnimodularMatrix(1, 9, 0, 1), 9).gamma


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_complete_column(a, c):
    if math.gcd(a, c) != 1:
        with pytest.raises(ValueError):
            complete_column(a, c)
        return
    g = complete_column(a, c)
    assert g.column == (a, c)
    if c:
        assert 0 <= g.d < abs(c)


@given(seeds, st.sampled_from([9, 15, 25, 35]))
def test_inverse_and_power(seed, N):
    rng = random.Random(seed)
    g = random_gamma0(rng, N)
    assert g @ g.inverse() == UnimodularMatrix.identity()
    assert g ** 3 == g @ g @ g
    assert g ** -2 == (g.inverse() @ g.inverse())


@given(seeds, st.sampled_from([(3, 3), (5, 5), (3, 7), (5, 11)]))
def test_fricke_partner_is_an_involution_up_to_sign(seed, q):
    rng = random.Random(seed)
    Q = q[0] * q[1]
    g = random_gamma0(rng, Q)
    gp = fricke_partner(g, *q)
    assert subgroup_membership(gp, Q).gamma0
    assert fricke_partner(gp, *q) == g


@given(seeds, st.sampled_from([9, 15, 25]))
def test_phi_is_homomorphism_with_kernel_gamma_q2(seed, Q):
    rng = random.Random(seed)
    A, B = random_principal(rng, Q), random_principal(rng, Q)
    pa, pb, pab = phi_map(A, Q), phi_map(B, Q), phi_map(A @ B, Q)
    assert pab == tuple((x + y) % Q for x, y in zip(pa, pb))
    # trace of (A - I)/Q vanishes mod Q
    assert (pa[0] + pa[3]) % Q == 0
    C = commutator(A, B)
    assert phi_map(C, Q) == (0, 0, 0, 0)
    assert subgroup_membership(C, Q * Q).gamma


def test_phi_rejects_non_principal():
    with pytest.raises(ValueError):
        phi_map(UnimodularMatrix(1, 1, 0, 1), 9)


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 6), st.sampled_from([9, 25, 15]))
def test_scaling_family_is_a_power(n, d, k, Q):
    base = scaling_family(n, d, 1, Q)
    assert scaling_family(n, d, k, Q) == base ** k


@given(seeds)
def test_random_gamma1(seed):
    g = random_gamma1(random.Random(seed), 25)
    assert subgroup_membership(g, 25).gamma1


def test_sampling_is_seeded():
    a = [random_gamma0(random.Random(3), 15) for _ in range(5)]
    b = [random_gamma0(random.Random(3), 15) for _ in range(5)]
    assert a == b
