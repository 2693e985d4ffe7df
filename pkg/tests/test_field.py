import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from apg.errors import DivisionByZero, NonPrime, SizeExceeded, WrongCharacteristic
from apg.field import field_arith, field_build, is_irreducible, is_prime, poly_mod, poly_mul, suzuki_twist

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 5), (3, 3), (13, 1)]


def _poly_oracle_table(p, m, poly_high):
    """Multiplication table from schoolbook polynomial arithmetic."""
    low = list(reversed(poly_high))
    q = p ** m

    def digits(x):
        return [(x // p ** i) % p for i in range(m)]

    table = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            prod = [0] * (2 * m - 1)
            for i, ca in enumerate(digits(a)):
                for j, cb in enumerate(digits(b)):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
            for d in range(len(prod) - 1, m - 1, -1):
                c = prod[d]
                if c:
                    for k in range(m + 1):
                        prod[d - m + k] = (prod[d - m + k] - c * low[k]) % p
            table[a, b] = sum(prod[i] * p ** i for i in range(m))
    return table


def test_prime_field_trivial_reduction():
    F = field_build(2, 1)
    assert F.q == 2
    assert F.mul(1, 1) == 1 and F.add(1, 1) == 0


def test_gf8_uses_smallest_irreducible():
    F = field_build(2, 3)
    assert F.reduction_poly == (1, 0, 1, 1)
    # x^3 + 1 is the only smaller monic cubic without a root that could compete; it has root 1
    assert not is_irreducible([1, 0, 0, 1], 2)


def test_non_prime_rejected():
    with pytest.raises(NonPrime):
        field_build(4, 1)


def test_size_cap():
    with pytest.raises(SizeExceeded):
        field_build(2, 17)


def test_characteristic_two_addition():
    F = field_build(2, 3)
    assert all(F.add(a, a) == 0 for a in F.elements())


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (2, 4), (5, 2)])
def test_multiplication_matches_polynomial_oracle(p, m):
    F = field_build(p, m)
    table = _poly_oracle_table(p, m, F.reduction_poly)
    a, b = np.meshgrid(np.arange(F.q), np.arange(F.q), indexing="ij")
    assert np.array_equal(F.mul(a, b), table)


def test_inverse_in_gf7():
    F = field_build(7)
    assert F.inv(3) == 5
    assert field_arith(F, "inv", 3, 0) == 5


def test_inverse_of_zero():
    F = field_build(5)
    with pytest.raises(DivisionByZero):
        F.inv(0)


def test_field_arith_dispatch():
    F = field_build(3, 2)
    assert field_arith(F, "add", 4, 5) == F.add(4, 5)
    assert field_arith(F, "mul", 4, 5) == F.mul(4, 5)
    assert field_arith(F, "pow", 4, 3) == F.mul(4, F.mul(4, 4))
    with pytest.raises(ValueError):
        field_arith(F, "xor", 1, 2)


@pytest.mark.parametrize("p,m", FIELDS)
def test_additive_group_elementary_abelian(p, m):
    F = field_build(p, m)
    for a in F.elements():
        x = 0
        for _ in range(p):
            x = F.add(x, a)
        assert x == 0
    assert all(F.add(a, F.neg(a)) == 0 for a in F.elements())


@pytest.mark.parametrize("p,m", FIELDS)
def test_multiplicative_group_cyclic(p, m):
    F = field_build(p, m)
    g = F.primitive
    seen = {F.pow(g, e) for e in range(F.q - 1)}
    assert seen == set(range(1, F.q))


@pytest.mark.parametrize("p,m", [(2, 3), (2, 6), (3, 4), (5, 3), (2, 12), (7, 2)])
def test_frobenius_is_automorphism(p, m):
    F = field_build(p, m)
    x = np.arange(F.q)
    fx = np.array([F.frobenius(int(a)) for a in x])
    assert sorted(fx) == list(range(F.q))
    rng = np.random.default_rng(1)
    a, b = rng.integers(0, F.q, (2, 2000))
    assert np.array_equal(fx[F.add(a, b)], F.add(fx[a], fx[b]))
    assert np.array_equal(fx[F.mul(a, b)], F.mul(fx[a], fx[b]))


@pytest.mark.parametrize("m", [1, 3, 5, 7])
def test_suzuki_twist_squares(m):
    F = field_build(2, m)
    assert suzuki_twist(0, F) == 0 and suzuki_twist(1, F) == 1
    for x in F.elements():
        assert suzuki_twist(suzuki_twist(x, F), F) == F.mul(x, x)


def test_suzuki_twist_wrong_field():
    with pytest.raises(WrongCharacteristic):
        suzuki_twist(1, field_build(2, 2))
    with pytest.raises(WrongCharacteristic):
        suzuki_twist(1, field_build(3, 3))


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_poly_helpers():
    # (x+1)^2 = x^2 + 1 over GF(2), coefficients low to high
    assert poly_mul([1, 1], [1, 1], 2) == [1, 0, 1]
    assert poly_mod([1, 0, 1], [1, 1], 2) == []


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pm, data):
    F = field_build(*pm)
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    if b:
        assert F.mul(F.div(a, b), b) == a
