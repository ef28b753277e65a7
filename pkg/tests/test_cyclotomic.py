import cmath
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_obstruct.cyclotomic import Cyclotomic, cyclotomic_polynomial, phi_degree


@pytest.mark.parametrize("m", list(range(1, 61)) + [105, 120])
def test_cyclotomic_polynomial_matches_sympy(m):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(m)) == expected
    assert phi_degree(m) == sympy.totient(m)


def test_root_of_unity_powers():
    z = Cyclotomic.root_of_unity(12, 1)
    assert z ** 12 == 1
    assert z ** 6 == -1
    assert z ** 4 + z ** 8 == -1
    assert Cyclotomic.root_of_unity(12, 5) == z ** 5


def test_sum_of_all_roots_vanishes():
    for m in (2, 3, 7, 12, 15):
        assert Cyclotomic.from_exponent_counts(m, [1] * m).is_zero()


def test_conductor_mismatch():
    with pytest.raises(ValueError):
        Cyclotomic.root_of_unity(3, 1) + Cyclotomic.root_of_unity(4, 1)


def test_galois_needs_unit():
    with pytest.raises(ValueError):
        Cyclotomic.root_of_unity(6, 1).galois(3)


def test_exact_div_and_rational():
    v = Cyclotomic.rational(5, 6).exact_div(3)
    assert v == 2 and v.to_rational() == 2
    with pytest.raises(ArithmeticError):
        Cyclotomic.rational(5, 7).exact_div(3)
    with pytest.raises(ValueError):
        Cyclotomic.root_of_unity(5, 1).to_rational()


def test_sqrt_minus_three():
    z = Cyclotomic.root_of_unity(3, 1)
    s = z - z.conjugate()
    assert s * s == -3


def _elements(m):
    d = phi_degree(m)
    return st.lists(st.integers(-5, 5), min_size=d, max_size=d).map(lambda c: Cyclotomic(m, c))


@st.composite
def pairs(draw):
    m = draw(st.sampled_from([1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 20, 21, 24]))
    return m, draw(_elements(m)), draw(_elements(m))


def close(a, b):
    return abs(complex(a) - b) < 1e-6 * (1 + abs(b))


@settings(max_examples=200)
@given(pairs())
def test_ring_operations_agree_with_complex_numbers(data):
    m, a, b = data
    ca, cb = complex(a), complex(b)
    assert close(a + b, ca + cb)
    assert close(a - b, ca - cb)
    assert close(a * b, ca * cb)
    assert close(a.conjugate(), ca.conjugate())
    assert close(a ** 3, ca ** 3)


@settings(max_examples=100)
@given(pairs(), st.integers(1, 200))
def test_galois_is_ring_automorphism(data, k):
    m, a, b = data
    if math.gcd(k, m) != 1:
        k = 1
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)
    z = Cyclotomic.root_of_unity(m, 1)
    assert z.galois(k) == Cyclotomic.root_of_unity(m, k)


@settings(max_examples=100)
@given(pairs())
def test_equality_is_canonical(data):
    m, a, b = data
    assert (a == b) == (a.coeffs == b.coeffs)
    if a == b:
        assert hash(a) == hash(b)
    assert (a - a).is_zero()


@settings(max_examples=100)
@given(st.integers(1, 60), st.integers(-200, 200))
def test_root_of_unity_matches_complex(m, k):
    assert close(Cyclotomic.root_of_unity(m, k), cmath.exp(2j * math.pi * k / m))
