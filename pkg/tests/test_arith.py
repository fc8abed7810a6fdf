"""Multiplicative functions and the extremal totient constant."""
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from torsionbounds.arith import (
    ArithError,
    b_epsilon,
    dedekind_psi,
    euler_phi,
    factorial,
    factorize,
    primes,
)
from torsionbounds.exactvalue import PowerProduct


def test_factorize_small():
    assert factorize(1).factors == ()
    assert factorize(360).factors == ((2, 3), (3, 2), (5, 1))


def test_factorize_rejects_bad_inputs():
    with pytest.raises(ArithError):
        factorize(0)
    with pytest.raises(ArithError):
        factorize(10 ** 13)


@pytest.mark.parametrize("n,phi,psi", [
    (1, 1, 1),
    (6, 2, 12),
    (9, 6, 12),
    (12, 4, 24),
])
def test_phi_psi_values(n, phi, psi):
    assert euler_phi(n) == phi
    assert dedekind_psi(n) == psi


def test_phi_by_direct_unit_count():
    for n in (2, 3, 4, 12, 30):
        assert euler_phi(n) == sum(1 for k in range(1, n + 1)
                                   if math.gcd(k, n) == 1)


def test_phi_psi_reject_zero():
    with pytest.raises(ArithError):
        euler_phi(0)
    with pytest.raises(ArithError):
        dedekind_psi(0)


@given(st.integers(min_value=1, max_value=1000),
       st.integers(min_value=1, max_value=1000))
def test_multiplicativity_on_coprimes(a, b):
    if math.gcd(a, b) != 1:
        return
    assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)
    assert dedekind_psi(a * b) == dedekind_psi(a) * dedekind_psi(b)


@given(st.integers(min_value=2, max_value=10 ** 4))
def test_psi_exceeds_n(n):
    assert dedekind_psi(n) > n


@given(st.integers(min_value=1, max_value=10 ** 4))
def test_phi_psi_product_identity(n):
    prod = n * n
    for p, _ in factorize(n).factors:
        prod = prod // (p * p) * (p * p - 1)
    assert euler_phi(n) * dedekind_psi(n) == prod


def test_factorial():
    assert factorial(0) == 1
    assert factorial(1) == 1
    assert factorial(5) == 120
    with pytest.raises(ArithError):
        factorial(-1)


def test_primes_stream():
    gen = primes()
    assert [next(gen) for _ in range(10)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


# -- b_epsilon --------------------------------------------------------------

def test_b_epsilon_trivial_at_large_epsilon():
    c = b_epsilon(2)
    assert c.witness == 1
    assert c.value == PowerProduct.one


def test_b_epsilon_half():
    c = b_epsilon(Fraction(1, 2))
    assert c.witness == 2
    assert c.value == PowerProduct.from_int(2) ** Fraction(-1, 2)
    assert c.decimal == "0.707106781186"  # rounded down


def test_b_epsilon_tenth():
    c = b_epsilon(Fraction(1, 10))
    assert c.witness == 30
    expected = (PowerProduct.from_int(8)
                * PowerProduct.from_int(30) ** Fraction(-9, 10))
    assert c.value == expected


def test_b_epsilon_rejects_nonpositive():
    with pytest.raises(ArithError):
        b_epsilon(0)
    with pytest.raises(ArithError):
        b_epsilon(Fraction(-1, 2))


def test_b_epsilon_decimal_rounds_down():
    c = b_epsilon(Fraction(1, 2), digits=6)
    lo = Fraction(c.decimal)
    assert lo * lo <= Fraction(1, 2)  # (2**-1/2)**2


@pytest.mark.parametrize("eps", [Fraction(1, 10), Fraction(1, 4),
                                 Fraction(1, 2), Fraction(3, 4),
                                 Fraction(9, 10)])
def test_b_epsilon_is_a_lower_bound_nearby(eps):
    # phi(n) >= b_eps * n**(1-eps), exactly, for n up to 3000
    c = b_epsilon(eps)
    a, q = eps.numerator, eps.denominator
    wp, w = euler_phi(c.witness), c.witness
    for n in range(1, 3001):
        # phi(n)/n^(1-eps) >= phi(w)/w^(1-eps)
        assert euler_phi(n) ** q * w ** (q - a) >= wp ** q * n ** (q - a)


def test_b_epsilon_monotone_on_grid():
    grid = [Fraction(1, 10), Fraction(1, 4), Fraction(1, 2),
            Fraction(3, 4), Fraction(9, 10)]
    values = [b_epsilon(e).value for e in grid]
    for lo, hi in zip(values, values[1:]):
        assert lo <= hi
