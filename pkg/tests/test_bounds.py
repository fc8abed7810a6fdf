"""The exponent sieve and the explicit bound constants."""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torsionbounds.arith import dedekind_psi, euler_phi
from torsionbounds.bounds import (
    BoundContext,
    BoundsError,
    CeilingTooLargeError,
    ZETA2_UPPER,
    baselines,
    c_epsilon,
    exponent_candidates,
    sieve_modulus,
    theorem_bounds,
)
from torsionbounds.exactvalue import PowerProduct


def test_context_validation():
    with pytest.raises(BoundsError):
        BoundContext(0, 1, 1)
    with pytest.raises(BoundsError):
        BoundContext(1, 1, 0)


def test_zeta2_upper_really_is_an_upper_bound():
    assert float(ZETA2_UPPER) > math.pi ** 2 / 6


@pytest.mark.parametrize("I,d0,d,B", [(2, 1, 1, 4), (6, 1, 1, 12),
                                      (2, 3, 5, 40)])
def test_sieve_modulus(I, d0, d, B):
    assert sieve_modulus(BoundContext(I, d0, d)) == B


def test_candidates_worked_examples():
    assert exponent_candidates(BoundContext(2, 1, 1)).candidates == (1,)
    assert exponent_candidates(BoundContext(6, 1, 1)).candidates == (1, 2, 4)


@given(st.integers(min_value=1, max_value=60),
       st.integers(min_value=1, max_value=3),
       st.integers(min_value=1, max_value=40))
@settings(max_examples=60, deadline=None)
def test_one_is_always_a_candidate(I, d0, d):
    cs = exponent_candidates(BoundContext(I, d0, d))
    assert 1 in cs.candidates
    assert all(n <= cs.ceiling for n in cs.candidates)
    assert all(cs.modulus % (euler_phi(n) * dedekind_psi(n)) == 0
               for n in cs.candidates)


def test_candidate_monotonicity_in_divisibility():
    # B=12 divides B=120
    small = exponent_candidates(BoundContext(6, 1, 1))
    large = exponent_candidates(BoundContext(6, 1, 10))
    assert small.modulus * 10 == large.modulus
    assert set(small.candidates) <= set(large.candidates)


def test_ceiling_budget_enforced():
    with pytest.raises(CeilingTooLargeError):
        exponent_candidates(BoundContext(10 ** 9, 3, 10 ** 6), budget=10 ** 5)


# -- c_epsilon and theorem bounds ------------------------------------------

def test_c_epsilon_examples():
    c = c_epsilon(2, 1, Fraction(1, 2))
    # (4 * sqrt(2))**(2/3) = 2**(5/3)
    assert c.exact == PowerProduct.from_int(2) ** Fraction(5, 3)
    assert abs(float(c) - 3.1748) < 1e-3
    c4 = c_epsilon(4, 1, Fraction(1, 2))
    assert abs(float(c4) - 5.0397) < 1e-3


def test_c_epsilon_monotone_in_index():
    for eps in (Fraction(1, 10), Fraction(1, 2), Fraction(3, 4)):
        for I in (1, 2, 5, 24):
            assert c_epsilon(2 * I, 1, eps).exact > c_epsilon(I, 1, eps).exact


def test_c_epsilon_domain():
    with pytest.raises(BoundsError):
        c_epsilon(2, 1, 0)
    with pytest.raises(BoundsError):
        c_epsilon(2, 1, 2)
    with pytest.raises(BoundsError):
        c_epsilon(0, 1, Fraction(1, 2))


def test_theorem_bounds_example():
    tb = theorem_bounds(BoundContext(2, 1, 1), Fraction(1, 2))
    assert abs(float(tb.exponent_bound) - 3.175) < 1e-2
    assert abs(float(tb.order_bound) - 10.26) < 1e-2
    assert not tb.weak_epsilon


def test_theorem_bounds_degree_scaling():
    tb1 = theorem_bounds(BoundContext(2, 1, 1), Fraction(1, 2))
    tb4 = theorem_bounds(BoundContext(2, 1, 4), Fraction(1, 2))
    # d**(1/2+1/2) = 4
    assert tb4.exponent_bound.exact == tb1.exponent_bound.exact * 4


def test_order_bound_is_square_of_half_epsilon_exponent_bound():
    for eps in (Fraction(1, 10), Fraction(1, 2), Fraction(3, 4)):
        for d in (1, 7, 50):
            ctx = BoundContext(6, 2, d)
            order = theorem_bounds(ctx, eps).order_bound.exact
            half = theorem_bounds(ctx, eps / 2).exponent_bound.exact
            assert order == half ** 2


def test_weak_epsilon_flagged():
    assert theorem_bounds(BoundContext(2, 1, 1), Fraction(3, 2)).weak_epsilon


def test_decimal_bounds_round_up():
    tb = theorem_bounds(BoundContext(2, 1, 10), Fraction(1, 2), digits=6)
    # the rendered decimal never understates the exact value
    assert PowerProduct.from_fraction(
        Fraction(tb.exponent_bound.decimal)) >= tb.exponent_bound.exact
    assert PowerProduct.from_fraction(
        Fraction(tb.order_bound.decimal)) >= tb.order_bound.exact


def test_d1_candidates_below_exponent_bound():
    cs = exponent_candidates(BoundContext(2, 1, 1))
    tb = theorem_bounds(BoundContext(2, 1, 1), Fraction(1, 2))
    assert max(cs.candidates) <= float(tb.exponent_bound)


# -- baselines --------------------------------------------------------------

def test_parent_baseline_at_degree_one():
    assert baselines(1).parent == 376164


def test_hindry_silverman_baseline():
    base = baselines(2)
    assert abs(base.hindry_silverman - 1977408 * 2 * math.log(2)) < 1e-6
    assert base.hs_log_note == "natural log"
    assert baselines(1).hindry_silverman is None


def test_bourdon_najman_baseline():
    base = baselines(9)
    assert base.bn_applicable
    assert abs(float(base.bn_exponent) - 2162160 * math.sqrt(35)) < 1.0
    assert float(base.bn_order) == pytest.approx(2 * float(base.bn_exponent))
    assert not baselines(2).bn_applicable


def test_baselines_reject_bad_degree():
    with pytest.raises(BoundsError):
        baselines(0)
