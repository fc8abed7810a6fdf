"""GL2(Z/nZ) arithmetic: orders, closures, reductions, preimages, levels."""
import pytest
from hypothesis import given, settings, strategies as st

from torsionbounds.modmatrix import (
    EnumerationTooLargeError,
    InvalidModulusError,
    Mat2,
    ModulusMismatchError,
    NotADivisorError,
    NotInvertibleError,
    b1_subgroup,
    crt_combine,
    divisors,
    enumerate_gl2,
    full_gl2,
    full_preimage,
    gl2_order,
    is_full_preimage,
    level_within,
    parse_generators,
    parse_matrix,
    reduce_subgroup,
    subgroup_closure,
    subgroup_index,
)


# -- Mat2 basics ------------------------------------------------------------

def test_entries_are_canonicalized():
    g = Mat2(5, 7, -1, 10, 6)
    assert g.entries == (2, 4, 0, 1)


def test_non_unit_determinant_rejected():
    with pytest.raises(NotInvertibleError):
        Mat2(4, 1, 0, 0, 2)  # det 2, not a unit mod 4


def test_invalid_modulus():
    with pytest.raises(InvalidModulusError):
        Mat2(0, 1, 0, 0, 1)
    with pytest.raises(InvalidModulusError):
        gl2_order(0)


@st.composite
def gl2_elements(draw, n_max=12):
    n = draw(st.integers(min_value=2, max_value=n_max))
    pool = sorted(enumerate_gl2(n))
    return draw(st.sampled_from(pool))


@given(gl2_elements())
def test_inverse_is_two_sided(g):
    assert g * g.inverse() == Mat2.identity(g.n)
    assert g.inverse() * g == Mat2.identity(g.n)


@given(gl2_elements())
def test_det_multiplicative_with_inverse(g):
    ident = Mat2.identity(g.n)
    assert (g.det() * g.inverse().det()) % g.n == ident.det()


def test_mixed_moduli_rejected():
    with pytest.raises(ModulusMismatchError):
        Mat2.identity(4) * Mat2.identity(6)


# -- orders and enumeration -------------------------------------------------

@pytest.mark.parametrize("n,expected", [(1, 1), (2, 6), (3, 48), (4, 96),
                                        (12, 4608), (30, 138240)])
def test_gl2_order_values(n, expected):
    assert gl2_order(n) == expected


def test_enumeration_matches_order_formula():
    for n in range(1, 13):
        assert len(enumerate_gl2(n)) == gl2_order(n)


def test_enumeration_mod3_dets():
    elems = enumerate_gl2(3)
    assert len(elems) == 48
    assert {g.det() for g in elems} == {1, 2}


def test_enumeration_cap_enforced():
    with pytest.raises(EnumerationTooLargeError) as info:
        enumerate_gl2(30, cap=1000)
    assert "1000" in str(info.value)


def test_crt_order_multiplicativity():
    for a, b in [(2, 3), (3, 4), (4, 5), (5, 6), (2, 15)]:
        assert gl2_order(a * b) == gl2_order(a) * gl2_order(b)


# -- closure ----------------------------------------------------------------

def test_closure_of_identity_is_trivial():
    G = subgroup_closure([Mat2.identity(5)], 5)
    assert G.order == 1


def test_closure_unipotent_mod3():
    G = subgroup_closure([Mat2(3, 1, 1, 0, 1)], 3)
    assert G.order == 3


def test_closure_generates_full_gl2_mod2():
    G = subgroup_closure([Mat2(2, 0, 1, 1, 0), Mat2(2, 1, 1, 0, 1)], 2)
    assert G.order == 6
    assert G == full_gl2(2)


def test_closure_idempotent():
    G = subgroup_closure([Mat2(8, 1, 1, 0, 1), Mat2(8, 3, 0, 0, 1)], 8)
    again = subgroup_closure(G.sorted_elements(), 8)
    assert G == again


def test_closure_rejects_mixed_moduli():
    with pytest.raises(ModulusMismatchError):
        subgroup_closure([Mat2.identity(4), Mat2.identity(8)])


# -- B1 subgroup ------------------------------------------------------------

def test_b1_small_orders():
    assert b1_subgroup(2).order == 2
    assert b1_subgroup(3).order == 6


def test_b1_needs_n_at_least_2():
    with pytest.raises(InvalidModulusError):
        b1_subgroup(1)


def test_b1_first_column_fixed():
    for g in b1_subgroup(6).elements:
        a, _, c, _ = g.entries
        assert (a, c) == (1, 0)


@pytest.mark.parametrize("n,index", [(2, 3), (4, 12)])
def test_b1_index_examples(n, index):
    assert subgroup_index(b1_subgroup(n)) == index


def test_full_group_has_index_one():
    assert subgroup_index(full_gl2(6)) == 1


# -- reduction and preimages ------------------------------------------------

def test_reduce_b1_4_to_2():
    assert reduce_subgroup(b1_subgroup(4), 2) == b1_subgroup(2)


def test_reduce_to_1_is_trivial():
    assert reduce_subgroup(b1_subgroup(6), 1).order == 1


def test_reduce_full_6_to_3_is_full():
    assert reduce_subgroup(full_gl2(6), 3) == full_gl2(3)


def test_reduce_rejects_non_divisor():
    with pytest.raises(NotADivisorError):
        reduce_subgroup(b1_subgroup(6), 4)


def test_preimage_of_trivial_mod1_is_full():
    trivial = subgroup_closure([Mat2.identity(1)], 1)
    assert full_preimage(trivial, 3) == full_gl2(3)


def test_preimage_b1_2_in_4():
    G = full_preimage(b1_subgroup(2), 4)
    assert G.order == 32
    assert subgroup_index(G) == 3


def test_preimage_b1_2_in_8_preserves_index():
    assert subgroup_index(full_preimage(b1_subgroup(2), 8)) == 3


def test_preimage_then_reduce_is_identity():
    H = b1_subgroup(3)
    assert reduce_subgroup(full_preimage(H, 9), 3) == H


def test_reduce_then_preimage_contains_original():
    G = b1_subgroup(8)
    back = full_preimage(reduce_subgroup(G, 2), 8)
    assert all(g in back for g in G.elements)


def test_is_full_preimage_examples():
    assert is_full_preimage(full_preimage(b1_subgroup(2), 4), 2)
    assert not is_full_preimage(b1_subgroup(4), 2)
    assert is_full_preimage(full_gl2(4), 1)


def test_level_within_examples():
    assert level_within(full_gl2(12)) == 1
    assert level_within(full_preimage(b1_subgroup(2), 8)) == 2
    assert level_within(b1_subgroup(4)) == 4


# -- helpers ----------------------------------------------------------------

def test_divisors_sorted():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_crt_combine_roundtrip():
    g = Mat2(6, 1, 5, 0, 5)
    combined = crt_combine([g.reduce(2), g.reduce(3)])
    assert combined == g


def test_parse_matrix():
    assert parse_matrix("1,2;3,5", 7) == Mat2(7, 1, 2, 3, 5)
    with pytest.raises(ValueError):
        parse_matrix("1,2,3;4,5,6", 7)


def test_parse_generators_whitespace_separated():
    gens = parse_generators("1,1;0,1  0,1;1,0", 2)
    assert subgroup_closure(gens, 2).order == 6


# -- Lagrange, via hypothesis over random generator picks -------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=10), st.data())
def test_random_subgroup_order_divides_group_order(n, data):
    pool = sorted(enumerate_gl2(n))
    gens = data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=3))
    G = subgroup_closure(gens, n)
    assert gl2_order(n) % G.order == 0
    assert Mat2.identity(n) in G
