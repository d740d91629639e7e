"""Foundation layer: rationals, vectors, signs, Bernoulli numbers, trees."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from htalg.core import (
    Q,
    Vector,
    bernoulli,
    binomial_identity_check,
    chi_sign,
    koszul_sign,
    perm_sign,
    planar_trees,
    rat,
    rat_str,
    tree_leaves,
)


# -- rationals ---------------------------------------------------------------


def test_rat_round_trip():
    for s in ("0", "1", "-1", "1/6", "-1/30", "7/3"):
        assert rat_str(rat(s)) == s


def test_rat_rejects_floats_and_garbage():
    with pytest.raises((ValueError, TypeError)):
        rat("0.5")
    with pytest.raises((ValueError, TypeError, ZeroDivisionError)):
        rat("1/0")


# -- vectors -----------------------------------------------------------------


def test_vector_arithmetic_drops_zeros():
    v = Vector({"x": Q(1), "y": Q(2)})
    w = Vector({"x": Q(-1)})
    assert (v + w).terms == {"y": Q(2)}
    assert (v - v).is_zero()
    assert v.scale(Q(0)).is_zero()
    assert v.coeff("z") == 0


@given(
    st.dictionaries(st.text(min_size=1, max_size=2),
                    st.fractions(), max_size=5),
    st.dictionaries(st.text(min_size=1, max_size=2),
                    st.fractions(), max_size=5),
)
def test_vector_addition_commutes(d1, d2):
    assert Vector(d1) + Vector(d2) == Vector(d2) + Vector(d1)


# -- signs -------------------------------------------------------------------


def test_perm_sign_matches_inversion_count():
    import itertools

    for n in range(1, 5):
        for p in itertools.permutations(range(1, n + 1)):
            inv = sum(
                1
                for i in range(n)
                for j in range(i + 1, n)
                if p[i] > p[j]
            )
            assert perm_sign(p) == (-1) ** inv


def test_koszul_sign_examples():
    # swapping two odd symbols gives -1; even symbols move for free
    assert koszul_sign((2, 1), [1, 1]) == -1
    assert koszul_sign((2, 1), [0, 1]) == 1
    assert koszul_sign((2, 1), [2, 2]) == 1
    assert chi_sign((2, 1), [1, 1]) == 1  # sgn * koszul
    assert chi_sign((2, 1), [0, 1]) == -1


def _koszul_by_adjacent_swaps(perm, degs):
    """Independent oracle: sort the permutation by adjacent transpositions,
    multiplying (-1)^(p*q) for each swap of symbols with degrees p, q."""
    order = list(perm)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(order) - 1):
            if order[i] > order[i + 1]:
                if (degs[order[i] - 1] * degs[order[i + 1] - 1]) % 2:
                    sign = -sign
                order[i], order[i + 1] = order[i + 1], order[i]
                changed = True
    return sign


@given(
    st.permutations(range(1, 5)),
    st.lists(st.integers(-2, 2), min_size=4, max_size=4),
)
def test_koszul_sign_matches_adjacent_swap_oracle(p, degs):
    assert koszul_sign(p, degs) == _koszul_by_adjacent_swaps(p, degs)


# -- Bernoulli numbers -------------------------------------------------------


KNOWN_BERNOULLI = [
    Fraction(1),
    Fraction(-1, 2),
    Fraction(1, 6),
    Fraction(0),
    Fraction(-1, 30),
    Fraction(0),
    Fraction(1, 42),
    Fraction(0),
    Fraction(-1, 30),
    Fraction(0),
    Fraction(5, 66),
    Fraction(0),
    Fraction(-691, 2730),
]


def test_bernoulli_table():
    for k, val in enumerate(KNOWN_BERNOULLI):
        assert bernoulli(k) == val


@given(st.integers(1, 20))
def test_bernoulli_recurrence(n):
    """sum_k C(n+1, k) B_k = 0 for n >= 1."""
    assert sum(comb(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0


def test_binomial_identities():
    for n in range(1, 13):
        assert binomial_identity_check(n)


# -- planar trees ------------------------------------------------------------


def test_binary_trees_are_catalan():
    # the bare leaf is excluded, so counting starts at two leaves
    catalan = [1, 2, 5, 14, 42]
    for n in range(2, 7):
        trees = planar_trees(n, [2])
        assert len(trees) == catalan[n - 2]
        assert all(tree_leaves(t) == n for t in trees)


def test_all_arity_trees_are_schroeder():
    # little Schroeder numbers: planar trees, internal arity >= 2
    schroeder = [1, 3, 11, 45, 197]
    for n in range(2, 7):
        trees = planar_trees(n, range(2, n + 1))
        assert len(trees) == schroeder[n - 2]
