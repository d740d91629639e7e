"""Polynomial forms on the interval, their graded dual, and decorations."""

from math import comb

import pytest
from hypothesis import given, strategies as st

from htalg.core import Q, Vector
from htalg.interval import (
    ALPHA,
    BETA,
    C0,
    C01,
    C1,
    INFINITY,
    OmegaForm,
    cech_d,
    cech_d_index,
    decorate,
    derham_d,
    dual_coproduct,
    dual_coproduct_index,
    dual_d,
    dual_d_index,
    evaluate_at,
    filtration_level,
    omega_dual_degree,
)


# -- polynomial forms --------------------------------------------------------


@given(st.lists(st.fractions(), max_size=6), st.lists(st.fractions(), max_size=6))
def test_derham_d_squares_to_zero(f, g):
    assert derham_d(derham_d(OmegaForm(f, g))) == OmegaForm()


def test_evaluation_endpoints():
    w = OmegaForm([1, 2, 3], [5])  # 1 + 2t + 3t^2 + 5 dt
    assert evaluate_at(w, 0) == 1
    assert evaluate_at(w, 1) == 6
    with pytest.raises(ValueError):
        evaluate_at(w, 2)


# -- the graded dual ---------------------------------------------------------


def test_dual_degrees():
    assert omega_dual_degree(ALPHA(3)) == 0
    assert omega_dual_degree(BETA(3)) == 1


def test_dual_d_squares_to_zero():
    for i in range(8):
        for idx in (ALPHA(i), BETA(i)):
            assert dual_d(dual_d_index(idx)).is_zero()


def test_dual_d_on_duals_of_monomials():
    # the dual of d(t^{i+1}) = (i+1) t^i dt
    assert dual_d_index(BETA(2)) == Vector({ALPHA(3): Q(3)})
    assert dual_d_index(ALPHA(2)).is_zero()


def test_dual_coproduct_coassociative():
    def split_slot(v: Vector, slot: int) -> Vector:
        out = Vector()
        for word, c in v.items():
            for pair, c2 in dual_coproduct_index(word[slot]).items():
                out = out + Vector({word[:slot] + pair + word[slot + 1:]: c * c2})
        return out

    for i in range(6):
        for idx in (ALPHA(i), BETA(i)):
            v = dual_coproduct_index(idx)
            assert split_slot(v, 0) == split_slot(v, 1)


def test_dual_coproduct_counit():
    # alpha_0 is dual to the constant 1: keeping the alpha_0 part of either
    # factor recovers the element
    for i in range(6):
        for idx in (ALPHA(i), BETA(i)):
            left = Vector()
            right = Vector()
            for (x, y), c in dual_coproduct_index(idx).items():
                if x == ALPHA(0):
                    left = left + Vector({y: c})
                if y == ALPHA(0):
                    right = right + Vector({x: c})
            assert left == Vector.basis(idx)
            assert right == Vector.basis(idx)


def test_filtration_level():
    assert filtration_level(Vector()) == INFINITY
    assert filtration_level(Vector.basis(ALPHA(3))) == 3
    assert filtration_level(Vector.basis(BETA(3))) == 4
    assert filtration_level(Vector({ALPHA(5): Q(1), BETA(1): Q(2)})) == 2


def test_cech_d():
    assert cech_d_index(C01) == Vector({C1: Q(1), C0: Q(-1)})
    assert cech_d(cech_d_index(C01)).is_zero()


# -- decorations -------------------------------------------------------------


def expected_connecting_decoration(n: int) -> Vector:
    """The symmetrized one-insertion formula: for every slot i and every
    word of end cells in the other n-1 slots with j right ends, weight
    (1/n) / C(n-1, j)."""
    from itertools import combinations

    out = {}
    for i in range(n):
        for j in range(n):
            if j > n - 1:
                continue
            weight = Q(1, n) / comb(n - 1, j)
            for pos in combinations(range(n - 1), j):
                word = tuple(C1 if p in pos else C0 for p in range(n - 1))
                full = word[:i] + (C01,) + word[i:]
                out[full] = out.get(full, Q(0)) + weight
    return Vector(out)


def test_decorate_arity_two_explicit():
    # (1/2)(01 (x) 0 + 01 (x) 1 + 0 (x) 01 + 1 (x) 01)
    val = decorate(C01, 2, 3)
    assert val == Vector(
        {
            (C01, C0): Q(1, 2),
            (C01, C1): Q(1, 2),
            (C0, C01): Q(1, 2),
            (C1, C01): Q(1, 2),
        }
    )


@pytest.mark.parametrize("n", range(1, 7))
def test_decorate_matches_symmetrized_formula(n):
    assert decorate(C01, n, n + 1) == expected_connecting_decoration(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_decorate_end_cells_are_diagonal(n):
    assert decorate(C0, n, n + 1) == Vector({(C0,) * n: Q(1)})
    assert decorate(C1, n, n + 1) == Vector({(C1,) * n: Q(1)})


@pytest.mark.parametrize("n", range(1, 6))
def test_decorate_is_level_independent(n):
    ref = decorate(C01, n, n + 1)
    for N in (n + 2, n + 3):
        assert decorate(C01, n, N) == ref


def test_decorate_symmetry_in_end_slots():
    # exchanging an adjacent 0/1 pair away from the inserted slot preserves
    # the coefficient (only the number of right ends matters)
    val = decorate(C01, 4, 5)
    assert val.coeff((C01, C0, C1, C1)) == val.coeff((C01, C1, C0, C1))
    assert val.coeff((C0, C01, C1, C0)) == val.coeff((C1, C01, C0, C0))


def test_decorate_requires_stable_level():
    with pytest.raises(ValueError):
        decorate(C01, 3, 3)
    with pytest.raises(ValueError):
        decorate(C01, 0, 5)
