"""The free cylinder Lie algebra and its enveloping-side coalgebra."""

from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from htalg.core import Q, Vector, bernoulli
from htalg.lie import (
    GENERATORS,
    ad_pow,
    bracket,
    d_generator,
    d_square_defect,
    differential,
    dz_series,
    gen,
    hall_basis,
    hall_basis_spans,
    truncate_weight,
    ue_expand_dz,
    uvw_coalgebra,
    word_degree,
)


words = st.lists(st.sampled_from(GENERATORS), min_size=1, max_size=3).map(tuple)


@given(words, words)
@settings(max_examples=60)
def test_graded_antisymmetry(w1, w2):
    x, y = Vector.basis(w1), Vector.basis(w2)
    s = (-1) ** (word_degree(w1) * word_degree(w2))
    assert bracket(x, y) + bracket(y, x).scale(Q(s)) == Vector()


@given(words, words, words)
@settings(max_examples=60, deadline=None)
def test_graded_jacobi(w1, w2, w3):
    x, y, z = Vector.basis(w1), Vector.basis(w2), Vector.basis(w3)
    a, b, c = word_degree(w1), word_degree(w2), word_degree(w3)
    lhs = bracket(x, bracket(y, z))
    mid = bracket(bracket(x, y), z)
    rhs = bracket(y, bracket(x, z)).scale(Q((-1) ** (a * b)))
    assert lhs - mid - rhs == Vector()


def test_self_bracket_of_odd_generator_nonzero():
    a = gen("a")
    assert bracket(a, a) == Vector({("a", "a"): Q(2)})


def test_endpoint_generators_are_maurer_cartan():
    for g in ("a", "b"):
        v = gen(g)
        assert d_generator(g, 6) + bracket(v, v).scale(Q(1, 2)) == Vector()


@pytest.mark.parametrize("g", GENERATORS)
@pytest.mark.parametrize("W", [4, 6])
def test_differential_squares_to_zero(g, W):
    assert d_square_defect(g, W).is_zero()


def test_dz_leading_terms():
    dz = dz_series(3)
    # weight 1: B_0 (b - a)
    assert dz.coeff(("b",)) == 1
    assert dz.coeff(("a",)) == -1
    # weight 2: [z,b] + B_1 [z, b - a] = [z,b] - (1/2)[z, b-a]
    assert dz.coeff(("z", "b")) == Q(1, 2)
    assert dz.coeff(("z", "a")) == Q(1, 2)
    assert dz.coeff(("b", "z")) == Q(-1, 2)
    assert dz.coeff(("a", "z")) == Q(-1, 2)


def test_differential_is_a_derivation():
    x = Vector({("a", "z"): Q(1)})
    y = Vector({("b",): Q(1)})
    from htalg.lie import tensor_mul

    W = 6
    sign = Q(-1) if word_degree(("a", "z")) % 2 else Q(1)
    lhs = differential(tensor_mul(x, y), W)
    rhs = tensor_mul(differential(x, W), y) + tensor_mul(
        x, differential(y, W)
    ).scale(sign)
    # the right-hand product can exceed the cap by the weight of y
    assert lhs == truncate_weight(rhs, W)


def test_hall_basis_dimensions_and_span():
    basis = hall_basis(4)
    # weight 2 by hand: [a,a], [b,b], [a,b], [a,z], [b,z] survive while
    # [z,z] = 0 (odd generators square to nonzero elements, the even one
    # does not) -- five elements, unlike the ungraded free Lie algebra
    assert len(basis[2]) == 5
    assert [len(basis[w]) for w in (1, 2, 3, 4)] == [3, 5, 8, 20]
    assert hall_basis_spans(4)


def test_ue_expansion_matches_direct_bracket_expansion():
    W = 6
    z, a, b = gen("z"), gen("a"), gen("b")
    out = bracket(z, b)
    for k in range(W):
        B = bernoulli(k)
        if B:
            out = out + ad_pow(z, k, b - a, W).scale(B / factorial(k))
    assert truncate_weight(out, W) == ue_expand_dz(W)


def test_ue_weight_four_vanishes():
    dz = ue_expand_dz(6)
    assert all(len(w) != 4 for w in dz.terms)


def test_uvw_displayed_structure():
    U = uvw_coalgebra(6)
    assert U.delta(1, "w") == Vector({("u",): Q(1), ("v",): Q(-1)})
    assert U.delta(2, "u") == Vector({("u", "u"): Q(-1)})
    d3 = U.delta(3, "w")
    assert d3.coeff(("w", "w", "u")) == Q(-1, 12)
    assert d3.coeff(("w", "u", "w")) == Q(-1, 6)
    assert d3.coeff(("u", "w", "w")) == Q(-1, 12)
    assert d3.coeff(("w", "w", "v")) == Q(1, 12)
    assert U.delta(4, "w").is_zero()
    d5 = U.delta(5, "w")
    B4 = abs(bernoulli(4))  # 1/30
    assert abs(d5.coeff(("u", "w", "w", "w", "w"))) == B4 / factorial(4)
    assert abs(d5.coeff(("w", "w", "u", "w", "w"))) == B4 / (
        factorial(2) * factorial(2)
    )


def test_ue_magnitudes_match_uvw():
    dz = ue_expand_dz(6)
    U = uvw_coalgebra(6)
    for k in range(6):
        val = U.delta(k + 1, "w")
        for y, mid in (("b", "u"), ("a", "v")):
            for p in range(k + 1):
                q = k - p
                assert abs(dz.coeff(("z",) * p + (y,) + ("z",) * q)) == abs(
                    val.coeff(("w",) * p + (mid,) + ("w",) * q)
                )
