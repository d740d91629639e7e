"""The interval retract family: identities, side conditions, convergence."""

from hypothesis import given, settings, strategies as st

from htalg.core import Q, Vector, apply_linear
from htalg.interval import ALPHA, BETA, C0, C01, C1, CELLS
from htalg.retracts import (
    convergence_check,
    interval_big_basis,
    k_homotopy,
    make_interval_retract,
    omega_embed,
    retract_defect,
    theta,
)


def test_projection_sends_duals_of_constants_and_t():
    assert theta(Vector.basis(ALPHA(0))) == Vector.basis(C0)
    assert theta(Vector.basis(ALPHA(1))) == Vector({C1: Q(1), C0: Q(-1)})
    assert theta(Vector.basis(BETA(0))) == Vector.basis(C01)
    assert theta(Vector.basis(ALPHA(2))).is_zero()
    assert theta(Vector.basis(BETA(1))).is_zero()


@given(st.integers(2, 9))
@settings(max_examples=20, deadline=None)
def test_projection_splits_embedding(N):
    for cell in CELLS:
        v = omega_embed(Vector.basis(cell), N)
        assert theta(v) == Vector.basis(cell)


@given(st.integers(2, 9))
@settings(max_examples=20, deadline=None)
def test_all_retract_identities(N):
    R = make_interval_retract(N)
    assert R.check(interval_big_basis(2 * N), CELLS) == []


@given(st.integers(2, 9))
@settings(max_examples=20, deadline=None)
def test_homotopy_identity_on_big_indices(N):
    for idx in interval_big_basis(2 * N):
        assert retract_defect(N, idx).is_zero()


@given(st.integers(2, 9))
@settings(max_examples=20, deadline=None)
def test_side_conditions(N):
    R = make_interval_retract(N)
    assert R.side_condition_defects(interval_big_basis(2 * N)) == []


def test_homotopy_lowers_nothing_outside_level():
    # K kills everything the projection keeps: K on beta_0 vanishes and K on
    # alpha_0, alpha-sums in the embedded image vanishes
    N = 5
    for cell in CELLS:
        assert k_homotopy(omega_embed(Vector.basis(cell), N), N).is_zero()


def test_convergence():
    for N in range(2, 13):
        for s in (1, 2, 3):
            for idx in interval_big_basis(2 * N):
                assert convergence_check(N, s, idx)


def test_retract_maps_are_chain_maps_on_degrees():
    R = make_interval_retract(4)
    # degrees: the homotopy raises degree by one on the dual side
    v = Vector.basis(ALPHA(2))
    img = apply_linear(R.homotopy, v)
    for (kind, _), _c in img.items():
        assert kind == "b"
