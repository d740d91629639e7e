"""Homotopy transfer of the interval coalgebra and coherence checks."""

from math import factorial

import pytest

from htalg.core import Q, Vector, bernoulli
from htalg.interval import C0, C01, C1, CELLS
from htalg.retracts import make_interval_retract
from htalg.ainf import (
    coherence_defect,
    i_infinity_defect,
    stabilized_transfer,
    transfer,
    transfer_i_infinity,
)
from htalg.lie import uvw_coalgebra
from htalg.acceptance import (
    make_interval_coalgebra,
    transferred_as_uvw,
)


@pytest.fixture(scope="module")
def T4():
    return transfer(make_interval_coalgebra(), make_interval_retract(5), 4)


def test_transferred_differential_is_cech(T4):
    assert T4.delta(1, C01) == Vector({(C1,): Q(1), (C0,): Q(-1)})
    assert T4.delta(1, C0).is_zero()
    assert T4.delta(1, C1).is_zero()


def test_transferred_coproduct_endpoints_grouplike(T4):
    assert transferred_as_uvw(T4, 2, "u") == Vector({("u", "u"): Q(-1)})
    assert transferred_as_uvw(T4, 2, "v") == Vector({("v", "v"): Q(-1)})


def test_transferred_matches_bernoulli_coalgebra(T4):
    U = uvw_coalgebra(4)
    for k in range(1, 5):
        for name in ("u", "v", "w"):
            assert transferred_as_uvw(T4, k, name) == U.delta(k, name), (
                k,
                name,
            )


def test_arity_three_coefficients(T4):
    val = transferred_as_uvw(T4, 3, "w")
    B2 = bernoulli(2)  # 1/6
    assert val.coeff(("w", "u", "w")) == -B2
    assert val.coeff(("u", "w", "w")) == -B2 / 2
    assert val.coeff(("w", "w", "u")) == -B2 / 2
    assert val.coeff(("v", "w", "w")) == B2 / 2


def test_odd_bernoulli_arities_vanish(T4):
    assert T4.delta(4, C01).is_zero()


def test_transfer_stabilizes():
    for k in range(1, 5):
        tables = []
        for N in range(k + 1, k + 5):
            T = transfer(make_interval_coalgebra(), make_interval_retract(N), k)
            tables.append({cell: T.delta(k, cell) for cell in CELLS})
        assert all(t == tables[0] for t in tables)


def test_stabilized_transfer_reports_agreement():
    T, report = stabilized_transfer(
        lambda N: make_interval_coalgebra(),
        make_interval_retract,
        CELLS,
        3,
    )
    assert report["agree"]
    assert report["levels"] == [4, 5, 6, 7]
    assert transferred_as_uvw(T, 3, "w") == uvw_coalgebra(3).delta(3, "w")


def test_transferred_coherence(T4):
    for n in range(1, 5):
        for cell in CELLS:
            assert coherence_defect(T4, n, cell).is_zero()


def test_uvw_coherence():
    U = uvw_coalgebra(6)
    for n in range(1, 7):
        for name in ("u", "v", "w"):
            assert coherence_defect(U, n, name).is_zero()


def test_coherence_detects_a_wrong_coefficient():
    U = uvw_coalgebra(3)
    good = U.delta

    def bad(k, idx):
        v = good(k, idx)
        if k == 3 and idx == "w":
            return v.scale(Q(2))
        return v

    from htalg.ainf import AInfCoalgebra

    B = AInfCoalgebra(U.degree, bad, U.arities, 3, basis=U.basis)
    assert any(coherence_defect(B, n, "w") for n in range(1, 4))


def test_infinity_morphism_relations():
    C = make_interval_coalgebra()
    R = make_interval_retract(5)
    small = transfer(C, R, 4)
    f = transfer_i_infinity(C, R, 4)
    for n in range(1, 5):
        for cell in CELLS:
            assert i_infinity_defect(C, small, f, n, cell).is_zero(), (n, cell)
