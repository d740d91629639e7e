"""Homotopy retract data and the explicit level-N family contracting the dual
de Rham coalgebra of the interval onto the chain complex of its two cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import Q, Vector, apply_linear
from .interval import (
    ALPHA,
    BETA,
    C0,
    C01,
    C1,
    CELLS,
    cech_d_index,
    cech_degree,
    dual_d_index,
    filtration_level,
    omega_dual_degree,
)


@dataclass
class Retract:
    """A homotopy retract (i, p, H) between two effective complexes.

    All five maps are given per basis index and extended linearly.  The
    defining identities (p i = id, chain maps, id - i p = dH + Hd) are
    checkable per basis element via `check`.
    """

    big_d: Callable[[object], Vector]
    small_d: Callable[[object], Vector]
    incl: Callable[[object], Vector]    # small -> big
    proj: Callable[[object], Vector]    # big -> small
    homotopy: Callable[[object], Vector]  # big -> big, degree +1
    big_degree: Callable[[object], int] = field(default=lambda idx: 0)
    small_degree: Callable[[object], int] = field(default=lambda idx: 0)

    def check(self, big_basis, small_basis) -> list:
        """Return a list of (identity, basis index, defect) for all failures."""
        bad = []
        for x in small_basis:
            v = Vector.basis(x)
            d1 = apply_linear(self.proj, apply_linear(self.incl, v)) - v
            if d1:
                bad.append(("p i = id", x, d1))
            d2 = apply_linear(self.big_d, apply_linear(self.incl, v)) - apply_linear(
                self.incl, apply_linear(self.small_d, v)
            )
            if d2:
                bad.append(("d i = i d", x, d2))
        for x in big_basis:
            v = Vector.basis(x)
            d3 = apply_linear(self.small_d, apply_linear(self.proj, v)) - apply_linear(
                self.proj, apply_linear(self.big_d, v)
            )
            if d3:
                bad.append(("d p = p d", x, d3))
            lhs = (
                apply_linear(self.big_d, apply_linear(self.homotopy, v))
                + apply_linear(self.homotopy, apply_linear(self.big_d, v))
            )
            rhs = v - apply_linear(self.incl, apply_linear(self.proj, v))
            if lhs - rhs:
                bad.append(("dH + Hd = id - i p", x, lhs - rhs))
        return bad

    def side_condition_defects(self, big_basis) -> list:
        """Defects of H H = 0, p H = 0, H i-image = 0 on the given indices."""
        bad = []
        for x in big_basis:
            v = Vector.basis(x)
            hh = apply_linear(self.homotopy, apply_linear(self.homotopy, v))
            if hh:
                bad.append(("H H = 0", x, hh))
            ph = apply_linear(self.proj, apply_linear(self.homotopy, v))
            if ph:
                bad.append(("p H = 0", x, ph))
        return bad


# ---------------------------------------------------------------------------
# The explicit family for the interval
# ---------------------------------------------------------------------------


def theta_index(idx) -> Vector:
    """Projection onto cells: alpha_0 -> 0, alpha_1 -> 1 - 0, beta_0 -> 01."""
    kind, i = idx
    if kind == "a":
        if i == 0:
            return Vector.basis(C0)
        if i == 1:
            return Vector({C1: Q(1), C0: Q(-1)})
        return Vector()
    if kind == "b":
        return Vector.basis(C01) if i == 0 else Vector()
    raise ValueError(f"not a dual-form index: {idx!r}")


def theta(v: Vector) -> Vector:
    return apply_linear(theta_index, v)


def omega_embed_index(cell, N: int) -> Vector:
    if N < 2:
        raise ValueError("level N must be >= 2")
    if cell == C0:
        return Vector.basis(ALPHA(0))
    if cell == C1:
        return Vector({ALPHA(p): Q(1) for p in range(N)})
    if cell == C01:
        return Vector({BETA(p): Q(1, p + 1) for p in range(N - 1)})
    raise ValueError(f"not a cell: {cell!r}")


def omega_embed(c: Vector, N: int) -> Vector:
    return apply_linear(lambda idx: omega_embed_index(idx, N), c)


def k_homotopy_index(idx, N: int) -> Vector:
    if N < 2:
        raise ValueError("level N must be >= 2")
    kind, i = idx
    if kind == "b":
        return Vector()
    if kind == "a":
        if i == 0:
            return Vector()
        if i == 1:
            return Vector({BETA(j): Q(-1, j + 1) for j in range(1, N - 1)})
        return Vector.basis(BETA(i - 1), Q(1, i))
    raise ValueError(f"not a dual-form index: {idx!r}")


def k_homotopy(v: Vector, N: int) -> Vector:
    return apply_linear(lambda idx: k_homotopy_index(idx, N), v)


def retract_defect(N: int, idx) -> Vector:
    """(dK_N + K_N d)(x) - (id - omega_N theta)(x); zero for every index."""
    v = Vector.basis(idx)
    lhs = apply_linear(dual_d_index, k_homotopy(v, N)) + k_homotopy(
        apply_linear(dual_d_index, v), N
    )
    rhs = v - omega_embed(theta(v), N)
    return lhs - rhs


def convergence_check(N: int, s: int, idx) -> bool:
    """Differences omega_N - omega_{N+s} and K_N - K_{N+s} land in level >= N.

    `idx` may be a cell (checked through omega) or a dual-form index (through K).
    """
    if s < 1:
        raise ValueError("increment s must be >= 1")
    v = Vector.basis(idx)
    if idx in CELLS:
        diff = omega_embed(v, N) - omega_embed(v, N + s)
    else:
        diff = k_homotopy(v, N) - k_homotopy(v, N + s)
    lvl = filtration_level(diff)
    return lvl == "inf" or lvl >= N


def make_interval_retract(N: int) -> Retract:
    if N < 2:
        raise ValueError("level N must be >= 2")
    return Retract(
        big_d=dual_d_index,
        small_d=cech_d_index,
        incl=lambda cell: omega_embed_index(cell, N),
        proj=theta_index,
        homotopy=lambda idx: k_homotopy_index(idx, N),
        big_degree=omega_dual_degree,
        small_degree=cech_degree,
    )


def interval_big_basis(max_index: int):
    return [ALPHA(i) for i in range(max_index + 1)] + [
        BETA(i) for i in range(max_index + 1)
    ]
