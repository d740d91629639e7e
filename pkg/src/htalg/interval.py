"""Polynomial forms on the interval, their graded dual coalgebra, and the
chain complex of the unit interval's two-point cover.

Homological grading throughout: the differential has degree -1 everywhere.
Dual basis indices are ALPHA(i) = ('a', i) in degree 0 and BETA(i) = ('b', i)
in degree 1; cells are C0, C1 in degree 0 and C01 in degree 1.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Q, Vector, rat

# ---------------------------------------------------------------------------
# Basis indices
# ---------------------------------------------------------------------------


def ALPHA(i: int):
    """Dual of t^i; degree 0."""
    return ("a", i)


def BETA(i: int):
    """Dual of t^i dt; degree 1."""
    return ("b", i)


C0 = ("cell", "0")
C1 = ("cell", "1")
C01 = ("cell", "01")

CELLS = (C0, C1, C01)


def omega_dual_degree(idx) -> int:
    kind, i = idx
    if kind == "a":
        return 0
    if kind == "b":
        return 1
    raise ValueError(f"not a dual-form index: {idx!r}")


def cech_degree(idx) -> int:
    if idx in (C0, C1):
        return 0
    if idx == C01:
        return 1
    raise ValueError(f"not a cell: {idx!r}")


# ---------------------------------------------------------------------------
# Polynomial de Rham forms f(t) + g(t) dt
# ---------------------------------------------------------------------------


class OmegaForm:
    """A polynomial form f(t) + g(t) dt; f sits in degree 0, g dt in degree -1."""

    __slots__ = ("f", "g")

    def __init__(self, f=(), g=()):
        self.f = _trim([Q(c) for c in f])
        self.g = _trim([Q(c) for c in g])

    def __eq__(self, other):
        return isinstance(other, OmegaForm) and self.f == other.f and self.g == other.g

    def __repr__(self):
        return f"OmegaForm(f={self.f}, g={self.g})"

    def __add__(self, other):
        return OmegaForm(_padd(self.f, other.f), _padd(self.g, other.g))

    def scale(self, c):
        c = Q(c)
        return OmegaForm([c * x for x in self.f], [c * x for x in self.g])


def _trim(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _padd(p, q):
    n = max(len(p), len(q))
    return [
        (p[i] if i < len(p) else Q(0)) + (q[i] if i < len(q) else Q(0))
        for i in range(n)
    ]


def derham_d(w: OmegaForm) -> OmegaForm:
    """f + g dt  |->  f' dt."""
    fprime = [Q(i) * w.f[i] for i in range(1, len(w.f))]
    return OmegaForm((), fprime)


def evaluate_at(w: OmegaForm, s: int) -> Fraction:
    """The evaluation map onto the ground field: f(s), killing the dt part."""
    if s not in (0, 1):
        raise ValueError("evaluation point must be 0 or 1")
    return sum((c * Q(s) ** i for i, c in enumerate(w.f)), Q(0))


# ---------------------------------------------------------------------------
# The graded dual coalgebra
# ---------------------------------------------------------------------------


def dual_coproduct_index(idx) -> Vector:
    """Coproduct on a single basis index, as a Vector over 2-tensor words."""
    kind, i = idx
    out = {}
    if kind == "a":
        for a in range(i + 1):
            out[(ALPHA(a), ALPHA(i - a))] = Q(1)
    elif kind == "b":
        for a in range(i + 1):
            out[(BETA(a), ALPHA(i - a))] = Q(1)
            out[(ALPHA(a), BETA(i - a))] = Q(1)
    else:
        raise ValueError(f"not a dual-form index: {idx!r}")
    return Vector(out)


def dual_coproduct(v: Vector) -> Vector:
    """Linear extension of the coproduct; output indexed by 2-tensor words."""
    out = Vector()
    for idx, c in v.items():
        out = out + dual_coproduct_index(idx).scale(c)
    return out


def dual_d_index(idx) -> Vector:
    kind, i = idx
    if kind == "a":
        return Vector()
    if kind == "b":
        return Vector.basis(ALPHA(i + 1), i + 1)
    raise ValueError(f"not a dual-form index: {idx!r}")


def dual_d(v: Vector) -> Vector:
    """Dual of the de Rham differential: d(beta_i) = (i+1) alpha_{i+1}."""
    out = Vector()
    for idx, c in v.items():
        out = out + dual_d_index(idx).scale(c)
    return out


INFINITY = "inf"


def filtration_level(v: Vector):
    """Largest N with v in the span of alpha_j (j >= N), beta_j (j >= N-1).

    Returns the INFINITY sentinel for the zero vector.
    """
    if v.is_zero():
        return INFINITY
    level = None
    for (kind, i), _ in v.items():
        this = i if kind == "a" else i + 1
        level = this if level is None else min(level, this)
    return level


# ---------------------------------------------------------------------------
# The two-point-cover chain complex of the interval
# ---------------------------------------------------------------------------


def cech_d_index(idx) -> Vector:
    if idx == C01:
        return Vector({C1: Q(1), C0: Q(-1)})
    if idx in (C0, C1):
        return Vector()
    raise ValueError(f"not a cell: {idx!r}")


def cech_d(v: Vector) -> Vector:
    out = Vector()
    for idx, c in v.items():
        out = out + cech_d_index(idx).scale(c)
    return out


# ---------------------------------------------------------------------------
# Decoration of cells at a given embedding level
# ---------------------------------------------------------------------------


def decorate(cell, n: int, N: int) -> Vector:
    """Push a cell through the level-N embedding, split it n-fold, and project
    every factor back to cells.

    Requires the stable range N >= n + 1; below it the answer would depend
    on N.  Returns a Vector over n-fold tensor words of cells.
    """
    from .retracts import omega_embed, theta_index

    if n < 1:
        raise ValueError("arity must be >= 1")
    if N <= n:
        raise ValueError(f"level N={N} must exceed arity n={n} (stable range)")
    v = omega_embed(Vector.basis(cell), N)
    # iterated coproduct: split the first factor until words have length n
    words = {(idx,): c for idx, c in v.items()}
    for _ in range(n - 1):
        nxt = {}
        for word, c in words.items():
            split = dual_coproduct_index(word[0])
            for pair, c2 in split.items():
                w = pair + word[1:]
                key = w
                nxt[key] = nxt.get(key, Q(0)) + c * c2
        words = nxt
    # project every slot to cells (theta is degree 0: no Koszul signs)
    out = {}
    for word, c in words.items():
        expansions = [(tuple(), c)]
        dead = False
        for idx in word:
            img = theta_index(idx)
            if img.is_zero():
                dead = True
                break
            expansions = [
                (w + (cell2,), cc * c2)
                for (w, cc) in expansions
                for cell2, c2 in img.items()
            ]
        if dead:
            continue
        for w, cc in expansions:
            out[w] = out.get(w, Q(0)) + cc
    return Vector(out)
