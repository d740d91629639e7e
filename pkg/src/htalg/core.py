"""Exact rational scalars, graded vectors, Koszul signs, and small combinatorics.

All coefficients are `fractions.Fraction`; nothing in this package ever touches
floating point.  Basis indices are arbitrary hashable, totally-ordered objects
(tuples in practice); a *vector* is a finitely supported map from indices to
nonzero rationals.  Tensor words are plain tuples of indices.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping


Q = Fraction


def rat(x) -> Fraction:
    """Parse an exact rational from an int, Fraction, or a string "p/q" / "p"."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        # only "p" and "p/q" are accepted; decimal or scientific notation
        # would smuggle floating point into exact arithmetic
        import re

        if not re.fullmatch(r"-?\d+(/\d+)?", s):
            raise ValueError(f"not an exact rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"not an exact rational literal: {x!r}")


def rat_str(x: Fraction) -> str:
    """Render a rational as "p/q" (or "p" when the denominator is 1)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Vector:
    """Finitely supported rational combination of basis indices.

    Stored canonically: no zero coefficients.  Indices may be any hashable,
    orderable objects; tensor words are tuples of indices and are themselves
    valid indices.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for idx, c in items:
                c = Fraction(c)
                if c:
                    c0 = data.get(idx)
                    c = c if c0 is None else c0 + c
                    if c:
                        data[idx] = c
                    else:
                        del data[idx]
        self.terms = data

    @classmethod
    def basis(cls, idx, coeff=1) -> "Vector":
        return cls({idx: Fraction(coeff)})

    @classmethod
    def zero(cls) -> "Vector":
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Vector") -> "Vector":
        out = dict(self.terms)
        for idx, c in other.terms.items():
            c0 = out.get(idx)
            c = c if c0 is None else c0 + c
            if c:
                out[idx] = c
            else:
                del out[idx]
        v = Vector.__new__(Vector)
        v.terms = out
        return v

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def __neg__(self) -> "Vector":
        v = Vector.__new__(Vector)
        v.terms = {idx: -c for idx, c in self.terms.items()}
        return v

    def scale(self, c) -> "Vector":
        c = Fraction(c)
        v = Vector.__new__(Vector)
        v.terms = {} if not c else {idx: c * x for idx, x in self.terms.items()}
        return v

    __mul__ = scale
    __rmul__ = scale

    def coeff(self, idx) -> Fraction:
        return self.terms.get(idx, Fraction(0))

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: repr(kv[0]))

    def map_indices(self, fn: Callable) -> "Vector":
        """Linear extension of an index-to-Vector (or index-to-index) map."""
        out = Vector()
        for idx, c in self.terms.items():
            img = fn(idx)
            if isinstance(img, Vector):
                out = out + img.scale(c)
            else:
                out = out + Vector.basis(img, c)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"{rat_str(c)}*{idx}" for idx, c in self.sorted_items()]
        return " + ".join(bits)


def apply_linear(rule: Callable, v: Vector) -> Vector:
    """Extend a basis-to-Vector rule linearly; raises if the rule is undefined."""
    out = Vector()
    for idx, c in v.items():
        img = rule(idx)
        if img is None:
            raise ValueError(f"linear rule undefined on basis index {idx!r}")
        out = out + img.scale(c)
    return out


# ---------------------------------------------------------------------------
# Koszul signs
# ---------------------------------------------------------------------------

def koszul_sign(permutation, degrees) -> int:
    """Sign accumulated by reordering graded symbols along a permutation.

    `permutation` lists, in output order, the 1-based original positions;
    transposing symbols of degrees p, q contributes (-1)**(p*q).
    """
    perm = list(permutation)
    degs = list(degrees)
    n = len(perm)
    if len(degs) != n or sorted(perm) != list(range(1, n + 1)):
        raise ValueError("permutation/degrees mismatch")
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                if (degs[perm[i] - 1] * degs[perm[j] - 1]) % 2:
                    sign = -sign
    return sign


def perm_sign(permutation) -> int:
    """Ordinary sign of a permutation given in one-line notation (1-based)."""
    perm = list(permutation)
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1


def chi_sign(permutation, degrees) -> int:
    """Antisymmetric Koszul sign: sgn(sigma) times the Koszul sign."""
    return perm_sign(permutation) * koszul_sign(permutation, degrees)


def tensor_apply(ops, degs_ops, word, deg_of, coeff=Fraction(1)) -> Vector:
    """Apply (op_1 (x) ... (x) op_k) to the tensor word `word` with Koszul signs.

    `ops[i]` is either None (identity on that slot) or a map index -> Vector
    over indices.  `degs_ops[i]` is the degree of op_i; `deg_of` gives the
    degree of a basis index.  Returns a Vector over tensor words.
    """
    k = len(word)
    assert len(ops) == k
    # Koszul sign of moving each operator past the factors to its left.
    sign = 1
    left_deg = 0
    images = []
    for i in range(k):
        op = ops[i]
        if op is None:
            images.append(Vector.basis((word[i],)))
        else:
            if (degs_ops[i] * left_deg) % 2:
                sign = -sign
            img = op(word[i])
            if isinstance(img, Vector):
                # image indices may themselves be words or single indices
                img = Vector(
                    {(ix if isinstance(ix, tuple) else (ix,)): c for ix, c in img.items()}
                )
            else:
                raise TypeError("slot operators must return Vectors")
            images.append(img)
        left_deg += deg_of(word[i])
    # expand the product of the slot images into words
    out = {(): coeff * sign}
    for img in images:
        nxt = {}
        for w0, c0 in out.items():
            for w1, c1 in img.items():
                c = c0 * c1
                w = w0 + w1
                nxt[w] = nxt.get(w, Fraction(0)) + c
        out = nxt
    return Vector(out)


# ---------------------------------------------------------------------------
# Bernoulli numbers and the binomial identity
# ---------------------------------------------------------------------------

_BERNOULLI_CACHE = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k with B_1 = -1/2 (the x/(e^x - 1) convention).

    Computed from sum_{j=0}^{k} C(k+1, j) B_j = 0 with B_0 = 1.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    while len(_BERNOULLI_CACHE) <= k:
        m = len(_BERNOULLI_CACHE)
        acc = sum(
            Fraction(math.comb(m + 1, j)) * _BERNOULLI_CACHE[j] for j in range(m)
        )
        _BERNOULLI_CACHE.append(-acc / math.comb(m + 1, m))
    return _BERNOULLI_CACHE[k]


def _poly_mul(p, q):
    out = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _poly_pow(p, n):
    out = {(0, 0): Fraction(1)}
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


def binomial_identity_check(n: int) -> bool:
    """Exact check of sum_i C(n,i+1) a^(n-1-i) b^i == sum_j a^(n-1-j) (a+b)^j.

    Verified as an identity in Z[a, b].
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a = {(1, 0): Fraction(1)}
    b = {(0, 1): Fraction(1)}
    ab = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
    lhs = {}
    for i in range(n):
        term = _poly_mul(_poly_pow(a, n - 1 - i), _poly_pow(b, i))
        for k, c in term.items():
            lhs[k] = lhs.get(k, Fraction(0)) + Fraction(math.comb(n, i + 1)) * c
    rhs = {}
    for j in range(n):
        term = _poly_mul(_poly_pow(a, n - 1 - j), _poly_pow(ab, j))
        for k, c in term.items():
            rhs[k] = rhs.get(k, Fraction(0)) + c
    lhs = {k: c for k, c in lhs.items() if c}
    rhs = {k: c for k, c in rhs.items() if c}
    return lhs == rhs


# ---------------------------------------------------------------------------
# Planar trees
# ---------------------------------------------------------------------------

LEAF = "*"


def planar_trees(n_leaves: int, arities: Iterable[int]) -> list:
    """All rooted planar trees with `n_leaves` leaves and internal arities
    drawn from `arities` (each >= 2).

    A tree is a nested tuple of subtrees; a leaf is the atom LEAF.  Trees are
    produced in a canonical order with no duplicates, which realises the
    sum over all ways of building a tree by successive graftings with each
    shape counted exactly once.
    """
    arities = sorted({a for a in arities if a >= 2})
    cache = {}

    def gen(n):
        if n in cache:
            return cache[n]
        if n == 1:
            res = [LEAF]
        else:
            res = []
            for a in arities:
                if a > n:
                    break
                for comp in _compositions(n, a):
                    for combo in _product([gen(m) for m in comp]):
                        res.append(tuple(combo))
        cache[n] = res
        return res

    return [t for t in gen(n_leaves) if t != LEAF]


def _compositions(n, k):
    """Ordered compositions of n into k positive parts."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _product(lists):
    if not lists:
        yield []
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield [head] + tail


def tree_leaves(t) -> int:
    if t == LEAF:
        return 1
    return sum(tree_leaves(s) for s in t)
