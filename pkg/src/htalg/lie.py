"""The free complete graded Lie algebra on a, b (degree -1), z (degree 0),
its cylinder differential with Bernoulli-number coefficients, and the induced
coalgebra data on the enveloping side.

Lie elements are represented inside the tensor algebra on the three symbols,
where the graded commutator [x, y] = xy - (-1)^{|x||y|} yx makes the graded
Jacobi identity automatic.  Words never lose weight under the differential,
so computations truncated at a fixed total weight are exact in that range.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .core import Q, Vector, bernoulli

GENERATORS = ("a", "b", "z")
GEN_DEGREE = {"a": -1, "b": -1, "z": 0}


def word_degree(word) -> int:
    return sum(GEN_DEGREE[x] for x in word)


def word_weight(word) -> int:
    return len(word)


def tensor_mul(u: Vector, v: Vector) -> Vector:
    out = {}
    for w1, c1 in u.items():
        for w2, c2 in v.items():
            w = w1 + w2
            out[w] = out.get(w, Q(0)) + c1 * c2
    return Vector(out)


def bracket(u: Vector, v: Vector) -> Vector:
    """Graded commutator in the tensor algebra."""
    out = tensor_mul(u, v)
    for w1, c1 in u.items():
        for w2, c2 in v.items():
            s = -1 if (word_degree(w1) * word_degree(w2)) % 2 else 1
            out = out + Vector({w2 + w1: -s * c1 * c2})
    return out


def gen(x) -> Vector:
    if x not in GENERATORS:
        raise ValueError(f"unknown generator {x!r}")
    return Vector.basis((x,))


def truncate_weight(v: Vector, max_weight: int) -> Vector:
    return Vector({w: c for w, c in v.items() if len(w) <= max_weight})


def ad(x: Vector, y: Vector) -> Vector:
    return bracket(x, y)


def ad_pow(x: Vector, k: int, y: Vector, max_weight=None) -> Vector:
    out = y
    for _ in range(k):
        out = bracket(x, out)
        if max_weight is not None:
            out = truncate_weight(out, max_weight)
    return out


# ---------------------------------------------------------------------------
# The cylinder differential
# ---------------------------------------------------------------------------


def dz_series(max_weight: int) -> Vector:
    """[z, b] + sum_k (B_k / k!) ad_z^k (b - a), truncated at total weight."""
    z, a, b = gen("z"), gen("a"), gen("b")
    out = bracket(z, b)
    bma = b - a
    for k in range(max_weight):  # ad_z^k(b - a) has weight k + 1
        B = bernoulli(k)
        if B:
            out = out + ad_pow(z, k, bma, max_weight).scale(B / factorial(k))
    return truncate_weight(out, max_weight)


def d_generator(x, max_weight: int) -> Vector:
    """The differential on a generator: d a = -[a,a]/2, d b = -[b,b]/2,
    d z = the Bernoulli series."""
    if x == "a":
        return bracket(gen("a"), gen("a")).scale(Q(-1, 2))
    if x == "b":
        return bracket(gen("b"), gen("b")).scale(Q(-1, 2))
    if x == "z":
        return dz_series(max_weight)
    raise ValueError(f"unknown generator {x!r}")


def differential(v: Vector, max_weight: int) -> Vector:
    """Degree -1 derivation extension of d on generators to tensor words,
    with the Koszul sign of moving d past the earlier letters."""
    out = Vector()
    for word, c in v.items():
        for i, x in enumerate(word):
            e = word_degree(word[:i])
            sign = -1 if e % 2 else 1
            dx = d_generator(x, max_weight)
            for sub, c2 in dx.items():
                w = word[:i] + sub + word[i + 1:]
                if len(w) <= max_weight:
                    out = out + Vector({w: c * c2 * sign})
    return out


def d_square_defect(x, max_weight: int) -> Vector:
    """d(d(x)) truncated at the given weight; zero for each generator."""
    return truncate_weight(
        differential(d_generator(x, max_weight), max_weight), max_weight
    )


def uvw_coalgebra(max_arity: int):
    """The three-dimensional coalgebra on u, v (degree 0) and w (degree 1)
    carrying the enveloping-side structure of the cylinder:

        delta_1(w) = u - v
        delta_2(u) = -u(x)u,  delta_2(v) = -v(x)v,
        delta_2(w) = -(1/2) w(x)(u+v) - (1/2)(u+v)(x)w
        delta_k(w) = -sum_{p+q=k-1} (|B_{k-1}|/(p!q!)) w^p (x) (u-v) (x) w^q

    for k >= 3, with delta_k(u) = delta_k(v) = 0 there.  The absolute value
    on the Bernoulli coefficients is forced by the coherence relations in
    this package's suspension convention (test-backed), and only affects
    arities k with k - 1 even and >= 4.
    """
    from .ainf import AInfCoalgebra

    U, V, W = "u", "v", "w"

    def degree(x):
        return 1 if x == W else 0

    def delta(k, idx):
        if k == 1:
            return Vector({(U,): Q(1), (V,): Q(-1)}) if idx == W else Vector()
        if k == 2:
            if idx == U:
                return Vector({(U, U): Q(-1)})
            if idx == V:
                return Vector({(V, V): Q(-1)})
            return Vector({(W, U): Q(-1, 2), (W, V): Q(-1, 2),
                           (U, W): Q(-1, 2), (V, W): Q(-1, 2)})
        if idx != W:
            return Vector()
        B = abs(bernoulli(k - 1))
        if not B:
            return Vector()
        out = {}
        for p in range(k):
            q = k - 1 - p
            c = -B / (factorial(p) * factorial(q))
            for mid, s in ((U, 1), (V, -1)):
                word = (W,) * p + (mid,) + (W,) * q
                out[word] = out.get(word, Q(0)) + c * s
        return Vector(out)

    return AInfCoalgebra(degree, delta, range(2, max_arity + 1), max_arity,
                         basis=[U, V, W])


# ---------------------------------------------------------------------------
# Basis of the free graded Lie algebra by weight
# ---------------------------------------------------------------------------


def _left_normed(letters) -> Vector:
    """[[...[x1, x2], x3], ..., xk] as a tensor-algebra element."""
    out = gen(letters[0])
    for x in letters[1:]:
        out = bracket(out, gen(x))
    return out


def _all_bracketings(letters):
    """Every full bracketing of every ordering of the given letters."""
    from itertools import permutations

    seen = set()
    for perm in set(permutations(letters)):
        for v in _bracketings_of(perm):
            seen.add(v)
    return seen


def _bracketings_of(letters):
    if len(letters) == 1:
        yield gen(letters[0])
        return
    for cut in range(1, len(letters)):
        for l in _bracketings_of(letters[:cut]):
            for r in _bracketings_of(letters[cut:]):
                yield bracket(l, r)


def _echelon_insert(rows: list, v: Vector):
    """Reduce v against the rows (each a Vector with a marked pivot word);
    append if independent.  Returns True when v was new."""
    for pivot, row in rows:
        c = v.coeff(pivot)
        if c:
            v = v - row.scale(c / row.coeff(pivot))
    if v.is_zero():
        return False
    pivot = min(v.terms, key=repr)
    rows.append((pivot, v))
    return True


def hall_basis(max_weight: int) -> dict:
    """A basis of each weight component of the free graded Lie algebra on
    a, b, z, given by left-normed brackets whose tensor-algebra expansions
    are linearly independent.

    Returns {weight: [(letters tuple, Vector expansion), ...]}.
    """
    from itertools import product

    basis = {}
    for wgt in range(1, max_weight + 1):
        rows = []
        chosen = []
        for letters in product(GENERATORS, repeat=wgt):
            v = _left_normed(letters)
            if v.is_zero():
                continue
            if _echelon_insert(rows, v):
                chosen.append((letters, v))
        basis[wgt] = chosen
    return basis


def lie_span_dimension(vectors) -> int:
    rows = []
    n = 0
    for v in vectors:
        if v and _echelon_insert(rows, v):
            n += 1
    return n


def hall_basis_spans(max_weight: int) -> bool:
    """The left-normed basis spans all bracketings, checked weight by weight."""
    basis = hall_basis(max_weight)
    from itertools import combinations_with_replacement

    for wgt in range(2, max_weight + 1):
        rows = []
        for _, v in basis[wgt]:
            _echelon_insert(rows, v)
        for letters in combinations_with_replacement(GENERATORS, wgt):
            for v in _all_bracketings(letters):
                reduced = v
                for pivot, row in rows:
                    c = reduced.coeff(pivot)
                    if c:
                        reduced = reduced - row.scale(c / row.coeff(pivot))
                if not reduced.is_zero():
                    return False
    return True


# ---------------------------------------------------------------------------
# Enveloping-side expansion of dz
# ---------------------------------------------------------------------------


def ue_expand_dz(max_weight: int) -> Vector:
    """dz expanded in the tensor algebra via
    ad_z^k(y) = sum_j (-1)^j C(k, j) z^{k-j} y z^j  (y of degree -1)."""
    out = Vector()
    # [z, b]: zb - bz
    out = out + Vector({("z", "b"): Q(1), ("b", "z"): Q(-1)})
    for k in range(max_weight):
        B = bernoulli(k)
        if not B:
            continue
        c = B / factorial(k)
        for y, s in (("b", 1), ("a", -1)):
            for j in range(k + 1):
                w = ("z",) * (k - j) + (y,) + ("z",) * j
                if len(w) <= max_weight:
                    sign = -comb(k, j) if j % 2 else comb(k, j)
                    out = out + Vector({w: c * s * sign})
    return truncate_weight(out, max_weight)
