"""Effective L-infinity algebras over the rationals: bracket tables with
graded antisymmetry, generalized Jacobi checking, Maurer-Cartan elements,
twisting, gauge flows, polynomial-form extensions, and the convolution
constructions on Hom-spaces.

Conventions: homological grading, ell_k of degree k - 2, graded
antisymmetry with the chi sign (sign of the permutation times the Koszul
sign).  Maurer-Cartan elements sit in degree -1.  All series are truncated
by explicit arity / word-length / t-degree caps; within the declared caps
every computation is exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Iterable

from .core import Q, Vector, chi_sign, koszul_sign

# ---------------------------------------------------------------------------
# L-infinity algebras
# ---------------------------------------------------------------------------


def _argsort_key(name):
    return repr(name)


class LInfAlgebra:
    """An L-infinity algebra given by a finite basis with degrees and a rule
    computing each bracket on canonically ordered basis tuples.

    `rule(k, names)` receives a tuple sorted in the canonical basis order and
    returns a Vector over basis names; evaluation on arbitrary tuples sorts
    the arguments and multiplies by the chi sign.  Brackets on tuples with a
    repeated even-degree entry vanish identically.
    """

    def __init__(self, basis, degree, rule, arity_cap, weight=None):
        self.basis = list(basis)
        self._degree = dict(degree) if not callable(degree) else degree
        self.rule = rule
        self.arity_cap = arity_cap
        self.weight = weight
        self._cache = {}

    @classmethod
    def from_tables(cls, basis, degree, tables, arity_cap, weight=None):
        """`tables`: {arity: {canonical names tuple: Vector}}; missing
        entries are zero."""
        norm = {
            k: {tuple(t): (v if isinstance(v, Vector) else Vector(v))
                for t, v in tbl.items()}
            for k, tbl in tables.items()
        }

        def rule(k, names):
            return norm.get(k, {}).get(names, Vector())

        return cls(basis, degree, rule, arity_cap, weight)

    def degree(self, name):
        return self._degree(name) if callable(self._degree) else self._degree[name]

    def ell_names(self, k, names) -> Vector:
        """Bracket on a tuple of basis names (any order)."""
        if k > self.arity_cap:
            raise ValueError(f"arity {k} exceeds cap {self.arity_cap}")
        names = tuple(names)
        if len(names) != k:
            raise ValueError("arity/argument mismatch")
        order = sorted(range(k), key=lambda i: _argsort_key(names[i]))
        canonical = tuple(names[i] for i in order)
        for a, b in zip(canonical, canonical[1:]):
            if a == b and self.degree(a) % 2 == 0:
                return Vector()
        degs = [self.degree(n) for n in names]
        sign = chi_sign([i + 1 for i in order], degs)
        key = (k, canonical)
        if key not in self._cache:
            self._cache[key] = self.rule(k, canonical)
        return self._cache[key].scale(sign)

    def ell(self, k, vectors) -> Vector:
        """Multilinear extension of the bracket to Vectors."""
        out = Vector()
        stack = [((), Q(1))]
        for v in vectors:
            stack = [
                (names + (n,), c * cv)
                for names, c in stack
                for n, cv in v.items()
            ]
        for names, c in stack:
            if c:
                out = out + self.ell_names(k, names).scale(c)
        return out

    def filtration_defects(self) -> list:
        """Violations of ell_k(F^{i_1},...,F^{i_k}) in F^{i_1+...+i_k},
        checkable only when explicit weights were declared."""
        if self.weight is None:
            return []
        bad = []
        for k in range(1, self.arity_cap + 1):
            for names in combinations(sorted(self.basis, key=_argsort_key), k):
                target = sum(self.weight[n] for n in names)
                for out_name, _ in self.ell_names(k, names).items():
                    if self.weight[out_name] < target:
                        bad.append((k, names, out_name))
        return bad


def jacobi_defect(L: LInfAlgebra, n: int, inputs) -> Vector:
    """Generalized Jacobi defect at arity n on a tuple of basis names:
    sum over i and (i, n-i)-unshuffles of
    (-1)^{i(n-i)} chi(sigma) ell_{n-i+1}(ell_i(...), ...); zero for a
    valid structure."""
    if n > L.arity_cap:
        raise ValueError(f"arity {n} exceeds cap {L.arity_cap}")
    inputs = tuple(inputs)
    degs = [L.degree(x) for x in inputs]
    total = Vector()
    for i in range(1, n + 1):
        outer = n - i + 1
        if outer > L.arity_cap:
            continue
        pre = -1 if (i * (n - i)) % 2 else 1
        for first in combinations(range(n), i):
            rest = tuple(j for j in range(n) if j not in first)
            perm = [j + 1 for j in first + rest]
            s = chi_sign(perm, degs)
            inner = L.ell_names(i, tuple(inputs[j] for j in first))
            if inner.is_zero():
                continue
            tail = [Vector.basis(inputs[j]) for j in rest]
            total = total + L.ell(outer, [inner] + tail).scale(pre * s)
    return total


# ---------------------------------------------------------------------------
# Maurer-Cartan theory
# ---------------------------------------------------------------------------


def mc_defect(L: LInfAlgebra, alpha: Vector, cap: int) -> Vector:
    """The curvature sum_{k<=cap} (1/k!) ell_k(alpha,...,alpha)."""
    for name, _ in alpha.items():
        if L.degree(name) != -1:
            raise ValueError(f"MC candidate must be homogeneous of degree -1, got {name!r}")
    cap = min(cap, L.arity_cap)
    out = Vector()
    for k in range(1, cap + 1):
        out = out + L.ell(k, [alpha] * k).scale(Q(1, factorial(k)))
    return out


def twist(L: LInfAlgebra, alpha: Vector, allow_non_mc=False) -> LInfAlgebra:
    """The twisted structure ell^alpha_n = sum_p (1/p!) ell_{n+p}(alpha^p, -)."""
    if not allow_non_mc and mc_defect(L, alpha, L.arity_cap):
        raise ValueError("twisting element fails the Maurer-Cartan equation "
                         "(pass allow_non_mc=True to force)")

    def rule(k, names):
        out = Vector()
        for p in range(L.arity_cap - k + 1):
            args = [alpha] * p + [Vector.basis(n) for n in names]
            out = out + L.ell(k + p, args).scale(Q(1, factorial(p)))
        return out

    return LInfAlgebra(L.basis, L._degree, rule, L.arity_cap, L.weight)


def gauge_field(L: LInfAlgebra, x: Vector, alpha: Vector) -> Vector:
    """The tangent vector field of the gauge action: -ell^alpha_1(x)."""
    for name, _ in x.items():
        if L.degree(name) != 0:
            raise ValueError("gauge parameter must have degree 0")
    for name, _ in alpha.items():
        if L.degree(name) != -1:
            raise ValueError("base point must have degree -1")
    out = Vector()
    for p in range(L.arity_cap):
        out = out + L.ell(1 + p, [alpha] * p + [x]).scale(Q(1, factorial(p)))
    return -out


class PolyCurve:
    """An element of L[t]/(t^{T+1}): Vectors indexed by the t-power."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        self.order = order
        cs = list(coeffs)[: order + 1]
        cs += [Vector()] * (order + 1 - len(cs))
        self.coeffs = cs

    @classmethod
    def constant(cls, v: Vector, order: int) -> "PolyCurve":
        return cls([v], order)

    def __eq__(self, other):
        return (isinstance(other, PolyCurve) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        order = min(self.order, other.order)
        return PolyCurve(
            [self.coeffs[i] + other.coeffs[i] for i in range(order + 1)], order
        )

    def scale(self, c):
        return PolyCurve([v.scale(c) for v in self.coeffs], self.order)

    def is_zero(self):
        return all(v.is_zero() for v in self.coeffs)

    def derivative(self) -> "PolyCurve":
        return PolyCurve(
            [self.coeffs[i + 1].scale(i + 1) for i in range(self.order)],
            self.order,
        )

    def at(self, t) -> Vector:
        t = Q(t)
        out = Vector()
        for i, v in enumerate(self.coeffs):
            out = out + v.scale(t ** i)
        return out

    def __repr__(self):
        bits = [f"t^{i}*({v!r})" for i, v in enumerate(self.coeffs) if v]
        return " + ".join(bits) if bits else "0"


def ell_curves(L: LInfAlgebra, k: int, curves, order: int) -> PolyCurve:
    """Bracket of polynomial curves, truncated mod t^{order+1}."""
    out = [Vector() for _ in range(order + 1)]
    def rec(i, picked, tdeg):
        if tdeg > order:
            return
        if i == len(curves):
            val = L.ell(k, picked)
            if val:
                out[tdeg] = out[tdeg] + val
            return
        for m in range(order - tdeg + 1):
            v = curves[i].coeffs[m] if m <= curves[i].order else Vector()
            if v:
                rec(i + 1, picked + [v], tdeg + m)
    rec(0, [], 0)
    return PolyCurve(out, order)


def mc_defect_curve(L: LInfAlgebra, curve: PolyCurve, cap: int) -> PolyCurve:
    cap = min(cap, L.arity_cap)
    out = PolyCurve([], curve.order)
    for k in range(1, cap + 1):
        out = out + ell_curves(L, k, [curve] * k, curve.order).scale(
            Q(1, factorial(k))
        )
    return out


def gauge_flow(L: LInfAlgebra, alpha0: Vector, x: Vector, T: int) -> PolyCurve:
    """The formal integral curve of alpha'(t) = -ell^{alpha(t)}_1(x) with
    alpha(0) = alpha0, computed term by term mod t^{T+1}."""
    coeffs = [alpha0]
    for m in range(T):
        partial = PolyCurve(coeffs, m)
        # velocity = -ell^{alpha(t)}_1(x); its t^m coefficient only involves
        # the already-known curve coefficients
        vel = PolyCurve([], m)
        xs = PolyCurve.constant(x, m)
        for p in range(L.arity_cap):
            vel = vel + ell_curves(L, 1 + p, [partial] * p + [xs], m).scale(
                Q(1, factorial(p))
            )
        coeffs.append(vel.coeffs[m].scale(Q(-1, m + 1)))
    return PolyCurve(coeffs, T)


class OmegaExtension:
    """An element beta = beta_m1 + beta_0 dt of L tensor polynomial forms."""

    __slots__ = ("beta_m1", "beta_0")

    def __init__(self, beta_m1: PolyCurve, beta_0: PolyCurve):
        self.beta_m1 = beta_m1
        self.beta_0 = beta_0


def quillen_from_gauge(L: LInfAlgebra, alpha0: Vector, x: Vector, T: int) -> OmegaExtension:
    """The path alpha(t) + x dt interpolating between the gauge-flow
    endpoints."""
    curve = gauge_flow(L, alpha0, x, T)
    return OmegaExtension(curve, PolyCurve.constant(x, T))


def omega_mc_check(L: LInfAlgebra, beta: OmegaExtension, cap: int, T: int):
    """The two components of the Maurer-Cartan equation for beta in the
    forms-valued algebra: the dt-free part sum (1/k!) ell_k(beta_m1^k) and
    the dt part beta_m1' + sum (1/(k-1)!) ell_k(beta_m1^{k-1}, beta_0).

    Returns the pair of defect curves; beta is Maurer-Cartan iff both are 0.
    """
    cap = min(cap, L.arity_cap)
    b1 = PolyCurve(beta.beta_m1.coeffs, T)
    b0 = PolyCurve(beta.beta_0.coeffs, T)
    free_part = mc_defect_curve(L, b1, cap)
    # the dt component pairs t^m dt with the degree-(m+1) Taylor coefficient,
    # so it is only determined mod t^T
    dt_part = PolyCurve(b1.derivative().coeffs, max(T - 1, 0))
    for k in range(1, cap + 1):
        dt_part = dt_part + ell_curves(
            L, k, [b1] * (k - 1) + [b0], max(T - 1, 0)
        ).scale(Q(1, factorial(k - 1)))
    return free_part, dt_part


def cylinder_check(L: LInfAlgebra, alpha0: Vector, alpha1: Vector,
                   xi: Vector, cap: int) -> dict:
    """Whether (alpha0, alpha1, xi) satisfy the relations of the free
    cylinder: both ends Maurer-Cartan and

        d xi = ad(alpha1) + sum_k (B_k/k!) ad^k(alpha1 - alpha0)

    with ad(y) = ell_2(y, xi).  The right-acting adjoint is the orientation
    whose exact arity-cap solutions converge to the gauge-flow endpoint as
    the cap grows (the untruncated solution of the relation is the time-1
    flow; at a finite cap the truncated-exponential endpoint leaves a
    defect that shrinks factorially with the cap, so the check reports it
    honestly instead of passing)."""
    from .core import bernoulli

    for name, _ in xi.items():
        if L.degree(name) != 0:
            raise ValueError("cylinder direction must have degree 0")
    cap = min(cap, L.arity_cap)
    rep = {
        "mc0": mc_defect(L, alpha0, cap),
        "mc1": mc_defect(L, alpha1, cap),
    }
    rhs = L.ell(2, [alpha1, xi]) if L.arity_cap >= 2 else Vector()
    ad_k = alpha1 - alpha0
    rhs = rhs + ad_k  # k = 0 term, B_0 = 1
    for k in range(1, cap + 1):
        if L.arity_cap < 2:
            break
        ad_k = L.ell(2, [ad_k, xi])
        if ad_k.is_zero():
            break
        B = bernoulli(k)
        if B:
            rhs = rhs + ad_k.scale(B / factorial(k))
    rep["cylinder"] = L.ell(1, [xi]) - rhs
    rep["pass"] = all(v.is_zero() for v in rep.values())
    return rep


# ---------------------------------------------------------------------------
# A-infinity algebras (operations m_k), for the Hom-space constructions
# ---------------------------------------------------------------------------


class AInfAlgebra:
    """A finite-basis A-infinity algebra with operation tables
    {arity: {word tuple: Vector}} (unshifted convention, |m_k| = k - 2)."""

    def __init__(self, basis, degree, tables, arity_cap):
        self.basis = list(basis)
        self._degree = dict(degree)
        self.tables = {
            k: {tuple(w): (v if isinstance(v, Vector) else Vector(v))
                for w, v in tbl.items()}
            for k, tbl in tables.items()
        }
        self.arity_cap = arity_cap
        self.arities = sorted(k for k, tbl in self.tables.items()
                              if k >= 2 and any(tbl.values()))

    def degree(self, name):
        return self._degree[name]

    def sdeg(self, name):
        # bar letters carry the suspended parity
        return self._degree[name] + 1

    def m(self, k, word) -> Vector:
        return self.tables.get(k, {}).get(tuple(word), Vector())

    def b(self, k, word) -> Vector:
        """Desuspended operation on a word of basis names (degree -1)."""
        val = self.m(k, word)
        if val.is_zero():
            return val
        e = k * (k - 1) // 2 + sum(
            (k - 1 - j) * self._degree[word[j]] for j in range(k)
        )
        return val.scale(-1 if e % 2 else 1)


def algebra_coherence_defect(A: AInfAlgebra, n: int, word) -> Vector:
    """Stasheff defect sum b_{r+1+t} (id^r (x) b_s (x) id^t) on a word,
    computed in the desuspended convention; zero iff coherent there."""
    word = tuple(word)
    total = Vector()
    for s in range(1, n + 1):
        for r in range(n - s + 1):
            t = n - s - r
            e = sum(A.sdeg(x) for x in word[:r])
            sign = -1 if e % 2 else 1
            inner = A.b(s, word[r:r + s])
            for mid, c in inner.items():
                outer_word = word[:r] + (mid,) + word[r + s:]
                total = total + A.b(r + 1 + t, outer_word).scale(c * sign)
    return total


# ---------------------------------------------------------------------------
# Convolution L-infinity structure on Hom(C, A)
# ---------------------------------------------------------------------------


def conv_linf(C, A: AInfAlgebra, arity_cap: int) -> LInfAlgebra:
    """The convolution structure on Hom(C, A) for a finite-basis
    A-infinity coalgebra C and a dg associative algebra A (tables with
    m_1 = d and m_2 = product).

    Hom basis: elementary maps (c, a) sending c to a; degree |a| - |c|.
    ell_1 is the two-sided differential; ell_n pairs the n-th cooperation
    of C with the n-fold product of A over all permutations with the chi
    sign of the permutation on the degrees |phi_i| (sign times Koszul).
    """
    if C.basis is None:
        raise ValueError("convolution requires a finite coalgebra basis")
    if any(k > 2 for k in A.arities):
        raise ValueError("convolution target must be a dg associative algebra")
    hom_basis = [(c, a) for c in C.basis for a in A.basis]
    hom_degree = {(c, a): A.degree(a) - C.degree(c) for c, a in hom_basis}

    def mu_iter(names) -> Vector:
        """Left-iterated product m_2(...m_2(m_2(a_1,a_2),a_3)...)."""
        acc = Vector.basis(names[0])
        for nm in names[1:]:
            nxt = Vector()
            for lead, c in acc.items():
                nxt = nxt + A.m(2, (lead, nm)).scale(c)
            acc = nxt
        return acc

    def rule(k, phis):
        out = {}
        degs = [hom_degree[p] for p in phis]
        if k == 1:
            (c, a), = phis
            for a2, cf in A.m(1, (a,)).items():
                out[(c, a2)] = out.get((c, a2), Q(0)) + cf
            sgn = -1 if degs[0] % 2 else 1
            for c2 in C.basis:
                cf = C.delta(1, c2).coeff((c,))
                if cf:
                    out[(c2, a)] = out.get((c2, a), Q(0)) - sgn * cf
            return Vector(out)
        for src in C.basis:
            words = C.delta(k, src)
            if words.is_zero():
                continue
            for sigma in permutations(range(k)):
                perm = [i + 1 for i in sigma]
                s_perm = chi_sign(perm, degs)
                ordered = [phis[i] for i in sigma]
                odegs = [degs[i] for i in sigma]
                for word, cf in words.items():
                    # apply phi_{sigma(1)} (x) ... (x) phi_{sigma(k)} to the
                    # word with the mechanical Koszul slot signs
                    coeff = cf * s_perm
                    values = []
                    left = 0
                    dead = False
                    for slot in range(k):
                        c_slot, a_slot = ordered[slot]
                        if word[slot] != c_slot:
                            dead = True
                            break
                        if (odegs[slot] * left) % 2:
                            coeff = -coeff
                        values.append(a_slot)
                        left += C.degree(word[slot])
                    if dead:
                        continue
                    prod = mu_iter(values)
                    for a_out, cp in prod.items():
                        key = (src, a_out)
                        out[key] = out.get(key, Q(0)) + coeff * cp
        return Vector(out)

    return LInfAlgebra(hom_basis, hom_degree, rule, arity_cap)


# ---------------------------------------------------------------------------
# The L-infinity algebra of morphism cochains Hom(s Bar(X), Y)
# ---------------------------------------------------------------------------


def bar_sdeg(X: AInfAlgebra, word) -> int:
    """Degree of a bar word (each letter carries its suspended degree)."""
    return sum(X.degree(x) + 1 for x in word)


def bar_words(X: AInfAlgebra, word_cap: int):
    """All bar words over the basis of X up to the length cap, in a
    deterministic order."""
    letters = sorted(X.basis, key=_argsort_key)
    out = []
    level = [()]
    for _ in range(word_cap):
        level = [w + (x,) for w in level for x in letters]
        out.extend(level)
    return out


def bar_codifferential(X: AInfAlgebra, word, word_cap=None) -> Vector:
    """The bar codifferential on a word: the operations of X applied to
    every contiguous block, with the Koszul sign of moving the (odd)
    operation past the letters on the left."""
    word = tuple(word)
    out = {}
    arities = [1] + list(X.arities)
    for i in range(len(word)):
        e = sum(X.sdeg(x) for x in word[:i])
        sign = -1 if e % 2 else 1
        for s in arities:
            if i + s > len(word):
                continue
            img = X.b(s, word[i:i + s])
            for mid, c in img.items():
                w = word[:i] + (mid,) + word[i + s:]
                if word_cap is None or len(w) <= word_cap:
                    out[w] = out.get(w, Q(0)) + c * sign
    return Vector(out)


def _block_splits(word, k):
    """Splittings of a word into k nonempty contiguous blocks."""
    n = len(word)
    if k > n:
        return
    for cuts in combinations(range(1, n), k - 1):
        marks = (0,) + cuts + (n,)
        yield tuple(word[marks[i]:marks[i + 1]] for i in range(k))


def lxy_build(X: AInfAlgebra, Y: AInfAlgebra, arity_cap: int,
              word_cap: int) -> LInfAlgebra:
    """The L-infinity algebra on Hom(s Bar(X), Y), truncated to bar words
    of length <= word_cap.

    Basis: elementary maps (word, y) of degree |y| - sum(|x_i| + 1);
    Maurer-Cartan elements of this algebra encode homotopy morphisms from
    X to Y (the length-n component of the word is the n-th Taylor
    coefficient of the morphism).
    """
    hom_basis = [(w, y) for w in bar_words(X, word_cap) for y in Y.basis]
    hom_degree = {
        (w, y): Y.degree(y) - bar_sdeg(X, w) for w, y in hom_basis
    }

    def d_pre_images(w):
        """Pairs (w', coeff) with the bar codifferential of w' hitting w."""
        res = []
        arities = [1] + list(X.arities)
        for i in range(len(w)):
            e = sum(X.sdeg(x) for x in w[:i])
            sign = -1 if e % 2 else 1
            for s in arities:
                if len(w) + s - 1 > word_cap:
                    continue
                for u in _words_of_length(X, s):
                    c = X.b(s, u).coeff(w[i])
                    if c:
                        res.append((w[:i] + u + w[i + 1:], c * sign))
        return res

    def rule(k, phis):
        out = {}
        degs = [hom_degree[p] for p in phis]
        if k == 1:
            (w, y), = phis
            for y2, c in Y.m(1, (y,)).items():
                out[(w, y2)] = out.get((w, y2), Q(0)) + c
            sgn = -1 if degs[0] % 2 else 1
            for w2, c in d_pre_images(w):
                out[(w2, y)] = out.get((w2, y), Q(0)) - sgn * c
            return Vector(out)
        if k not in Y.arities and k > 1:
            return Vector(out)
        # every target word long enough to split into the k source words
        for sigma in permutations(range(k)):
            perm = [i + 1 for i in sigma]
            s_perm = chi_sign(perm, degs)
            ordered = [phis[i] for i in sigma]
            odegs = [degs[i] for i in sigma]
            total_len = sum(len(p[0]) for p in ordered)
            if total_len > word_cap:
                continue
            w = tuple(x for p in ordered for x in p[0])
            # Koszul slot signs of applying phi_{sigma(j)} past the blocks
            # on its left
            coeff = s_perm
            left = 0
            for j in range(k):
                if (odegs[j] * left) % 2:
                    coeff = -coeff
                left += bar_sdeg(X, ordered[j][0])
            ys = tuple(p[1] for p in ordered)
            for y_out, c in Y.b(k, ys).items():
                key = (w, y_out)
                out[key] = out.get(key, Q(0)) + coeff * c
        return Vector(out)

    return LInfAlgebra(hom_basis, hom_degree, rule, arity_cap)


def _words_of_length(X: AInfAlgebra, s):
    letters = sorted(X.basis, key=_argsort_key)
    words = [()]
    for _ in range(s):
        words = [w + (x,) for w in words for x in letters]
    return words


def strict_morphism(X: AInfAlgebra, Y: AInfAlgebra, images: dict) -> Vector:
    """Encode a linear map X -> Y (given on basis names) as an element of
    the morphism algebra, supported on length-1 words."""
    out = {}
    for x, img in images.items():
        img = img if isinstance(img, Vector) else Vector(img)
        for y, c in img.items():
            out[((x,), y)] = out.get(((x,), y), Q(0)) + c
    return Vector(out)


# ---------------------------------------------------------------------------
# Polynomial differential forms on the line as coefficients
# ---------------------------------------------------------------------------
#
# An Omega-monomial is ("t", j) for t^j (degree 0) or ("dt", j) for t^j dt
# (degree -1).


def om_degree(om) -> int:
    return 0 if om[0] == "t" else -1


def om_mul(o1, o2):
    """Product of two monomials; None when it vanishes (dt dt = 0)."""
    k1, j1 = o1
    k2, j2 = o2
    if k1 == "dt" and k2 == "dt":
        return None
    kind = "dt" if (k1 == "dt" or k2 == "dt") else "t"
    return (kind, j1 + j2)


def om_d(om):
    """De Rham differential of a monomial: pairs (monomial, coefficient)."""
    kind, j = om
    if kind == "dt" or j == 0:
        return []
    return [(("dt", j - 1), Q(j))]


def om_at(om, t):
    """Evaluate the form part at an endpoint (the dt part evaluates to 0)."""
    kind, j = om
    if kind == "dt":
        return Q(0)
    return Q(t) ** j


def ell_omega(L: LInfAlgebra, k: int, elements) -> Vector:
    """Bracket on L tensor forms: Vectors over (basis name, monomial).

    Extended multilinearly with the Koszul sign of moving each form factor
    past the later algebra factors; arity 1 adds the de Rham term."""
    out = {}
    stack = [((), Q(1))]
    for v in elements:
        stack = [
            (picked + (term,), c * cv)
            for picked, c in stack
            for term, cv in v.items()
        ]
    for picked, c in stack:
        names = [p[0] for p in picked]
        oms = [p[1] for p in picked]
        sign = 1
        for i in range(k):
            if om_degree(oms[i]) % 2:
                e = sum(L.degree(names[j]) for j in range(i + 1, k))
                if e % 2:
                    sign = -sign
        om = oms[0]
        for o in oms[1:]:
            om = om_mul(om, o) if om is not None else None
        if om is not None:
            val = L.ell_names(k, tuple(names))
            for n2, c2 in val.items():
                key = (n2, om)
                out[key] = out.get(key, Q(0)) + c * c2 * sign
    v = Vector(out)
    if k == 1:
        extra = {}
        for (name, om), c in elements[0].items():
            s = -1 if L.degree(name) % 2 else 1
            for om2, c2 in om_d(om):
                key = (name, om2)
                extra[key] = extra.get(key, Q(0)) + c * c2 * s
        v = v + Vector(extra)
    return v


def mc_defect_omega(L: LInfAlgebra, psi: Vector, cap: int) -> Vector:
    """Maurer-Cartan defect in L tensor forms."""
    cap = min(cap, L.arity_cap)
    out = Vector()
    for k in range(1, cap + 1):
        out = out + ell_omega(L, k, [psi] * k).scale(Q(1, factorial(k)))
    return out


# ---------------------------------------------------------------------------
# Concordance versus Maurer-Cartan in forms: the defect pair
# ---------------------------------------------------------------------------


def concordance_defect_pair(X: AInfAlgebra, Y: AInfAlgebra, phi: Vector,
                            arity_cap: int, word_cap: int):
    """Two independently computed obstructions for a degree-0 map
    phi: Bar(X) -> Y tensor forms (a Vector over (word, y, monomial)):

    1. the failure of the induced coalgebra morphism to commute with the
       differentials, projected to cogenerators;
    2. the Maurer-Cartan defect of the corresponding degree -1 element of
       the morphism algebra tensored with forms.

    Both are returned over the same index set (word, y, monomial); they
    agree identically.
    """
    # ---- route 2: Maurer-Cartan in Hom(sBar X, Y) (x) forms
    L = lxy_build(X, Y, arity_cap, word_cap)
    psi = Vector({((w, y), om): c for (w, y, om), c in phi.items()})
    mc = mc_defect_omega(L, psi, arity_cap)
    defect2 = Vector({(wy[0], wy[1], om): c for (wy, om), c in mc.items()})

    # ---- route 1: the coalgebra-morphism condition on cogenerators
    table = {}
    for (w, y, om), c in phi.items():
        table.setdefault(w, {})[(y, om)] = table.setdefault(w, {}).get(
            (y, om), Q(0)) + c

    def phi_at(w):
        return table.get(w, {})

    out = {}

    def add(w, y, om, c):
        if c:
            key = (w, y, om)
            out[key] = out.get(key, Q(0)) + c

    def hdeg(w, y):
        return Y.degree(y) - bar_sdeg(X, w)

    for w in bar_words(X, word_cap):
        # (id (x) d_DR) phi, with the Koszul sign of the component degree
        for (y, om), c in phi_at(w).items():
            s = 1 if hdeg(w, y) % 2 == 0 else -1
            for om2, c2 in om_d(om):
                add(w, y, om2, c * c2 * s)
        # (d_Y (x) id) phi
        for (y, om), c in phi_at(w).items():
            for y2, c2 in Y.m(1, (y,)).items():
                add(w, y2, om, c * c2)
        # higher corestrictions of Y (x) forms applied to the splittings
        for k in Y.arities:
            if k > arity_cap:
                continue
            for blocks in _block_splits(w, k):
                for picks in _product_dicts([phi_at(b) for b in blocks]):
                    coeff = Q(1)
                    ys, oms = [], []
                    for (y, om), c in picks:
                        coeff *= c
                        ys.append(y)
                        oms.append(om)
                    hs = [hdeg(blocks[i], ys[i]) for i in range(k)]
                    # interchange of each form factor with the later
                    # components, and of each component with the blocks it
                    # passes over
                    for i in range(k):
                        if om_degree(oms[i]) % 2:
                            if sum(hs[i + 1:]) % 2:
                                coeff = -coeff
                        if hs[i] % 2:
                            if sum(bar_sdeg(X, b) for b in blocks[:i]) % 2:
                                coeff = -coeff
                    om = oms[0]
                    for o in oms[1:]:
                        om = om_mul(om, o) if om is not None else None
                    if om is None:
                        continue
                    for y_out, c2 in Y.b(k, tuple(ys)).items():
                        add(w, y_out, om, coeff * c2)
        # minus phi after the bar codifferential, with the component sign
        for w2, c in bar_codifferential(X, w, None).items():
            for (y, om), c2 in phi_at(w2).items():
                s = -1 if hdeg(w2, y) % 2 == 0 else 1
                add(w, y, om, s * c * c2)

    defect1 = Vector(out)
    return defect1, defect2


def _product_dicts(dicts):
    stack = [[]]
    for d in dicts:
        stack = [picks + [(key, c)] for picks in stack for key, c in d.items()]
    return stack
