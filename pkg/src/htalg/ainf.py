"""Effective A-infinity coalgebras, the coherence checker, and homotopy
transfer along a retract by planar-tree sums.

Sign convention (the "sign ledger" of this package): all coherence and
transfer computations are performed on the desuspension, where every
cooperation b_k has degree -1 and all relations hold with coefficient +1;
signs enter only through the mechanical Koszul rule for applying graded
operators to tensor words, and through the fixed suspension isomorphisms

    b_k(x)   = sum  (-1)**(sum_j (k-j)|y_j|)            c * (y_1 ... y_k)
    delta_k  = (-1)**(k(k-1)/2) * inverse suspension of b_k,

where delta_k(x) = sum c * (y_1 ... y_k) is the unshifted cooperation and
|y| is the unshifted degree.  Structure tables are stored unshifted (as in
the displayed formulas for the reference structures); every computation
shifts, works sign-free, and shifts back.  In the perturbation series for
transfer, every insertion of the contracting homotopy carries a factor -1;
with this choice the transferred structure is coherent and the inclusion
extends to an infinity-morphism with vanishing defect (both test-backed).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .core import LEAF, Q, Vector, planar_trees
from .retracts import Retract


def _shift_word_sign(word, deg_of) -> int:
    """Sign of applying the k-fold suspension-shift to a tensor word."""
    k = len(word)
    e = sum((k - 1 - j) * deg_of(word[j]) for j in range(k))
    return -1 if e % 2 else 1


def shift_cooperation(delta_val: Vector, deg_of) -> Vector:
    """Unshifted cooperation value -> desuspended value (degree -1 operator)."""
    out = {}
    for word, c in delta_val.items():
        s = _shift_word_sign(word, deg_of)
        out[word] = out.get(word, Q(0)) + c * s
    return Vector(out)


def unshift_cooperation(b_val: Vector, deg_of, k: int) -> Vector:
    """Desuspended cooperation value -> unshifted value."""
    out = {}
    glob = -1 if (k * (k - 1) // 2) % 2 else 1
    for word, c in b_val.items():
        e = sum((k - 1 - j) * (deg_of(word[j]) - 1) for j in range(k))
        s = glob * (-1 if e % 2 else 1)
        out[word] = out.get(word, Q(0)) + c * s
    return Vector(out)


class AInfCoalgebra:
    """An effective A-infinity coalgebra.

    `delta(k, idx)` returns the k-th cooperation on a basis index as a Vector
    over k-fold tensor words (unshifted convention, |delta_k| = k - 2).
    `arities` lists the k >= 2 for which delta_k may be nonzero.
    """

    def __init__(self, degree: Callable, delta: Callable, arities: Iterable[int],
                 arity_cap: int, basis=None):
        self.degree = degree
        self._delta = delta
        self.arities = sorted({k for k in arities if k >= 2})
        self.arity_cap = arity_cap
        self.basis = basis
        self._b_cache = {}

    def delta(self, k: int, idx) -> Vector:
        if k > self.arity_cap:
            raise ValueError(f"arity {k} exceeds cap {self.arity_cap}")
        return self._delta(k, idx)

    def sdeg(self, idx) -> int:
        return self.degree(idx) - 1

    def b(self, k: int, idx) -> Vector:
        """Desuspended cooperation on a basis index (Vector over k-words)."""
        key = (k, idx)
        if key not in self._b_cache:
            self._b_cache[key] = shift_cooperation(self.delta(k, idx), self.degree)
        return self._b_cache[key]

    def b_apply(self, k: int, v: Vector) -> Vector:
        out = Vector()
        for idx, c in v.items():
            out = out + self.b(k, idx).scale(c)
        return out


def _apply_op_at(word_vec: Vector, slot: int, op: Callable, op_odd: bool,
                 sdeg: Callable) -> Vector:
    """Apply an index->Vector-over-words operator at one slot of each word,
    with the Koszul sign of moving an odd operator past the earlier factors."""
    out = {}
    for word, c in word_vec.items():
        sign = 1
        if op_odd:
            e = sum(sdeg(word[j]) for j in range(slot))
            sign = -1 if e % 2 else 1
        img = op(word[slot])
        for sub, c2 in img.items():
            w = word[:slot] + sub + word[slot + 1:]
            out[w] = out.get(w, Q(0)) + c * c2 * sign
    return Vector(out)


def _apply_index_map(word_vec: Vector, fn: Callable) -> Vector:
    """Apply a degree-0 index->Vector map to every slot of every word."""
    out = {}
    for word, c in word_vec.items():
        expansions = [((), c)]
        for idx in word:
            img = fn(idx)
            if img.is_zero():
                expansions = []
                break
            expansions = [
                (w + (j,), cc * c2)
                for (w, cc) in expansions
                for j, c2 in img.items()
            ]
        for w, cc in expansions:
            out[w] = out.get(w, Q(0)) + cc
    return Vector(out)


def coherence_defect(C: AInfCoalgebra, n: int, idx) -> Vector:
    """Stasheff coherence defect at arity n on a basis index.

    Computed in the desuspended convention, where the defect is the plain sum
    over r + s + t = n of (id^r (x) b_s (x) id^t) b_{r+1+t}; zero iff the
    structure is coherent at this arity on this element.  Returned as a
    Vector over n-fold tensor words (desuspended convention).
    """
    if n > C.arity_cap:
        raise ValueError(f"arity {n} exceeds cap {C.arity_cap}")
    total = Vector()
    for m in range(1, n + 1):          # inner word length before the split
        s = n - m + 1                   # arity of the inserted cooperation
        if s >= 2 and s not in C.arities:
            continue
        inner = C.b(m, idx)
        if inner.is_zero():
            continue
        for r in range(m):
            total = total + _apply_op_at(
                inner, r, lambda j: C.b(s, j), True, C.sdeg
            )
    return total


def dg_coalgebra(degree, d_index, coproduct_index, arity_cap: int) -> AInfCoalgebra:
    """View a dg coalgebra (differential + binary coproduct, both given per
    basis index) as an A-infinity coalgebra with delta_k = 0 for k >= 3."""

    def delta(k, idx):
        if k == 1:
            return Vector({(j,): c for j, c in d_index(idx).items()})
        if k == 2:
            return coproduct_index(idx)
        return Vector()

    return AInfCoalgebra(degree, delta, [2], arity_cap)


# ---------------------------------------------------------------------------
# Homotopy transfer
# ---------------------------------------------------------------------------


class TransferredCoalgebra(AInfCoalgebra):
    """A-infinity coalgebra on the small side of a retract, with the
    structure obtained by planar-tree transfer (cached per basis index)."""

    def __init__(self, big: AInfCoalgebra, retract: Retract, max_arity: int):
        self.big = big
        self.retract = retract
        self._cache = {}
        self._tree_cache = {}
        self._proj_cache = {}
        super().__init__(
            degree=retract.small_degree,
            delta=self._delta_transferred,
            arities=range(2, max_arity + 1),
            arity_cap=max_arity,
        )

    # -- desuspended evaluation ------------------------------------------

    def _incl(self, idx) -> Vector:
        return self.retract.incl(idx)

    def _proj(self, idx) -> Vector:
        if idx not in self._proj_cache:
            self._proj_cache[idx] = self.retract.proj(idx)
        return self._proj_cache[idx]

    def _H(self, idx) -> Vector:
        # each homotopy insertion in the perturbation series carries -1
        return self.retract.homotopy(idx).scale(-1)

    def _tree_eval_idx(self, tree, idx) -> Vector:
        key = (tree, idx)
        if key not in self._tree_cache:
            self._tree_cache[key] = self._tree_eval(tree, Vector.basis(idx))
        return self._tree_cache[key]

    def _tree_eval(self, tree, v: Vector) -> Vector:
        """F_T(v) for v a Vector over single big indices: the cooperation of
        the tree with the homotopy on every internal edge (desuspended,
        coefficient +1)."""
        big = self.big
        j = len(tree)
        w = big.b_apply(j, v)
        if w.is_zero():
            return w
        # each non-leaf slot operator is (F_sub . H), a degree-0 composite,
        # so slots expand without Koszul signs
        out = {}
        for word, c in w.items():
            parts = []
            dead = False
            for m, sub in enumerate(tree):
                if sub == LEAF:
                    # every leaf of the full tree is projected at the end,
                    # so indices outside the projection's support die there
                    # and can be pruned now
                    if self._proj(word[m]).is_zero():
                        dead = True
                        break
                    parts.append(Vector({(word[m],): Q(1)}))
                else:
                    hv = self._H(word[m])
                    sv = Vector()
                    for jdx, cj in hv.items():
                        sv = sv + self._tree_eval_idx(sub, jdx).scale(cj)
                    if sv.is_zero():
                        dead = True
                        break
                    parts.append(sv)
            if dead:
                continue
            expansions = [((), c)]
            for part in parts:
                expansions = [
                    (w0 + w1, c0 * c1)
                    for (w0, c0) in expansions
                    for w1, c1 in part.items()
                ]
            for w0, c0 in expansions:
                out[w0] = out.get(w0, Q(0)) + c0
        return Vector(out)

    def b(self, k: int, idx) -> Vector:
        key = (k, idx)
        if key in self._cache:
            return self._cache[key]
        if k > self.arity_cap:
            raise ValueError(f"arity {k} exceeds cap {self.arity_cap}")
        v = self._incl(idx)
        if k == 1:
            res = _apply_index_map(self.big.b_apply(1, v), self._proj)
        else:
            res = Vector()
            for tree in planar_trees(k, self.big.arities):
                contrib = self._tree_eval(tree, v)
                if contrib:
                    res = res + _apply_index_map(contrib, self._proj)
        self._cache[key] = res
        return res

    def _delta_transferred(self, k: int, idx) -> Vector:
        return unshift_cooperation(self.b(k, idx), self.degree, k)


def transfer(C: AInfCoalgebra, R: Retract, max_arity: int) -> TransferredCoalgebra:
    """Transfer an A-infinity coalgebra structure along a retract."""
    return TransferredCoalgebra(C, R, max_arity)


# ---------------------------------------------------------------------------
# The infinity-morphism extending the inclusion
# ---------------------------------------------------------------------------


def _perturbation(C: AInfCoalgebra, word_vec: Vector, max_len: int) -> Vector:
    """Derivation extension of the higher cooperations on tensor words,
    truncated to words of length <= max_len."""
    out = {}
    for word, c in word_vec.items():
        for slot in range(len(word)):
            for j in C.arities:
                if len(word) + j - 1 > max_len:
                    continue
                img = C.b(j, word[slot])
                if img.is_zero():
                    continue
                e = sum(C.sdeg(word[m]) for m in range(slot))
                sign = -1 if e % 2 else 1
                for sub, c2 in img.items():
                    w = word[:slot] + sub + word[slot + 1:]
                    out[w] = out.get(w, Q(0)) + c * c2 * sign
    return Vector(out)


def _tensor_trick_homotopy(C: AInfCoalgebra, R: Retract, word_vec: Vector) -> Vector:
    """Word-complex contracting homotopy: (ip)^(m-1) (x) H (x) id^(r-m)."""
    out = {}
    for word, c in word_vec.items():
        for m in range(len(word)):
            e = sum(C.sdeg(word[l]) for l in range(m))
            sign = -1 if e % 2 else 1
            hv = R.homotopy(word[m])
            if hv.is_zero():
                continue
            prefix = [((), c * sign)]
            for l in range(m):
                iv = Vector()
                for j, cj in R.proj(word[l]).items():
                    iv = iv + R.incl(j).scale(cj)
                prefix = [
                    (w + (jj,), cc * c2)
                    for (w, cc) in prefix
                    for jj, c2 in iv.items()
                ]
            for w, cc in prefix:
                for j, c2 in hv.items():
                    key = w + (j,) + word[m + 1:]
                    out[key] = out.get(key, Q(0)) + cc * c2
    return Vector(out)


def transfer_i_infinity(C: AInfCoalgebra, R: Retract, max_arity: int):
    """Components f_k (small -> k-fold tensors on big, desuspended) of the
    infinity-morphism extending the inclusion, via the perturbation series
    sum_m (H_tensor . perturbation)^m applied to the inclusion."""

    cache = {}

    def components(idx) -> dict:
        if idx in cache:
            return cache[idx]
        comp = {1: Vector({(j,): c for j, c in R.incl(idx).items()})}
        w = comp[1]
        for _ in range(max_arity - 1):
            # perturbation series: each homotopy application carries -1
            w = _tensor_trick_homotopy(C, R, _perturbation(C, w, max_arity)).scale(-1)
            if w.is_zero():
                break
            for word, c in w.items():
                k = len(word)
                comp[k] = comp.get(k, Vector()) + Vector({word: c})
        cache[idx] = comp
        return comp

    def f(k: int, idx) -> Vector:
        return components(idx).get(k, Vector())

    return f


def i_infinity_defect(C: AInfCoalgebra, small: TransferredCoalgebra, f, n: int, idx) -> Vector:
    """Defect of the infinity-morphism relation at arity n on a small basis
    index: (tensor products of f's after the transferred cooperations) minus
    (big cooperations applied inside f); zero when f intertwines the two
    structures."""
    lhs = Vector()
    for m in range(1, n + 1):
        inner = small.b(m, idx)
        if inner.is_zero():
            continue
        for comp in _compositions_of(n, m):
            for word, c in inner.items():
                expansions = [((), c)]
                for slot, size in enumerate(comp):
                    img = f(size, word[slot])
                    if img.is_zero():
                        expansions = []
                        break
                    expansions = [
                        (w0 + w1, c0 * c1)
                        for (w0, c0) in expansions
                        for w1, c1 in img.items()
                    ]
                for w0, c0 in expansions:
                    lhs = lhs + Vector({w0: c0})
    rhs = Vector()
    for m in range(1, n + 1):
        s = n - m + 1
        if s >= 2 and s not in C.arities:
            continue
        fm = f(m, idx)
        if fm.is_zero():
            continue
        for r in range(m):
            rhs = rhs + _apply_op_at(fm, r, lambda j: C.b(s, j), True, C.sdeg)
    return lhs - rhs


def _compositions_of(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions_of(n - first, k - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Stabilisation over the retract family
# ---------------------------------------------------------------------------


def stabilized_transfer(make_big, make_retract, small_basis, max_arity: int,
                        levels=None):
    """Transfer at several levels and assert the results agree.

    `make_big(N)` and `make_retract(N)` produce the level-N data; the
    transferred cooperations are compared on `small_basis` for arities up to
    `max_arity`.  Returns (reference transferred coalgebra, report dict).
    """
    if levels is None:
        levels = [max_arity + 1 + s for s in range(4)]
    results = []
    for N in levels:
        T = transfer(make_big(N), make_retract(N), max_arity)
        table = {
            (k, idx): T.delta(k, idx)
            for k in range(1, max_arity + 1)
            for idx in small_basis
        }
        results.append((N, T, table))
    ref_N, ref_T, ref_table = results[0]
    report = {"levels": list(levels), "agree": True, "disagreements": []}
    for N, _, table in results[1:]:
        for key, val in ref_table.items():
            if table[key] != val:
                report["agree"] = False
                report["disagreements"].append((N, key))
    if not report["agree"]:
        raise AssertionError(
            f"transferred structure depends on the level: {report['disagreements']}"
        )
    return ref_T, report
