"""The acceptance suite: nine end-to-end criteria covering every module,
each returning a pass/fail verdict with a short diagnostic.

Shared between the test suite and the command-line tool so that both
report the same verdicts.
"""

from __future__ import annotations

import random
import time
from math import comb, factorial

from .core import Q, Vector, bernoulli, binomial_identity_check
from .interval import (
    ALPHA,
    BETA,
    C0,
    C01,
    C1,
    CELLS,
    decorate,
    dual_coproduct_index,
    dual_d_index,
    omega_dual_degree,
)
from .retracts import (
    Retract,
    convergence_check,
    interval_big_basis,
    make_interval_retract,
    retract_defect,
)
from .ainf import (
    AInfCoalgebra,
    coherence_defect,
    dg_coalgebra,
    stabilized_transfer,
    transfer,
)
from .lie import (
    d_generator,
    bracket,
    d_square_defect,
    gen,
    ue_expand_dz,
    uvw_coalgebra,
)
from .linf import (
    AInfAlgebra,
    LInfAlgebra,
    bar_sdeg,
    bar_words,
    concordance_defect_pair,
    conv_linf,
    cylinder_check,
    gauge_flow,
    jacobi_defect,
    lxy_build,
    mc_defect,
    mc_defect_curve,
    om_degree,
    omega_mc_check,
    quillen_from_gauge,
    strict_morphism,
    twist,
)

# The sign dictionary identifying the transferred structure on the interval
# cells with the three-element coalgebra from the cylinder: u and v are the
# two endpoint cells, w is the connecting cell, and every identification
# carries a global -1.
TRANSFER_DICTIONARY = {"u": C1, "v": C0, "w": C01}
TRANSFER_SIGNS = {"u": -1, "v": -1, "w": -1}


def make_interval_coalgebra(arity_cap=8) -> AInfCoalgebra:
    """The dual de Rham coalgebra of the interval as an A-infinity
    coalgebra with vanishing higher cooperations."""
    return dg_coalgebra(
        omega_dual_degree, dual_d_index, dual_coproduct_index, arity_cap
    )


def transferred_as_uvw(T, arity: int, name: str) -> Vector:
    """Transferred cooperation on the cell matching `name`, rewritten over
    the u/v/w alphabet through the sign dictionary."""
    inv = {cell: nm for nm, cell in TRANSFER_DICTIONARY.items()}
    out = {}
    val = T.delta(arity, TRANSFER_DICTIONARY[name])
    for word, c in val.items():
        nm_word = tuple(inv[cell] for cell in word)
        s = TRANSFER_SIGNS[name]
        for cell in word:
            s *= TRANSFER_SIGNS[inv[cell]]
        out[nm_word] = out.get(nm_word, Q(0)) + c * s
    return Vector(out)


# ---------------------------------------------------------------------------
# Sample algebras used by several criteria
# ---------------------------------------------------------------------------


def orbit_model(arity_cap=8) -> LInfAlgebra:
    """Two generators: one Maurer-Cartan direction scaled by the bracket
    with one gauge direction; every nonzero bracket is ell_2(a, x0) = -a."""
    return LInfAlgebra.from_tables(
        ["a", "x0"],
        {"a": -1, "x0": 0},
        {2: {("a", "x0"): {"a": Q(-1)}}},
        arity_cap,
    )


def abelian_model(arity_cap=8) -> LInfAlgebra:
    """A two-step abelian dg algebra: d m = c, no higher brackets."""
    return LInfAlgebra.from_tables(
        ["c", "m", "x"],
        {"c": -2, "m": -1, "x": 0},
        {1: {("m",): {"c": Q(1)}}},
        arity_cap,
    )


def dual_numbers(arity_cap=4) -> AInfAlgebra:
    """The square-zero extension on one degree-0 generator."""
    basis = ["1", "e"]
    deg = {"1": 0, "e": 0}
    m2 = {
        ("1", "1"): {"1": Q(1)},
        ("1", "e"): {"e": Q(1)},
        ("e", "1"): {"e": Q(1)},
    }
    return AInfAlgebra(basis, deg, {2: m2}, arity_cap)


def small_dga(arity_cap=4) -> AInfAlgebra:
    """Unit, one degree-1 generator with d x = y, products through the
    unit only."""
    basis = ["one", "x", "y"]
    deg = {"one": 0, "x": 1, "y": 0}
    d = {("x",): {"y": Q(1)}}
    m2 = {
        ("one", "one"): {"one": Q(1)},
        ("one", "x"): {"x": Q(1)},
        ("x", "one"): {"x": Q(1)},
        ("one", "y"): {"y": Q(1)},
        ("y", "one"): {"y": Q(1)},
    }
    return AInfAlgebra(basis, deg, {1: d, 2: m2}, arity_cap)


# ---------------------------------------------------------------------------
# The nine criteria
# ---------------------------------------------------------------------------


def criterion_1_retract():
    """Retract identities at every level 2..12 on indices up to 2N."""
    for N in range(2, 13):
        R = make_interval_retract(N)
        big = interval_big_basis(2 * N)
        bad = R.check(big, CELLS)
        if bad:
            return False, f"level {N}: {len(bad)} identity defects"
        for idx in big:
            if retract_defect(N, idx):
                return False, f"level {N}: homotopy defect at {idx}"
        for s in (1, 2, 3):
            for idx in list(CELLS) + big:
                if not convergence_check(N, s, idx):
                    return False, f"level {N}, s={s}: convergence fails at {idx}"
    return True, "levels 2..12, indices <= 2N, convergence s in {1,2,3}"


def _stabilized(max_arity=6):
    return stabilized_transfer(
        lambda N: make_interval_coalgebra(),
        make_interval_retract,
        CELLS,
        max_arity,
    )


def criterion_2_transfer():
    """Stabilized transfer reproduces the Bernoulli-coefficient coalgebra
    exactly under the sign dictionary."""
    T, _ = _stabilized(6)
    U = uvw_coalgebra(6)
    # signed comparison, all arities, all three elements
    for k in range(1, 7):
        for name in ("u", "v", "w"):
            if transferred_as_uvw(T, k, name) != U.delta(k, name):
                return False, f"dictionary mismatch at arity {k} on {name}"
    # independent magnitude check on the connecting cell
    for k in range(3, 7):
        val = transferred_as_uvw(T, k, "w")
        B = abs(bernoulli(k - 1))
        if B == 0:
            if not val.is_zero():
                return False, f"delta_{k}(w) should vanish (odd Bernoulli)"
            continue
        for word, c in val.items():
            p = 0
            while p < len(word) and word[p] == "w":
                p += 1
            if p >= len(word) or word[p] not in ("u", "v"):
                return False, f"unexpected word {word} at arity {k}"
            q = len(word) - 1 - p
            if abs(c) != B / (factorial(p) * factorial(q)):
                return False, f"coefficient {c} at {word}, arity {k}"
    d1 = T.delta(1, C01)
    if d1 != Vector({(C1,): Q(1), (C0,): Q(-1)}) and d1 != Vector(
        {(C1,): Q(-1), (C0,): Q(1)}
    ):
        return False, "delta_1 of the connecting cell is not +-(1 - 0)"
    return True, "arities 1..6 match the Bernoulli coalgebra exactly"


def criterion_3_stabilization():
    """Transferred cooperations are level-independent in the stable range
    N = k+1 .. k+4 for every arity k <= 6."""
    for k in range(1, 7):
        ref = None
        for N in range(k + 1, k + 5):
            T = transfer(make_interval_coalgebra(), make_interval_retract(N), k)
            table = {cell: T.delta(k, cell) for cell in CELLS}
            if ref is None:
                ref = (N, table)
            elif table != ref[1]:
                return False, f"arity {k}: level {N} differs from level {ref[0]}"
    return True, "delta_k identical across levels k+1..k+4 for k <= 6"


def criterion_4_coherence():
    """Both the transferred structure and the Bernoulli coalgebra satisfy
    the Stasheff coherence relations through arity 6."""
    T, _ = _stabilized(6)
    U = uvw_coalgebra(6)
    for n in range(1, 7):
        for cell in CELLS:
            if coherence_defect(T, n, cell):
                return False, f"transferred defect at arity {n}, {cell}"
        for name in ("u", "v", "w"):
            if coherence_defect(U, n, name):
                return False, f"uvw defect at arity {n}, {name}"
    return True, "coherence defects vanish through arity 6 on both sides"


def criterion_5_cylinder_lie():
    """The free cylinder Lie algebra: square-zero differential at weight 6,
    the endpoint Maurer-Cartan identity, and the enveloping expansion
    magnitudes matching the coalgebra table."""
    for x in ("a", "b", "z"):
        if d_square_defect(x, 6):
            return False, f"d^2 != 0 on {x} at weight 6"
    a = gen("a")
    if d_generator("a", 6) + bracket(a, a).scale(Q(1, 2)):
        return False, "endpoint Maurer-Cartan identity fails on a"
    dz = ue_expand_dz(6)
    U = uvw_coalgebra(6)
    # |coefficient of z^p y z^q| must equal |coefficient of w^p m w^q| in
    # delta_{p+q+1}(w), with y = b matching the end m = u and y = a the end
    # m = v
    for k in range(0, 6):
        val = U.delta(k + 1, "w")
        for y, mid in (("b", "u"), ("a", "v")):
            for p in range(k + 1):
                q = k - p
                word = ("z",) * p + (y,) + ("z",) * q
                uword = ("w",) * p + (mid,) + ("w",) * q
                if abs(dz.coeff(word)) != abs(val.coeff(uword)):
                    return False, f"magnitude mismatch at {word}"
    return True, "d^2 = 0, endpoint MC identity, expansion magnitudes match"


def criterion_6_gauge_quillen():
    """Gauge flows stay Maurer-Cartan, the induced forms-valued element is
    Maurer-Cartan, and the evaluations return the endpoints."""
    T = 6
    cases = [
        (orbit_model(), Vector.basis("a"), Vector.basis("x0")),
        (abelian_model(), Vector(), Vector.basis("x")),
    ]
    for L, alpha0, x in cases:
        if mc_defect(L, alpha0, L.arity_cap):
            return False, "sample base point is not Maurer-Cartan"
        curve = gauge_flow(L, alpha0, x, T)
        if not all(v.is_zero() for v in mc_defect_curve(L, curve, L.arity_cap).coeffs):
            return False, "gauge flow leaves the Maurer-Cartan locus"
        beta = quillen_from_gauge(L, alpha0, x, T)
        free_part, dt_part = omega_mc_check(L, beta, L.arity_cap, T)
        if not all(v.is_zero() for v in free_part.coeffs):
            return False, "forms-valued element: dt-free defect"
        if not all(v.is_zero() for v in dt_part.coeffs):
            return False, "forms-valued element: dt defect"
        if beta.beta_m1.at(0) != alpha0:
            return False, "evaluation at 0 is not the base point"
        if beta.beta_m1.at(1) != curve.at(1):
            return False, "evaluation at 1 is not the flow endpoint"
    # the flow of the orbit model is the truncated exponential
    L, alpha0, x = cases[0]
    curve = gauge_flow(L, alpha0, x, T)
    for m in range(T + 1):
        if curve.coeffs[m].coeff("a") != Q(1, factorial(m)):
            return False, "orbit flow is not the truncated exponential"
    # the cylinder relation: exact solution at the cap, and the truncated
    # exponential endpoint leaving a factorially small honest defect
    K = 6
    S = sum(bernoulli(k) * Q((-1) ** k, factorial(k)) for k in range(K + 1))
    lam = S / (S - 1)
    rep = cylinder_check(
        L, Vector.basis("a"), Vector.basis("a").scale(lam), Vector.basis("x0"), K
    )
    if not rep["pass"]:
        return False, "exact cap solution fails the cylinder relation"
    eK = sum(Q(1, factorial(k)) for k in range(K + 1))
    repE = cylinder_check(
        L, Vector.basis("a"), Vector.basis("a").scale(eK), Vector.basis("x0"), K
    )
    if repE["pass"]:
        return False, "truncated exponential should leave a truncation defect"
    return True, "flows MC mod t^7, forms-valued MC, endpoints and cylinder OK"


def criterion_7_concordance(trials=100, seed=20260824):
    """The coalgebra-morphism defect and the Maurer-Cartan defect agree
    identically on randomized degree-0 maps."""
    A = dual_numbers()
    cap_arity, cap_word = 4, 4
    words = bar_words(A, cap_word)
    oms = [("t", j) for j in range(5)] + [("dt", j) for j in range(4)]
    rng = random.Random(seed)
    done = 0
    while done < trials:
        terms = {}
        for _ in range(rng.randint(2, 8)):
            w = rng.choice(words)
            y = rng.choice(A.basis)
            om = rng.choice(oms)
            terms[(w, y, om)] = terms.get((w, y, om), Q(0)) + Q(
                rng.randint(-3, 3)
            )
        terms = {
            k: c
            for k, c in terms.items()
            if c and A.degree(k[1]) - bar_sdeg(A, k[0]) + om_degree(k[2]) == -1
        }
        if not terms:
            continue
        done += 1
        d1, d2 = concordance_defect_pair(A, A, Vector(terms), cap_arity, cap_word)
        if d1 - d2:
            return False, f"routes disagree on sample {done}"
    ident = Vector(
        {((x,), x, ("t", 0)): Q(1) for x in A.basis}
    )
    d1, d2 = concordance_defect_pair(A, A, ident, cap_arity, cap_word)
    if d1 or d2:
        return False, "strict identity morphism has a nonzero defect"
    return True, f"routes agree on {done} randomized maps; strict map gives (0,0)"


def criterion_8_decoration():
    """Cell decorations match the symmetrized one-insertion formula and the
    binomial identities hold."""
    for n in range(1, 7):
        for N in (n + 1, n + 2):
            exp = {}
            for i in range(n):
                for j in range(n):
                    rest = n - 1
                    if j > rest:
                        continue
                    weight = Q(1, n) / comb(rest, j)
                    for word in _zero_one_words(rest, j):
                        full = word[:i] + (C01,) + word[i:]
                        exp[full] = exp.get(full, Q(0)) + weight
            if decorate(C01, n, N) != Vector(exp):
                return False, f"connecting-cell decoration differs at n={n}, N={N}"
            if decorate(C0, n, N) != Vector({(C0,) * n: Q(1)}):
                return False, f"left-end decoration differs at n={n}"
            if decorate(C1, n, N) != Vector({(C1,) * n: Q(1)}):
                return False, f"right-end decoration differs at n={n}"
    for n in range(1, 13):
        if not binomial_identity_check(n):
            return False, f"binomial identity fails at n={n}"
    return True, "decorations n <= 6 and binomial identities n <= 12"


def _zero_one_words(length, ones):
    """All words with the given number of right-end cells, rest left-end."""
    from itertools import combinations

    for pos in combinations(range(length), ones):
        yield tuple(C1 if i in pos else C0 for i in range(length))


def criterion_9_convolution(trials=100, seed=20260824):
    """Hom-space structures satisfy the generalized Jacobi identities, and
    twisting by verified Maurer-Cartan elements preserves them."""
    rng = random.Random(seed)
    structures = [
        ("conv uvw x dual numbers", conv_linf(uvw_coalgebra(4), dual_numbers(), 4)),
        ("conv uvw x dga", conv_linf(uvw_coalgebra(4), small_dga(), 4)),
        ("hom dual numbers", lxy_build(dual_numbers(), dual_numbers(), 4, 3)),
        ("hom dga", lxy_build(small_dga(), small_dga(), 4, 2)),
    ]
    for label, L in structures:
        for t in range(trials):
            n = rng.choice([2, 3, 4])
            tup = tuple(rng.choice(L.basis) for _ in range(n))
            if jacobi_defect(L, n, tup):
                return False, f"{label}: Jacobi fails on {tup}"
    # twisting: a verified MC element of each flavour
    conv = structures[0][1]
    alpha_conv = Vector({("w", "1"): Q(2), ("w", "e"): Q(-3)})
    hom = structures[2][1]
    A = dual_numbers()
    alpha_hom = strict_morphism(
        A, A, {x: Vector.basis(x) for x in A.basis}
    )
    for label, L, alpha in (
        ("conv", conv, alpha_conv),
        ("hom", hom, alpha_hom),
    ):
        if mc_defect(L, alpha, 4):
            return False, f"{label}: twisting element is not Maurer-Cartan"
        Lt = twist(L, alpha)
        for t in range(trials // 2):
            n = rng.choice([2, 3])
            tup = tuple(rng.choice(L.basis) for _ in range(n))
            if jacobi_defect(Lt, n, tup):
                return False, f"{label}: twisted Jacobi fails on {tup}"
        for nm in L.basis:
            v = Lt.ell(1, [Lt.ell(1, [Vector.basis(nm)])])
            if v:
                return False, f"{label}: twisted differential does not square to zero"
    return True, f"Jacobi on {trials} tuples x 4 structures; twists preserved"


CRITERIA = [
    ("retract identities", criterion_1_retract),
    ("bernoulli transfer", criterion_2_transfer),
    ("stabilization", criterion_3_stabilization),
    ("coherence", criterion_4_coherence),
    ("cylinder lie algebra", criterion_5_cylinder_lie),
    ("gauge and forms-valued homotopy", criterion_6_gauge_quillen),
    ("concordance equals maurer-cartan", criterion_7_concordance),
    ("decoration combinatorics", criterion_8_decoration),
    ("convolution structures", criterion_9_convolution),
]


def run_all():
    """Run every criterion; returns a list of result dicts."""
    results = []
    for name, fn in CRITERIA:
        t0 = time.time()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"exception: {exc!r}"
        results.append(
            {
                "name": name,
                "pass": bool(ok),
                "detail": detail,
                "seconds": round(time.time() - t0, 2),
            }
        )
    return results
