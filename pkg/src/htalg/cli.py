"""Command-line entry point.

One binary with subcommands covering every verification and computation in
the package.  All output is deterministic JSON (stable key and term
ordering), every numeric field is an exact-rational string, and every
truncation cap is an explicit flag.  Exit codes: 0 when every reported
defect is zero, 1 when a check fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import Q, Vector, bernoulli, rat, rat_str
from .interval import C0, C01, C1, CELLS, decorate
from .retracts import (
    interval_big_basis,
    make_interval_retract,
    retract_defect,
)
from .ainf import AInfCoalgebra, coherence_defect, transfer, stabilized_transfer
from .lie import GENERATORS, d_generator, d_square_defect
from .linf import (
    AInfAlgebra,
    LInfAlgebra,
    concordance_defect_pair,
    cylinder_check,
    gauge_flow,
    mc_defect,
    mc_defect_curve,
    omega_mc_check,
    quillen_from_gauge,
)
from . import acceptance

CELL_NAMES = {C0: "0", C1: "1", C01: "01"}
NAME_CELLS = {"0": C0, "1": C1, "01": C01}

DEFAULT_ARITY = 6
DEFAULT_WEIGHT = 6
DEFAULT_TDEG = 6


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _jkey(k):
    """Render a basis key as JSON-friendly data: interval cells by their
    short names, tuples as lists, everything else as a string."""
    if isinstance(k, tuple):
        if k in CELL_NAMES:
            return CELL_NAMES[k]
        return [_jkey(x) for x in k]
    return str(k)


def vector_json(v: Vector):
    out = [{"term": _jkey(k), "coeff": rat_str(c)} for k, c in v.items()]
    out.sort(key=lambda e: json.dumps(e["term"]))
    return out


def emit(obj, args) -> None:
    if getattr(args, "pretty", False):
        text = json.dumps(obj, indent=2, sort_keys=True)
    else:
        text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    print(text)


# ---------------------------------------------------------------------------
# Input files
# ---------------------------------------------------------------------------


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _rat(x):
    try:
        return rat(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"bad rational literal {x!r}: {exc}")


def _entry_tables(data, key, arity_key="inputs"):
    """{arity: {input names tuple: {output name: coefficient}}} from the
    bracket/operation lists of an algebra file."""
    tables = {}
    for k_str, entries in (data.get(key) or {}).items():
        try:
            k = int(k_str)
        except ValueError:
            raise InputError(f"bad arity key {k_str!r}")
        tbl = tables.setdefault(k, {})
        for e in entries:
            ins = tuple(e[arity_key])
            out = tbl.setdefault(ins, {})
            out[e["output"]] = out.get(e["output"], Q(0)) + _rat(e["coeff"])
    for d in data.get("differential") or []:
        tbl = tables.setdefault(1, {})
        out = tbl.setdefault((d["input"],), {})
        out[d["output"]] = out.get(d["output"], Q(0)) + _rat(d["coeff"])
    return tables


def load_linf(path, arity_cap) -> LInfAlgebra:
    """Algebra file: {basis: [{name, degree, weight?}], differential:
    [{input, output, coeff}], brackets: {arity: [{inputs, output, coeff}]}}."""
    data = _load_json(path)
    try:
        basis = [b["name"] for b in data["basis"]]
        degree = {b["name"]: int(b["degree"]) for b in data["basis"]}
        weight = {
            b["name"]: int(b["weight"]) for b in data["basis"] if "weight" in b
        } or None
        tables = _entry_tables(data, "brackets")
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra file {path}: {exc!r}")
    return LInfAlgebra.from_tables(basis, degree, tables, arity_cap, weight=weight)


def load_ainf_algebra(path, arity_cap) -> AInfAlgebra:
    """Associative-side algebra file: same shape with `operations` instead
    of `brackets`."""
    data = _load_json(path)
    try:
        basis = [b["name"] for b in data["basis"]]
        degree = {b["name"]: int(b["degree"]) for b in data["basis"]}
        key = "operations" if "operations" in data else "brackets"
        tables = _entry_tables(data, key)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra file {path}: {exc!r}")
    return AInfAlgebra(basis, degree, tables, arity_cap)


def load_element(path) -> Vector:
    """Element file: {name: "p/q", ...}."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"element file {path} must be a JSON object")
    return Vector({k: _rat(v) for k, v in data.items()})


def load_hom_element(path) -> Vector:
    """Forms-valued Hom element: [{word: [names], output: name,
    form: {kind: "t"|"dt", power: j}, coeff: "p/q"}]."""
    data = _load_json(path)
    terms = {}
    try:
        for e in data:
            om = (e["form"]["kind"], int(e["form"]["power"]))
            if om[0] not in ("t", "dt") or om[1] < 0:
                raise InputError(f"bad form monomial {e['form']!r}")
            key = (tuple(e["word"]), e["output"], om)
            terms[key] = terms.get(key, Q(0)) + _rat(e["coeff"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed element file {path}: {exc!r}")
    return Vector(terms)


def load_coalgebra(path, arity_cap) -> AInfCoalgebra:
    """Finite coalgebra file: {basis: [{name, degree}], cooperations:
    {arity: [{input, word: [names], coeff}]}}."""
    data = _load_json(path)
    try:
        basis = [b["name"] for b in data["basis"]]
        degree = {b["name"]: int(b["degree"]) for b in data["basis"]}
        tables = {}
        for k_str, entries in (data.get("cooperations") or {}).items():
            k = int(k_str)
            tbl = tables.setdefault(k, {})
            for e in entries:
                d = tbl.setdefault(e["input"], {})
                w = tuple(e["word"])
                d[w] = d.get(w, Q(0)) + _rat(e["coeff"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed coalgebra file {path}: {exc!r}")

    def delta(k, idx):
        return Vector(tables.get(k, {}).get(idx, {}))

    arities = sorted(k for k in tables if k >= 2)
    return AInfCoalgebra(
        lambda x: degree[x], delta, arities, arity_cap, basis=basis
    )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_bernoulli(args):
    table = {str(k): rat_str(bernoulli(k)) for k in range(args.max + 1)}
    return {"bernoulli": table}, 0


def cmd_retract_check(args):
    N, M = args.level, args.max_index
    R = make_interval_retract(N)
    big = interval_big_basis(M)
    defects = []
    for kind, idx, val in R.check(big, CELLS):
        defects.append(
            {"identity": kind, "index": _jkey(idx), "defect": vector_json(val)}
        )
    for idx in big:
        val = retract_defect(N, idx)
        if val:
            defects.append(
                {
                    "identity": "homotopy",
                    "index": _jkey(idx),
                    "defect": vector_json(val),
                }
            )
    return (
        {"level": N, "max_index": M, "defects": defects},
        0 if not defects else 1,
    )


def make_interval_coalgebra(arity_cap=8):
    return acceptance.make_interval_coalgebra(arity_cap)


def transfer_json(T, max_arity):
    out = {}
    for cell in CELLS:
        per = {}
        for k in range(1, max_arity + 1):
            per[str(k)] = [
                {"word": _jkey(w), "coeff": rat_str(c)}
                for w, c in sorted(
                    T.delta(k, cell).items(), key=lambda e: repr(e[0])
                )
            ]
        out[CELL_NAMES[cell]] = per
    return out


def cmd_transfer(args):
    K = args.max_arity
    if args.stabilized:
        T, report = stabilized_transfer(
            lambda N: make_interval_coalgebra(),
            make_interval_retract,
            CELLS,
            K,
        )
        levels = report["levels"]
    else:
        N = args.level if args.level is not None else K + 1
        T = transfer(make_interval_coalgebra(), make_interval_retract(N), K)
        levels = [N]
    return (
        {
            "max_arity": K,
            "levels": levels,
            "stabilized": bool(args.stabilized),
            "cooperations": transfer_json(T, K),
        },
        0,
    )


def cmd_coherence(args):
    C = load_coalgebra(args.input, args.max_arity)
    defects = []
    for n in range(1, args.max_arity + 1):
        for idx in C.basis:
            val = coherence_defect(C, n, idx)
            if val:
                defects.append(
                    {"arity": n, "index": idx, "defect": vector_json(val)}
                )
    return (
        {"max_arity": args.max_arity, "defects": defects},
        0 if not defects else 1,
    )


def cmd_ls(args):
    W = args.max_weight
    d = {g: vector_json(d_generator(g, W)) for g in GENERATORS}
    residuals = {g: vector_json(d_square_defect(g, W)) for g in GENERATORS}
    ok = all(not d_square_defect(g, W) for g in GENERATORS)
    return (
        {"max_weight": W, "d": d, "d_square_residuals": residuals},
        0 if ok else 1,
    )


def cmd_cylinder_check(args):
    L = load_linf(args.algebra, max(args.cap, 2))
    report = cylinder_check(
        L,
        load_element(args.alpha0),
        load_element(args.alpha1),
        load_element(args.xi),
        args.cap,
    )
    out = {k: vector_json(v) for k, v in report.items() if k != "pass"}
    out["pass"] = report["pass"]
    out["cap"] = args.cap
    return out, 0 if report["pass"] else 1


def cmd_mc_check(args):
    L = load_linf(args.algebra, args.cap)
    defect = mc_defect(L, load_element(args.element), args.cap)
    return (
        {"cap": args.cap, "defect": vector_json(defect)},
        0 if not defect else 1,
    )


def cmd_gauge_flow(args):
    T = args.truncation
    L = load_linf(args.algebra, T + 1)
    curve = gauge_flow(L, load_element(args.alpha0), load_element(args.x), T)
    defect = mc_defect_curve(L, curve, L.arity_cap)
    ok = all(v.is_zero() for v in defect.coeffs)
    return (
        {
            "truncation": T,
            "curve": {f"t^{m}": vector_json(v) for m, v in enumerate(curve.coeffs)},
            "mc_defect": {
                f"t^{m}": vector_json(v)
                for m, v in enumerate(defect.coeffs)
                if v
            },
        },
        0 if ok else 1,
    )


def cmd_quillen_check(args):
    T = args.truncation
    L = load_linf(args.algebra, T + 1)
    beta = quillen_from_gauge(
        L, load_element(args.alpha0), load_element(args.x), T
    )
    free_part, dt_part = omega_mc_check(L, beta, L.arity_cap, T)
    ok = all(v.is_zero() for v in free_part.coeffs) and all(
        v.is_zero() for v in dt_part.coeffs
    )
    return (
        {
            "truncation": T,
            "element": {
                "t_part": {
                    f"t^{m}": vector_json(v)
                    for m, v in enumerate(beta.beta_m1.coeffs)
                },
                "dt_part": {
                    f"t^{m}": vector_json(v)
                    for m, v in enumerate(beta.beta_0.coeffs)
                },
            },
            "defect_free": {
                f"t^{m}": vector_json(v)
                for m, v in enumerate(free_part.coeffs)
                if v
            },
            "defect_dt": {
                f"t^{m}": vector_json(v)
                for m, v in enumerate(dt_part.coeffs)
                if v
            },
        },
        0 if ok else 1,
    )


def cmd_lxy_defect(args):
    try:
        caps = [int(c) for c in args.caps.split(",")]
        arity_cap, word_cap, tdeg_cap = caps
    except ValueError:
        raise InputError("--caps expects three integers K,W,T")
    X = load_ainf_algebra(args.x, arity_cap)
    Y = load_ainf_algebra(args.y, arity_cap)
    phi = load_hom_element(args.phi)
    for (_, _, om), _c in phi.items():
        if om[1] > tdeg_cap:
            raise InputError(f"form power {om[1]} exceeds the t-degree cap")
    d1, d2 = concordance_defect_pair(X, Y, phi, arity_cap, word_cap)
    return (
        {
            "caps": {"arity": arity_cap, "word": word_cap, "t_degree": tdeg_cap},
            "coalgebra_defect": vector_json(d1),
            "maurer_cartan_defect": vector_json(d2),
            "equal": not (d1 - d2),
        },
        0 if not d1 and not d2 else 1,
    )


def cmd_decorate(args):
    if args.cell not in NAME_CELLS:
        raise InputError(f"unknown cell {args.cell!r}; expected 0, 1 or 01")
    try:
        val = decorate(NAME_CELLS[args.cell], args.arity, args.level)
    except ValueError as exc:
        raise InputError(str(exc))
    terms = [
        {"word": _jkey(w), "coeff": rat_str(c)}
        for w, c in sorted(val.items(), key=lambda e: repr(e[0]))
    ]
    return {"cell": args.cell, "arity": args.arity, "level": args.level,
            "terms": terms}, 0


def cmd_all_acceptance(args):
    results = acceptance.run_all()
    ok = all(r["pass"] for r in results)
    return {"criteria": results, "pass": ok}, 0 if ok else 1


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="htalg",
        description="Exact-rational homotopical-algebra toolkit",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext):
        sp = sub.add_parser(name, help=helptext)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", default=True,
                        help="compact JSON output (default)")
        sp.add_argument("--pretty", action="store_true",
                        help="indented JSON output")
        return sp

    sp = add("bernoulli", cmd_bernoulli, "table of Bernoulli numbers")
    sp.add_argument("--max", type=int, default=8)

    sp = add("retract-check", cmd_retract_check,
             "verify the interval retract identities at one level")
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--max-index", type=int, required=True)

    sp = add("transfer", cmd_transfer,
             "transferred cooperations on the interval cells")
    sp.add_argument("--max-arity", type=int, default=DEFAULT_ARITY)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--level", type=int, default=None)
    g.add_argument("--stabilized", action="store_true")

    sp = add("coherence", cmd_coherence,
             "coherence defects of a user-supplied finite coalgebra")
    sp.add_argument("--max-arity", type=int, default=DEFAULT_ARITY)
    sp.add_argument("--input", required=True)

    sp = add("ls", cmd_ls,
             "cylinder Lie algebra: d on generators and d-square residuals")
    sp.add_argument("--max-weight", type=int, default=DEFAULT_WEIGHT)

    sp = add("cylinder-check", cmd_cylinder_check,
             "strict cylinder relations for a triple in a nilpotent algebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--alpha0", required=True)
    sp.add_argument("--alpha1", required=True)
    sp.add_argument("--xi", required=True)
    sp.add_argument("--cap", type=int, required=True)

    sp = add("mc-check", cmd_mc_check, "Maurer-Cartan defect of an element")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--element", required=True)
    sp.add_argument("--cap", type=int, required=True)

    sp = add("gauge-flow", cmd_gauge_flow,
             "polynomial gauge flow from a base point")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--alpha0", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--truncation", type=int, default=DEFAULT_TDEG)

    sp = add("quillen-check", cmd_quillen_check,
             "forms-valued element induced by a gauge flow, with defects")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--alpha0", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--truncation", type=int, default=DEFAULT_TDEG)

    sp = add("lxy-defect", cmd_lxy_defect,
             "concordance defect pair of a forms-valued Hom element")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--phi", required=True)
    sp.add_argument("--caps", default="4,4,4",
                    help="three integers K,W,T: arity, word length, t-degree")

    sp = add("decorate", cmd_decorate, "tensor decoration of a cell")
    sp.add_argument("--cell", required=True, choices=["0", "1", "01"])
    sp.add_argument("--arity", type=int, required=True)
    sp.add_argument("--level", type=int, required=True)

    add("all-acceptance", cmd_all_acceptance, "run the full acceptance suite")
    return p


def main(argv=None) -> int:
    # wall-time appears only inside the acceptance report; everything else
    # is deterministic so golden output files stay byte-comparable
    args = build_parser().parse_args(argv)
    try:
        report, code = args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, **report}
    emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
