"""Command line front end.  Every command prints one JSON report to stdout.

Exit codes: 0 success, 1 mathematical failure (violation, obstruction, mismatch),
2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import fixtures
from .algebra import NotAMorphismError, StructuralError, ValidationReport, validate_hom_algebra, yau_twist
from .complex import (CochainPair, Complex, InvalidAlgebraError, build_total_differential, classical_subcomplex_dim,
                      cochain_dim)
from .deformation import (DeformationError, check_deformation, check_hom_poisson, extend_to_order,
                          infinitesimal_class, normalize_leading_term, obstruction, poisson_from_deformation)
from .gs import alpha_equals_beta_subcomplex, bicomplex_check, cell_dim, reduced_dim, validate_hom_bialgebra
from .io import (InputError, algebra_from_data, algebra_to_data, bialgebra_from_data, cochain_to_data,
                 deformation_from_data, deformation_to_data, dump_entries, dumps, inputs_hash, is_bialgebra_data,
                 map_from_data, read_file)
from .linalg import SparseMatrix
from .linfty import differential_via_brackets, mc_residual


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


def _violations(rep: ValidationReport) -> List[Dict[str, Any]]:
    return [{"axiom": v.axiom, "witness": list(v.witness), "defect": [[k, c] for k, c in v.defect]}
            for v in rep.violations]


def _report(command: str, blobs: Sequence[bytes], results: Dict[str, Any]) -> Dict[str, Any]:
    return {"command": command, "inputs_hash": inputs_hash(blobs), "results": results}


def _dims_csv(rows: List[Dict[str, Any]], fields: Sequence[str]) -> str:
    buf = _stdio.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


# -- commands -----------------------------------------------------------------------------


def cmd_validate(args) -> tuple:
    data, raw = read_file(args.file)
    if is_bialgebra_data(data):
        B = bialgebra_from_data(data)
        rep = validate_hom_bialgebra(B)
        kind = "hom-bialgebra"
    else:
        rep = validate_hom_algebra(algebra_from_data(data))
        kind = "hom-algebra"
    res = {"kind": kind, "valid": rep.ok, "violations": _violations(rep)}
    return _report("validate", [raw], res), 0 if rep.ok else 1, None


def cmd_cohomology(args) -> tuple:
    data, raw = read_file(args.file)
    A = algebra_from_data(data)
    rep = validate_hom_algebra(A)
    if not rep.ok and not args.force:
        res = {"valid": False, "violations": _violations(rep), "dims": None}
        return _report("cohomology", [raw], res), 1, None
    C = Complex(A, force=args.force)
    K = args.max_degree
    rows = []
    for n in range(1, K + 1):
        row: Dict[str, Any] = {"degree": n, "cochain_dim": cochain_dim(A.dim, n), "dim": C.cohomology_dim(n)}
        if args.classical:
            row["classical_dim"] = classical_subcomplex_dim(A, n)
        if args.cocycles:
            row["representatives"] = [cochain_to_data(c) for c in C.cohomology_basis(n)]
        rows.append(row)
    res = {"valid": rep.ok, "forced": bool(args.force and not rep.ok), "degrees": rows,
           "dims": [r["dim"] for r in rows]}
    table = None
    if args.csv:
        fields = ["degree", "cochain_dim", "dim"] + (["classical_dim"] if args.classical else [])
        table = _dims_csv(rows, fields)
    return _report("cohomology", [raw], res), 0, table


def cmd_yau_twist(args) -> tuple:
    data, raw = read_file(args.file)
    gdata, graw = read_file(args.gamma)
    A = algebra_from_data(data)
    g = map_from_data(gdata, A.dim)
    try:
        T = yau_twist(A, g)
    except NotAMorphismError as exc:
        res = {"morphism": False, "message": str(exc), "witness": list(exc.witness) if exc.witness else None}
        return _report("yau-twist", [raw, graw], res), 1, None
    rep = validate_hom_algebra(T)
    res = {"morphism": True, "algebra": algebra_to_data(T), "valid": rep.ok, "violations": _violations(rep)}
    return _report("yau-twist", [raw, graw], res), 0 if rep.ok else 1, None


def cmd_deform(args) -> tuple:
    bdata, braw = read_file(args.base)
    ddata, draw = read_file(args.deformation)
    A = algebra_from_data(bdata)
    D = deformation_from_data(A, ddata)
    blobs = [braw, draw]
    sub = args.action
    if sub == "check":
        bad = check_deformation(D)
        res: Dict[str, Any] = {"order": D.order, "failing_orders": bad, "valid": not bad}
        if not bad:
            cls = infinitesimal_class(D)
            res["infinitesimal_cocycle"] = cls.is_cocycle
            res["infinitesimal_coboundary"] = cls.is_coboundary
        return _report("deform check", blobs, res), 0 if not bad else 1, None
    if sub == "obstruction":
        obs = obstruction(D)
        res = {"order": obs.order, "cochain": cochain_to_data(obs.cochain),
               "cocycle": obs.verified_cocycle, "vanishes": obs.vanishes,
               "preimage": cochain_to_data(obs.coboundary) if obs.coboundary is not None else None}
        return _report("deform obstruction", blobs, res), 0 if obs.vanishes else 1, None
    if sub == "extend":
        target = args.order if args.order is not None else D.order + 1
        E = extend_to_order(D, target)
        if E is None:
            res = {"target_order": target, "extended": False}
            return _report("deform extend", blobs, res), 1, None
        res = {"target_order": target, "extended": True, "deformation": deformation_to_data(E)}
        return _report("deform extend", blobs, res), 0, None
    if sub == "normalize":
        N = normalize_leading_term(D)
        res = {"trivial": N.trivial, "leading_order": N.leading_order, "message": N.message,
               "steps": [{"order": k, "S": dump_entries(S)} for k, S in N.steps],
               "deformation": deformation_to_data(N.deformation)}
        return _report("deform normalize", blobs, res), 0, None
    if sub == "poisson":
        P = poisson_from_deformation(D)
        rep = check_hom_poisson(P)
        res = {"bracket": dump_entries(P.bracket), "valid": rep.ok, "violations": _violations(rep)}
        return _report("deform poisson", blobs, res), 0 if rep.ok else 1, None
    raise InputError(f"unknown deform action {sub!r}")


def cmd_gs(args) -> tuple:
    data, raw = read_file(args.file)
    B = bialgebra_from_data(data)
    rep = validate_hom_bialgebra(B)
    if args.action == "validate":
        res = {"valid": rep.ok, "violations": _violations(rep)}
        return _report("gs validate", [raw], res), 0 if rep.ok else 1, None
    if args.action == "bicomplex-check":
        bc = bicomplex_check(B, args.nmax, args.mmax, total_max=args.total_max)
        res = {"valid_bialgebra": rep.ok, "checked": [list(x) for x in bc.checked],
               "failures": [{"identity": f, "n": n, "m": m} for f, n, m in bc.failures], "ok": bc.ok}
        return _report("gs bicomplex-check", [raw], res), 0 if bc.ok else 1, None
    if args.action == "dims":
        rows = [{"n": n, "m": m, "dim": cell_dim(B.dim, n, m)}
                for n in range(1, args.nmax + 1) for m in range(1, args.mmax + 1)]
        res: Dict[str, Any] = {"cells": rows}
        if B.alpha == B.beta:
            res["alpha_equals_beta"] = [{"degree": k, "dim": reduced_dim(B.dim, k)}
                                        for k in range(1, args.nmax + args.mmax)]
        table = _dims_csv(rows, ["n", "m", "dim"]) if args.csv else None
        return _report("gs dims", [raw], res), 0, table
    raise InputError(f"unknown gs action {args.action!r}")


def _basis_cochains(d: int, n: int):
    size = cochain_dim(d, n)
    for j in range(size):
        yield CochainPair.from_vector({j: 1}, d, n)


def cmd_linfty(args) -> tuple:
    data, raw = read_file(args.file)
    A = algebra_from_data(data)
    if args.action == "mc":
        m, a = mc_residual(A.mu, A.alpha)
        vanishes = m.is_zero() and a.is_zero()
        rep = validate_hom_algebra(A)
        res = {"mu_part": dump_entries(m), "alpha_part": dump_entries(a), "maurer_cartan": vanishes,
               "validate_ok": rep.ok, "agree": vanishes == _mc_axioms_ok(rep)}
        return _report("linfty mc", [raw], res), 0 if vanishes else 1, None
    if args.action == "compare-differential":
        rows = []
        ok = True
        for n in (2, 3):
            M = build_total_differential(A, n).matrix
            cols = [differential_via_brackets(A, c).to_vector() for c in _basis_cochains(A.dim, n)]
            same = SparseMatrix(M.nrows, M.ncols, [{k: v for k, v in c.items() if v} for c in cols]) == M
            ok &= same
            rows.append({"degree": n, "equal": same})
        return _report("linfty compare-differential", [raw], {"degrees": rows, "ok": ok}), 0 if ok else 1, None
    raise InputError(f"unknown linfty action {args.action!r}")


def _mc_axioms_ok(rep: ValidationReport) -> bool:
    return not any(v.axiom in ("hom-associativity", "multiplicativity") for v in rep.violations)


def reproduce_table(max_degree: Optional[int] = None) -> Dict[str, Any]:
    """The worked dimension examples, computed next to the quoted values."""
    rows: List[Dict[str, Any]] = []
    printed = validate_hom_algebra(fixtures.e2_printed())
    fixtures_list = [("E2", fixtures.e2(), (0, 0, 2, 10))]
    for v in ("id", "2id", "jordan", "diag23", "diag24"):
        fixtures_list.append((f"T6 {v}", fixtures.t6(v), fixtures.T6_TARGETS[v]))
    all_ok = True
    for name, A, quoted in fixtures_list:
        K = 4 if name == "E2" else 3
        if max_degree is not None:
            K = min(K, max_degree)
        C = Complex(A)
        for n in range(1, K + 1):
            got = C.cohomology_dim(n)
            q = quoted[n - 1] if n - 1 < len(quoted) else None
            match = None if q is None else q == got
            if match is False:
                all_ok = False
            rows.append({"fixture": name, "degree": n, "quoted": q, "computed": got, "match": match})
    return {"rows": rows, "all_match": all_ok,
            "printed_e2_valid": printed.ok, "printed_e2_violations": _violations(printed)}


def cmd_reproduce(args) -> tuple:
    res = reproduce_table(args.max_degree)
    table = None
    if args.csv:
        table = _dims_csv(res["rows"], ["fixture", "degree", "quoted", "computed", "match"])
    return _report("reproduce", [b"reproduce"], res), 0 if res["all_match"] else 1, table


# -- entry point -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homhoch", description="Exact cohomology and deformations of Hom-algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check Hom-algebra or Hom-bialgebra axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cohomology", help="dimensions of the alpha-type cohomology")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, default=3)
    s.add_argument("--classical", action="store_true", help="also the alpha-commuting subcomplex")
    s.add_argument("--cocycles", action="store_true", help="include class representatives")
    s.add_argument("--force", action="store_true", help="compute even if the axioms fail")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("yau-twist", help="twist by an algebra morphism")
    s.add_argument("file")
    s.add_argument("--gamma", required=True)
    s.set_defaults(func=cmd_yau_twist)

    s = sub.add_parser("deform", help="truncated deformations")
    s.add_argument("base")
    s.add_argument("deformation")
    s.add_argument("action", choices=["check", "obstruction", "extend", "normalize", "poisson"])
    s.add_argument("--order", type=int, default=None, help="target order for extend")
    s.set_defaults(func=cmd_deform)

    s = sub.add_parser("gs", help="the bialgebra bicomplex")
    s.add_argument("file")
    s.add_argument("--nmax", type=int, default=2)
    s.add_argument("--mmax", type=int, default=2)
    s.add_argument("--total-max", type=int, default=None, help="skip squares with n + m above this")
    s.add_argument("action", choices=["validate", "bicomplex-check", "dims"])
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_gs)

    s = sub.add_parser("linfty", help="bracket checks")
    s.add_argument("file")
    s.add_argument("action", choices=["mc", "compare-differential"])
    s.set_defaults(func=cmd_linfty)

    s = sub.add_parser("reproduce", help="recompute the worked dimension examples")
    s.add_argument("--max-degree", type=int, default=None)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv: Optional[Sequence[str]] = None) -> tuple:
    """``(report, exit_code, csv_or_None)``; input errors give ``(error report, 2, None)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = 0 if exc.code == 0 else 2
        return None, code, None
    try:
        return args.func(args)
    except (InputError, StructuralError, InvalidAlgebraError, DeformationError) as exc:
        kind = "input" if isinstance(exc, (InputError, StructuralError)) else "precondition"
        return {"command": args.command, "error": kind, "message": str(exc)}, 2, None


def main(argv: Optional[Sequence[str]] = None) -> int:
    report, code, table = run(argv)
    if table is not None:
        sys.stdout.write(table)
    elif report is not None:
        sys.stdout.write(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
