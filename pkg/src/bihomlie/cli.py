"""Command line front end: bihomlie <command> FILE [options].

Exit status 0 means every check passed (or the construction succeeded), 1 a
mathematical check failed, 2 the input was unusable.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .binary import osp_alpha, verify2, yau_twist2
from .errors import (BihomError, DimensionMismatch, FailedPrecondition, ParityError,
                     ParseError, UnknownCommand, ValidationError, WitnessError,
                     ZeroParameter)
from .graded import LinearMap, Subspace, render_scalar, unit_vec
from .quadratic import (dual_ideal, reconstruct_tstar, series_lift_check, tstar_extension,
                        verify_quadratic)
from .report import Check, VerificationReport
from .representation import (Cocycle, adjoint_rep, coadjoint_rep, coboundary_theta_f, dual_rep,
                             semidirect, sigma_iso, t_theta_extension, verify_cocycle,
                             verify_rep)
from .ternary import (DerivationRequest, TotAssoc3, ab_center, center, central_series,
                      derivation_space, derived_series, direct_sum, is_nilpotent,
                      is_solvable, tensor_assoc, twist_compose, twist_from_3lie,
                      twist_power_k, verify3)

COMMANDS = ("verify", "twist", "sum", "tensor", "semidirect", "t-theta", "theta-f", "sigma",
            "dual", "tstar", "series", "derivations", "center", "reconstruct")

INPUT_ERRORS = (ParseError, ValidationError, UnknownCommand, DimensionMismatch, ParityError,
                ZeroParameter, OSError)


class InputError(Exception):
    pass


# ----------------------------------------------------------------- helpers

def _mat(M):
    return [[render_scalar(c) for c in r] for r in M]


def _term(c, label, first):
    neg = c < 0
    a = -c if neg else c
    body = label if a == 1 else f"{render_scalar(a)} {label}"
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def table(a) -> list[str]:
    """Lines like "[H,X] = 18 X" for every nonzero bracket of basis vectors."""
    names = a.space.names
    out = []
    for key, val in a.bracket.items():
        rhs = "".join(_term(c, names[i], k == 0) for k, (i, c) in enumerate(sorted(val.items())))
        out.append(f"[{','.join(names[i] for i in key)}] = {rhs}")
    return out


def _load_maps(path, keys, space_dom, space_cod=None):
    try:
        with open(path, "rb") as fh:
            data = json.loads(fh.read().decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} (line {exc.lineno})", exc.msg) from None
    out = []
    for k in keys:
        if k not in data:
            raise ParseError(f"{path}: $.{k}", "missing field")
        cod = space_cod or space_dom
        M = data[k]
        if not isinstance(M, list) or len(M) != cod.dim or \
                any(not isinstance(r, list) or len(r) != space_dom.dim for r in M):
            raise ValidationError(k, f"matrix must be {cod.dim}x{space_dom.dim}")
        rows = [[io._scalar(c, f"{path}: $.{k}[{i}][{j}]") for j, c in enumerate(r)]
                for i, r in enumerate(M)]
        out.append(LinearMap(rows, space_dom, cod))
    return out


def _algebra_result(a, extra=None):
    d = {"algebra": io.render(io.from_algebra(a)), "table": table(a)}
    if extra:
        d.update(extra)
    return d


def _need3(af):
    if af.arity != 3:
        raise InputError("this command needs an arity-3 algebra")
    return af.algebra()


def _rep_or_coadjoint(af, g):
    rep = af.representation()
    return rep if rep is not None else coadjoint_rep(g)


def _theta(af, rep):
    th = af.cocycle(rep.module)
    return th if th is not None else Cocycle.zero(af.space, rep.module)


def _vectors(S: Subspace):
    return [[render_scalar(c) for c in b] for b in S.canonical_basis()]


# ---------------------------------------------------------------- commands

def cmd_verify(args):
    af = io.load(args.file)
    a = af.algebra()
    if af.arity == 2:
        return None, [verify2(a)]
    reports = [verify3(a)]
    rep = af.representation()
    if rep is not None:
        reports.append(verify_rep(a, rep))
    if af.theta is not None:
        r = rep if rep is not None else coadjoint_rep(a)
        reports.append(verify_cocycle(a, r, af.cocycle(r.module)))
    qa = af.quadratic()
    if qa is not None:
        reports.append(verify_quadratic(qa))
    return None, reports


def cmd_twist(args):
    af = io.load(args.file)
    a = af.algebra()
    if af.arity == 2:
        if args.maps:
            x, y = _load_maps(args.maps, ("a", "b"), af.space)
        elif args.lam is not None and args.mu is not None:
            if af.space.names != ("H", "X", "Y", "F", "G"):
                raise InputError("--lambda/--mu need the osp(1,2) basis H, X, Y, F, G")
            x, y = osp_alpha(io._scalar(args.lam, "--lambda")), \
                osp_alpha(io._scalar(args.mu, "--mu"))
        else:
            raise InputError("give --maps or both --lambda and --mu")
        out = yau_twist2(a, x, y)
        return _algebra_result(out), [verify2(out)]
    if args.k is not None:
        out = twist_power_k(a, args.k)
    elif args.maps:
        x, y = _load_maps(args.maps, ("a", "b"), af.space)
        if a.alpha.is_identity() and a.beta.is_identity():
            out = twist_from_3lie(a, x, y)
        else:
            out = twist_compose(a, x, y)
    else:
        raise InputError("give --maps or --k")
    return _algebra_result(out), [verify3(out)]


def cmd_sum(args):
    if not args.other:
        raise InputError("sum needs two files")
    g, h = _need3(io.load(args.file)), _need3(io.load(args.other))
    out = direct_sum(g, h)
    return _algebra_result(out), [verify3(out)]


def cmd_tensor(args):
    if not args.other:
        raise InputError("tensor needs the associative factor and the algebra")
    fa = io.load(args.file)
    if fa.arity != 3:
        raise InputError("the associative factor must be a ternary product")
    A = TotAssoc3(fa.space, fa.bracket, fa.alpha, fa.beta, fa.name)
    g = _need3(io.load(args.other))
    out = tensor_assoc(A, g, allow_odd=args.allow_odd)
    return _algebra_result(out), [verify3(out)]


def cmd_semidirect(args):
    af = io.load(args.file)
    g = _need3(af)
    rep = af.representation()
    if rep is None:
        raise InputError("the file has no module block")
    out = semidirect(g, rep)
    return _algebra_result(out), [verify3(out)]


def cmd_t_theta(args):
    af = io.load(args.file)
    g = _need3(af)
    rep = _rep_or_coadjoint(af, g)
    out = t_theta_extension(g, rep, _theta(af, rep))
    return _algebra_result(out), [verify3(out)]


def cmd_theta_f(args):
    af = io.load(args.file)
    g = _need3(af)
    rep = _rep_or_coadjoint(af, g)
    if not args.maps:
        raise InputError("theta-f needs --maps with an \"f\" matrix")
    (f,) = _load_maps(args.maps, ("f",), af.space, rep.module)
    th = coboundary_theta_f(g, rep, f)
    res = io.render(io.from_algebra(g, af.representation(), th))
    return {"theta": res["theta"]}, [verify_cocycle(g, rep, th)]


def cmd_sigma(args):
    af = io.load(args.file)
    g = _need3(af)
    rep = _rep_or_coadjoint(af, g)
    if not args.maps:
        raise InputError("sigma needs --maps with an \"f\" matrix")
    (f,) = _load_maps(args.maps, ("f",), af.space, rep.module)
    s, report = sigma_iso(g, rep, _theta(af, rep), f)
    return {"sigma": _mat(s.matrix)}, [report]


def cmd_dual(args):
    af = io.load(args.file)
    g = _need3(af)
    rep = af.representation() or adjoint_rep(g)
    d = dual_rep(g, rep)
    rho = [{"args": list(k), "matrix": _mat(v.matrix)} for k, v in d.representation.maps.items()]
    return {"dual_rho": rho, "conditions_hold": d.conditions_hold,
            "dual_is_representation": d.dual_is_rep}, [d.report]


def cmd_tstar(args):
    af = io.load(args.file)
    g = _need3(af)
    th = af.cocycle(g.space.dual()) if af.theta is not None else None
    qa = tstar_extension(g, th)
    res = _algebra_result(qa.algebra)
    res["algebra"]["form"] = _mat(qa.form.gram)
    return res, [verify3(qa.algebra), verify_quadratic(qa)]


def cmd_series(args):
    af = io.load(args.file)
    g = _need3(af)
    sol, slen = is_solvable(g)
    nil, nlen = is_nilpotent(g)
    res = {"derived_dims": [S.rank for S in derived_series(g)],
           "central_dims": [S.rank for S in central_series(g)],
           "solvable": sol, "solvable_length": slen,
           "nilpotent": nil, "nilpotent_length": nlen}
    reports = []
    if args.tstar:
        th = af.cocycle(g.space.dual()) if af.theta is not None else None
        reports.append(series_lift_check(g, th))
    return res, reports


def cmd_derivations(args):
    af = io.load(args.file)
    g = _need3(af)
    req = DerivationRequest(args.s or 0, args.r or 0, args.parity or 0)
    basis = derivation_space(g, req)
    return {"s": req.s, "r": req.r, "parity": req.parity, "dimension": len(basis),
            "basis": [_mat(D.matrix) for D in basis]}, []


def cmd_center(args):
    af = io.load(args.file)
    g = _need3(af)
    return {"center": _vectors(center(g)), "ab_center": _vectors(ab_center(g))}, []


def _ideal(spec, qa):
    N = qa.dim
    if spec in (None, "dual"):
        return dual_ideal(N // 2)
    labels = [s.strip() for s in spec.split(",") if s.strip()]
    names = qa.algebra.space.names
    bad = [s for s in labels if s not in names]
    if bad:
        raise ValidationError("--ideal", f"unknown basis labels {bad}")
    return Subspace((unit_vec(N, names.index(s)) for s in labels), N)


def cmd_reconstruct(args):
    af = io.load(args.file)
    _need3(af)
    qa = af.quadratic()
    if qa is None:
        raise InputError("reconstruct needs a file with a form block")
    rec = reconstruct_tstar(qa, _ideal(args.ideal, qa))
    B = io.render(io.from_algebra(rec.B, theta=rec.theta))
    return {"quotient": B, "table": table(rec.B), "phi": _mat(rec.phi.matrix)}, [rec.report]


HANDLERS = {
    "verify": cmd_verify, "twist": cmd_twist, "sum": cmd_sum, "tensor": cmd_tensor,
    "semidirect": cmd_semidirect, "t-theta": cmd_t_theta, "theta-f": cmd_theta_f,
    "sigma": cmd_sigma, "dual": cmd_dual, "tstar": cmd_tstar, "series": cmd_series,
    "derivations": cmd_derivations, "center": cmd_center, "reconstruct": cmd_reconstruct,
}


# -------------------------------------------------------------- dispatch

def _error_report(exc) -> VerificationReport | None:
    rep = getattr(exc, "report", None)
    if isinstance(rep, VerificationReport):
        return rep
    if isinstance(exc, WitnessError):
        return VerificationReport(type(exc).__name__, (
            Check(type(exc).__name__, False, exc.witness, exc.residual, str(exc)),))
    return VerificationReport(type(exc).__name__, (Check(type(exc).__name__, False,
                                                         detail=str(exc)),))


def dispatch(command: str, args) -> tuple[int, dict]:
    if command not in HANDLERS:
        raise UnknownCommand(f"unknown command {command!r}")
    try:
        result, reports = HANDLERS[command](args)
    except INPUT_ERRORS + (InputError,) as exc:
        return 2, {"command": command, "error": type(exc).__name__, "message": str(exc)}
    except BihomError as exc:
        out = {"command": command, "error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, FailedPrecondition):
            out["gate"] = exc.gate
        out["reports"] = [_error_report(exc).to_dict()]
        return 1, out
    out = {"command": command}
    if result is not None:
        out["result"] = result
    out["reports"] = [r.to_dict() for r in reports]
    ok = all(r.overall for r in reports)
    out["overall"] = "pass" if ok else "fail"
    return (0 if ok else 1), out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bihomlie",
                                description="Exact computations with 3-Bihom-Lie superalgebras.")
    p.add_argument("command", help=", ".join(COMMANDS))
    p.add_argument("file")
    p.add_argument("other", nargs="?", help="second file for sum and tensor")
    p.add_argument("--lambda", dest="lam", metavar="p/q")
    p.add_argument("--mu", metavar="p/q")
    p.add_argument("--maps", metavar="PATH", help="JSON with matrices a, b or f")
    p.add_argument("--k", type=int, help="power for the (alpha^k, beta^k) twist")
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--parity", type=int, choices=(0, 1))
    p.add_argument("--ideal", metavar="dual|LABELS")
    p.add_argument("--tstar", action="store_true", help="series: also check the T* extension")
    p.add_argument("--allow-odd", action="store_true")
    p.add_argument("--out", metavar="PATH")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        code, out = dispatch(args.command, args)
    except UnknownCommand as exc:
        code, out = 2, {"command": args.command, "error": "UnknownCommand", "message": str(exc)}
    text = json.dumps(out, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
