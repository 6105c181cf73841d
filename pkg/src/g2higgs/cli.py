"""Command-line entry point: ``g2higgs g2 ...``, ``g2higgs g2 kummer ...``, ``g2higgs local ...``.

Exact values print as ``num/den`` (polynomials in canonical text form),
floats with 17 significant digits.  Default output is ``key=value`` lines;
``--json`` prints one JSON object.  Exit status: 0 success, 2 bad input or
violated precondition, 1 internal failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import genus2 as g2
from . import kummer as km
from . import localhiggs as lh
from .exactmath import MPoly, PreconditionError, QuadraticNumber, as_rational, format_scalar


@dataclass
class CommandResult:
    command: str
    inputs: Dict[str, Any]
    outputs: Dict[str, Any]
    status: str = "ok"
    diagnostics: List[str] = field(default_factory=list)
    raw: Optional[str] = None  # verbatim body (CSV) bypassing the record format
    exit_code: int = 0
    as_json: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "status": self.status,
            "inputs": {k: render(v) for k, v in self.inputs.items()},
            "outputs": {k: render(v) for k, v in self.outputs.items()},
            "diagnostics": list(self.diagnostics),
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"command={d['command']}", f"status={d['status']}"]
        lines += [f"input.{k}={_flat(v)}" for k, v in d["inputs"].items()]
        lines += [f"{k}={_flat(v)}" for k, v in d["outputs"].items()]
        lines += [f"diagnostic={m}" for m in d["diagnostics"]]
        return "\n".join(lines) + "\n"

    def emit(self) -> str:
        if self.raw is not None:
            return self.raw
        if self.as_json:
            return json.dumps(self.to_dict()) + "\n"
        return self.to_text()


def render(value: Any) -> Any:
    """JSON-ready rendering; exact scalars become strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, QuadraticNumber, float, complex)):
        return format_scalar(value)
    if isinstance(value, MPoly):
        return value.to_text()
    if isinstance(value, lh.MatPoly2):
        return value.to_text()
    if isinstance(value, dict):
        return {str(k): render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    return str(value)


def _flat(v: Any) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, separators=(",", ":"))


# ---------------------------------------------------------------------------
# argument helpers


def _rationals(text: str, n: Optional[int] = None) -> List[Fraction]:
    vals = [as_rational(x) for x in text.split(",")]
    if n is not None and len(vals) != n:
        raise PreconditionError(f"expected {n} comma-separated values, got {len(vals)}")
    return vals


def _point_text(pt: g2.PhasePoint) -> List[Any]:
    return list(pt.as_tuple())


# ---------------------------------------------------------------------------
# g2 commands


def cmd_eval(a) -> CommandResult:
    curve, pt = g2.CurveParams.parse(a.curve), g2.PhasePoint.parse(a.point)
    variant = g2.HFormulaVariant.parse(a.variant)
    q = g2.eval_F(curve, pt, variant)
    return CommandResult(
        "g2 eval",
        {"curve": a.curve, "point": a.point, "variant": variant.value},
        {"h0": q.a0, "h1": q.a1, "h2": q.a2},
    )


def cmd_commute(a) -> CommandResult:
    variant = g2.HFormulaVariant.parse(a.variant)
    rep = g2.commutation_report(variant)
    out: Dict[str, Any] = {}
    for (i, j), b in rep.pairs.items():
        out[f"bracket_{i}{j}_terms"] = len(b.terms)
    out["all_zero"] = rep.all_zero
    diags = [f"{{h{i},h{j}}} lowest terms: " + "; ".join(terms) for (i, j), terms in rep.smallest_terms.items()]
    return CommandResult("g2 commute", {"variant": variant.value}, out, diagnostics=diags)


def cmd_rank(a) -> CommandResult:
    curve, pt = g2.CurveParams.parse(a.curve), g2.PhasePoint.parse(a.point)
    variant = g2.HFormulaVariant.parse(a.variant)
    jr = g2.jacobian_rank(curve, pt, variant, tol=a.tol)
    return CommandResult(
        "g2 rank",
        {"curve": a.curve, "point": a.point, "variant": variant.value},
        {"rank": jr.rank, "d": jr.d, "kernel_dim": jr.kernel_dim},
    )


def cmd_solve(a) -> CommandResult:
    curve = g2.CurveParams.parse(a.curve)
    target = g2.QuadDiff.parse(a.target)
    variant = g2.HFormulaVariant.parse(a.variant)
    pts = g2.fiber_solve(curve, target, a.seeds, a.tol, variant, critical=a.critical, rng=a.seed)
    out: Dict[str, Any] = {"count": len(pts)}
    for n, p in enumerate(pts[: a.show]):
        jr = g2.jacobian_rank(curve, p, variant, tol=a.rank_tol)
        out[f"point{n}"] = [complex(v) for v in p.as_tuple()]
        out[f"point{n}.residual"] = g2.residual(curve, p, target, variant)
        out[f"point{n}.d"] = jr.d
    return CommandResult(
        "g2 solve",
        {"curve": a.curve, "target": a.target, "seeds": a.seeds, "tol": a.tol, "critical": a.critical, "seed": a.seed},
        out,
        diagnostics=["affine chart of T*P^3 only; points at infinity are not represented"],
    )


def cmd_involution(a) -> CommandResult:
    pt = g2.PhasePoint.parse(a.point)
    image = g2.involution_apply(pt)
    return CommandResult(
        "g2 involution",
        {"point": a.point},
        {"image": _point_text(image), "fixed": g2.is_involution_fixed(pt)},
    )


def cmd_invariance(a) -> CommandResult:
    variant = g2.HFormulaVariant.parse(a.variant)
    return CommandResult("g2 invariance", {"variant": variant.value}, {"invariant": g2.invariance_check(variant)})


def cmd_fixed_locus(a) -> CommandResult:
    variant = g2.HFormulaVariant.parse(a.variant)
    h0, h1, h2 = g2.fixed_locus_restriction(variant)
    return CommandResult(
        "g2 fixed-locus",
        {"variant": variant.value},
        {"h0": h0, "h1": h1, "h2": h2, "sign": g2.fixed_locus_sign(variant)},
    )


def cmd_companion(a) -> CommandResult:
    curve = g2.CurveParams.parse(a.curve)
    pts = g2.c1_companion_branch_points(a.index, as_rational(a.a), as_rational(a.b), curve)
    return CommandResult(
        "g2 companion",
        {"curve": a.curve, "index": a.index, "a": a.a, "b": a.b},
        {"branch_points": pts},
    )


# ---------------------------------------------------------------------------
# kummer commands


def cmd_k_eval(a) -> CommandResult:
    curve = g2.CurveParams.parse(a.curve)
    u = _rationals(a.u, 3)
    return CommandResult("g2 kummer eval", {"curve": a.curve, "u": a.u}, {"Q": km.kummer_eval(curve, u)})


def cmd_k_coeffs(a) -> CommandResult:
    q = km.kummer_polynomial()
    if a.curve:
        q = q.substitute(g2.CurveParams.parse(a.curve).as_dict()).compact()
    return CommandResult("g2 kummer coeffs", {"curve": a.curve}, {"Q": q, "terms": len(q.terms)})


def cmd_k_pencil(a) -> CommandResult:
    q = km.kummer_polynomial()
    return CommandResult(
        "g2 kummer pencil-check",
        {},
        {
            "degree_r": km.pencil_degree(),
            "dQ_dr": q.diff("r").compact(),
            "total_degree_u": q.degree_in(g2.U_NAMES),
            "pencil": km.pencil_degree() == 1,
        },
    )


def cmd_k_singular(a) -> CommandResult:
    curve = g2.CurveParams.parse(a.curve)
    pts = km.kummer_singular_search(curve, seeds=a.seeds, tol=a.tol, rng=a.seed)
    out: Dict[str, Any] = {"count": len(pts)}
    for n, sp in enumerate(pts):
        out[f"node{n}"] = list(sp.point)
        out[f"node{n}.residuals"] = [sp.value_residual, sp.gradient_residual]
    return CommandResult(
        "g2 kummer singular-search",
        {"curve": a.curve, "seeds": a.seeds, "tol": a.tol, "seed": a.seed},
        out,
        diagnostics=["affine chart w=1 only; nodes at infinity are not searched"],
    )


def cmd_k_disc(a) -> CommandResult:
    ident = km.c2_discriminant_identity()
    out: Dict[str, Any] = {"equal": ident.equal, "lhs": ident.lhs, "rhs": ident.rhs}
    inputs: Dict[str, Any] = {}
    if a.s is not None and a.t is not None:
        s, t = as_rational(a.s), as_rational(a.t)
        inputs = {"s": s, "t": t}
        out["lhs_value"] = km.c2_discriminant_value(s, t)
        out["rhs_value"] = ident.rhs.evaluate({"s": s, "t": t})
    return CommandResult("g2 kummer disc", inputs, out)


def cmd_k_mesh(a) -> CommandResult:
    curve = g2.CurveParams.parse(a.curve)
    var, _, val = a.slice.partition("=")
    if var.strip() != "u2":
        raise PreconditionError("only --slice u2=c is supported")
    c = as_rational(val)
    lo, hi = _rationals(a.range, 2)
    step = as_rational(a.step)
    if step <= 0 or hi < lo:
        raise PreconditionError("need step > 0 and lo <= hi")
    q = km.kummer_polynomial().substitute({**curve.as_dict(), "u2": c})
    grid = []
    x = lo
    while x <= hi:
        grid.append(x)
        x += step
    lines = ["u0,u1,Q"]
    for u0 in grid:
        for u1 in grid:
            val = q.evaluate({"u0": u0, "u1": u1})
            lines.append(",".join(format(float(v), ".17g") for v in (u0, u1, val)))
    return CommandResult("g2 kummer mesh", {}, {}, raw="\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# local commands


def _mat(text: str) -> lh.MatPoly2:
    return lh.MatPoly2.parse(text)


def cmd_classify(a) -> CommandResult:
    zc = lh.classify_zero(_mat(a.Phi))
    return CommandResult(
        "local classify",
        {"Phi": a.Phi},
        {
            "order": zc.order,
            "derivative_type": zc.derivative_type or "none",
            "det_phi_at_0": zc.det_phi_at_0,
            "det_order": zc.det_order if zc.det_order is not None else f">{zc.det_known_to}",
        },
        diagnostics=["quadratic differential convention: q = det Phi"],
    )


def cmd_pairing(a) -> CommandResult:
    val = lh.symplectic_pairing(_mat(a.phi), _mat(a.psi1), _mat(a.psi2), a.k)
    return CommandResult("local pairing", {"phi": a.phi, "psi1": a.psi1, "psi2": a.psi2, "k": a.k}, {"omega": val})


def cmd_hessian(a) -> CommandResult:
    val = lh.hessian_residue(_mat(a.phi), a.i, a.k, _mat(a.psi1), _mat(a.psi2))
    return CommandResult(
        "local hessian", {"phi": a.phi, "psi1": a.psi1, "psi2": a.psi2, "k": a.k, "i": a.i}, {"hessian": val}
    )


def cmd_nondeg(a) -> CommandResult:
    res = lh.nondegeneracy_check(_mat(a.phi), a.k)
    d = res.diagnostics
    out: Dict[str, Any] = {"cartan": res.cartan, "basis": d["basis"]}
    for i, op in enumerate(res.operators):
        out[f"operator{i}"] = op
        out[f"operator{i}.semisimple"] = d["semisimple"][i]
        out[f"operator{i}.nilpotent"] = d["nilpotent"][i]
    out["commuting"] = d["commuting"]
    out["span_dim"] = d["span_dim"]
    return CommandResult("local nondeg", {"phi": a.phi, "k": a.k}, out)


def cmd_hecke(a) -> CommandResult:
    big_phi = _mat(a.Phi)
    alpha = _rationals(a.alpha, 2)
    res = lh.hecke_transform(big_phi, alpha)
    zc = lh.classify_zero(res)
    return CommandResult(
        "local hecke",
        {"Phi": a.Phi, "alpha": a.alpha},
        {
            "Phi_prime": res,
            "trace_square": lh.poly_text(res.trace_square()),
            "trace_square_original": lh.poly_text(big_phi.trace_square()),
            "order": zc.order,
            "derivative_type": zc.derivative_type or "none",
        },
    )


def cmd_hecke_critical(a) -> CommandResult:
    phi = _mat(a.phi)
    hc = lh.hecke_critical_alphas(phi)
    out: Dict[str, Any] = {"quadratic": list(hc.quadratic), "field": hc.field}
    for n, root in enumerate(hc.roots):
        out[f"root{n}"] = list(root)
        zc = lh.classify_zero(lh.hecke_transform(phi.shift(1), root))
        out[f"root{n}.order"] = zc.order
        out[f"root{n}.derivative_type"] = zc.derivative_type
    return CommandResult("local hecke-critical", {"phi": a.phi}, out)


def cmd_dims(a) -> CommandResult:
    rep = lh.validate_zero_data(lh.ZeroDataset.parse(a.genus, a.zeros))
    return CommandResult(
        "local dims",
        {"genus": a.genus, "zeros": a.zeros},
        {
            "degD": rep.degD,
            "rank": rep.rank,
            "dim_ker": rep.dim_ker,
            "dim_critical_locus": rep.dim_critical_locus,
            "ok": rep.ok,
        },
        diagnostics=[f"violated: {v}" for v in rep.violations],
    )


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomised path")

    parser = argparse.ArgumentParser(prog="g2higgs", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    g2p = groups.add_parser("g2", help="the genus-2 integrable system").add_subparsers(dest="verb", required=True)

    def add(sub, name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    def variant(p):
        p.add_argument("--variant", default="corrected", help="printed | eta1 | corrected")

    p = add(g2p, "eval", cmd_eval, "evaluate (h0, h1, h2)")
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    variant(p)
    p = add(g2p, "commute", cmd_commute, "Poisson brackets of the Hamiltonians")
    variant(p)
    p = add(g2p, "rank", cmd_rank, "rank of DF at a point")
    p.add_argument("--curve", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--tol", type=float, default=g2.DEFAULT_RANK_TOL)
    variant(p)
    p = add(g2p, "solve", cmd_solve, "numeric points in a fibre of F")
    p.add_argument("--curve", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--critical", action="store_true", help="restrict to the critical locus over a branch point")
    p.add_argument("--show", type=int, default=3, help="how many points to print")
    p.add_argument("--rank-tol", type=float, default=1e-6)
    variant(p)
    p = add(g2p, "involution", cmd_involution, "apply the sign-flip involution")
    p.add_argument("--point", required=True)
    p = add(g2p, "invariance", cmd_invariance, "are the h_i invariant under the involution")
    variant(p)
    p = add(g2p, "fixed-locus", cmd_fixed_locus, "Hamiltonians on the involution's fixed locus")
    variant(p)
    p = add(g2p, "companion", cmd_companion, "branch points of the companion curve over C1")
    p.add_argument("--curve", required=True)
    p.add_argument("--index", type=int, required=True, help="1..6 for 0, 1, oo, r, s, t")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    kp = g2p.add_parser("kummer", help="the Kummer quartic").add_subparsers(dest="kverb", required=True)
    p = add(kp, "eval", cmd_k_eval, "evaluate the quartic")
    p.add_argument("--curve", required=True)
    p.add_argument("--u", required=True, help="u0,u1,u2")
    p = add(kp, "coeffs", cmd_k_coeffs, "the quartic as a polynomial")
    p.add_argument("--curve")
    add(kp, "pencil-check", cmd_k_pencil, "degree of the quartic in r")
    p = add(kp, "singular-search", cmd_k_singular, "numeric search for nodes")
    p.add_argument("--curve", required=True)
    p.add_argument("--seeds", type=int, default=400)
    p.add_argument("--tol", type=float, default=1e-9)
    p = add(kp, "disc", cmd_k_disc, "discriminant of the C2 elliptic fibre")
    p.add_argument("--s")
    p.add_argument("--t")
    p = add(kp, "mesh", cmd_k_mesh, "CSV samples of Q on a slice")
    p.add_argument("--curve", required=True)
    p.add_argument("--slice", required=True, help="u2=c")
    p.add_argument("--range", required=True, help="lo,hi")
    p.add_argument("--step", required=True)

    lp = groups.add_parser("local", help="local models of Higgs fields").add_subparsers(dest="verb", required=True)
    p = add(lp, "classify", cmd_classify, "order and type of a zero")
    p.add_argument("--Phi", required=True)
    p = add(lp, "pairing", cmd_pairing, "truncated-loop-algebra symplectic pairing")
    for name in ("--phi", "--psi1", "--psi2"):
        p.add_argument(name, required=True)
    p.add_argument("--k", type=int, default=1)
    p = add(lp, "hessian", cmd_hessian, "Hessian residue")
    for name in ("--phi", "--psi1", "--psi2"):
        p.add_argument(name, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--i", type=int, default=0)
    p = add(lp, "nondeg", cmd_nondeg, "Cartan test for the Hessian operators")
    p.add_argument("--phi", required=True)
    p.add_argument("--k", type=int, default=1)
    p = add(lp, "hecke", cmd_hecke, "Hecke transform at z=0")
    p.add_argument("--Phi", required=True)
    p.add_argument("--alpha", required=True, help="u,v")
    p = add(lp, "hecke-critical", cmd_hecke_critical, "Hecke points landing on the critical locus")
    p.add_argument("--phi", required=True)
    p = add(lp, "dims", cmd_dims, "dimension bookkeeping for a zero divisor")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--zeros", required=True, help="e.g. 1s,2n")
    return parser


def _command_name(args: argparse.Namespace) -> str:
    parts = [args.group, args.verb]
    if getattr(args, "kverb", None):
        parts.append(args.kverb)
    return " ".join(parts)


_NEGATIVE_VALUE = re.compile(r"^-[\d./]")


def _attach_negative_values(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--flag -1,2`` as ``--flag=-1,2`` so argparse reads it as a value."""
    out: List[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def dispatch(argv: Sequence[str]) -> CommandResult:
    """Parse ``argv`` and run one command.  Never raises."""
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        # argparse already wrote usage text to stderr
        code = 0 if exc.code == 0 else 2
        return CommandResult(" ".join(argv), {}, {}, status="usage", exit_code=code, raw="")
    try:
        result = args.func(args)
    except PreconditionError as exc:
        result = CommandResult(_command_name(args), {}, {}, status="error", diagnostics=[str(exc)], exit_code=2)
    except Exception as exc:  # noqa: BLE001
        result = CommandResult(
            _command_name(args), {}, {}, status="internal-error", diagnostics=[repr(exc)], exit_code=1
        )
    result.as_json = args.json
    return result


def main(argv: Optional[Sequence[str]] = None) -> int:
    result = dispatch(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.emit())
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
