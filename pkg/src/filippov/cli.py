"""Command-line front end.

Exit status: 0 all checks pass, 1 a check failed, 2 only disputed claims,
3 usage error (bad arguments, unreadable file, malformed wedge).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import assocalg as ua
from .exactlin import det, field_from_tag
from .indices import wedge_basis, wedge_label
from .multilinear import (
    WellDefinednessError,
    basic_leibniz_tensor,
    basic_leibniz_wedge,
    basic_lie,
    check_jacobi,
    check_leibniz,
    circle_algebra,
    commutator_check,
    format_wedge,
    innder_iso_check,
    is_skew,
    jacobiator,
    killing_form,
    parse_wedge,
)
from .nlie import (
    NLieAlgebra,
    ParseError,
    centre,
    check_fundamental_identity,
    derivation_algebra,
    format_vector,
    free_nilpotent_weight2,
    inner_derivations,
    is_simple,
    matrices_of,
    parse_algebra,
)
from .report import Report, jsonable
from .suite import (
    DEFAULT_SEED,
    SAMPLES,
    SpecError,
    basis_triples,
    bin_centre_dim,
    build,
    dagger_sweep,
    dumps,
    is_builder_spec,
    random_triples,
    run_suite,
    suite_status,
)

PASS, FAIL, DISPUTED, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def load_algebra(source: str, field_tag: str | None) -> NLieAlgebra:
    """A builder spec (``Vn:3``, ``dsum:filiform5:abelian:1:3``, ...) or a path to an algebra file."""
    field = field_from_tag(field_tag) if field_tag else None
    if is_builder_spec(source):
        return build(source, field) if field else build(source)
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read algebra file {source!r}: {exc.strerror or exc}") from None
    L = parse_algebra(text)
    if field is not None and field != L.field:
        raise UsageError(f"--field {field_tag} conflicts with the field declared in {source}")
    return L


def load_module(L: NLieAlgebra, source: str) -> ua.LModule:
    """``trivial``, ``adjoint`` or a JSON file ``{"mdim": k, "action": {"x1^x2": [[...]], ...}}``.

    Matrix entries are integers or ``"p/q"`` strings; unlisted generators act by zero.
    """
    if source == "trivial":
        return ua.trivial_module(L)
    if source == "adjoint":
        return ua.adjoint_module(L)
    try:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read module file {source!r}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"module file {source!r} is not valid JSON: {exc}") from None
    F = L.field
    try:
        mdim = int(data["mdim"])
        action = [[[F.zero] * mdim for _ in range(mdim)] for _ in wedge_basis(L.dim, L.n - 1)]
        for label, mat in data.get("action", {}).items():
            w = parse_wedge(L, label)
            (g, sign), = [(i, c) for i, c in enumerate(w.coords) if c]
            if len(mat) != mdim or any(len(r) != mdim for r in mat):
                raise UsageError(f"matrix for {label} must be {mdim} x {mdim}")
            action[g] = [[sign * F.parse(str(v)) for v in row] for row in mat]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed module file {source!r}: {exc}") from None
    return ua.LModule(mdim, action)


def _status(passed: bool) -> int:
    return PASS if passed else FAIL


def _report_out(rep: Report, extra: dict | None = None) -> tuple[int, dict, list[str]]:
    payload = {**rep.to_dict(), **(extra or {})}
    lines = ["PASS" if rep.passed else "FAIL"]
    if not rep.passed:
        lines.append(f"witness: {json.dumps(jsonable(rep.witness), sort_keys=True)}")
    return _status(rep.passed), payload, lines


def _matrix_text(m: list[list]) -> str:
    return "[" + "; ".join(" ".join(str(v) for v in row) for row in m) + "]"


def cmd_check_fi(args, L):
    return _report_out(check_fundamental_identity(L))


def cmd_derivations(args, L):
    basis = derivation_algebra(L)
    lines = [f"dim Der = {len(basis)}"] + [_matrix_text(m) for m in basis]
    return PASS, {"dim": len(basis), "basis": basis}, lines


def _commute(mats) -> bool:
    for x in mats:
        for y in mats:
            size = len(x)
            for i in range(size):
                for j in range(size):
                    if sum(x[i][k] * y[k][j] - y[i][k] * x[k][j] for k in range(size)):
                        return False
    return True


def cmd_innder(args, L):
    mats = matrices_of(inner_derivations(L), L.dim)
    abelian = _commute(mats)
    lines = [f"dim Innder = {len(mats)}", f"abelian: {'yes' if abelian else 'no'}"]
    return PASS, {"dim": len(mats), "abelian": abelian, "basis": mats}, lines


def cmd_centre(args, L):
    Z = centre(L)
    basis = [format_vector(v) for v in Z.sparse_basis()]
    return PASS, {"dim": Z.dim(), "basis": basis}, [f"dim Z = {Z.dim()}"] + basis


def cmd_simple(args, L):
    return _report_out(is_simple(L))


def cmd_basic_leibniz(args, L):
    B = basic_leibniz_tensor(L)
    BW = basic_leibniz_wedge(L)
    checks = {
        "tensor_leibniz": check_leibniz(B),
        "wedge_leibniz": check_leibniz(BW),
        "commutator_identity": commutator_check(L),
    }
    skew = is_skew(BW)
    passed = all(checks.values())
    payload = {
        "passed": passed,
        "tensor_dim": B.dim,
        "wedge_dim": BW.dim,
        "wedge_skew": skew.passed,
        "checks": {k: v.to_dict() for k, v in checks.items()},
    }
    lines = [f"tensor dim {B.dim}, wedge dim {BW.dim}"]
    lines += [f"{k}: {'PASS' if v else 'FAIL'}" for k, v in checks.items()]
    lines.append(f"wedge bracket skew: {'yes' if skew else 'no'}")
    return _status(passed), payload, lines


def cmd_basic_lie(args, L):
    C = basic_lie(L)
    skew, jac = is_skew(C), check_jacobi(C)
    passed = skew.passed and jac.passed
    payload = {"passed": passed, "dim": C.dim, "skew": skew.to_dict(), "jacobi": jac.to_dict()}
    lines = [f"dim {C.dim}", f"skew: {'PASS' if skew else 'FAIL'}", f"jacobi: {'PASS' if jac else 'FAIL'}"]
    if passed:
        z = bin_centre_dim(C)
        kdet = det(killing_form(C))
        payload.update(centre_dim=z, killing_det=kdet)
        lines += [f"centre dim {z}", f"Killing form determinant {kdet}"]
    return _status(passed), payload, lines


def cmd_circle_lie_check(args, L):
    rep = check_jacobi(circle_algebra(L))
    status, payload, lines = _report_out(rep)
    if not rep.passed:
        w = rep.witness
        cmd = f"nlie jacobiator {args.algebra} {w['x']} {w['y']} {w['z']}"
        payload["reproduce"] = cmd
        lines.append(f"reproduce: {cmd}")
    return status, payload, lines


def _wedges(L, texts):
    try:
        return [parse_wedge(L, t) for t in texts]
    except ValueError as exc:
        raise UsageError(f"malformed wedge expression: {exc}") from None


def cmd_jacobiator(args, L):
    a, b, c = _wedges(L, (args.a, args.b, args.c))
    J = jacobiator(L, a, b, c)
    text = format_wedge(L, J)
    return PASS, {"value": text, "coords": list(J.coords)}, [text]


def cmd_dagger_check(args, L):
    if args.exhaustive:
        res = dagger_sweep(L, basis_triples(L))
        mode = "exhaustive"
    else:
        res = dagger_sweep(L, random_triples(L, random.Random(f"{args.seed}:{args.algebra}"), args.samples))
        mode = f"random (seed {args.seed})"
    payload = {"passed": res["passed"], "witness": res.get("witness"), "checked": res["checked"], "mode": mode}
    lines = [f"{'PASS' if res['passed'] else 'FAIL'}: {res['checked']} {mode} triples"]
    if not res["passed"]:
        lines.append(f"witness: {json.dumps(jsonable(res['witness']), sort_keys=True)}")
    return _status(res["passed"]), payload, lines


def cmd_innder_iso(args, L):
    rep = innder_iso_check(L)
    status, payload, lines = _report_out(rep)
    lines += [f"{k}: {v}" for k, v in sorted(rep.details.items())]
    return status, payload, lines


def cmd_assoc_presentation(args, L):
    P = ua.associated_algebra_presentation(L)
    rels = [r.format(P.labels) for r in P.relations]
    payload = {"generators": P.labels, "relation_count": len(rels), "family_counts": P.family_counts,
               "relations": rels}
    lines = [f"generators: {' '.join(P.labels)}", f"relations: {len(rels)} {P.family_counts}"] + rels
    return PASS, payload, lines


def cmd_assoc_dims(args, L):
    rep = ua.assoc_report(L, args.algebra, args.degree)
    status = DISPUTED if any(c.get("disputed") for c in rep["disputed_claims"]) else PASS
    lines = [" ".join(str(d) for d in rep["dims"])]
    for c in rep["disputed_claims"]:
        lines.append(f"disputed: {c['claim']}: stated {c['paper']}, computed {c['computed']}")
    return status, rep, lines


def cmd_h1(args, L):
    P = ua.associated_algebra_presentation(L)
    h1, h1c, basis = ua.h1_dim(P), ua.h1_cohomology_dim(P), ua.h1_basis(P)
    payload = {"h1": h1, "h1_cohomology": h1c, "basis": basis}
    return PASS, payload, [f"H_1 dim {h1}", f"H^1 dim {h1c}", "basis: " + " ".join(basis)]


def cmd_module_check(args, L):
    M = load_module(L, args.module)
    try:
        ax = ua.check_module_axioms(L, M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rel = ua.module_action_respects_relations(L, M)
    passed = ax.passed and rel.passed
    payload = {"passed": passed, "mdim": M.mdim, "axioms": ax.to_dict(), "relations": rel.to_dict()}
    lines = [f"axioms: {'PASS' if ax else 'FAIL'}", f"relations: {'PASS' if rel else 'FAIL'}"]
    for name, rep in (("axioms", ax), ("relations", rel)):
        if not rep.passed:
            lines.append(f"{name} witness: {json.dumps(jsonable(rep.witness), sort_keys=True)}")
    if ax.passed:
        inv = ua.invariants(L, M)
        co = ua.coinvariants_dim(L, M)
        payload.update(invariants_dim=inv.dim(), invariants=[format_vector(v) for v in inv.sparse_basis()],
                       coinvariants_dim=co)
        lines += [f"invariants dim {inv.dim()}", f"coinvariants dim {co}"]
    return _status(passed), payload, lines


def cmd_free_case(args):
    try:
        rels = ua.free_case_relation(args.m, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    L = free_nilpotent_weight2(args.m, args.n)
    labels = [wedge_label(x) for x in wedge_basis(L.dim, args.n - 1)]
    text = [r.format(labels) for r in rels]
    payload = {"m": args.m, "n": args.n, "relation_count": len(rels), "relations": text}
    return PASS, payload, [f"{len(rels)} relations"] + text


def cmd_paper_suite(args):
    report = run_suite(args.seed)
    lines = []
    for r in report["criteria"]:
        lines.append(f"[{'PASS' if r['passed'] else 'FAIL'}] {r['id']:2d} {r['title']}")
        if not r["passed"]:
            lines.append(f"       reproduce: {r['reproduce']}")
    for c in report["disputed_claims"]:
        tag = "DISPUTED" if c.get("disputed") else "AGREES"
        lines.append(f"[{tag}] {c['claim']}: stated {c['paper']}, computed {c['computed']}")
        lines.append(f"       reproduce: {c['reproduce']}")
    return suite_status(report), report, lines


ALGEBRA_COMMANDS = {
    "check-fi": (cmd_check_fi, "check the fundamental identity"),
    "derivations": (cmd_derivations, "basis of the derivation algebra"),
    "innder": (cmd_innder, "inner derivations and whether they commute"),
    "centre": (cmd_centre, "centre of the algebra"),
    "simple": (cmd_simple, "simplicity test"),
    "basic-leibniz": (cmd_basic_leibniz, "basic Leibniz algebras on the tensor and exterior powers"),
    "basic-lie": (cmd_basic_lie, "basic Lie algebra (tensor power modulo ker ad)"),
    "circle-lie-check": (cmd_circle_lie_check, "Jacobi identity for the circle product"),
    "jacobiator": (cmd_jacobiator, "jacobiator of three wedges, e.g. x1^x4 x1^x2 x3^x2"),
    "dagger-check": (cmd_dagger_check, "jacobiator against its commutator formula"),
    "innder-iso": (cmd_innder_iso, "compare K = W with injectivity of the ad map"),
    "assoc-presentation": (cmd_assoc_presentation, "generators and relations of U(L)"),
    "assoc-dims": (cmd_assoc_dims, "filtered dimensions of U(L)"),
    "h1": (cmd_h1, "first homology and cohomology with trivial coefficients"),
    "module-check": (cmd_module_check, "module axioms, relations, invariants for a module"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("-o", "--output", help="write the report to this file instead of stdout")

    alg = _Parser(add_help=False)
    alg.add_argument("--field", help="Q or Fp:<prime> (builder specs only)")

    parser = _Parser(prog="nlie", description="Exact computations with n-Lie algebras.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in ALGEBRA_COMMANDS.items():
        p = sub.add_parser(name, parents=[common, alg], help=help_text, description=help_text)
        p.add_argument("algebra", help="builder spec (Vn:3, filiform5, abelian:d:n, fnw2:m:n, "
                                       "centralext:<spec>, dsum:<a>:<b>) or algebra file")
        if name == "jacobiator":
            p.add_argument("a")
            p.add_argument("b")
            p.add_argument("c")
        if name == "dagger-check":
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
            p.add_argument("--samples", type=int, default=SAMPLES)
            p.add_argument("--exhaustive", action="store_true", help="all basis triples")
        if name == "assoc-dims":
            p.add_argument("--degree", type=_degree, default=4)
        if name == "module-check":
            p.add_argument("module", help="trivial, adjoint, or a JSON module file")
    fc = sub.add_parser("free-case", parents=[common], help="relations of U for the free model")
    fc.add_argument("m", type=int)
    fc.add_argument("n", type=int)
    ps = sub.add_parser("paper-suite", parents=[common], help="run every reproduction check")
    ps.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def _degree(text: str) -> int:
    d = int(text)
    if d < 0:
        raise argparse.ArgumentTypeError("degree bound must be >= 0")
    return d


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run one command; return the exit status and the rendered report."""
    args = build_parser().parse_args(list(argv))
    if args.command == "free-case":
        status, payload, lines = cmd_free_case(args)
    elif args.command == "paper-suite":
        status, payload, lines = cmd_paper_suite(args)
    else:
        L = load_algebra(args.algebra, args.field)
        handler = ALGEBRA_COMMANDS[args.command][0]
        status, payload, lines = handler(args, L)
        payload = {"algebra": args.algebra, **payload} if "algebra" not in payload else payload
    if args.json:
        text = dumps({"command": args.command, **payload}) + "\n"
    else:
        text = "".join(line + "\n" for line in lines)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        text = ""
    return status, text


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        status, text = run(argv)
    except UsageError as exc:
        msg = str(exc)
        print(msg if msg.startswith("nlie") else f"nlie: {msg}", file=sys.stderr)
        return USAGE
    except (SpecError, ParseError) as exc:
        print(f"nlie: {exc}", file=sys.stderr)
        return USAGE
    except ua.ResourceCapExceeded as exc:
        print(f"nlie: resource cap exceeded: {exc}", file=sys.stderr)
        return FAIL
    except WellDefinednessError as exc:
        print(f"nlie: internal error, quotient not well defined: {exc}", file=sys.stderr)
        return FAIL
    except ValueError as exc:
        print(f"nlie: {exc}", file=sys.stderr)
        return USAGE
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
