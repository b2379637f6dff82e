"""Command-line front end.

    arithinv invariants --input rep.json [--prime P] [--degree-bound D]
    arithinv decide --input rep.json [--prime P]
    arithinv example-s3
    arithinv ideal --d -5 --gens "2,1+s" --op principal

Every report can be printed as JSON (``--json``); all JSON carries
``"schema": "1"``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .criteria import (
    INCONCLUSIVE,
    NOT_POLYNOMIAL,
    POLYNOMIAL,
    SCHEMA,
    _r_member,
    decide_dvr,
    decide_over_integers,
    dump_report,
)
from .dedekind import (
    QuadraticRing,
    blowup_grading_check,
    ideal_from_generators,
    is_principal,
    local_principal_generator,
)
from .groups import FIXTURES, lattice_s3
from .invariants import minimal_generators, molien_dimensions
from .matgroup import GroupError, MatrixGroup, close_group, load_representation, reduce_group
from .poly import Polynomial, format_poly, map_coefficients, parse_poly
from .rings import INTEGERS, LOCALIZED, QQ, Domain, DomainError, valuation

EXIT_OK = 0
EXIT_NOT_POLYNOMIAL = 1
EXIT_MALFORMED = 2
EXIT_INCOMPLETE = 3
EXIT_INCONCLUSIVE = 4
EXIT_MISMATCH = 5

VERDICT_EXIT = {POLYNOMIAL: EXIT_OK, NOT_POLYNOMIAL: EXIT_NOT_POLYNOMIAL}


class InputError(ValueError):
    pass


def verdict_exit_code(conclusion: str) -> int:
    return VERDICT_EXIT.get(conclusion, EXIT_INCONCLUSIVE)


def _emit(report: dict, lines: list[str], as_json: bool, out) -> None:
    if as_json:
        print(dump_report(report), file=out)
    else:
        print("\n".join(lines), file=out)


def _load_group(args) -> MatrixGroup:
    if args.group and args.input:
        raise InputError("give either --input or --group, not both")
    try:
        if args.group:
            if args.group not in FIXTURES:
                raise InputError(f"unknown group {args.group!r}; known: {', '.join(FIXTURES)}")
            return FIXTURES[args.group]()
        if not args.input:
            raise InputError("--input PATH (or --group NAME) is required")
        with open(args.input) as fh:
            text = fh.read()
        return load_representation(json.loads(text))
    except InputError:
        raise
    except (OSError, ValueError, KeyError, TypeError, GroupError, DomainError) as exc:
        raise InputError(str(exc)) from exc


def _terms(fs) -> list[dict]:
    return [{"degree": f.degree(), "poly": format_poly(f)} for f in fs]


# -- invariants ---------------------------------------------------------------------

def cmd_invariants(args, out=sys.stdout) -> int:
    G = _load_group(args)
    if args.prime is not None:
        if G.domain.kind not in (INTEGERS, LOCALIZED):
            raise InputError(f"--prime needs an integral representation, got {G.domain}")
        G, _ = reduce_group(G if G.domain.kind == LOCALIZED
                            else close_group(G.generators, Domain.localized(args.prime)),
                            args.prime)
    elif G.domain.kind == INTEGERS:
        G = G.embed(QQ)
    gs = minimal_generators(G, args.degree_bound)
    report = {
        "schema": SCHEMA,
        "command": "invariants",
        "domain": str(G.domain),
        "group_order": G.order,
        "degree_bound": gs.degree_bound_used,
        "dimensions": gs.dimensions,
        "generators": _terms(gs.generators),
        "complete": gs.complete,
        "certificate": gs.certificate,
        "still_growing": gs.still_growing,
    }
    if G.domain.characteristic == 0:
        report["molien"] = molien_dimensions(G, len(gs.dimensions) - 1)
    lines = [
        f"group of order {G.order} over {G.domain}",
        "dimensions by degree: " + " ".join(str(d) for d in gs.dimensions),
        f"minimal generators (degrees {', '.join(map(str, gs.degrees))}):",
    ]
    lines += [f"  [{f.degree()}] {format_poly(f)}" for f in gs.generators]
    status = "complete" if gs.complete else "INCOMPLETE"
    lines.append(f"{status} up to degree {gs.degree_bound_used}"
                 + (f" ({gs.certificate})" if gs.certificate else "")
                 + (", generators still appearing at the bound" if gs.still_growing else ""))
    _emit(report, lines, args.json, out)
    return EXIT_OK if gs.complete else EXIT_INCOMPLETE


# -- decide -------------------------------------------------------------------------

def cmd_decide(args, out=sys.stdout) -> int:
    G = _load_group(args)
    if G.domain.kind not in (INTEGERS, LOCALIZED):
        raise InputError(f"decide needs a representation over ZZ or ZZ_(p), got {G.domain}")
    verify = not args.no_verify
    if args.prime is not None:
        v = decide_dvr(G, args.prime, args.degree_bound, verify)
    elif G.domain.kind == LOCALIZED:
        v = decide_dvr(G, G.domain.p, args.degree_bound, verify)
    else:
        v = decide_over_integers(G, args.degree_bound, verify)
    lines = [f"conclusion: {v.conclusion}"]
    for lv in v.primes:
        where = f"p = {lv.p}" if lv.p else "QQ"
        lines.append(f"  {where}: {lv.verdict} ({lv.reason})")
        lines.append(f"    K-degrees {lv.k_degrees}, F-degrees {lv.f_degrees}, "
                     f"injective reduction: {lv.injective}")
        if lv.obstruction is not None:
            lines.append(f"    obstruction (degree {lv.obstruction.degree()}): "
                         f"{format_poly(lv.obstruction)}")
    for note in v.notes:
        lines.append(f"  note: {note}")
    lines.append(f"certificates verified: {str(v.certificates_verified).lower()}")
    _emit(v.to_json(), lines, args.json, out)
    return verdict_exit_code(v.conclusion)


# -- example-s3 ---------------------------------------------------------------------

EXPECTED_S3 = {
    "f": "x^2 + 3*x*y + 3*y^2",
    "g": "2*x^3 + 9*x^2*y + 9*x*y^2",
    "f'": "x",
    "g'": "x^4*y^2 + x^2*y^4 + y^6",
}


def _unit_multiple(f: Polynomial, g: Polynomial) -> bool:
    """``f = u*g`` for a unit ``u`` of the coefficient domain."""
    if f.is_zero() or g.is_zero() or set(f.terms) != set(g.terms):
        return False
    e = next(iter(g.terms))
    dom = f.domain
    if dom.modulus:
        u = f.terms[e] * pow(g.terms[e], -1, dom.modulus) % dom.modulus
    else:
        u = Fraction(f.terms[e]) / Fraction(g.terms[e])
        if dom.kind == LOCALIZED and valuation(u, dom.p) != 0:
            return False
    return g.scale(u) == f


def _unit_note(f: Polynomial, g: Polynomial, name: str) -> str:
    if f == g:
        return f" = {name}"
    if f == -g:
        return f" = -{name}, so φ(h) = {name} up to the unit -1"
    return ""


def example_s3_report() -> tuple[dict, list[str], list[str]]:
    """Reproduce the S3 example over ZZ_(3); return report, text lines and mismatches."""
    p = 3
    loc = Domain.localized(p)
    F = Domain.prime_field(p)
    G = lattice_s3(loc)
    H, red = reduce_group(G, p)
    k = minimal_generators(G.embed(QQ))
    fgen = minimal_generators(H, 6)
    f, g = (sorted((q.primitive() for q in k.generators), key=lambda q: q.degree()) + [None, None])[:2]
    f1, g1 = (sorted(fgen.generators, key=lambda q: q.degree()) + [None, None])[:2]
    exp = {k_: parse_poly(v, QQ, 2) for k_, v in EXPECTED_S3.items()}
    expF = {k_: exp[k_].change_domain(F) for k_ in ("f'", "g'")}

    checks: dict[str, bool] = {}
    mismatches: list[str] = []

    def check(name, ok, expected, computed):
        checks[name] = bool(ok)
        if not ok:
            mismatches.append(f"{name}: expected {expected}, computed {computed}")

    check("K-degrees", sorted(k.degrees) == [2, 3], [2, 3], sorted(k.degrees))
    check("f", f is not None and _unit_multiple(f, exp["f"]), EXPECTED_S3["f"], f)
    check("g", g is not None and _unit_multiple(g, exp["g"]), EXPECTED_S3["g"], g)
    check("F-degrees", sorted(fgen.degrees) == [1, 6], [1, 6], sorted(fgen.degrees))
    check("f'", f1 is not None and _unit_multiple(f1, expF["f'"]), EXPECTED_S3["f'"], f1)
    check("g'", g1 is not None and _unit_multiple(g1, expF["g'"]), EXPECTED_S3["g'"], g1)
    check("injective", red.injective and red.image_order == 6, "injective, order 6",
          f"injective={red.injective}, order {red.image_order}")

    fL, gL = exp["f"].change_domain(loc), exp["g"].change_domain(loc)
    disc = gL * gL - (fL ** 3).scale(4)
    div27 = all(valuation(c, p) >= 3 for c in disc.terms.values())
    check("27 | g^2-4f^3", div27, True, div27)
    hQ = disc.change_domain(QQ).scale(Fraction(1, 27))
    h_int = all(valuation(c, p) >= 0 for c in hQ.terms.values())
    if not h_int:
        check("h invariant and 3-integral", False, True, format_poly(hQ))
        return _abort(checks, mismatches)
    h = hQ.change_domain(loc)
    h_inv = G.is_invariant(h)
    check("h invariant and 3-integral", h_inv, True, h_inv)
    h_member = _r_member(h, [fL, gL], p)
    check("h not in ZZ_(3)[f, g]", not h_member, False, h_member)

    phi_f, phi_g, phi_h = (map_coefficients(q) for q in (fL, gL, h))
    check("phi(f) = f'^2", phi_f == expF["f'"] ** 2, format_poly(expF["f'"] ** 2), phi_f)
    check("phi(h) = g' up to a unit", _unit_multiple(phi_h, expF["g'"]), EXPECTED_S3["g'"], phi_h)
    phi_g_unit = _unit_multiple(phi_g, expF["f'"] ** 3)

    v = decide_dvr(lattice_s3(), p)
    check("verdict", v.conclusion == NOT_POLYNOMIAL, NOT_POLYNOMIAL, v.conclusion)
    check("certificates", v.certificates_verified, True, v.certificates_verified)

    yes = lambda b: "true" if b else "false"
    lines = [
        "S3 acting on ZZ_(3)^2, generated by [[1,3],[0,-1]] and [[-2,-3],[1,2]]",
        f"over QQ: degrees {sorted(k.degrees)}",
        f"  f  = {format_poly(f) if f else '-'}",
        f"  g  = {format_poly(g) if g else '-'}",
        f"over GF(3): degrees {sorted(fgen.degrees)}",
        f"  f' = {format_poly(f1) if f1 else '-'}",
        f"  g' = {format_poly(g1) if g1 else '-'}",
        f"reduction injective: {yes(red.injective)} (image order {red.image_order})",
        f"g²−4f³ divisible by 27: {yes(div27)}",
        f"h = (g²−4f³)/27 = {format_poly(h)}",
        f"h invariant with 3-integral coefficients: {yes(h_inv)}",
        f"h in ZZ_(3)[f, g]: {yes(h_member)}",
        f"φ(f) = {format_poly(phi_f)}" + (" = f'^2" if checks["phi(f) = f'^2"] else ""),
        f"φ(g) = {format_poly(phi_g)}"
        + (" (a unit multiple of f'^3)" if phi_g_unit else ""),
        f"φ(h) = {format_poly(phi_h)}" + _unit_note(phi_h, expF["g'"], "g'"),
    ]
    lines.append(f"verdict: {v.conclusion}")

    report = {
        "schema": SCHEMA,
        "command": "example-s3",
        "k_generators": _terms([q for q in (f, g) if q is not None]),
        "f_generators": _terms([q for q in (f1, g1) if q is not None]),
        "image_order": red.image_order,
        "injective": red.injective,
        "h": format_poly(h),
        "phi": {"f": format_poly(phi_f), "g": format_poly(phi_g), "h": format_poly(phi_h)},
        "phi_g_unit_multiple_of_f1_cubed": phi_g_unit,
        "checks": checks,
        "verdict": v.to_json(),
        "reproduced": not mismatches,
    }
    return report, lines, mismatches


def _abort(checks, mismatches):
    report = {"schema": SCHEMA, "command": "example-s3", "checks": checks, "reproduced": False}
    return report, ["example could not be completed"], mismatches


def cmd_example_s3(args, out=sys.stdout) -> int:
    report, lines, mismatches = example_s3_report()
    if mismatches:
        lines.append("MISMATCH:")
        lines += [f"  {m}" for m in mismatches]
    _emit(report, lines, args.json, out)
    return EXIT_MISMATCH if mismatches else EXIT_OK


# -- ideal --------------------------------------------------------------------------

def _parse_gens(ring: QuadraticRing, text: str):
    if not text:
        raise InputError("--gens is required")
    try:
        return [ring.parse(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"cannot parse generators {text!r}: {exc}") from exc


def cmd_ideal(args, out=sys.stdout) -> int:
    if args.d is None:
        raise InputError("--d is required")
    try:
        ring = QuadraticRing(args.d)
        A = ideal_from_generators(ring, _parse_gens(ring, args.gens))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = {"schema": SCHEMA, "command": "ideal", "op": args.op, "ring": str(ring),
              "ideal": A.to_json()}
    lines = [f"A = {A} in {ring}"]
    op = args.op
    if op == "norm":
        report["result"] = A.norm()
        lines.append(f"N(A) = {A.norm()}")
    elif op == "mul":
        try:
            B = ideal_from_generators(ring, _parse_gens(ring, args.other))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        C = A * B
        report["other"] = B.to_json()
        report["result"] = C.to_json()
        lines += [f"B = {B}", f"A*B = {C}, norm {C.norm()}"]
    elif op == "pow":
        if args.exponent is None or args.exponent < 0:
            raise InputError("--exponent must be a non-negative integer")
        C = A ** args.exponent
        report["exponent"] = args.exponent
        report["result"] = C.to_json()
        lines.append(f"A^{args.exponent} = {C}, norm {C.norm()}")
    elif op == "principal":
        pr = is_principal(A)
        report["result"] = {"principal": pr.principal,
                            "generator": ring.format(pr.generator) if pr.principal else None}
        lines.append(f"principal: generated by {ring.format(pr.generator)}" if pr.principal
                     else "not principal")
    elif op == "localize":
        if args.q is None:
            raise InputError("--q is required for localize")
        try:
            loc = local_principal_generator(A, args.q)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        report["result"] = loc.to_json()
        lines += [f"primes above {args.q}: " + ", ".join(str(P) for P in loc.primes),
                  f"local generator at {args.q}: {ring.format(loc.generator)} "
                  f"(certified: {str(loc.certified).lower()})"]
    elif op == "grading-check":
        try:
            rep = blowup_grading_check(A, args.m_max)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        report["result"] = rep
        lines.append(f"I^a * I^b = I^(a+b) for a+b <= {args.m_max}: "
                     f"{str(rep['products_consistent']).lower()}")
        lines.append(f"N(I^m) = N(I)^m: {str(rep['norms_multiplicative']).lower()}")
        for row in rep["powers"]:
            gen = f"principal ({row['generator']})" if row["principal"] else "not principal"
            lines.append(f"  m={row['m']}: norm {row['norm']}, {gen}")
    _emit(report, lines, args.json, out)
    return EXIT_OK


# -- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="representation JSON file")
    common.add_argument("--group", metavar="NAME", help=f"built-in group: {', '.join(FIXTURES)}")
    common.add_argument("--prime", type=int, metavar="P")
    common.add_argument("--degree-bound", type=int, metavar="D")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--no-verify", action="store_true",
                        help="skip independent re-verification of certificates")

    parser = argparse.ArgumentParser(
        prog="arithinv",
        description="Invariant rings of finite matrix groups over QQ, GF(p), ZZ_(p) and ZZ.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common], help="minimal homogeneous generators")
    sub.add_parser("decide", parents=[common], help="is the invariant ring polynomial?")
    sub.add_parser("example-s3", parents=[common], help="reproduce the S3 example over ZZ_(3)")
    ideal = sub.add_parser("ideal", parents=[common], help="ideal arithmetic in ZZ[sqrt(d)]")
    ideal.add_argument("--d", type=int, help="negative squarefree d, d = 2 or 3 mod 4")
    ideal.add_argument("--gens", help='comma-separated generators, e.g. "2,1+s" (s = sqrt(d))')
    ideal.add_argument("--op", default="norm",
                       choices=["mul", "pow", "norm", "principal", "localize", "grading-check"])
    ideal.add_argument("--other", help="generators of the second factor for --op mul")
    ideal.add_argument("--exponent", type=int, help="exponent for --op pow")
    ideal.add_argument("--q", type=int, help="rational prime for --op localize")
    ideal.add_argument("--m-max", type=int, default=4, help="top power for --op grading-check")
    return parser


COMMANDS = {
    "invariants": cmd_invariants,
    "decide": cmd_decide,
    "example-s3": cmd_example_s3,
    "ideal": cmd_ideal,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
