"""Command-line front end.

Subcommands: arith, irreducible, lift, stabilize, witness, classify.
Text goes to stdout; --json writes the canonical certificate to a file.
Exit status: 0 on success, 1 on verification failure (including tampered
certificates under --check), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import re
import sys

from .errors import AlgebraError, ParseError
from .fields import FieldConfig, RationalField, TOWER_SYMBOL
from .jsonio import read_certificate, write_certificate
from .parser import parse_poly, parse_tower_element
from .poly import UPoly, irreducible_fq, irreducible_transfer, factor_oracle
from .primetower import (
    lift_prime,
    report_from_dict,
    report_to_dict,
    stabilization_index,
    tower_prime,
    verify_report,
)
from .tower import PerfectClosureField
from .witness import (
    AlgebraDescriptor,
    build_witness_chain,
    chain_from_dict,
    chain_to_dict,
    classify_algebra,
    reverify_verdict,
    verdict_to_dict,
    verify_chain_relation,
    verify_strict_ascent,
)


def _field_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="prime characteristic")
    parser.add_argument("--q-degree", type=int, default=1, dest="q_degree",
                        help="extension degree d of F_q over F_p (default 1)")
    parser.add_argument("--modulus", default=None,
                        help="monic defining polynomial of F_q in w, required when d > 1")
    parser.add_argument("--vars", default="s",
                        help="comma-separated coefficient variables (default: s)")
    parser.add_argument("--json", default=None, metavar="FILE",
                        help="also write the canonical certificate to FILE")


def _build_config(args, extra_tower_var: bool = False) -> FieldConfig:
    names = tuple(v for v in (x.strip() for x in args.vars.split(",")) if v)
    if TOWER_SYMBOL in names:
        raise ParseError(f"{TOWER_SYMBOL!r} is reserved for the tower indeterminate")
    if extra_tower_var:
        names = names + (TOWER_SYMBOL,)
    if args.q_degree > 1:
        if not args.modulus:
            raise ParseError("--modulus is required when --q-degree > 1")
        base = RationalField(FieldConfig(args.p))
        mod_poly = parse_poly(args.modulus, base, symbol="w")
        modulus = tuple(c.num.constant_value()[0] if not c.is_zero else 0 for c in
                        (mod_poly.coeff(i) for i in range(mod_poly.degree + 1)))
        return FieldConfig(args.p, args.q_degree, modulus, names)
    return FieldConfig(args.p, vars=names)


def _maybe_write(args, data) -> None:
    if args.json:
        write_certificate(args.json, data)
        print(f"certificate written to {args.json}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_arith(args) -> int:
    config = _build_config(args, extra_tower_var=True)
    field = PerfectClosureField(config)
    value = parse_tower_element(args.expr, field)
    print(f"value = {field.format(value)}")
    print(f"level = {value.level}")
    return 0


def _cmd_irreducible(args) -> int:
    config = _build_config(args)
    field = RationalField(config)
    poly = parse_poly(args.poly, field, symbol="X").monic()
    if args.transfer:
        direct = irreducible_transfer(poly, steps=0)
        outside = any(c.pth_root(1) is None for c in poly.coeffs)
        verdict = direct and outside
        print(f"g irreducible: {_yn(direct)}")
        print(f"some coefficient outside K^p: {_yn(outside)}")
        print(f"g(X^p) irreducible: {_yn(verdict)}")
    else:
        if all(c.is_constant for c in poly.coeffs):
            verdict = irreducible_fq(poly)
        else:
            factors = factor_oracle(poly)
            verdict = len(factors) == 1 and factors[0][1] == 1
            if not verdict:
                for g, e in factors:
                    print(f"factor: {g}  multiplicity {e}")
        print(f"irreducible: {_yn(verdict)}")
    return 0


def _cmd_lift(args) -> int:
    config = _build_config(args)
    field = RationalField(config)
    gen = parse_poly(args.gen, field, symbol=TOWER_SYMBOL).monic()
    prime = tower_prime(gen)
    case, lifted = lift_prime(prime)
    print(f"case: {case.name}")
    print(f"level: {lifted.level}")
    print(f"lifted generator: {lifted.gen}")
    return 0


def _cmd_stabilize(args) -> int:
    if args.check:
        data = read_certificate(args.check)
        report = report_from_dict(data)
        ok = verify_report(report) and data == report_to_dict(report)
        print(f"verification: {'PASS' if ok else 'FAIL'}")
        return 0 if ok else 1
    if not args.f0:
        raise ParseError("stabilize requires a generator or --check FILE")
    config = _build_config(args)
    field = RationalField(config)
    f0 = parse_poly(args.f0, field, symbol=TOWER_SYMBOL).monic()
    report = stabilization_index(f0, overhang=args.overhang)
    print(f"m0 = {report.m0}")
    for m, g in enumerate(report.gens):
        print(f"level {m}: {g}")
    print(f"verified: {_yn(report.verified)}")
    _maybe_write(args, report_to_dict(report))
    return 0 if report.verified else 1


def _cmd_witness(args) -> int:
    if args.check:
        data = read_certificate(args.check)
        chain, ascent = chain_from_dict(data)
        ok = (
            verify_chain_relation(chain)
            and verify_strict_ascent(chain) == ascent
            and all(ascent)
        )
        print(f"verification: {'PASS' if ok else 'FAIL'}")
        return 0 if ok else 1
    config = _build_config(args)
    field = PerfectClosureField(config)
    text = args.element if args.element else (config.vars[0] if config.vars else "")
    if not text:
        raise ParseError("witness requires a transcendental element")
    element = parse_tower_element(text, field)
    chain = build_witness_chain(field, element, args.depth)
    ascent = verify_strict_ascent(chain)
    for m, alpha in enumerate(chain.alphas):
        print(f"alpha_{m} = {alpha}")
    print("ascent: " + " ".join(_yn(v) for v in ascent))
    ok = all(ascent) and verify_chain_relation(chain)
    print(f"strictly ascending to depth {chain.depth}: {_yn(ok)}")
    _maybe_write(args, chain_to_dict(chain, ascent))
    return 0 if ok else 1


_DESCRIPTOR_RE = re.compile(r"^([A-Z_]+)\s*(?:\((.*)\))?$")


def _parse_descriptor(text: str, config: FieldConfig) -> AlgebraDescriptor:
    m = _DESCRIPTOR_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed descriptor {text!r}")
    family, body = m.group(1), (m.group(2) or "").strip()
    if family == "POLY_RING":
        return AlgebraDescriptor.poly_ring(int(body))
    if family == "RATFUNC":
        return AlgebraDescriptor.ratfunc(int(body))
    if family == "PERFECT_CLOSURE_RATFUNC":
        return AlgebraDescriptor.perfect_closure_ratfunc(int(body))
    if family == "QUOT_POLY":
        base = RationalField(FieldConfig(config.p, config.d, config.modulus, ()))
        return AlgebraDescriptor.quot_poly(parse_poly(body, base, symbol="X"))
    if family == "POWER_SERIES":
        parts = [x.strip() for x in body.split(",") if x.strip()]
        n = int(parts[0])
        residue_degree = 1
        if len(parts) > 1:
            spec = parts[1]
            if spec.upper().startswith("F"):
                q_prime = int(spec[1:])
                degree = 0
                value = q_prime
                while value > 1 and value % config.p == 0:
                    value //= config.p
                    degree += 1
                if value != 1 or degree < 1:
                    raise ParseError(f"{spec} is not a power of the characteristic")
                residue_degree = degree
            else:
                residue_degree = int(spec)
        return AlgebraDescriptor.power_series(n, residue_degree)
    if family == "LOCAL_RESIDUE_ALGEBRAIC":
        return AlgebraDescriptor.local_algebraic_residue()
    raise ParseError(f"unknown descriptor family {family!r}")


def _cmd_classify(args) -> int:
    config = _build_config(args)
    if args.check:
        data = read_certificate(args.check)
        ok = reverify_verdict(data, config)
        print(f"verification: {'PASS' if ok else 'FAIL'}")
        return 0 if ok else 1
    if not args.descriptor:
        raise ParseError("classify requires a descriptor or --check FILE")
    descriptor = _parse_descriptor(args.descriptor, config)
    verdict = classify_algebra(descriptor, config, depth=args.depth, overhang=args.overhang)
    print(f"noetherian: {_yn(verdict.noetherian)}")
    print(f"rule: {verdict.rule}")
    if verdict.witness is not None:
        print(f"witness chain depth: {verdict.witness.depth} (all ascents strict)")
    if verdict.sample_report is not None:
        print(f"sample stabilization: m0 = {verdict.sample_report.m0}, "
              f"verified {_yn(verdict.sample_report.verified)}")
    _maybe_write(args, verdict_to_dict(verdict, config))
    return 0


def _yn(flag: bool) -> str:
    return "true" if flag else "false"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perfclose",
        description="Exact arithmetic and certificates for perfect-closure towers "
        "of function fields in characteristic p. Non-monic generators are scaled monic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_arith = sub.add_parser("arith", help="evaluate a tower-field expression")
    _field_options(p_arith)
    p_arith.add_argument("expr", help="expression, e.g. 't^(1/2) + s^(1/2)'")
    p_arith.set_defaults(fn=_cmd_arith)

    p_irr = sub.add_parser("irreducible", help="irreducibility verdicts over F_q(vars)")
    _field_options(p_irr)
    p_irr.add_argument("poly", help="monic polynomial in X, e.g. 'X^2 + s'")
    p_irr.add_argument("--transfer", action="store_true",
                       help="report the verdict for g(X^p) via the transfer criterion")
    p_irr.set_defaults(fn=_cmd_irreducible)

    p_lift = sub.add_parser("lift", help="one prime-lifting step up the tower")
    _field_options(p_lift)
    p_lift.add_argument("gen", help="monic irreducible generator in t")
    p_lift.set_defaults(fn=_cmd_lift)

    p_stab = sub.add_parser("stabilize", help="stabilization exponent and certificate")
    _field_options(p_stab)
    p_stab.add_argument("f0", nargs="?", default=None, help="monic irreducible generator in t")
    p_stab.add_argument("--overhang", type=int, default=3,
                        help="extra verified levels past the stabilization exponent")
    p_stab.add_argument("--check", default=None, metavar="FILE",
                        help="re-verify an existing certificate instead")
    p_stab.set_defaults(fn=_cmd_stabilize)

    p_wit = sub.add_parser("witness", help="strictly-ascending ideal chain in the closure")
    _field_options(p_wit)
    p_wit.add_argument("--element", default=None,
                       help="transcendental element (default: the first variable)")
    p_wit.add_argument("--depth", type=int, default=5, help="chain depth (default 5)")
    p_wit.add_argument("--check", default=None, metavar="FILE",
                       help="re-verify an existing certificate instead")
    p_wit.set_defaults(fn=_cmd_witness)

    p_cls = sub.add_parser("classify", help="noetherianity verdict for an algebra descriptor")
    _field_options(p_cls)
    p_cls.add_argument("descriptor", nargs="?", default=None,
                       help="e.g. POLY_RING(2), RATFUNC(1), PERFECT_CLOSURE_RATFUNC(1), "
                            "QUOT_POLY(X^2+X+1), POWER_SERIES(3,F4), LOCAL_RESIDUE_ALGEBRAIC")
    p_cls.add_argument("--depth", type=int, default=5, help="witness depth (default 5)")
    p_cls.add_argument("--overhang", type=int, default=3, help="sample report overhang")
    p_cls.add_argument("--check", default=None, metavar="FILE",
                       help="re-verify an existing certificate instead")
    p_cls.set_defaults(fn=_cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
