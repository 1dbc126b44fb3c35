"""Command-line front end.

Subcommands drive the library: ``prod`` applies a product rule to two
expressions, ``eval-q`` evaluates the q-zeta map as an exact truncated
series, ``eval-mzv`` computes a numeric partial sum, ``act`` applies a word
to the constant series 1, ``check`` runs one named verification, and
``relations`` enumerates double-shuffle elements of a given weight.

Exit codes: 0 on success, 1 when a requested check fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diamond import load_rule
from .exprparse import ParseError, poly_from_text
from .products import ProductHandle, named_product
from .relations import (enumerate_ds_relations, verify_assoc_comm, verify_ds,
                        verify_ds_identity, verify_dual_stuffle, verify_dualst,
                        verify_duality_tau, verify_generalized_dual,
                        verify_product_hom, verify_q_duality)
from .series import DEFAULT_CUTOFF, DEFAULT_ORDER, QZSeries, act, mzv_partial, zeta_q

CHECK_IDS = ("product-hom", "duality-tau", "ds", "q-duality", "generalized-dual",
             "dual-stuffle", "ds-identity", "assoc-comm", "dualst")
DEFAULT_TOL = 1e-3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qshuffle",
        description="quasi-shuffle products, q-series evaluation and relation checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("prod", help="apply a product to two expressions")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--product", choices=("stuffle", "shuffle", "qstuffle",
                                         "qshuffle", "shsh"))
    p.add_argument("--rule-file", help="user diamond rule (declarative table)")
    add_format(p)

    p = sub.add_parser("eval-q", help="evaluate the q-zeta map as a truncated series")
    p.add_argument("expr")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    add_format(p)

    p = sub.add_parser("eval-mzv", help="numeric partial sum of a zeta value")
    p.add_argument("expr")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    add_format(p)

    p = sub.add_parser("act", help="apply a word to the constant series 1")
    p.add_argument("expr")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--zorder", type=int, default=DEFAULT_ORDER)
    add_format(p)

    p = sub.add_parser("check", help="run a named verification")
    p.add_argument("--check", required=True, choices=CHECK_IDS)
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--w")
    p.add_argument("--seed")
    p.add_argument("--product")
    p.add_argument("--rule-file")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--bound", type=int, default=None)
    add_format(p)

    p = sub.add_parser("relations", help="enumerate double-shuffle relations")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    add_format(p)

    return parser


def _load_rule_file(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return load_rule(handle.read(), name=path)


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise SystemExit(f"check {args.check!r} requires --{name.replace('_', '-')}")


def _run_check(args):
    parse = poly_from_text
    cid = args.check
    if cid == "product-hom":
        _require(args, "product", "u", "v")
        return verify_product_hom(args.product, parse(args.u), parse(args.v),
                                  order=args.order, cutoff=args.cutoff, tol=args.tol)
    if cid == "duality-tau":
        _require(args, "w")
        return verify_duality_tau(parse(args.w), cutoff=args.cutoff, tol=args.tol)
    if cid == "ds":
        _require(args, "u", "v")
        return verify_ds(parse(args.u), parse(args.v), cutoff=args.cutoff, tol=args.tol)
    if cid == "q-duality":
        _require(args, "u", "v")
        return verify_q_duality(parse(args.u), parse(args.v))
    if cid == "generalized-dual":
        _require(args, "seed")
        bound = args.bound if args.bound is not None else 4
        return verify_generalized_dual(parse(args.seed), weight_bound=bound)
    if cid == "dual-stuffle":
        _require(args, "u", "v")
        return verify_dual_stuffle(parse(args.u), parse(args.v))
    if cid == "ds-identity":
        _require(args, "u", "v")
        return verify_ds_identity(parse(args.u), parse(args.v))
    if cid == "assoc-comm":
        rule = _check_rule(args)
        bound = args.bound if args.bound is not None else 7
        return verify_assoc_comm(rule, length_bound=bound)
    if cid == "dualst":
        rule = _check_rule(args)
        _require(args, "u", "v")
        return verify_dualst(rule, parse(args.u, rule.alphabet),
                             parse(args.v, rule.alphabet))
    raise SystemExit(f"unknown check {cid!r}")


def _check_rule(args):
    if args.rule_file:
        return _load_rule_file(args.rule_file)
    if args.product:
        from .diamond import builtin_rule
        return builtin_rule(args.product)
    raise SystemExit(f"check {args.check!r} requires --product or --rule-file")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "prod":
        if args.rule_file:
            rule = _load_rule_file(args.rule_file)
            u = poly_from_text(args.u, rule.alphabet)
            v = poly_from_text(args.v, rule.alphabet)
            result = ProductHandle(rule).product(u, v)
        elif args.product:
            result = named_product(args.product, poly_from_text(args.u),
                                   poly_from_text(args.v))
        else:
            raise SystemExit("prod requires --product or --rule-file")
        if args.format == "json":
            print(json.dumps(result.to_json_dict()))
        else:
            print(result.text())
        return 0

    if args.command == "eval-q":
        series = zeta_q(poly_from_text(args.expr), order=args.order)
        if args.format == "json":
            print(json.dumps(series.to_json_dict()))
        else:
            print(series.text())
        return 0

    if args.command == "eval-mzv":
        value = mzv_partial(poly_from_text(args.expr), cutoff=args.cutoff)
        if args.format == "json":
            print(json.dumps({"value": value, "cutoff": args.cutoff}))
        else:
            print(repr(value))
        return 0

    if args.command == "act":
        poly = poly_from_text(args.expr)
        result = act(poly, QZSeries.one(args.order, args.zorder))
        if args.format == "json":
            print(json.dumps(result.to_json_dict()))
        else:
            print(result.text())
        return 0

    if args.command == "check":
        result = _run_check(args)
        if args.format == "json":
            print(json.dumps(result.to_json_dict()))
        else:
            print(result.text())
        return 0 if result.passed else 1

    if args.command == "relations":
        rows = enumerate_ds_relations(args.weight, cutoff=args.cutoff)
        if args.format == "json":
            payload = [{"relation": poly.to_json_dict(), "residual": residual}
                       for poly, residual in rows]
            print(json.dumps(payload))
        else:
            for poly, residual in rows:
                print(f"{poly.text()}  residual={residual:.3e}")
        return 0

    raise SystemExit(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
