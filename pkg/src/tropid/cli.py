"""Command-line front end: ``tropid check | matrix | poly | bicyclic``.

Exit codes: 0 the identity holds (or no counterexample was found), 1 it fails
or polynomials differ, 2 usage or parse error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bicyclic
from . import matrix as mx
from .identities import (FAILS, HOLDS, MONOIDS, SYMBOLIC_MONOIDS, UNKNOWN, falsify_random,
                         verify_identity, witness_json)
from .poly import DegenerateRegionError, e_equivalent, essential_part
from .scalar import NEG_INF, format_scalar
from .symbolic import parse_identity
from .text import ParseError, parse_matrix, parse_poly, parse_region, poly_arity, read_arg

SCHEMA = "tropid/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(report: dict, as_json: bool, lines: list, out) -> None:
    if as_json:
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _report(command, inputs, verdict, result=None, certificates=None, witness=None, seed=None, started=None):
    return {"schema": SCHEMA, "command": command, "inputs": inputs, "verdict": verdict,
            "result": result, "certificates": certificates, "witness": witness, "seed": seed,
            "timing": {"seconds": round(time.perf_counter() - started, 6) if started else 0.0}}


# --- check ----------------------------------------------------------------

def cmd_check(args, out) -> int:
    started = time.perf_counter()
    identity = parse_identity(read_arg(args.identity))
    monoid, mode = args.monoid, args.mode
    if mode in ("symbolic", "both") and monoid not in SYMBOLIC_MONOIDS:
        raise UsageError(f"symbolic mode supports {', '.join(SYMBOLIC_MONOIDS)}; use --mode random for {monoid}")
    inputs = {"identity": str(identity), "monoid": monoid, "mode": mode,
              "trials": args.trials, "n": args.n}
    lines = [f"identity: {identity}", f"monoid:   {monoid}"]
    certificates = {}
    verdict = None
    witness = None

    if mode in ("symbolic", "both"):
        proof = verify_identity(identity, monoid, seed=args.seed)
        certificates["symbolic"] = proof.to_json()["steps"]
        for s in proof.steps:
            lines.append(f"  [{s.method}] {s.label}: {s.outcome}")
        verdict = proof.verdict
        witness = proof.witness

    if mode in ("random", "both"):
        hit = falsify_random(identity, monoid, args.trials, args.seed, n=args.n)
        certificates["random"] = {"trials": args.trials, "seed": args.seed,
                                  "counterexample_trial": hit[0] if hit else None}
        lines.append(f"  [random] {args.trials} trials, seed {args.seed}: "
                     + ("counterexample at trial %d" % hit[0] if hit else "no counterexample"))
        if hit:
            if verdict == HOLDS:
                raise AssertionError("sampler refuted an identity the symbolic pipeline proved")
            verdict = FAILS
            witness = witness_json(identity, hit[1])
        elif verdict is None:
            verdict = "NoCounterexample"

    if witness:
        lines.append("witness:")
        for x, m in witness["assignment"].items():
            lines.append(f"  {x} = {m}")
        lines.append(f"  lhs = {witness['lhs']}")
        lines.append(f"  rhs = {witness['rhs']}")
    lines.append(f"verdict: {verdict}")
    _emit(_report("check", inputs, verdict, None, certificates, witness, args.seed, started),
          args.json, lines, out)
    if verdict == FAILS:
        return EXIT_FAIL
    if verdict == UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_OK


# --- matrix ---------------------------------------------------------------

def _matrix_text(value):
    if isinstance(value, mx.TropMatrix):
        return mx.format_matrix(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return format_scalar(value)


def cmd_matrix(args, out) -> int:
    started = time.perf_counter()
    mats = [mx.TropMatrix(parse_matrix(read_arg(t))) for t in args.matrices]
    if not mats:
        raise UsageError("at least one matrix is required")
    op = args.op
    a = mats[0]
    extra = {}
    try:
        if op == "perm":
            value, count = mx.permanent_with_count(a)
            extra["attaining_permutations"] = count
        elif op == "adjoint":
            value = mx.adjoint(a)
        elif op == "nabla":
            if mx.permanent(a) is NEG_INF:
                raise UsageError("permanent is -inf so nabla is undefined; use --op ginv for a generalized inverse")
            value = mx.nabla(a)
        elif op == "ginv":
            value = mx.generalized_inverse(a)
            extra["AgA_equals_A"] = mx.mmul(mx.mmul(a, value), a) == a
            extra["gAg_equals_g"] = mx.mmul(mx.mmul(value, a), value) == value
        elif op == "mtrace":
            value = mx.mtrace(a)
        elif op == "singular":
            value = mx.is_singular(a)
            extra["attaining_permutations"] = mx.permanent_with_count(a)[1]
        elif op == "rank":
            value = mx.has_full_rank(a)
            extra["meaning"] = "true iff rank is n (not tropically singular)"
        elif op == "pow":
            if args.k is None or args.k < 0:
                raise UsageError("--op pow needs --k K with K >= 0")
            value = mx.mpow(a, args.k)
        elif op == "mul":
            if len(mats) < 2:
                raise UsageError("--op mul needs at least two matrices")
            value = mats[0]
            for m in mats[1:]:
                value = mx.mmul(value, m)
        else:
            raise UsageError(f"unknown matrix op {op!r}")
    except ZeroDivisionError as exc:
        raise UsageError(f"{exc}") from None
    except mx.DimensionError as exc:
        raise UsageError(str(exc)) from None
    text = _matrix_text(value)
    inputs = {"op": op, "matrices": [mx.format_matrix(m) for m in mats], "k": args.k}
    lines = [text] + [f"{k}: {_matrix_text(v) if not isinstance(v, (int, str)) or isinstance(v, bool) else v}"
                      for k, v in extra.items()]
    _emit(_report("matrix", inputs, "ok", text, extra or None, None, None, started), args.json, lines, out)
    return EXIT_OK


# --- poly -----------------------------------------------------------------

def cmd_poly(args, out) -> int:
    started = time.perf_counter()
    texts = [read_arg(t) for t in args.polys]
    region_text = read_arg(args.region if args.region.startswith("@") else "@" + args.region) if args.region else None
    arity = args.arity
    if arity is None:
        arity = max([poly_arity(t) for t in texts] + [poly_arity(region_text or "")])
    polys = [parse_poly(t, arity) for t in texts]
    try:
        region = parse_region(region_text, arity) if region_text else None
    except DegenerateRegionError as exc:
        raise UsageError(f"degenerate region: {exc}") from None
    inputs = {"op": args.op, "polys": [str(p) for p in polys], "arity": arity,
              "region": region_text.strip() if region_text else None}
    if args.op == "essential":
        if len(polys) != 1:
            raise UsageError("--op essential takes exactly one polynomial")
        ess = essential_part(polys[0], region)
        dropped = [str(m) for m in polys[0].monomials if m not in ess]
        _emit(_report("poly", inputs, "ok", str(ess), {"inessential": dropped}, None, None, started),
              args.json, [str(ess)], out)
        return EXIT_OK
    if args.op == "equiv":
        if len(polys) != 2:
            raise UsageError("--op equiv takes exactly two polynomials")
        verdict = e_equivalent(polys[0], polys[1], region)
        if verdict:
            _emit(_report("poly", inputs, "Equivalent", "Equivalent", None, None, None, started),
                  args.json, ["Equivalent"], out)
            return EXIT_OK
        wit = {"point": [format_scalar(x) for x in verdict.witness],
               "f": format_scalar(verdict.f_value), "g": format_scalar(verdict.g_value)}
        lines = ["Distinct", f"  at x = ({', '.join(wit['point'])}): f = {wit['f']}, g = {wit['g']}"]
        _emit(_report("poly", inputs, "Distinct", "Distinct", None, wit, None, started), args.json, lines, out)
        return EXIT_FAIL
    raise UsageError(f"unknown poly op {args.op!r}")


# --- bicyclic -------------------------------------------------------------

def cmd_bicyclic(args, out) -> int:
    started = time.perf_counter()
    op = args.op
    try:
        if op == "reduce":
            if len(args.args) != 1:
                raise UsageError("--op reduce takes one word")
            value = str(bicyclic.reduce_word(args.args[0]))
        elif op == "mul":
            elems = [bicyclic.parse_elem(a) for a in args.args]
            if not elems:
                raise UsageError("--op mul needs elements")
            acc = elems[0]
            for e in elems[1:]:
                acc = bicyclic.star(acc, e)
            value = str(acc)
        elif op == "repr":
            if len(args.args) != 1:
                raise UsageError("--op repr takes one element")
            value = mx.format_matrix(bicyclic.represent(bicyclic.parse_elem(args.args[0])))
        elif op == "adjan":
            if len(args.args) != 2:
                raise UsageError("--op adjan takes two elements x y")
            x, y = (bicyclic.parse_elem(a) for a in args.args)
            value = "true" if bicyclic.check_adjan_on_B(x, y) else "false"
        else:
            raise UsageError(f"unknown bicyclic op {op!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inputs = {"op": op, "args": list(args.args)}
    _emit(_report("bicyclic", inputs, "ok", value, None, None, None, started), args.json, [value], out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropid", description="Exact max-plus algebra and semigroup identities.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify or refute a semigroup identity")
    c.add_argument("identity", help='e.g. "A B^2 A A B A B^2 A = A B^2 A B A A B^2 A"')
    c.add_argument("--monoid", choices=MONOIDS, default="M2")
    c.add_argument("--mode", choices=("symbolic", "random", "both"), default="symbolic")
    c.add_argument("--trials", type=int, default=10000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--n", type=int, default=None, help="dimension for Dn / Wn (default 2)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("matrix", help="tropical matrix operations")
    m.add_argument("--op", required=True,
                   choices=("perm", "adjoint", "nabla", "ginv", "mtrace", "singular", "rank", "pow", "mul"))
    m.add_argument("--k", type=int, default=None, help="exponent for --op pow")
    m.add_argument("matrices", nargs="+")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_matrix)

    q = sub.add_parser("poly", help="essential parts and e-equivalence")
    q.add_argument("--op", required=True, choices=("essential", "equiv"))
    q.add_argument("polys", nargs="+")
    q.add_argument("--region", default=None, help="file with one 'lhs >= rhs' per line")
    q.add_argument("--arity", type=int, default=None)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_poly)

    b = sub.add_parser("bicyclic", help="bicyclic monoid normal forms and representation")
    b.add_argument("--op", required=True, choices=("reduce", "mul", "repr", "adjan"))
    b.add_argument("args", nargs="*")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bicyclic)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ParseError, UsageError) as exc:
        err.write(f"tropid: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"tropid: error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        err.write(f"tropid: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
