"""Command-line front end.

    abmod decide --prime P 'sentence'        per-prime verdict
    abmod decide --all-primes 'sentence'     verdict over every prime
    abmod reduce 'sentence'                  DNF, padding, replication, gap form
    abmod oracle --prime P [--k K --e E] 'sentence'
    abmod selfcheck [--suite NAME ...]

Exit codes: 0 verdict produced (Inconclusive included), 1 selfcheck failure,
2 input error, 3 resource error.  Output is JSON (schema ``abmod/1``).
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import selfcheck as sc
from .decider import Budget, decide_mod_p
from .errors import InputError, ParseError, ResourceError
from .formula import DEFAULT_DNF_CAP, parse
from .oracle import brute_sat, build_cyclotomic_model, build_local_model
from .serialize import all_primes_json, dumps, envelope, modp_json, reduce_json
from .transfer import FLOOR_BOUND, decide_all_primes

DEFAULT_SEED = 0


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _budget_flags(p: argparse.ArgumentParser):
    p.add_argument("--max-field-deg", type=_positive, default=2, metavar="K", help="largest residue extension degree searched")
    p.add_argument("--max-ram", type=int, default=2, metavar="E", help="largest ramification exponent e (t^(1/p^e))")
    p.add_argument("--precision", type=_positive, default=2, metavar="M", help="largest truncation cap")
    p.add_argument("--enum-cap", type=_positive, default=1 << 12, help="exhaustive search limit per level")
    p.add_argument("--dnf-cap", type=_positive, default=DEFAULT_DNF_CAP, help="largest DNF accepted")
    p.add_argument("--seed", type=int, default=None, help="search seed (default: $ABMOD_SEED or 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abmod", description="Existential sentences over Z^ab/pZ^ab.")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide a sentence at one prime or at all primes")
    which = d.add_mutually_exclusive_group(required=True)
    which.add_argument("--prime", type=int, metavar="P")
    which.add_argument("--all-primes", action="store_true")
    d.add_argument("--prime-bound", type=_positive, default=FLOOR_BOUND, help="small primes checked individually")
    _budget_flags(d)
    d.add_argument("sentence")

    r = sub.add_parser("reduce", help="show the DNF, padded, replicated and gap forms")
    r.add_argument("--dnf-cap", type=_positive, default=DEFAULT_DNF_CAP)
    r.add_argument("sentence")

    o = sub.add_parser("oracle", help="exhaustive check in a finite local or cyclotomic model")
    o.add_argument("--prime", type=int, required=True, metavar="P")
    o.add_argument("--k", type=_positive, default=1)
    o.add_argument("--e", type=int, default=0)
    o.add_argument("--cyclotomic", type=_positive, metavar="N", help="use Z[zeta_N]/p instead of the local level")
    o.add_argument("sentence")

    s = sub.add_parser("selfcheck", help="run the algebraic invariant suites")
    s.add_argument("--suite", action="append", choices=sc.SUITES)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--inject-fault", choices=sc.SUITES, help=argparse.SUPPRESS)

    for p in (d, r, o, s):
        p.add_argument("--json-out", metavar="PATH", help="write JSON here instead of stdout")
        p.add_argument("--timing", action="store_true", help="include elapsed seconds in the output")
    return ap


def resolve_seed(arg) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("ABMOD_SEED")
    if env is None or env == "":
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InputError(f"ABMOD_SEED must be an integer, got {env!r}") from None


def _cmd_decide(args) -> dict:
    s = parse(args.sentence)
    budget = Budget(args.max_field_deg, args.max_ram, args.precision, args.enum_cap, seed=resolve_seed(args.seed))
    if args.all_primes:
        res = decide_all_primes(s, budget, prime_bound=args.prime_bound, dnf_cap=args.dnf_cap)
        return all_primes_json(res)
    res = decide_mod_p(s, args.prime, budget, args.dnf_cap)
    out = modp_json(res)
    out["budget"] = budget.report()
    return out


def _cmd_reduce(args) -> dict:
    return reduce_json(parse(args.sentence), args.dnf_cap)


def _cmd_oracle(args) -> dict:
    s = parse(args.sentence)
    if args.cyclotomic:
        model = build_cyclotomic_model(args.cyclotomic, args.prime)
    else:
        model = build_local_model(args.prime, args.k, args.e)
    ring = model.ring
    sat, w = brute_sat(ring, s.matrix, s.vars)
    out = {"model": model.describe(), "sat": sat}
    if sat:
        out["witness"] = {v: ring.fmt(a) for v, a in w.items()}
    return out


def _cmd_selfcheck(args) -> tuple[dict, int]:
    results = sc.run(args.suite, seed=resolve_seed(args.seed), inject_fault=args.inject_fault)
    rep = sc.report(results)
    for r in results:
        line = f"{r.name}: {r.passed}/{r.total} passed"
        print(line, file=sys.stderr)
    return rep, 0 if rep["ok"] else 1


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    t0 = time.perf_counter()
    code = 0
    try:
        if args.command == "decide":
            payload = _cmd_decide(args)
        elif args.command == "reduce":
            payload = _cmd_reduce(args)
        elif args.command == "oracle":
            payload = _cmd_oracle(args)
        else:
            payload, code = _cmd_selfcheck(args)
    except ParseError as exc:
        payload, code = {"error": "syntax", "message": str(exc), "line": exc.line, "column": exc.col}, 2
    except (InputError, ValueError) as exc:
        payload, code = {"error": "input", "message": str(exc)}, 2
    except ResourceError as exc:
        payload, code = {"error": "resource", "message": str(exc)}, 3
    elapsed = time.perf_counter() - t0 if getattr(args, "timing", False) else None
    text = dumps(envelope(args.command, payload, elapsed))
    if getattr(args, "json_out", None):
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
