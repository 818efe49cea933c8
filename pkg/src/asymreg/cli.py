"""Command-line interface: ``asymreg {reg,rho,powers,closure-powers,selftest}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .groebner import Ideal, NotHomogeneousError
from .newton import NotMonomialError, closure_experiment
from .poly import NEG_INF, ParseError, Ring, field_from_json
from .reductions import DEFAULT_CAP, ConsistencyError, rho, run_experiment
from .regularity import FieldTooSmallError, RegularityError, regularity_cyclic

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RETRIES = 3
EXIT_NOT_MONOMIAL = 4
EXIT_INCONSISTENT = 5

log = logging.getLogger("asymreg")


class ProblemError(ValueError):
    pass


def load_problem(path, field_override=None, order_override=None) -> Ideal:
    """Read a problem file: ``{"ring": {...}, "ideal": [...], "order": ...}``."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemError(f"cannot read problem file {path}: {exc}") from None
    return problem_from_dict(data, field_override, order_override)


def problem_from_dict(data: dict, field_override=None, order_override=None) -> Ideal:
    try:
        ring_spec = data["ring"]
        variables = ring_spec["variables"]
        gens = data["ideal"]
    except (KeyError, TypeError) as exc:
        raise ProblemError(f"problem file is missing {exc}") from None
    if field_override is not None:
        fld = field_from_json(field_override)
    else:
        fld = field_from_json(ring_spec.get("coefficients", "QQ"))
    order = order_override or data.get("order") or ring_spec.get("order") or "grevlex"
    try:
        ring = Ring(variables, fld, order)
    except ValueError as exc:
        raise ProblemError(str(exc)) from None
    if not isinstance(gens, list):
        raise ProblemError("'ideal' must be a list of polynomial strings")
    return Ideal(ring, [ring.parse(g) for g in gens])


def _enc(v):
    return "-inf" if v == NEG_INF else v


def _write_report(path, command: str, seed, body: dict, started: float) -> None:
    report = {
        "tool": "asymreg",
        "version": __version__,
        "command": command,
        "seed": seed,
        "result": body,
        "wall_time": round(time.perf_counter() - started, 6),
    }
    Path(path).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def cmd_reg(args, I: Ideal, started) -> int:
    cert = regularity_cyclic(I, args.seed)
    if I.is_zero():
        reg_I = NEG_INF
    elif cert.degenerate:
        reg_I = None
    else:
        reg_I = cert.reg + 1
    if cert.degenerate:
        print(f"degenerate input: {cert.degenerate}")
    print(f"reg(I) = {_enc(reg_I) if reg_I is not None else 'undefined'}, reg(R/I) = {_enc(cert.reg)}")
    print(f"a-values: {[_enc(a) for a in cert.a_values]}")
    if cert.sequence:
        print(f"filter-regular sequence: {', '.join(cert.sequence)}")
    print(f"seed: {args.seed}, verified: {cert.verified}, rejected seeds: {cert.rejected_seeds}")
    if args.json:
        body = {"ideal": I.to_strings(), "reg_ideal": _enc(reg_I) if reg_I is not None else None,
                "certificate": cert.to_json()}
        _write_report(args.json, "reg", args.seed, body, started)
    return EXIT_OK


def cmd_rho(args, I: Ideal, started) -> int:
    if I.is_zero() or I.is_unit():
        print("degenerate input: rho needs a nonzero proper ideal")
        if args.json:
            _write_report(args.json, "rho", args.seed, {"ideal": I.to_strings(), "degenerate": True}, started)
        return EXIT_OK
    r, witness, capped = rho(I, args.cap)
    print(f"rho(I) = {r}{' (capped upper bound)' if capped else ''}")
    print(f"witness J = ({', '.join(witness.J.to_strings())}), I^(n+1) = J I^n at n = {witness.n}")
    if capped:
        print(f"warning: reduction search hit the cap {args.cap}; rho is an upper bound")
    if args.json:
        body = {"ideal": I.to_strings(), "rho": r, "capped": capped, "witness": witness.to_json(),
                "n_cap": args.cap}
        _write_report(args.json, "rho", args.seed, body, started)
    return EXIT_OK


def _print_report(rep) -> None:
    if rep.degenerate:
        print(f"degenerate input: {rep.degenerate}")
        return
    print(f"reg sequence (n = 1..{rep.N}): {[_enc(v) for v in rep.reg_sequence]}")
    print(f"rho(I) = {rep.rho}{' (capped upper bound)' if rep.rho_capped else ''}")
    if rep.tail:
        t = rep.tail
        print(f"tail observed: reg = {t.slope} n + {t.intercept} for n >= {t.onset}")
    else:
        print("tail not stabilized")
    for name, val in rep.checks.items():
        print(f"check {name}: {val}")
    for w in rep.warnings:
        print(f"warning: {w}")


def _experiment(args, I, started, kind) -> int:
    fn = run_experiment if kind == "powers" else closure_experiment
    try:
        rep = fn(I, args.max_n, args.cap, args.seed)
        code = EXIT_OK
    except ConsistencyError as exc:
        rep = exc.report
        code = EXIT_INCONSISTENT
        print(f"consistency failure: {exc}", file=sys.stderr)
    if kind == "closure-powers" and not rep.degenerate:
        for n, gens in enumerate(rep.extra["closures"], 1):
            print(f"closure(I^{n}) = ({', '.join(gens)})")
        print(f"stability closure(I^(n+1)) == I closure(I^n), n = 1..{rep.N - 1}: {rep.extra['stability']}")
    _print_report(rep)
    if args.json:
        _write_report(args.json, kind, args.seed, rep.to_json(), started)
    return code


def cmd_selftest(args) -> int:
    from .selftest import run_suites

    results = run_suites()
    ok = all(r.passed for r in results)
    print("selftest: " + ("all suites passed" if ok else "FAILURES"))
    return EXIT_OK if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for the coordinate change (default 0)")
    common.add_argument("--order", default=None, help="monomial order (default grevlex)")
    common.add_argument("--field", default=None, help='coefficient field override, "QQ" or "GF(p)"')
    common.add_argument("--json", default=None, metavar="PATH", help="write a JSON report")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="reduction exponent cap (default 6)")
    common.add_argument("--max-n", type=int, default=5, help="largest power (default 5)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="asymreg", description=__doc__)
    parser.add_argument("--version", action="version", version=f"asymreg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("reg", "regularity of I and R/I with certificate"),
        ("rho", "minimal reduction degree rho(I)"),
        ("powers", "reg(I^n) experiment"),
        ("closure-powers", "reg of integral closures of powers (monomial ideals)"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("problem", help="problem file (JSON)")
    sub.add_parser("selftest", parents=[common], help="run the property suites")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "selftest":
        return cmd_selftest(args)
    started = time.perf_counter()
    try:
        I = load_problem(args.problem, args.field, args.order)
    except NotHomogeneousError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ProblemError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.command == "reg":
            return cmd_reg(args, I, started)
        if args.command == "rho":
            return cmd_rho(args, I, started)
        if args.command == "powers":
            return _experiment(args, I, started, "powers")
        return _experiment(args, I, started, "closure-powers")
    except NotMonomialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_MONOMIAL
    except (RegularityError, FieldTooSmallError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RETRIES


if __name__ == "__main__":
    sys.exit(main())
