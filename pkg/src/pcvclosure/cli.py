"""Command-line interface.

Every command builds one record (a dict) per result and prints it either
as ``key: value`` lines or, with ``--json``, as one JSON object per line.
Exit codes: 0 success/member/equal, 1 negative verdict, 2 input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from . import demo
from .lexgroup import INFINITY, RankError
from .parsing import ParseError, parse_expr, parse_kpoly
from .pcvseq import NotPseudoConvergent, PCSeq, classify_report, closure_describe, closure_equal
from .regbasis import expand_in_basis, hn_build, hn_value, oracle_in_closure
from .seqfile import SequenceFileError, format_spec, load_sequence
from .valfield import format_element, format_kpoly, in_V, valuation


class UsageError(ValueError):
    pass


def _jv(g) -> Any:
    """JSON form of a group element."""
    if g is None:
        return None
    if g is INFINITY:
        return "inf"
    return list(g.coords)


class Reporter:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, record: dict) -> None:
        if self.as_json:
            print(json.dumps(record, sort_keys=False), file=self.stream)
            return
        for key, value in record.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                print(f"{key}:", file=self.stream)
                for item in value:
                    print("  " + ", ".join(f"{k}={_human(v)}" for k, v in item.items()), file=self.stream)
            else:
                print(f"{key}: {_human(value)}", file=self.stream)


def _human(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_human(x)}" for k, x in v.items())
    if isinstance(v, list) and all(isinstance(x, int) for x in v) and v:
        return "(" + ",".join(str(x) for x in v) + ")"
    if isinstance(v, list):
        return "[" + ", ".join(_human(x) for x in v) + "]"
    return str(v)


def _load(path: str) -> PCSeq:
    return load_sequence(path)


def cmd_validate(args, rep: Reporter) -> int:
    E = load_sequence(args.file, validate=False)
    try:
        E.validate()
    except NotPseudoConvergent as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        rep.emit({"command": "validate", "file": args.file, "verdict": "invalid",
                  "index": exc.index, "reason": exc.reason})
        return 2
    prefix, tail = E.gauge_form()
    rep.emit({"command": "validate", "file": args.file, "verdict": "pseudo-convergent",
              "rank": E.rank, "n0": E.n0, "prefix_gauge": [_jv(g) for g in prefix],
              "tail_gauge_base": _jv(tail.base), "tail_gauge_step": _jv(tail.step)})
    return 0


def cmd_term(args, rep: Reporter) -> int:
    E = _load(args.file)
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    rep.emit({"command": "term", "n": args.n, "value": format_element(E.term(args.n)),
              "valuation": _jv(valuation(E.term(args.n)))})
    return 0


def cmd_gauge(args, rep: Reporter) -> int:
    E = _load(args.file)
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    rep.emit({"command": "gauge", "n": args.n, "gauge": _jv(E.gauge_at(args.n)),
              "diff": format_element(E.diff(args.n))})
    return 0


def cmd_closure(args, rep: Reporter) -> int:
    E = _load(args.file)
    d = closure_describe(E)
    rep.emit({
        "command": "closure",
        "sigma": format_element(d.sigma),
        "breadth": str(d.breadth),
        "prefix_cosets": [
            {"k": c.k, "center": format_element(c.center), "scale": format_element(c.scale),
             "prime": str(c.prime)}
            for c in d.prefix_cosets
        ],
        "tail_cosets": f"s_k + c_k*{d.tail_prime} for k >= {E.n0}, c_k = ({format_element(E.tail.u)})*t^(k*{E.tail.b})",
        "tail_prime": str(d.tail_prime),
    })
    return 0


def cmd_classify(args, rep: Reporter) -> int:
    E = _load(args.file)
    alpha = parse_expr(args.elem, E.rank)
    report = classify_report(E, alpha)
    oracle = oracle_in_closure(E, alpha, args.horizon)
    rep.emit({
        "command": "classify",
        "element": format_element(alpha),
        "verdict": str(report.verdict),
        "member": report.verdict.member,
        "v_alpha_minus_sigma": _jv(report.v_diff),
        "index": report.k,
        "v_alpha_minus_s_k": _jv(report.v_near),
        "oracle": {"passed": oracle.passed, "horizon": oracle.horizon,
                   "witness": oracle.witness, "valuation": _jv(oracle.valuation)},
    })
    return 0 if report.verdict.member else 1


def cmd_equal(args, rep: Reporter) -> int:
    E, F = _load(args.file_e), _load(args.file_f)
    cert = closure_equal(E, F)
    rep.emit({"command": "equal", "equal": cert.equal, "checked": list(cert.checked),
              "failure": cert.failure, "failing_index": cert.failing_index})
    return 0 if cert.equal else 1


def cmd_hn(args, rep: Reporter) -> int:
    E = _load(args.file)
    if not 0 <= args.n <= args.max_degree:
        raise UsageError(f"n must lie in 0..{args.max_degree} (see --max-degree)")
    record: dict[str, Any] = {"command": "hn", "n": args.n, "H_n": format_kpoly(hn_build(E, args.n))}
    if args.eval is not None:
        alpha = parse_expr(args.eval, E.rank)
        value = hn_value(E, args.n, alpha)
        record.update({"element": format_element(alpha), "value": format_element(value),
                       "valuation": _jv(valuation(value)), "in_V": in_V(value)})
    rep.emit(record)
    return 0


def cmd_expand(args, rep: Reporter) -> int:
    E = _load(args.file)
    f = parse_kpoly(args.poly, E.rank)
    if f.degree > args.max_degree:
        raise UsageError(f"degree {f.degree} exceeds --max-degree {args.max_degree}")
    exp = expand_in_basis(E, f)
    rep.emit({
        "command": "expand",
        "poly": format_kpoly(f),
        "coefficients": [
            {"n": n, "a_n": format_element(a), "valuation": _jv(valuation(a)), "in_V": in_V(a)}
            for n, a in enumerate(exp.coeffs)
        ],
        "integer_valued": exp.in_V(),
    })
    return 0


def cmd_print_spec(args, rep: Reporter) -> int:
    E = load_sequence(args.file, validate=False)
    text = format_spec(E)
    if rep.as_json:
        rep.emit({"command": "print-spec", "spec": text})
    else:
        rep.stream.write(text)
    return 0


def cmd_demo(args, rep: Reporter) -> int:
    if args.which != "nontopological":
        raise UsageError(f"unknown demo {args.which!r}")
    if args.rank < 2:
        raise UsageError("the nontopological demo needs --rank >= 2")
    checks = demo.nontopological(args.rank, args.horizon)
    if rep.as_json:
        for c in checks:
            rep.emit({"command": "demo", "check": c.name, "expected": c.expected,
                      "observed": c.observed, "ok": c.ok})
    else:
        width = max(len(c.name) for c in checks)
        for c in checks:
            mark = "ok  " if c.ok else "FAIL"
            print(f"{mark} {c.name:<{width}}  {c.observed}", file=rep.stream)
            if not c.ok:
                print(f"     {'':<{width}}  expected {c.expected}", file=rep.stream)
    return 0 if all(c.ok for c in checks) else 1


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # subcommands get SUPPRESS defaults so flags given before the subcommand survive
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--json", action="store_true", default=d(False),
                       help="machine-readable output, one JSON object per line")
    flags.add_argument("--horizon", type=int, default=d(30),
                       help="regular-basis oracle horizon N (default 30)")
    flags.add_argument("--max-degree", type=int, default=d(32),
                       help="largest polynomial degree accepted (default 32)")
    return flags


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(False)
    parser = argparse.ArgumentParser(
        prog="pcvclosure", parents=[_global_flags(True)],
        description="Polynomial closure of pseudo-convergent sequences over Q(t1..tr) with a lex valuation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check pseudo-convergence")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    for name, func, helptext in (("term", cmd_term, "the term s_n"), ("gauge", cmd_gauge, "the gauge value delta_n")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.add_argument("n", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("closure", parents=[common], help="describe the polynomial closure")
    p.add_argument("file")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("classify", parents=[common], help="decide closure membership of an element")
    p.add_argument("file")
    p.add_argument("--elem", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("equal", parents=[common], help="decide whether two closures coincide")
    p.add_argument("file_e")
    p.add_argument("file_f")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("hn", parents=[common], help="the regular basis polynomial H_n")
    p.add_argument("file")
    p.add_argument("n", type=int)
    p.add_argument("--eval")
    p.set_defaults(func=cmd_hn)

    p = sub.add_parser("expand", parents=[common], help="expand a polynomial in the regular basis")
    p.add_argument("file")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("print-spec", parents=[common], help="re-emit a sequence file in canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_print_spec)

    p = sub.add_parser("demo", parents=[common], help="scripted counterexamples")
    p.add_argument("which", choices=["nontopological"])
    p.add_argument("--rank", type=int, default=2)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Reporter(args.json)
    try:
        return args.func(args, rep)
    except (ParseError, SequenceFileError, NotPseudoConvergent, RankError, UsageError,
            OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
