"""Command-line front end.

Exit status: 0 member/success, 1 nonmember or a failing suite, 2 inconclusive,
64 usage or literal error, 65 a domain error (e.g. a norm that is infinite).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import __version__
from . import verdict as V
from .core import format_scalar, parse_seq, space
from .duality import DualKind, dual_member, dual_member_via_matrix
from .errors import LiteralError, SeqSpaceError, UnknownSuite
from .matclass import class_check, reduce_and_check
from .operators import apply, parse_operator
from .spaces import basis_vector, member, norm
from .verify import SUITES, verify_suite

EXIT_USAGE = 64
EXIT_DOMAIN = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seqspaces", description="Exact computations in the integrated and differentiated bv spaces.")
    p.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--probe", type=_positive, default=128, help="bound for every finite enumeration")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("transform", parents=[common], help="first n entries of A x")
    s.add_argument("--op", required=True)
    s.add_argument("--seq", required=True)
    s.add_argument("--n", type=_positive, required=True)

    s = sub.add_parser("norm", parents=[common], help="exact norm")
    s.add_argument("--space", required=True)
    s.add_argument("--seq", required=True)

    s = sub.add_parser("member", parents=[common], help="membership verdict")
    s.add_argument("--space", required=True)
    s.add_argument("--seq", required=True)

    s = sub.add_parser("dual-check", parents=[common], help="alpha/beta/gamma dual membership")
    s.add_argument("--space", required=True)
    s.add_argument("--kind", required=True, choices=[k.value for k in DualKind])
    s.add_argument("--seq", required=True)
    s.add_argument("--path", choices=["analytic", "matrix"], default="analytic")

    s = sub.add_parser("classify", parents=[common], help="matrix class (X:Y)")
    s.add_argument("--matrix", required=True)
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)

    s = sub.add_parser("reduce", parents=[common], help="class involving int_bv or d_bv via derived matrices")
    s.add_argument("--matrix", required=True)
    s.add_argument("--class", dest="cls", required=True, help="e.g. int_bv:linf or cs:d_bv")

    s = sub.add_parser("basis", parents=[common], help="basis vector of int_bv or d_bv")
    s.add_argument("--space", required=True)
    s.add_argument("--n", type=_positive, required=True, help="basis index k")

    s = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    s.add_argument("--suite", required=True, help=", ".join(SUITES))
    s.add_argument("--trials", type=_positive, default=100)
    return p


def _reduction(cls: str):
    left, sep, right = cls.partition(":")
    if not sep:
        raise LiteralError(cls, "X:Y with int_bv or d_bv on one side")
    src, dst = space(left), space(right)
    bv = ("int_bv", "d_bv")
    if src.literal in bv:
        return f"from_{src.literal}", dst
    if dst.literal in bv:
        return f"to_{dst.literal}", src
    raise LiteralError(cls, "X:Y with int_bv or d_bv on one side")


def _run(args) -> tuple:
    """Returns (payload, certificate, exit code, text)."""
    verb = args.verb
    if verb == "transform":
        op, x = parse_operator(args.op), parse_seq(args.seq)
        ys = [apply(op, x, n) for n in range(1, args.n + 1)]
        text = "[" + ", ".join(format_scalar(v) for v in ys) + "]"
        return ys, {}, 0, text
    if verb == "norm":
        value = norm(space(args.space), parse_seq(args.seq))
        return value, {}, 0, format_scalar(value)
    if verb == "basis":
        b = basis_vector(space(args.space), args.n)
        block = min(args.probe, 64)
        ok = b.check(block)
        terms = b.realization.terms(min(args.n + 4, block))
        payload = {"realization": b.realization.literal(), "terms": list(terms)}
        text = f"{b.realization.literal()}  (first terms: {', '.join(format_scalar(t) for t in terms)})"
        return payload, {"maps_to_unit_vector": ok, "block": block}, 0 if ok else 1, text
    if verb == "verify":
        res = verify_suite(args.suite, args.trials, args.probe, args.seed)
        text = (f"suite {res.name}: {res.checks - len(res.failures)}/{res.checks} checks passed "
                f"in {res.seconds:.2f}s")
        for f in res.failures[:10]:
            text += f"\n  FAIL {f['check']} (seed {f['seed']})"
        return res.summary(), {}, 0 if res.ok else 1, text
    if verb == "member":
        v = member(space(args.space), parse_seq(args.seq), args.probe)
    elif verb == "dual-check":
        fn = dual_member if args.path == "analytic" else dual_member_via_matrix
        v = fn(space(args.space), DualKind(args.kind), parse_seq(args.seq), args.probe)
    elif verb == "classify":
        v = class_check(parse_operator(args.matrix), space(args.source), space(args.target), args.probe)
    elif verb == "reduce":
        cls, Y = _reduction(args.cls)
        v = reduce_and_check(parse_operator(args.matrix), cls, Y, args.probe)
    else:  # pragma: no cover - argparse restricts verbs
        raise UsageError(verb)
    payload = {"status": v.status.value, "trace": list(v.trace)}
    text = v.status.value + "\n" + V.dumps(v.certificate)
    return payload, v.certificate, v.status.exit_code, text


def _command_echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("json",)}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        payload, cert, code, text = _run(args)
    except (LiteralError, UnknownSuite, UsageError) as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (SeqSpaceError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    if args.json:
        report = {
            "command": _command_echo(args),
            "payload": payload,
            "certificate": cert,
            "probe": args.probe,
            "seed": args.seed,
            "version": __version__,
            "exact": True,
        }
        out.write(V.dumps(report) + "\n")
    else:
        out.write(text + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
