"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters or
outcome, 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys

from . import oracle
from .bounded import build_bounded_scheme, build_integer_scheme
from .core import Burst
from .decode import decode
from .errors import (
    InconsistentOutcomeError,
    ParameterError,
    ParseError,
    UnverifiedConstructionError,
)
from .golden import run_golden
from .io import load_matrix, load_scheme, save_scheme
from .refine import build_fixed_scheme
from .sketch import VERIFY_CAP

EXIT_OK, EXIT_VERIFY, EXIT_PARAM, EXIT_IO = 0, 1, 2, 3


def _int_list(text):
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _summary(scheme, files):
    comps = ", ".join(f"{c.name}[{c.start}:{c.stop}]" for c in scheme.components)
    print(f"wrote {files.matrix} and {files.metadata}")
    print(f"model={scheme.space.kind} n={scheme.n} ell={scheme.ell} rows={scheme.rows} components: {comps}")
    for key, value in scheme.report.items():
        print(f"{key}: {value}")


def cmd_build_fixed(args):
    scheme = build_fixed_scheme(args.n, args.h, args.c, args.thresholds, verify_cap=args.verify_cap)
    _summary(scheme, save_scheme(scheme, args.out))
    return EXIT_OK


def cmd_build_bounded(args):
    if args.s >= args.ell:
        if args.c1:
            raise ParameterError("--c1 only applies when s < ell")
        scheme = build_integer_scheme(args.n, args.ell, args.s)
    else:
        c1 = load_matrix(args.c1) if args.c1 else None
        scheme = build_bounded_scheme(args.n, args.ell, args.s, c1=c1)
    _summary(scheme, save_scheme(scheme, args.out))
    return EXIT_OK


def verification_report(scheme, predicate, jobs=1):
    """Report lines for ``verify``; independent of ``jobs``."""
    witness = oracle.check_distinguishable(
        scheme.matrix, scheme.thresholds, scheme.space, predicate, jobs=jobs
    )
    lines = [
        f"model={scheme.space.kind} n={scheme.n} ell={scheme.ell} rows={scheme.rows}",
        f"bursts: {scheme.space.count(scheme.n)}",
        f"predicate: {predicate}",
        "result: OK" if witness is None else "result: COLLISION",
    ]
    if witness is not None:
        lines.append(f"witness: {witness}")
    return lines, witness


def cmd_verify(args):
    scheme = load_scheme(args.scheme)
    lines, witness = verification_report(scheme, oracle.parse_predicate(args.predicate), args.jobs)
    print("\n".join(lines))
    return EXIT_OK if witness is None else EXIT_VERIFY


def cmd_simulate(args):
    scheme = load_scheme(args.scheme)
    length = scheme.ell if args.len is None else args.len
    if scheme.space.kind == "fixed" and length != scheme.ell:
        raise ParameterError(f"fixed-length scheme needs len={scheme.ell}")
    if not 1 <= length <= scheme.ell:
        raise ParameterError(f"len must lie in [1, {scheme.ell}]")
    levels = scheme.outcome(Burst(args.head, length))
    print(" ".join(str(int(v)) for v in levels))
    return EXIT_OK


def cmd_decode(args):
    scheme = load_scheme(args.scheme)
    burst = decode(scheme, args.outcome)
    print("NO_BURST" if burst is None else f"{burst.head} {burst.length}")
    return EXIT_OK


def cmd_bounds(args):
    bound = oracle.counting_bound(args.n, args.ell, args.s, args.mode)
    sketch = "" if bound.sketch_bound is None else f"{bound.sketch_bound:.6f}"
    print(f"{args.n},{args.ell},{args.s},{args.mode},{bound.bursts},{bound.min_tests},{sketch}")
    return EXIT_OK


def cmd_selftest(args):
    return EXIT_OK if run_golden() else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(prog="sqgt-burst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-fixed", help="sketch + refinement scheme for bursts of length c*2^h+1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--thresholds", type=_int_list, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--verify-cap", type=int, default=VERIFY_CAP)
    p.set_defaults(func=cmd_build_fixed)

    p = sub.add_parser("build-bounded", help="saturation scheme for bursts of length <= ell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--c1", help="matrix file to use as the phase-1 block")
    p.set_defaults(func=cmd_build_bounded)

    p = sub.add_parser("verify", help="exhaustive distinguishability check")
    p.add_argument("--scheme", required=True)
    p.add_argument("--predicate", default="all", help="all | far:DIST | near:DIST")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="outcome levels of one burst")
    p.add_argument("--scheme", required=True)
    p.add_argument("--head", type=int, required=True)
    p.add_argument("--len", type=int)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("decode", help="recover the burst from outcome levels")
    p.add_argument("--scheme", required=True)
    p.add_argument("--outcome", type=_int_list, required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bounds", help="counting bound as a CSV line")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--mode", choices=("fixed", "bounded"), default="fixed")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("selftest", help="run the worked-example checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAM if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UnverifiedConstructionError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParameterError, InconsistentOutcomeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
