"""Batch command-line front end with machine-readable output.

Commands: classify, orbit, verify, eval-picard, derive-quartics, selftest.
Exit codes: 0 success, 1 verification failure, 2 usage error.  JSON output
is deterministic (sorted keys, canonical 'p/q' rationals, fixed sampling),
so identical invocations produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from . import curves as cv
from . import elliptic as el
from . import orbits as ob
from . import selftest as st
from . import verifier as vf
from .curves import CurveId
from .elliptic import AlphaTuple
from .multipoly import MultiPoly
from .verifier import PviParams, SampleSpec

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return ob.parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_csv(text: str) -> list[Fraction]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected four comma-separated rationals, got {text!r}")
    try:
        return [ob.parse_rational(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def _payload(command: str, **body) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **body}


def _alpha_from_args(args) -> AlphaTuple:
    if (args.alpha is None) == (args.pvi is None):
        raise UsageError("provide exactly one of --alpha or --pvi")
    if args.alpha is not None:
        return AlphaTuple(*args.alpha)
    return vf.params_convert(PviParams(*args.pvi))


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def _cmd_classify(args) -> int:
    alpha = _alpha_from_args(args)
    spec = SampleSpec(count=args.samples)
    try:
        result = vf.classify(alpha, verify=args.verify, spec=spec)
    except vf.VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    body = result.to_json_dict()
    body["alpha"] = [ob.format_rational(a) for a in alpha]
    body["pvi"] = [ob.format_rational(p) for p in vf.params_convert(alpha)]
    if args.format == "json":
        _emit_json(_payload("classify", **body))
    else:
        print(f"alpha = ({', '.join(body['alpha'])})   pvi = ({', '.join(body['pvi'])})")
        if result.kind == "picard_family":
            print(f"picard_family: {result.picard_note}")
        elif result.kind == "empty":
            print("no smooth solutions (empty classification)")
        else:
            names = ", ".join(c.value for c in result.curves)
            print(f"smooth solutions: {names}")
            for cid in result.curves:
                print(f"  {cid.value}: {cv.CURVES[cid]} = 0")
        if result.reports:
            for cid, rep in sorted(result.reports.items()):
                print(
                    f"  residual[{cid.value}]: max {rep.max_residual:.3e} "
                    f"({rep.verdict()})"
                )
    return EXIT_OK


def _cmd_orbit(args) -> int:
    if args.denominator is not None and (args.mu is not None or args.nu is not None):
        raise UsageError("--denominator excludes --mu/--nu")
    if args.denominator is not None:
        if args.denominator < 2:
            raise UsageError("--denominator must be at least 2")
        partition = ob.orbit_partition(args.denominator)
        body = {
            "denominator": args.denominator,
            "partition": partition,
            "class_count": len(ob.eligible_classes(args.denominator)),
        }
        if args.format == "json":
            _emit_json(_payload("orbit", **body))
        else:
            print(f"N = {args.denominator}: orbit sizes {partition} "
                  f"({body['class_count']} classes)")
        return EXIT_OK
    if args.mu is None or args.nu is None:
        raise UsageError("provide --mu and --nu, or --denominator")
    v = ob.canonicalize((args.mu, args.nu))
    if v.is_zero() or v.is_half_integer():
        raise UsageError(f"class {v} is half-integer: labels a trivial solution")
    data = ob.standard_form(v)
    orbit = sorted(ob.enumerate_orbit(v))
    curve = vf.orbit_to_curve(v)
    body = {
        "vector": v.as_strings(),
        "standard_form": {
            "M": data.M, "N": data.N, "m": data.m, "n": data.n,
            "standard": data.standard.as_strings(),
        },
        "orbit": [w.as_strings() for w in orbit],
        "size": len(orbit),
        "curve": curve.value if curve else None,
    }
    if args.format == "json":
        _emit_json(_payload("orbit", **body))
    else:
        print(f"class {v}: N = {data.N}, standard {data.standard}, orbit size {len(orbit)}")
        print("orbit: " + ", ".join(str(w) for w in orbit))
        if curve:
            print(f"curve: {curve.value}  ({cv.CURVES[curve]} = 0)")
        else:
            print("curve: none (orbit longer than 6)")
    return EXIT_OK


def _cmd_verify(args) -> int:
    alpha = _alpha_from_args(args)
    params = vf.params_convert(alpha)
    if (args.curve is None) == (args.poly is None):
        raise UsageError("provide exactly one of --curve or --poly")
    if args.curve is not None:
        target = CurveId(args.curve)
    else:
        try:
            target = MultiPoly.parse(args.poly)
        except ValueError as exc:
            raise UsageError(f"cannot parse polynomial: {exc}") from None
    spec = SampleSpec(count=args.samples)
    try:
        report = vf.verify_curve(target, params, spec)
    except vf.NoValidSamplesError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    if args.format == "json":
        _emit_json(_payload("verify", **report.to_json_dict()))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(vf.CSV_HEADER)
        writer.writerows(report.csv_rows())
        sys.stdout.write(out.getvalue())
    else:
        label = report.curve or "custom polynomial"
        print(f"curve {label} at pvi = ({', '.join(map(str, params))})")
        print(f"samples: {len(report.samples)}  skipped: {len(report.skipped)}")
        print(f"max residual: {report.max_residual:.6e}")
        print(f"median residual: {report.median_residual:.6e}")
        print(f"verdict: {report.verdict()}")
    return EXIT_OK if report.verdict() == "pass" else EXIT_VERIFICATION


def _cmd_eval_picard(args) -> int:
    v = ob.canonicalize((args.mu, args.nu))
    if v.is_half_integer():
        raise UsageError(f"class {v} is half-integer: the solution is trivial")
    tau = complex(args.tau_re, args.tau_im)
    try:
        t, y = el.picard_eval(v, tau)
    except el.EllipticError as exc:
        raise UsageError(str(exc)) from None
    curve = vf.orbit_to_curve(v)
    body = {
        "mu": ob.format_rational(v.mu),
        "nu": ob.format_rational(v.nu),
        "tau": {"re": tau.real, "im": tau.imag},
        "t": {"re": t.real, "im": t.imag},
        "y": {"re": y.real, "im": y.imag},
        "curve": curve.value if curve else None,
        "curve_residual": None,
        "master_residual": None,
        "master_alpha": None,
    }
    if curve is not None:
        alpha = st.CANONICAL_ALPHA[curve]
        body["curve_residual"] = abs(complex(cv.CURVES[curve](y=y, t=t)))
        body["master_residual"] = abs(complex(cv.master_poly(alpha)(y=y, t=t)))
        body["master_alpha"] = [ob.format_rational(a) for a in alpha]
    if args.format == "json":
        _emit_json(_payload("eval-picard", **body))
    else:
        print(f"(mu, nu) = {v}, tau = {tau}")
        print(f"t = {t}")
        print(f"y = {y}")
        if curve is not None:
            print(f"curve {curve.value}: |P(y, t)| = {body['curve_residual']:.3e}")
            print(f"sextic at alpha = ({', '.join(body['master_alpha'])}): "
                  f"{body['master_residual']:.3e}")
        else:
            print("no canonical curve (orbit longer than 6)")
    return EXIT_OK


def _cmd_derive_quartics(args) -> int:
    derived = cv.derive_quartics()
    body = {
        "f": str(cv.TRIPLING_F),
        "g": str(cv.TRIPLING_G),
        "curves": {cid.value: str(poly) for cid, poly in sorted(derived.items())},
        "matches_canonical": all(
            derived[cid] == cv.CURVES[cid] for cid in cv.QUARTIC_CURVES
        ),
    }
    if args.format == "json":
        _emit_json(_payload("derive-quartics", **body))
    else:
        print(f"f(y, t) = {body['f']}")
        print(f"g(y, t) = {body['g']}")
        for name, text in body["curves"].items():
            print(f"curve {name}: {text} = 0")
        print(f"matches canonical curves: {body['matches_canonical']}")
    return EXIT_OK if body["matches_canonical"] else EXIT_VERIFICATION


def _cmd_selftest(args) -> int:
    results = st.run_all()
    ok = all(r.passed for r in results)
    if args.json:
        _emit_json(_payload(
            "selftest",
            checks=[
                {"name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3),
                 "detail": r.detail}
                for r in results
            ],
            passed=sum(r.passed for r in results),
            failed=sum(not r.passed for r in results),
            ok=ok,
        ))
    else:
        for r in results:
            print(r.line())
        total = sum(r.seconds for r in results)
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed "
              f"in {total:.2f}s")
    return EXIT_OK if ok else EXIT_VERIFICATION


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvi",
        description="Smooth (zero-, one-, pole- and fixed-point-free) solutions "
                    "of the sixth Painleve equation: classification, orbit "
                    "analysis, exact identity self-tests, residual verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, choices=("json", "text")):
        p.add_argument("--format", choices=choices, default="json",
                       help="output format (default json)")

    p = sub.add_parser("classify", help="list the smooth solutions for parameters")
    p.add_argument("--alpha", type=_rational_csv, metavar="a0,a1,a2,a3")
    p.add_argument("--pvi", type=_rational_csv, metavar="alpha,beta,gamma,delta")
    p.add_argument("--verify", action="store_true",
                   help="cross-check the rule-based answer by ODE residuals")
    p.add_argument("--samples", type=int, default=25, help="t samples per curve")
    add_format(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("orbit", help="orbit of a rational class, or all orbit sizes at level N")
    p.add_argument("--mu", type=_rational, metavar="p/q")
    p.add_argument("--nu", type=_rational, metavar="r/s")
    p.add_argument("--denominator", type=int, metavar="N")
    add_format(p)
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("verify", help="ODE residual report for one curve at parameters")
    p.add_argument("--curve", choices=[c.value for c in CurveId])
    p.add_argument("--poly", metavar="TEXT", help="custom curve polynomial in y, t")
    p.add_argument("--alpha", type=_rational_csv, metavar="a0,a1,a2,a3")
    p.add_argument("--pvi", type=_rational_csv, metavar="alpha,beta,gamma,delta")
    p.add_argument("--samples", type=int, default=25)
    add_format(p, choices=("json", "csv", "text"))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eval-picard", help="evaluate a Picard solution point (t, y)")
    p.add_argument("--mu", type=_rational, required=True, metavar="p/q")
    p.add_argument("--nu", type=_rational, required=True, metavar="r/s")
    p.add_argument("--tau-re", type=float, default=0.0)
    p.add_argument("--tau-im", type=float, required=True)
    add_format(p)
    p.set_defaults(func=_cmd_eval_picard)

    p = sub.add_parser("derive-quartics", help="derive the quartic curves from the tripling identity")
    add_format(p)
    p.set_defaults(func=_cmd_derive_quartics)

    p = sub.add_parser("selftest", help="run every identity and classification check")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
