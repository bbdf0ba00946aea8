"""Command-line front end.

Subcommands: steiner, weyl, classify, jensen, roots, series, mcvol, report.
Output is JSON by default (stable key order), CSV or plain text on request.
The default working precision comes from TUBEPOLY_BITS (64..65536).

Exit codes: 0 success, 1 error, 2 when --assert is given and the
classification verdict is negative.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import bodies, generators, oracle, roots
from .scalars import ParseError, PiScalar
from .stability import classify_conservative, classify_dissipative

_BITS_ENV = "TUBEPOLY_BITS"
_BITS_RANGE = (64, 65536)


def _default_bits() -> int:
    raw = os.environ.get(_BITS_ENV)
    if not raw:
        return 128
    bits = int(raw)
    if not _BITS_RANGE[0] <= bits <= _BITS_RANGE[1]:
        raise ValueError(f"{_BITS_ENV} must be in [{_BITS_RANGE[0]}, {_BITS_RANGE[1]}]")
    return bits


def _parse_index(text: str):
    return "inf" if text == "inf" else int(text)


def _emit(args, payload, csv_rows=None, csv_header=None, text=None):
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2)
    elif fmt == "csv":
        if csv_rows is None:
            raise ValueError("this subcommand has no CSV form")
        buf = io.StringIO()
        writer = csv.writer(buf)
        if csv_header:
            writer.writerow(csv_header)
        writer.writerows(csv_rows)
        out = buf.getvalue().rstrip("\n")
    else:
        out = text if text is not None else json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _decimal(scalar: PiScalar, bits: int) -> str:
    return scalar.decimal(digits=max(10, bits // 5))


def cmd_steiner(args) -> int:
    body = bodies.parse_body(args.body)
    result = bodies.steiner(body)
    coeffs = result.poly.coeff_strings()
    payload = {
        "body": str(body),
        "ambient_dim": result.ambient_dim,
        "coefficients": coeffs,
        "decimals": [_decimal(c, args.bits) for c in result.poly],
        "precision_bits": args.bits,
    }
    rows = [(k, coeffs[k], payload["decimals"][k]) for k in range(len(coeffs))]
    text = result.poly.render()
    _emit(args, payload, rows, ("k", "coefficient", "decimal"), text)
    return 0


def cmd_weyl(args) -> int:
    body = bodies.parse_body(args.body)
    data = bodies.weyl_poly(bodies.steiner(body), _parse_index(args.p))
    payload = {
        "body": str(body),
        "surface_dim": data.surface_dim,
        "index": str(data.index),
        "weyl_coefficients": [c.render() for c in data.w],
        "polynomial": data.poly.coeff_strings(),
        "decimals": [_decimal(c, args.bits) for c in data.poly],
        "precision_bits": args.bits,
    }
    rows = [
        (2 * l, payload["weyl_coefficients"][l], _decimal(data.w[l], args.bits))
        for l in range(len(data.w))
    ]
    _emit(args, payload, rows, ("power", "w_coefficient", "decimal"), data.poly.render())
    return 0


def cmd_classify(args) -> int:
    body = bodies.parse_body(args.body)
    result = bodies.steiner(body)
    if args.weyl is None:
        report = classify_dissipative(result.poly, with_witnesses=args.witnesses, bits=args.bits)
    else:
        data = bodies.weyl_poly(result, _parse_index(args.weyl))
        report = classify_conservative(data.poly, with_witnesses=args.witnesses, bits=args.bits)
    payload = {"body": str(body), **report.to_json()}
    _emit(args, payload, text=f"{payload['body']}: {report.verdict}"
          + (f" ({report.reason})" if report.reason else ""))
    if getattr(args, "assert_positive", False) and not report.passed:
        return 2
    return 0


def cmd_jensen(args) -> int:
    family = generators.parse_family(args.family)
    poly = generators.jensen_poly(family, args.n)
    coeffs = poly.coeff_strings()
    payload = {
        "family": str(family),
        "order": args.n,
        "coefficients": coeffs,
        "decimals": [_decimal(c, args.bits) for c in poly],
    }
    rows = [(k, coeffs[k], payload["decimals"][k]) for k in range(len(coeffs))]
    _emit(args, payload, rows, ("k", "coefficient", "decimal"), poly.render())
    return 0


def cmd_roots(args) -> int:
    body = bodies.parse_body(args.body)
    result = bodies.steiner(body)
    poly = result.poly if args.weyl is None else bodies.weyl_poly(result, _parse_index(args.weyl)).poly
    rs = roots.find_roots(poly, bits=args.bits)
    triples = [(z.real, z.imag, r) for z, r in zip(rs.roots, rs.residuals)]
    payload = {
        "body": str(body),
        "weyl_index": None if args.weyl is None else str(args.weyl),
        "degree": poly.degree,
        "roots": [[re, im, res] for re, im, res in triples],
        "numeric_class": roots.classify_numeric(rs),
        "max_residual": rs.max_residual(),
        "precision_bits": args.bits,
    }
    _emit(args, payload, triples, ("re", "im", "residual"),
          "\n".join(f"{re:+.12e} {im:+.12e}  residual {res:.2e}" for re, im, res in triples))
    return 0


def cmd_series(args) -> int:
    family = generators.parse_family(args.family)
    rows = []
    for k in range(args.terms):
        c = generators.series_coeff(family, k)
        rows.append((k, c.render(), _decimal(c, args.bits)))
    payload = {
        "family": str(family),
        "terms": args.terms,
        "coefficients": [r[1] for r in rows],
        "decimals": [r[2] for r in rows],
    }
    _emit(args, payload, rows, ("k", "coefficient", "decimal"),
          "\n".join(f"{k}: {c}" for k, c, _ in rows))
    return 0


def cmd_mcvol(args) -> int:
    body = bodies.parse_body(args.body)
    est = oracle.mc_tube_volume(body, args.t, samples=args.samples, seed=args.seed)
    exact = bodies.steiner(body).poly.eval_float(args.t)
    payload = {
        "body": str(body),
        "t": args.t,
        "estimate": est.volume,
        "stderr": est.stderr,
        "exact": exact,
        "deviation_sigmas": (est.volume - exact) / est.stderr if est.stderr else 0.0,
        "hits": est.hits,
        "samples": est.samples,
        "seed": est.seed,
        "elapsed_s": est.elapsed,
    }
    rows = [(args.t, est.volume, est.stderr, exact, est.samples, est.seed)]
    _emit(args, payload, rows, ("t", "estimate", "stderr", "exact", "samples", "seed"))
    return 0


def cmd_report(args) -> int:
    body = bodies.parse_body(args.body)
    result = bodies.steiner(body)
    weyl_inf = bodies.weyl_poly(result, "inf")
    weyl_1 = bodies.weyl_poly(result, 1)
    steiner_cls = classify_dissipative(result.poly, with_witnesses=True, bits=args.bits)
    weyl_cls = classify_conservative(weyl_1.poly, bits=args.bits)
    rs_steiner = roots.find_roots(result.poly, bits=min(args.bits, 200))
    rs_weyl = (
        roots.find_roots(weyl_1.poly, bits=min(args.bits, 200))
        if weyl_1.poly.degree >= 1
        else None
    )
    payload = {
        "schema": "tubepoly-report-v1",
        "body": str(body),
        "ambient_dim": result.ambient_dim,
        "intrinsic_dim": bodies.intrinsic_dim(body),
        "precision_bits": args.bits,
        "steiner": {
            "coefficients": result.poly.coeff_strings(),
            "decimals": [_decimal(c, args.bits) for c in result.poly],
        },
        "cross_measures": [v.render() for v in bodies.cross_measures(result)],
        "weyl": {
            "surface_dim": weyl_inf.surface_dim,
            "coefficients": [c.render() for c in weyl_inf.w],
            "polynomials": {
                "inf": weyl_inf.poly.coeff_strings(),
                "1": weyl_1.poly.coeff_strings(),
            },
        },
        "classification": {
            "steiner": steiner_cls.to_json(),
            "weyl_1": weyl_cls.to_json(),
        },
        "roots": {
            "steiner": [[z.real, z.imag, r] for z, r in zip(rs_steiner.roots, rs_steiner.residuals)],
            **(
                {"weyl_1": [[z.real, z.imag, r] for z, r in zip(rs_weyl.roots, rs_weyl.residuals)]}
                if rs_weyl
                else {}
            ),
        },
    }
    if args.mc_t:
        if result.ambient_dim <= oracle.DIMENSION_CAP:
            entries = []
            for t in args.mc_t:
                est = oracle.mc_tube_volume(body, t, samples=args.samples, seed=args.seed)
                entries.append(
                    {
                        "t": t,
                        "estimate": est.volume,
                        "stderr": est.stderr,
                        "exact": result.poly.eval_float(t),
                        "samples": est.samples,
                        "seed": est.seed,
                    }
                )
            payload["monte_carlo"] = entries
    _emit(args, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tubepoly",
        description="Exact tube-volume polynomials of convex bodies and their root classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--bits", type=int, default=None, help="working precision (64..65536)")
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("steiner", help="exact tube-volume polynomial of a body")
    p.add_argument("body")
    common(p)
    p.set_defaults(fn=cmd_steiner)

    p = sub.add_parser("weyl", help="boundary-surface polynomial of a given index")
    p.add_argument("body")
    p.add_argument("--p", required=True, help="positive integer or 'inf'")
    common(p)
    p.set_defaults(fn=cmd_weyl)

    p = sub.add_parser("classify", help="exact root-location verdict")
    p.add_argument("body")
    p.add_argument("--weyl", default=None, help="classify the index-p surface polynomial instead")
    p.add_argument("--witnesses", action="store_true", help="attach numeric root witnesses")
    p.add_argument(
        "--assert",
        dest="assert_positive",
        action="store_true",
        help="exit with status 2 on a negative verdict",
    )
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("jensen", help="multiplier truncation of a generating stream")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_jensen)

    p = sub.add_parser("roots", help="numeric roots with certified residuals")
    p.add_argument("body")
    p.add_argument("--weyl", default=None)
    common(p)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("series", help="coefficients of a generating stream as CSV/JSON")
    p.add_argument("--family", required=True)
    p.add_argument("--terms", type=int, default=16)
    common(p)
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("mcvol", help="Monte-Carlo tube volume vs the exact polynomial")
    p.add_argument("body")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_mcvol)

    p = sub.add_parser("report", help="full dossier: polynomials, verdicts, roots, MC check")
    p.add_argument("body")
    p.add_argument("--mc-t", type=float, action="append", default=None)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.bits is None:
            args.bits = _default_bits()
        elif not _BITS_RANGE[0] <= args.bits <= _BITS_RANGE[1]:
            raise ValueError(f"--bits must be in [{_BITS_RANGE[0]}, {_BITS_RANGE[1]}]")
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
