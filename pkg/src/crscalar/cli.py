"""Command line interface.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .exactalg.grammar import ParseError, format_poly, parse_poly
from .exactalg.numbers import format_rational
from .models import Rossi3, parse_model
from .report import SCHEMA_VERSION, exact_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITE_NAMES = ("commutators", "linearizations", "adjointness", "rossi", "kernel", "splitting", "all")


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2) + "\n"


def _model(text):
    try:
        return parse_model(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_t(text: str) -> Fraction:
    try:
        t = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational: {text!r}") from exc
    if t == 0 or abs(t) >= 1:
        raise UsageError(f"t must satisfy 0 < |t| < 1, got {text}")
    return t


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args) -> int:
    from .suites import run_suite
    rep = run_suite(args.suite, seed=args.seed)
    _emit(rep.to_json(), args.out)
    for c in rep.failures:
        print(f"FAIL {c.name}: expected {c.expected}, got {c.actual}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_scan(args) -> int:
    from .spectral.kernel import exact_kernel
    from .variation import connection_for
    if args.model != "rossi":
        raise UsageError("only 'scan rossi' is supported")
    ts = [_parse_t(x) for x in args.t.split(",") if x.strip()]
    if not ts:
        raise UsageError("--t needs at least one value")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("t", "R", "A11_im", "kernel_dim"))
    for t in ts:
        m = Rossi3(t)
        conn = connection_for(m)
        R, A = conn.R.constant_value(), conn.A11.constant_value()
        w.writerow((format_rational(t), format_rational(R.re), format_rational(A.im),
                    exact_kernel(m).dimension))
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_curvature(args) -> int:
    from .variation import connection_for
    m = _model(args.model)
    conn = connection_for(m)
    n = conn.n
    obj = {
        "model": str(m),
        "R": exact_str(conn.R),
        "A": [[exact_str(conn.A[a][b]) for b in range(n)] for a in range(n)],
        "omega": {
            f"{b + 1}{a + 1}": [exact_str(x) for x in conn.omega_theta(b, a)]
            for b in range(n) for a in range(n)
        },
        "levi_form": [[exact_str(x) for x in row] for row in conn.frame.h],
    }
    _emit(_json(obj), args.out)
    return EXIT_OK


def cmd_kernel(args) -> int:
    from .spectral.kernel import exact_kernel
    m = _model(args.model)
    try:
        kr = exact_kernel(m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    x, y, w, c0 = kr.relation
    obj = {
        "model": str(m),
        "dimension": kr.dimension,
        "basis": [format_poly(b) for b in kr.basis],
        "sublaplacian_eigenvalue": format_rational(kr.eigenvalue),
        "admissible_pairs": [list(p) for p in kr.pairs],
        "relation": {"S": exact_str(x), "G": exact_str(y), "Gbar": exact_str(w), "c0": exact_str(c0)},
    }
    _emit(_json(obj), args.out)
    return EXIT_OK


def cmd_spectra(args) -> int:
    from .spectral.certificates import rossi_system_certificate
    from .spectral.tables import rows_to_csv, spectrum_rows
    if args.max_degree < 0:
        raise UsageError("--max-degree must be nonnegative")
    if args.certificates:
        certs = [rossi_system_certificate(s).as_dict() for s in (1, 2)]
        _emit(_json({"certificates": certs}), args.out)
        return EXIT_OK if all(c["no_solution"] for c in certs) else EXIT_FAIL
    _emit(rows_to_csv(spectrum_rows(args.max_degree)), args.out)
    return EXIT_OK


def cmd_linearize(args) -> int:
    from .variation import DeformationTangent, connection_for, epsilon, linearize_A, linearize_R, rossi_tangent
    m = _model(args.model)
    conn = connection_for(m)
    if conn.n != 1:
        raise UsageError("linearize takes a single E11 and so needs an n = 1 model")
    ring = conn.frame.ring
    if args.preset == "rossi-tangent":
        d = rossi_tangent(ring)
    else:
        try:
            E = parse_poly(args.e, ring)
            u = parse_poly(args.u, ring)
            d = DeformationTangent(E, u)
        except (ParseError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    obj = {
        "model": str(m),
        "E11": format_poly(d.E11),
        "u": format_poly(d.u),
        "DR": exact_str(linearize_R(m, d)),
        "DA11": exact_str(linearize_A(m, d)[0][0]),
        "epsilon": [exact_str(x) for x in epsilon(m, d)],
    }
    _emit(_json(obj), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .suites import DEFAULT_SEED
    ap = argparse.ArgumentParser(prog="crscalar", description="Exact MTW scalar curvature computations.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    p.add_argument("suite", choices=SUITE_NAMES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan", help="CSV of R, A11 and ker Gamma along the Rossi family")
    p.add_argument("model", choices=("rossi",))
    p.add_argument("--t", required=True, help="comma separated rationals, e.g. 1/2,-1/3")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("curvature", help="connection, torsion and scalar curvature of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_curvature)

    p = sub.add_parser("kernel", help="exact ker Gamma on sphere3 or rossi:p/q")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("spectra", help="per-block table on S^3 as CSV")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--certificates", action="store_true", help="print the Rossi no-solution certificates instead")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_spectra)

    p = sub.add_parser("linearize", help="DR, DA11 and epsilon of a tangent (E11, u)")
    p.add_argument("--model", default="sphere3")
    p.add_argument("--e", default="0", help="E11 as a polynomial expression")
    p.add_argument("--u", default="0", help="real contact direction u")
    p.add_argument("--preset", choices=("rossi-tangent",))
    p.add_argument("--out")
    p.set_defaults(fn=cmd_linearize)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"crscalar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"crscalar: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
