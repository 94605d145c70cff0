"""Command-line front end: every computation as a subcommand.

Exit codes: 0 success, 1 usage error, 2 math degeneracy (vanishing
recursion pivot), 3 verification failure, 4 calibration failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import forms, matrixcore, numeric
from .qseries import (
    CalibrationError,
    CalibrationResult,
    DegenerateRecursionError,
    StructureConstant,
    calibrate,
    extremal_D63,
    express_in_depth_basis,
    hecke_eisenstein,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2
EXIT_VERIFY = 3
EXIT_CALIBRATE = 4


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _parse_extra(pairs):
    out = {}
    for item in pairs or ():
        order, _, value = item.partition("=")
        out[int(order)] = Fraction(value)
    return out


def build_parser() -> _Parser:
    parser = _Parser(prog="hvf", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mu", type=int, default=3, help="Hecke group parameter (>= 3)")
    common.add_argument("--n", type=int, default=64, help="series truncation order")
    common.add_argument(
        "--a1",
        default=None,
        help="q-coefficient of the weight-2 series: exact rational 'p/q' or 'calibrate'",
    )
    common.add_argument(
        "--extra",
        action="append",
        metavar="ORDER=VALUE",
        help="coefficient for a system-underdetermined order (repeatable)",
    )
    common.add_argument("--tol", type=float, default=1e-6, help="numeric tolerance")
    common.add_argument("--seed", type=int, default=0, help="sample-plan seed")
    common.add_argument(
        "--format",
        choices=("json", "csv", "text", "latex"),
        default="json",
        dest="fmt",
        help="output format",
    )
    common.add_argument("--cache-dir", default=None, help="calibration cache directory")

    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("eisenstein", parents=[common], help="coefficient table of the Eisenstein family")

    sub.add_parser("calibrate", parents=[common], help="calibrate the weight-2 normalization")

    p_verify = sub.add_parser("verify", parents=[common], help="residuals of a functional equation")
    p_verify.add_argument(
        "--which",
        choices=("anomaly", "automorphic", "vector_T", "vector_S", "g_under_S", "all"),
        default="all",
    )
    p_verify.add_argument("--weight", type=int, default=None)
    p_verify.add_argument("--depth", type=int, default=None)
    p_verify.add_argument("--input", default=None, help="QuasiForm JSON file ('-' for stdin)")
    p_verify.add_argument(
        "--anomaly-coefficient",
        type=_parse_rational,
        default=None,
        help="override the rational coefficient of the structure constant",
    )

    p_mult = sub.add_parser("multiplier", parents=[common], help="the exact multiplier pair")
    p_mult.add_argument("--r", type=int, required=True, help="depth")

    p_sym = sub.add_parser("symcheck", parents=[common], help="symmetric-power and presentation checks")
    p_sym.add_argument("--r", type=int, required=True, help="depth")

    sub.add_parser("extremal", parents=[common], help="the weight-6 depth-3 extremal form")

    p_dim = sub.add_parser("dim", parents=[common], help="dimension of the weight-w automorphic space")
    p_dim.add_argument("--w", type=int, required=True)

    p_hb = sub.add_parser("hauptbuch", parents=[common], help="hauptbuch of a QuasiForm")
    p_hb.add_argument("--input", required=True, help="QuasiForm JSON file ('-' for stdin)")

    return parser


# -- calibration cache -------------------------------------------------------


def _cache_path(args) -> Path:
    root = args.cache_dir or os.environ.get("HVF_CACHE_DIR") or os.path.join(
        os.path.expanduser("~"), ".cache", "hvf"
    )
    return Path(root) / "calibration.json"


def _cached_calibrate(args) -> CalibrationResult:
    path = _cache_path(args)
    key = f"mu={args.mu},n={args.n},tol={args.tol!r}"
    store = {}
    if path.exists():
        try:
            store = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            store = {}
    if key in store:
        hit = store[key]
        return CalibrationResult(
            mu=args.mu,
            trunc=args.n,
            a1=hit["a1"],
            extra={int(k): v for k, v in hit["extra"].items()},
            residual=hit["residual"],
        )
    result = calibrate(args.mu, args.n, args.tol)
    store[key] = {
        "a1": result.a1,
        "extra": {str(k): v for k, v in result.extra.items()},
        "residual": result.residual,
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(store, indent=2, sort_keys=True) + "\n")
    except OSError:
        pass  # caching is best-effort
    return result


def _family(args):
    """Eisenstein family per the --a1/--extra flags (exact or calibrated)."""
    if args.a1 in (None, "calibrate"):
        result = _cached_calibrate(args)
        return result.build()
    a1 = _parse_rational(args.a1)
    return hecke_eisenstein(args.mu, args.n, a1, extra=_parse_extra(args.extra))


# -- output helpers ----------------------------------------------------------


def _coeff_str(c) -> str:
    if isinstance(c, (int, Fraction)):
        f = Fraction(c)
        return f"{f.numerator}/{f.denominator}"
    return repr(c)


def _emit(payload, fmt: str, *, csv_rows=None, latex=None):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    elif fmt == "csv":
        if csv_rows is None:
            raise SystemExit("csv output is not defined for this subcommand")
        for row in csv_rows:
            print(",".join(str(x) for x in row))
    elif fmt == "latex":
        if latex is None:
            raise SystemExit("latex output is not defined for this subcommand")
        print(latex)
    else:
        _print_text(payload)


def _print_text(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _print_text(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(payload, list):
        for v in payload:
            _print_text(v, indent)
    else:
        print(f"{pad}{payload}")


# -- subcommands -------------------------------------------------------------


def cmd_eisenstein(args) -> int:
    if args.mu < 3:
        raise _usage(f"--mu must be >= 3, got {args.mu}")
    if args.n < 1:
        raise _usage(f"--n must be >= 1, got {args.n}")
    family = _family(args)
    weights = family.weights
    header = ["n"] + [f"E{w}" for w in weights]
    rows = [header]
    for n in range(args.n + 1):
        rows.append([n] + [_coeff_str(family[w][n]) for w in weights])
    payload = {
        "mu": args.mu,
        "n": args.n,
        "a1": _coeff_str(family.a1),
        "weights": weights,
        "coefficients": {str(w): [_coeff_str(c) for c in family[w].coeffs] for w in weights},
    }
    latex = _table_latex(rows)
    _emit(payload, args.fmt, csv_rows=rows, latex=latex)
    return EXIT_OK


def _table_latex(rows) -> str:
    cols = "r" * len(rows[0])
    lines = [" & ".join(str(x) for x in row) + r" \\" for row in rows]
    return "\\begin{tabular}{%s}\n%s\n\\end{tabular}" % (cols, "\n".join(lines))


def cmd_calibrate(args) -> int:
    if args.mu < 3:
        raise _usage(f"--mu must be >= 3, got {args.mu}")
    result = _cached_calibrate(args)
    payload = {
        "mu": args.mu,
        "n": args.n,
        "tol": args.tol,
        "a1": result.a1,
        "extra": {str(k): v for k, v in result.extra.items()},
        "residual": result.residual,
        "fixed_point_target": StructureConstant(args.mu).fixed_point_value(),
    }
    _emit(payload, args.fmt)
    return EXIT_OK


def _test_form(args, family):
    """The QuasiForm a verify run exercises.

    Built from --input when given; otherwise the canonical forms: the
    weight-2 depth-1 Eisenstein series, the weight-6 depth-3 extremal form
    (mu = 3), or a depth-0 wrapper around a family member.
    """
    if args.input:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        return forms.quasiform_loads(text)
    w = args.weight if args.weight is not None else 2
    r = args.depth if args.depth is not None else 1
    if (w, r) == (2, 1):
        return forms.QuasiForm(
            mu=args.mu,
            weight=2,
            depth=1,
            components=(forms.zero_form(2, args.n), forms.constant_form(1, args.n)),
        )
    if (w, r) == (6, 3) and args.mu == 3:
        target = extremal_D63(args.n)
        e2, e4, e6 = family[2], family[4], family[6]
        c3, c1, c0 = express_in_depth_basis(target, [e2**3, e2 * e4, e6], 3)
        return forms.from_e2_polynomial(3, 6, [c0, c1, Fraction(0), c3], family)
    if r == 0 and w in family.weights and w >= 4:
        return forms.QuasiForm(
            mu=args.mu,
            weight=w,
            depth=0,
            components=(forms.AutomorphicForm(w, family[w]),),
        )
    raise _usage(
        f"no built-in form of weight {w} and depth {r} for mu={args.mu}; pass --input"
    )


def cmd_verify(args) -> int:
    if args.mu < 3:
        raise _usage(f"--mu must be >= 3, got {args.mu}")
    family = _family(args)
    plan = numeric.default_plan(seed=args.seed, tol=args.tol, trunc=args.n)
    constant = None
    if args.anomaly_coefficient is not None:
        constant = StructureConstant(args.mu, coefficient=args.anomaly_coefficient)
    reports = []
    which = args.which
    if which in ("anomaly", "all"):
        reports.append(numeric.verify_E2_anomaly(args.mu, family, plan, constant=constant))
    if which in ("automorphic", "all"):
        w = args.weight if args.weight is not None else 4
        if which == "all":
            w = 4
        form = forms.AutomorphicForm(w, family[w])
        reports.append(numeric.verify_automorphic(form, args.mu, plan))
    if which in ("vector_T", "vector_S", "g_under_S", "all"):
        u = _test_form(args, family)
        if which in ("vector_T", "all"):
            reports.append(numeric.verify_vector_T(u, family, plan))
        if which in ("vector_S", "all"):
            reports.append(numeric.verify_vector_S(u, family, plan))
        if which in ("g_under_S", "all"):
            for l in range(u.depth + 1):
                reports.append(numeric.verify_g_under_S(u, family, l, plan))
    payload = [r.to_json() for r in reports]
    _emit(payload if len(payload) > 1 else payload[0], args.fmt)
    if any(not r.passed for r in reports):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_multiplier(args) -> int:
    if args.mu < 3:
        raise _usage(f"--mu must be >= 3, got {args.mu}")
    if args.r < 0:
        raise _usage(f"--r must be >= 0, got {args.r}")
    pair = matrixcore.MultiplierPair.build(args.mu, args.r)
    payload = {
        "mu": args.mu,
        "r": args.r,
        "epsT": matrixcore.matrix_to_json(pair.epsT),
        "epsS": matrixcore.matrix_to_json(pair.epsS),
    }
    latex = (
        "\\varepsilon_r(T) = %s\n\\varepsilon_r(S) = %s"
        % (matrixcore.matrix_to_latex(pair.epsT), matrixcore.matrix_to_latex(pair.epsS))
    )
    _emit(payload, args.fmt, latex=latex)
    return EXIT_OK


def cmd_symcheck(args) -> int:
    if args.mu < 3:
        raise _usage(f"--mu must be >= 3, got {args.mu}")
    if args.r < 0:
        raise _usage(f"--r must be >= 0, got {args.r}")
    sym_ok = True if args.r == 0 else matrixcore.verify_sym_theorem(args.mu, args.r)
    pres_ok = matrixcore.verify_presentation(args.mu, args.r)
    payload = {
        "mu": args.mu,
        "r": args.r,
        "sym_power_matches": sym_ok,
        "presentation_holds": pres_ok,
        "pass": sym_ok and pres_ok,
    }
    _emit(payload, args.fmt)
    return EXIT_OK if (sym_ok and pres_ok) else EXIT_VERIFY


def cmd_extremal(args) -> int:
    if args.n < 2:
        raise _usage(f"--n must be >= 2, got {args.n}")
    series = extremal_D63(args.n)
    rows = [["n", "coefficient"]] + [[n, int(series[n])] for n in range(args.n + 1)]
    payload = {
        "weight": 6,
        "depth": 3,
        "n": args.n,
        "coefficients": [int(c) for c in series.coeffs],
    }
    _emit(payload, args.fmt, csv_rows=rows, latex=_table_latex(rows))
    return EXIT_OK


def cmd_dim(args) -> int:
    if args.mu < 3:
        raise _usage(f"--mu must be >= 3, got {args.mu}")
    try:
        value = numeric.dim_automorphic(args.mu, args.w)
    except ValueError as exc:
        raise _usage(str(exc))
    _emit({"mu": args.mu, "weight": args.w, "dim": value}, args.fmt)
    return EXIT_OK


def cmd_hauptbuch(args) -> int:
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    u = forms.quasiform_loads(text)
    if args.mu != u.mu and args.mu != 3:
        raise _usage(f"--mu {args.mu} does not match the input form (mu={u.mu})")
    args.mu = u.mu
    family = _family(args)
    h = forms.hauptbuch(u, family)
    _emit(forms.hauptbuch_to_json(h, u.weight), args.fmt)
    return EXIT_OK


class _UsageError(Exception):
    pass


def _usage(message: str) -> _UsageError:
    return _UsageError(message)


_COMMANDS = {
    "eisenstein": cmd_eisenstein,
    "calibrate": cmd_calibrate,
    "verify": cmd_verify,
    "multiplier": cmd_multiplier,
    "symcheck": cmd_symcheck,
    "extremal": cmd_extremal,
    "dim": cmd_dim,
    "hauptbuch": cmd_hauptbuch,
}


def _join_negative_values(argv):
    """Fuse "--a1 -24/1" into "--a1=-24/1" so argparse does not read the
    negative rational as an option string."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--a1" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(list(argv)))
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"hvf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateRecursionError as exc:
        print(
            json.dumps({"error": "degenerate_recursion", "order": exc.order, "message": str(exc)}),
            file=sys.stderr,
        )
        return EXIT_DEGENERATE
    except CalibrationError as exc:
        print(json.dumps({"error": "calibration", "message": str(exc)}), file=sys.stderr)
        return EXIT_CALIBRATE


if __name__ == "__main__":
    sys.exit(main())
