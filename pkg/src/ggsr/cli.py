"""Command-line front end.

Exit codes: 0 verified, 1 a mathematical check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .admissible import AdmissibilityError, instantiate, solve
from .bdtriples import BDTriple, TripleError, enumerate_triples, orbits, validate
from .exactring import Scalar
from .ggsbuild import DecompositionError, build_R
from .paperdata import LABELS, fixture
from .reproduce import paper_check
from .tensorops import DimensionError, SparseMatrix
from .verifier import CHECKS, certify, certify_matrices

__all__ = ["main", "build_parser", "scalar_latex", "matrix_latex"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ENUM_RANGE = (2, 7)


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        name = name.strip()
        if name in out:
            raise UsageError(f"parameter {name!r} given twice")
        out[name] = _rational(value.strip())
    return out


def _parse_triple(text: str) -> BDTriple:
    t = BDTriple.parse(text)
    if not validate(t):
        raise UsageError(f"{t} is not a Belavin-Drinfeld triple")
    return t


# enumerate / orbits


def _check_n(n: int) -> None:
    lo, hi = ENUM_RANGE
    if not lo <= n <= hi:
        raise UsageError(f"--n must lie in {lo}..{hi}, got {n}")


def _orbit_records(n: int) -> list:
    return [
        {
            "representative": o.representative.encode(),
            "gamma1_size": len(o.representative.gamma1),
            "members": [m.encode() for m in o.members],
        }
        for o in orbits(enumerate_triples(n))
    ]


def cmd_enumerate(args) -> int:
    _check_n(args.n)
    if args.orbits:
        recs = _orbit_records(args.n)
        if args.json:
            _emit(_dump({"n": args.n, "orbits": len(recs), "representatives": recs}))
        else:
            lines = [r["representative"] for r in recs] + [f"orbits: {len(recs)}"]
            _emit("\n".join(lines) + "\n")
        return EXIT_OK
    ts = enumerate_triples(args.n)
    if args.json:
        _emit(_dump({"n": args.n, "triples": len(ts), "items": [t.encode() for t in ts]}))
    else:
        _emit("\n".join([t.encode() for t in ts] + [f"triples: {len(ts)}"]) + "\n")
    return EXIT_OK


def cmd_orbits(args) -> int:
    _check_n(args.n)
    recs = _orbit_records(args.n)
    if args.json:
        _emit(_dump({"n": args.n, "orbits": recs}))
    else:
        lines = []
        for r in recs:
            lines.append(f"{r['representative']}  (|gamma1|={r['gamma1_size']}, size {len(r['members'])})")
            lines.extend(f"    {m}" for m in r["members"])
        lines.append(f"orbits: {len(recs)}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


# r0 / build


def _triple_arg(args) -> BDTriple:
    if args.label:
        return fixture(args.label).triple
    return _parse_triple(args.triple)


def cmd_r0(args) -> int:
    fam = solve(_triple_arg(args))
    _emit(_dump(fam.to_json()))
    return EXIT_OK


def _bundle_from_args(args):
    params = _parse_params(args.param)
    if args.label:
        fx = fixture(args.label)
        missing = [p for p in fx.params if p not in params]
        extra = [p for p in params if p not in fx.params]
        if missing or extra:
            raise UsageError(
                f"label {fx.label} takes parameters {list(fx.params)}; "
                f"missing {missing}, unknown {extra}"
            )
        values = {p: params[p] for p in fx.params}
        return build_R(fx.triple, fx.r0tilde(values), values, label=fx.label)
    t = _parse_triple(args.triple)
    fam = solve(t)
    names = [f"p{i}" for i in range(1, fam.dim + 1)]
    if sorted(params) != sorted(names):
        raise UsageError(f"triple family has parameters {names}, got {sorted(params)}")
    values = {p: params[p] for p in names}
    return build_R(t, instantiate(fam, [values[p] for p in names]), values)


def cmd_build(args) -> int:
    bundle = _bundle_from_args(args)
    cert = certify(bundle, _checks(args.checks))
    _emit(_dump(bundle.to_json()), args.out)
    return EXIT_OK if cert.all_ok else EXIT_FAIL


# verify


def _checks(text: str | None) -> tuple:
    if not text:
        return CHECKS
    names = tuple(c.strip() for c in text.split(",") if c.strip())
    bad = [c for c in names if c not in CHECKS]
    if bad or not names:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    return names


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _matrices_from_json(data) -> tuple:
    """``(R, r_or_None, n)`` from a bundle or a bare matrix document."""
    if not isinstance(data, dict):
        raise UsageError("expected a JSON object")
    try:
        if "matrix" in data:
            R = SparseMatrix.from_json(data["matrix"])
            r = SparseMatrix.from_json(data["classical_r"]) if "classical_r" in data else None
        else:
            R, r = SparseMatrix.from_json(data), None
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"malformed matrix JSON: {exc}") from None
    n = math.isqrt(R.dim)
    if n * n != R.dim or n < 2:
        raise UsageError(f"matrix of size {R.dim} is not n^2 x n^2")
    return R, r, n


def cmd_verify(args) -> int:
    R, r, n = _matrices_from_json(_load_json(args.input))
    checks = _checks(args.checks)
    if r is None:
        needs_r = [c for c in checks if c not in ("qybe", "hecke")]
        if args.checks and needs_r:
            raise UsageError(f"checks {needs_r} need a classical r; input is a bare matrix")
        checks = tuple(c for c in checks if c in ("qybe", "hecke"))
    cert = certify_matrices(R, r, n, checks)
    if args.json:
        _emit(_dump(cert.to_json()))
    else:
        lines = [
            f"{c}: {'pass' if getattr(cert, c + '_ok') else 'FAIL'}"
            for c in checks
        ]
        _emit("\n".join(lines) + "\n")
    return EXIT_OK if cert.all_ok else EXIT_FAIL


# export


def _latex_exp(e: Fraction) -> str:
    if e.denominator == 1:
        return f"{{{e.numerator}}}"
    sign = "-" if e < 0 else ""
    return f"{{{sign}\\frac{{{abs(e.numerator)}}}{{{e.denominator}}}}}"


def _latex_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def scalar_latex(s: Scalar) -> str:
    """LaTeX for a Laurent polynomial, highest power first."""
    if s.is_zero():
        return "0"
    out = ""
    for e, c in reversed(s.items()):
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{_latex_exp(e)}")
        mag = abs(c)
        body = _latex_coeff(mag) if (not mono or mag != 1) else ""
        body += mono
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def matrix_latex(m: SparseMatrix) -> str:
    rows = []
    for i in range(1, m.dim + 1):
        cells = [scalar_latex(m[(i, j)]) if m[(i, j)] else "" for j in range(1, m.dim + 1)]
        rows.append(" & ".join(cells))
    return "\\left(\\begin{smallmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{smallmatrix}\\right)\n"


def cmd_export(args) -> int:
    if args.input:
        R, _, _ = _matrices_from_json(_load_json(args.input))
    else:
        R = _bundle_from_args(args).R
    text = matrix_latex(R) if args.format == "latex" else _dump(R.to_json())
    _emit(text, args.out)
    return EXIT_OK


# paper-check


def _flatten(obj, prefix="") -> list:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(obj, list):
        out = []
        for i, v in enumerate(obj):
            out.extend(_flatten(v, f"{prefix}[{i}]"))
        return out
    return [f"{prefix} = {json.dumps(obj)}"]


def render_text(report: dict) -> str:
    """Plain-text rendering carrying the same facts as the JSON report."""
    head = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in report["checks"].items()]
    probe = report["convention_probe"]
    head.append(f"convention probe: winner {probe['winner']} (default {report['default_convention']})")
    head.append(f"sl(5) raw triples: {report['enumeration']['5']['triples']}")
    head.append(f"certified triples: {report['certified_triples']}/13")
    head.append(f"overall: {'PASS' if report['passed'] else 'FAIL'}")
    return "\n".join(head + ["", "details:"] + _flatten(report)) + "\n"


def cmd_paper_check(args) -> int:
    report = paper_check(timing=args.timing)
    text = _dump(report) if args.json else render_text(report)
    _emit(text, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


# parser


def _add_source(p, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--triple", help='triple encoding, e.g. "n=5;g1=2,3,4;g2=1,2,3;tau=2:1,3:2,4:3"')
    g.add_argument("--label", choices=LABELS, help="sl(5) representative label")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ggsr", description="Belavin-Drinfeld triples and GGS R-matrices")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list BD triples of sl(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orbits", action="store_true", help="list orbit representatives instead")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("orbits", help="list orbits with their members")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("r0", help="admissible Cartan family of a triple")
    _add_source(p)
    p.set_defaults(func=cmd_r0)

    p = sub.add_parser("build", help="build an R-matrix bundle")
    _add_source(p)
    p.add_argument("--param", action="append", metavar="NAME=RAT")
    p.add_argument("--checks", help=f"comma list from {','.join(CHECKS)}")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="verify a bundle or bare matrix JSON")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--checks", help=f"comma list from {','.join(CHECKS)}")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="export a matrix as JSON or LaTeX")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--in", dest="input")
    g.add_argument("--triple")
    g.add_argument("--label", choices=LABELS)
    p.add_argument("--param", action="append", metavar="NAME=RAT")
    p.add_argument("--format", choices=("json", "latex"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("paper-check", help="run the full sl(5) reproduction")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")
    p.add_argument("--out")
    p.set_defaults(func=cmd_paper_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TripleError, AdmissibilityError, DimensionError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
