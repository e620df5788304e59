"""Command-line front end. Every subcommand writes a CSV table.

Floats are written with 17 significant digits, so re-reading the CSV gives
back the same doubles. Complex columns are split into ``_re`` and ``_im``.
Exit status is 1 for invalid input and 2 for I/O failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import figures
from .bounds import (
    AnalyticityWitness,
    log10_coeff_bound,
    log10_comparator_bound,
    log10_truncation_bound,
    q_bound,
)
from .coeffs import (
    chebT_coeffs,
    chebU_coeffs,
    closed_form_table,
    contour_coeffs,
    gegen_coeffs_numeric,
    cauchy_q,
)
from .errors import DomainError
from .models import ModelFunction
from .polyval import PolynomialFamily
from .ratio import gamma_series


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    return "%.17g" % v


def expand_complex(header, rows):
    """Split every column holding a complex value into ``_re``/``_im``."""
    if not rows:
        return header, rows
    ncol = len(header)
    is_c = [any(isinstance(r[j], complex) or np.iscomplexobj(r[j]) for r in rows)
            for j in range(ncol)]
    if not any(is_c):
        return header, rows
    new_header = []
    for name, c in zip(header, is_c):
        new_header += [f"{name}_re", f"{name}_im"] if c else [name]
    new_rows = []
    for r in rows:
        nr = []
        for v, c in zip(r, is_c):
            if c:
                v = complex(v)
                nr += [v.real, v.imag]
            else:
                nr.append(v)
        new_rows.append(nr)
    return new_header, new_rows


def render_csv(header, rows) -> str:
    header, rows = expand_complex(header, rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument helpers


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise DomainError(f"--z0 expects 're' or 're,im', got {text!r}")


MODELS = ("pole", "algebraic-outside", "log-outside", "algebraic-endpoint", "log-endpoint")


def build_model(args) -> ModelFunction:
    m = args.model
    if m is None:
        raise DomainError("--model is required")

    def need(name):
        val = getattr(args, name)
        if val is None:
            raise DomainError(f"--model {m} requires --{name}")
        return val

    if m == "pole":
        return ModelFunction.pole(parse_complex(need("z0")))
    if m == "algebraic-outside":
        return ModelFunction.algebraic_outside(need("b"), need("alpha"))
    if m == "log-outside":
        return ModelFunction.log_outside(need("b"))
    if m == "algebraic-endpoint":
        return ModelFunction.algebraic_endpoint(need("alpha"), args.sign)
    if m == "log-endpoint":
        return ModelFunction.log_endpoint(args.sign)
    raise DomainError(f"unknown model {m!r}")


def build_family(args) -> PolynomialFamily:
    fam = args.family
    if fam == "gegenbauer":
        if args.lam is None:
            raise DomainError("gegenbauer family requires --lambda")
        return PolynomialFamily.gegenbauer(args.lam)
    return {"legendre": PolynomialFamily.legendre,
            "chebyshev-t": PolynomialFamily.chebyshev_t,
            "chebyshev-u": PolynomialFamily.chebyshev_u}[fam]()


def build_witness(args, rho=None) -> AnalyticityWitness:
    rho = args.rho if rho is None else rho
    if rho is None:
        raise DomainError("--rho is required")
    if args.M is not None:
        return AnalyticityWitness(rho, args.M)
    if args.model is None:
        raise DomainError("give --M or a --model to derive it from")
    return AnalyticityWitness.for_model(build_model(args), rho)


def _nonneg(name, v):
    if v < 0:
        raise DomainError(f"--{name} must be nonnegative, got {v}")
    return v


# ---------------------------------------------------------------------------
# commands


def cmd_coeffs(args):
    fam = build_family(args)
    f = build_model(args)
    count = _nonneg("nmax", args.nmax) + 1
    method = args.method
    if method == "auto":
        method = "closed" if f.kind in ("pole", "algebraic_endpoint", "log_endpoint") \
            and fam.kind != "chebyshev_u" else "quadrature"
    if method == "closed":
        if fam.kind == "chebyshev_u":
            raise DomainError("no closed form for Chebyshev-U coefficients; use --method quadrature")
        start = 1 if f.kind == "log_endpoint" else 0
        table = closed_form_table(f, count, fam, start=start)
        vals = list(table.values)
        if start:
            vals[0] = math.nan
    elif method == "quadrature":
        if fam.kind == "chebyshev_u":
            table = chebU_coeffs(f, count, args.nodes, args.rho)
        elif fam.kind == "chebyshev_t":
            table = chebT_coeffs(f, count, args.nodes, args.rho)
        else:
            table = gegen_coeffs_numeric(f, count, fam, args.nodes, args.tail, args.rho)
        vals = list(table.values)
    elif method == "contour":
        if args.rho is None:
            raise DomainError("--method contour requires --rho")
        if fam.kind in ("chebyshev_t", "chebyshev_u"):
            raise DomainError("contour method needs a Gegenbauer or Legendre family")
        table = contour_coeffs(f, count, fam, args.rho, args.nodes or 1024)
        vals = list(table.values)
    else:
        raise DomainError(f"unknown method {method!r}")
    return ["n", "value"], [[n, v] for n, v in enumerate(vals)]


def cmd_bound(args):
    rhos = args.rho or []
    if not rhos:
        raise DomainError("--rho is required")
    witnesses = [build_witness(args, r) for r in rhos]
    kind = args.kind
    lam = args.lam if args.lam is not None else 0.5
    nmin = args.nmin if args.nmin is not None else (0 if kind == "optimal" else 1)
    rows = []
    for n in range(_nonneg("nmin", nmin), args.nmax + 1):
        lbs = []
        for w in witnesses:
            if kind in ("optimal", "explicit"):
                lbs.append(log10_coeff_bound(n, lam, w, kind))
            else:
                lbs.append(log10_comparator_bound(n, lam, w, kind))
        if len(lbs) == 1:
            rows.append([n, 10.0 ** lbs[0], lbs[0]])
        else:
            k = min(range(len(lbs)), key=lbs.__getitem__)
            rows.append([n] + lbs + [rhos[k], 10.0 ** lbs[k], lbs[k]])
    if len(rhos) == 1:
        return ["n", "bound", "log10_bound"], rows
    header = ["n"] + [f"log10_bound_rho{r:.17g}" for r in rhos] + ["best_rho", "bound", "log10_bound"]
    return header, rows


def cmd_truncation(args):
    w = build_witness(args)
    kind = args.kind
    if kind == "diagonal":
        if args.gamma is None:
            raise DomainError("--kind diagonal requires --gamma")
        param = None
    else:
        if args.lam is None:
            raise DomainError(f"--kind {kind} requires --lambda")
        param = args.lam
    rows = []
    for N in range(_nonneg("Nmin", args.Nmin), args.Nmax + 1):
        lb = log10_truncation_bound(N, param, w, kind, args.gamma)
        rows.append([N, 10.0**lb, lb])
    return ["N", "bound", "log10_bound"], rows


def cmd_ratio(args):
    f = build_model(args)
    rep = gamma_series(f, args.nmax)
    rows = [[int(n), rep.gamma_values[k], rep.prediction[k], rep.residuals[k], rep.normalized[k]]
            for k, n in enumerate(rep.index)]
    return ["n", "gamma", "prediction", "residual", "gamma_over_sqrt_npi"], rows


def cmd_qbound(args):
    d = args.delta
    rows = []
    for n in range(1, args.nmax + 1):
        ours, rok = q_bound(n, d, "ours"), q_bound(n, d, "rokhlin")
        q = cauchy_q(n, 0.5, 1.0 + d).real
        rows.append([n, ours, rok, q, math.log10(ours), math.log10(rok)])
    return ["n", "ours", "rokhlin", "q", "log10_ours", "log10_rokhlin"], rows


def cmd_figure(args):
    fid = args.id
    if fid == 5:
        kw = {"gamma": args.gamma if args.gamma is not None else 0.25}
        if args.Nmax is not None:
            kw["Nmax"] = args.Nmax
        return figures.figure5(**kw)
    if args.gamma is not None:
        raise DomainError("--gamma only applies to figure 5")
    kw = {"nmax": args.nmax} if args.nmax is not None else {}
    return figures.FIGURES[fid](**kw)


# ---------------------------------------------------------------------------


def _add_model(p):
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--z0", help="pole location as 're' or 're,im'")
    p.add_argument("--b", type=float, help="exterior branch point b > 1")
    p.add_argument("--alpha", type=float, help="algebraic exponent")
    p.add_argument("--sign", type=int, default=-1, choices=(-1, 1),
                   help="endpoint models use 1 + sign*x (default -1)")


def _add_witness(p, scan=False):
    if scan:
        p.add_argument("--rho", type=float, nargs="+",
                       help="Bernstein ellipse parameter; several values scan a grid "
                            "and report the smallest bound per n")
        p.add_argument("--M", type=float,
                       help="bound for |f| on the (largest) ellipse")
    else:
        p.add_argument("--rho", type=float, help="Bernstein ellipse parameter")
        p.add_argument("--M", type=float, help="bound for |f| on the ellipse")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gegencoef", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write CSV here instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", help="expansion coefficients")
    _add_model(p)
    p.add_argument("--family", default="gegenbauer",
                   choices=("gegenbauer", "legendre", "chebyshev-t", "chebyshev-u"))
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--method", default="auto", choices=("auto", "closed", "quadrature", "contour"))
    p.add_argument("--rho", type=float, help="ellipse for contour sampling")
    p.add_argument("--nodes", type=int)
    p.add_argument("--tail", type=int)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("bound", help="coefficient bounds")
    _add_model(p)
    _add_witness(p, scan=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--kind", default="optimal",
                   choices=("optimal", "explicit", "zhao_legendre", "zhao_gegenbauer"))
    p.add_argument("--nmin", type=int)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("truncation", help="truncation error bounds")
    _add_model(p)
    _add_witness(p)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--gamma", type=float, help="lam = gamma * N for --kind diagonal")
    p.add_argument("--kind", default="series",
                   choices=("series", "lambda_one", "simple", "diagonal"))
    p.add_argument("--Nmin", type=int, default=1)
    p.add_argument("--Nmax", type=int, required=True)
    p.set_defaults(func=cmd_truncation)

    p = sub.add_parser("ratio", help="Legendre/Chebyshev coefficient ratio")
    _add_model(p)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("qbound", help="bounds for the Legendre function of the second kind")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--nmax", type=int, default=50)
    p.set_defaults(func=cmd_qbound)

    p = sub.add_parser("figure", help="reference figure data sets")
    p.add_argument("--id", type=int, required=True, choices=sorted(figures.FIGURES))
    p.add_argument("--gamma", type=float)
    p.add_argument("--nmax", type=int)
    p.add_argument("--Nmax", type=int)
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        header, rows = args.func(args)
        text = render_csv(header, rows)
    except (UsageError, DomainError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"gegencoef: error: {msg}", file=sys.stderr)
        return 1
    try:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"gegencoef: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
