"""Data sets behind the six reference figures, as ``(header, rows)`` tables.

1. explicit / Zhao ratio, Legendre and lam = 7/2, several rho
2. explicit / Zhao ratio, lam = 11/2 and 19/2
3. Q-function bounds, ours vs Lederman-Rokhlin, delta = 0.1 and 1
4. gamma_n against g(b) sqrt(n pi) for log(b-x) and (b-x)^(2/3)
5. diagonal truncation bound vs measured error for 1/(x-2), rho = 3.6
6. gamma_n / sqrt(n pi) for the interior singularities at x = 1/4
"""

from __future__ import annotations

import math

import numpy as np

from .bounds import (
    AnalyticityWitness,
    log10_coeff_bound,
    log10_comparator_bound,
    log10_truncation_bound,
    q_bound,
)
from .coeffs import cauchy_q, model_coeff
from .errors import DomainError
from .models import ModelFunction
from .polyval import gegenbauer_table
from .ratio import gamma_series

FIG_RHOS = (1.05, 1.2, 2.0, 4.0)
FIG_BS = (1.2, 2.0, 5.0)
FIG5_RHO = 3.6
FIG5_POINTS = 1000
ERROR_FLOOR = 1e-12


def _ratio_columns(lams, rhos, nmax):
    header = ["n"]
    cols = []
    for lam in lams:
        for rho in rhos:
            w = AnalyticityWitness(rho, 1.0)
            if lam == 0.5:
                name, which = "legendre", "zhao_legendre"
            else:
                name, which = f"lambda{lam:g}", "zhao_gegenbauer"
            header.append(f"ratio_{name}_rho{rho:g}")
            cols.append([10.0 ** (log10_coeff_bound(n, lam, w, "explicit")
                                  - log10_comparator_bound(n, lam, w, which))
                         for n in range(1, nmax + 1)])
    rows = [[n] + [c[n - 1] for c in cols] for n in range(1, nmax + 1)]
    return header, rows


def figure1(nmax: int = 50, rhos=FIG_RHOS):
    return _ratio_columns((0.5, 3.5), rhos, nmax)


def figure2(nmax: int = 50, rhos=FIG_RHOS):
    return _ratio_columns((5.5, 9.5), rhos, nmax)


def figure3(nmax: int = 50, deltas=(0.1, 1.0)):
    header = ["n"]
    for d in deltas:
        header += [f"ours_delta{d:g}", f"rokhlin_delta{d:g}", f"q_delta{d:g}",
                   f"log10_ours_delta{d:g}", f"log10_rokhlin_delta{d:g}"]
    rows = []
    for n in range(1, nmax + 1):
        row = [n]
        for d in deltas:
            ours, rok = q_bound(n, d, "ours"), q_bound(n, d, "rokhlin")
            q = cauchy_q(n, 0.5, 1.0 + d).real
            row += [ours, rok, q, math.log10(ours), math.log10(rok)]
        rows.append(row)
    return header, rows


def figure4(nmax: int = 50, bs=FIG_BS, alpha: float = 2.0 / 3.0):
    header = ["n"]
    cols = []
    for label, make in (("log", lambda b: ModelFunction.log_outside(b)),
                        ("alg", lambda b: ModelFunction.algebraic_outside(b, alpha))):
        for b in bs:
            rep = gamma_series(make(b), nmax)
            header += [f"gamma_{label}_b{b:g}", f"prediction_{label}_b{b:g}"]
            cols += [rep.gamma_values, rep.prediction]
    rows = [[n] + [c[n - 1] for c in cols] for n in range(1, nmax + 1)]
    return header, rows


def measured_truncation_error(f: ModelFunction, N: int, lam: float,
                              points: int = FIG5_POINTS) -> float:
    """``max |f - f_N|`` over equispaced points of [-1, 1], with ``f_N`` built
    from the closed-form coefficients of degrees ``0..N-1``."""
    x = np.linspace(-1.0, 1.0, points)
    a = np.array([model_coeff(f, n, lam) for n in range(N)])
    return float(np.max(np.abs(f.eval_real(x) - a @ gegenbauer_table(N - 1, lam, x))))


def fig5_witness(rho: float = FIG5_RHO) -> AnalyticityWitness:
    s3 = math.sqrt(3.0)
    return AnalyticityWitness(rho, 2.0 * rho / ((2.0 + s3 - rho) * (rho - (2.0 - s3))), "exact")


def figure5(gamma: float = 0.25, Nmin: int = 8, Nmax: int = 80, rho: float = FIG5_RHO):
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    f = ModelFunction.pole(2.0)
    w = fig5_witness(rho)
    rows = []
    for N in range(Nmin, Nmax + 1):
        lb = log10_truncation_bound(N, None, w, "diagonal", gamma=gamma)
        err = measured_truncation_error(f, N, gamma * N)
        rows.append([N, lb, math.log10(err) if err >= ERROR_FLOOR else math.nan])
    return ["N", "log10_bound", "log10_measured_error"], rows


def figure6(nmax: int = 50, x0: float = 0.25):
    logf = gamma_series(ModelFunction.interior_log(x0), nmax)
    sqf = gamma_series(ModelFunction.interior_algebraic(x0, 0.5), nmax)
    rows = [[n, logf.normalized[n - 1], sqf.normalized[n - 1]] for n in range(1, nmax + 1)]
    return ["n", "normalized_log", "normalized_sqrt"], rows


FIGURES = {1: figure1, 2: figure2, 3: figure3, 4: figure4, 5: figure5, 6: figure6}
