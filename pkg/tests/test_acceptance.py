"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line, printed in the terminal
summary, and then asserts the criterion at its stated tolerance.
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from gegencoef.bounds import (
    AnalyticityWitness,
    log10_coeff_bound,
    log10_comparator_bound,
    log10_truncation_bound,
    q_bound,
)
from gegencoef.coeffs import cauchy_q, coeff_contour_oracle, gegen_coeffs_numeric, model_coeff
from gegencoef.figures import ERROR_FLOOR, fig5_witness, measured_truncation_error
from gegencoef.models import ModelFunction
from gegencoef.ratio import g_factor, gamma_series
from gegencoef.specfun import (
    ellipse_perimeter,
    gamma_ratio,
    hyp2f1_kernel,
    integer_lambda_kernel,
    upsilon,
)

pytestmark = pytest.mark.acceptance


def record(num, ok, detail):
    ACCEPTANCE_LINES[num] = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[num])
    return ok


def test_criterion_1_oracle_triangle():
    t0 = time.perf_counter()
    f = ModelFunction.pole(2.0)
    worst = 0.0
    for lam in (0.25, 0.5, 1.0, 3.5):
        closed = np.array([model_coeff(f, n, lam) for n in range(51)])
        # connection-sum engine fed with U coefficients sampled on rho = 3
        engine = gegen_coeffs_numeric(f, 51, lam, nodes=1024, rho=3.0).values
        contour = np.array([coeff_contour_oracle(f, n, lam, 3.0, 1024) for n in range(51)]).real
        for a, b in ((closed, engine), (closed, contour), (engine, contour)):
            worst = max(worst, float(np.max(np.abs(a - b) / np.abs(a))))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 10
    record(1, ok, f"max pairwise relative difference {worst:.2e} (tol 1e-9), {elapsed:.1f} s")
    assert ok


def _reference_coeffs(f, lam, count):
    if f.kind == "pole":
        return np.array([model_coeff(f, n, lam) for n in range(count)])
    rho = 1 + 0.98 * (f.rho_max - 1)
    return gegen_coeffs_numeric(f, count, lam, nodes=4096, rho=rho).values


def test_criterion_2_bound_dominance_and_optimality():
    models = [ModelFunction.pole(2.0), ModelFunction.pole(1.5j), ModelFunction.pole(-1.2 + 0.3j),
              ModelFunction.algebraic_outside(2.0, 2 / 3), ModelFunction.log_outside(1.5)]
    lams = (0.25, 0.5, 1.0, 3.5, 9.5)
    violations = 0
    checked = 0
    for f in models:
        for lam in lams:
            a = _reference_coeffs(f, lam, 101)
            for frac in (0.2, 0.5, 0.9):
                w = AnalyticityWitness.for_model(f, 1 + frac * (f.rho_max - 1))
                for n in range(101):
                    checked += 1
                    if math.log10(abs(a[n])) > log10_coeff_bound(n, lam, w):
                        violations += 1
    # optimality: the ratio to the geometric factor approaches a constant
    f = ModelFunction.pole(2.0)
    rho = 0.999 * f.rho_max
    w = AnalyticityWitness.for_model(f, rho)
    drift_ok = True
    worst = 0.0
    for lam in lams:
        q = np.array([log10_coeff_bound(n, lam, w) - math.log10(abs(model_coeff(f, n, lam)))
                      - (n + 1) * math.log10(f.rho_max / rho) for n in range(201)])
        late, early = q[200] - q[100], q[100] - q[50]
        # a residual n^delta would give equal increments on [50,100] and [100,200]
        if not (abs(late) < 1e-3 or late <= 0.75 * early):
            drift_ok = False
        worst = max(worst, float(q.max()))
    ok = violations == 0 and drift_ok
    record(2, ok, f"{violations} violations in {checked} checks; optimality K <= 10^{worst:.3f}, "
                  f"no n^delta drift: {drift_ok}")
    assert ok


def test_criterion_3_comparator_ratios():
    t0 = time.perf_counter()
    worst = {}
    for lam in (3.5, 5.5, 9.5):
        for rho in (1.05, 1.2):
            w = AnalyticityWitness(rho, 1.0)
            r = max(log10_coeff_bound(n, lam, w, "explicit")
                    - log10_comparator_bound(n, lam, w, "zhao_gegenbauer") for n in range(1, 51))
            worst[(lam, rho)] = 10**r
    w = AnalyticityWitness(1.05, 1.0)
    leg = 10 ** max(log10_coeff_bound(n, 0.5, w, "explicit")
                    - log10_comparator_bound(n, 0.5, w, "zhao_legendre") for n in range(1, 51))
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) < 1 and leg < 1 and elapsed < 5
    record(3, ok, f"max ratio Gegenbauer {max(worst.values()):.4f}, Legendre {leg:.4f}, {elapsed:.2f} s")
    assert ok


def test_criterion_4_q_bounds():
    t0 = time.perf_counter()
    ok_order = ok_dom = True
    for delta in (0.1, 1.0):
        for n in range(2, 51):
            ours, rok = q_bound(n, delta, "ours"), q_bound(n, delta, "rokhlin")
            q = abs(cauchy_q(n, 0.5, 1 + delta))
            ok_order &= ours < rok
            ok_dom &= q <= ours and q <= rok
    elapsed = time.perf_counter() - t0
    ok = ok_order and ok_dom and elapsed < 5
    record(4, ok, f"ours < rokhlin: {ok_order}; both dominate |Q_n|: {ok_dom}; {elapsed:.2f} s")
    assert ok


def test_criterion_5_diagonal_truncation():
    f = ModelFunction.pole(2.0)
    w = fig5_witness(3.6)
    target = -math.log10(3.6)
    parts = []
    ok = True
    for gamma in (0.25, 0.125):
        dominated, max_gap = True, 0.0
        for N in range(8, 21):
            err = measured_truncation_error(f, N, gamma * N)
            if err < ERROR_FLOOR:
                continue
            gap = log10_truncation_bound(N, None, w, "diagonal", gamma) - math.log10(err)
            dominated &= gap >= 0
            max_gap = max(max_gap, gap)
        slope = (log10_truncation_bound(80, None, w, "diagonal", gamma)
                 - log10_truncation_bound(79, None, w, "diagonal", gamma))
        slope_ok = abs(slope / target - 1) <= 0.05
        ok &= dominated and max_gap <= 2 and slope_ok
        parts.append(f"gamma={gamma}: dominates {dominated}, max gap {max_gap:.3f} (<= 2), "
                     f"slope at N=80 {slope:.4f} vs {target:.4f}")
    record(5, ok, "; ".join(parts))
    assert ok


def test_criterion_6_exterior_ratio():
    t0 = time.perf_counter()
    worst = 0.0
    for b in (1.2, 2.0, 5.0):
        for f in (ModelFunction.log_outside(b), ModelFunction.algebraic_outside(b, 2 / 3)):
            rep = gamma_series(f, 100)
            dev = abs(rep.gamma_values[-1] / (g_factor(b).real * math.sqrt(100 * math.pi)) - 1)
            worst = max(worst, dev)
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.05 and elapsed < 10
    record(6, ok, f"max |gamma_100/(g(b) sqrt(100 pi)) - 1| = {worst:.4f} (tol 0.05), {elapsed:.1f} s")
    assert ok


def test_criterion_7_endpoint_ratio():
    rep = gamma_series(ModelFunction.algebraic_endpoint(0.5), 200)
    n = rep.index
    sel = n >= 20
    sq = float(np.max(n[sel] * np.abs(rep.gamma_values[sel] - math.pi / 2)))
    rep = gamma_series(ModelFunction.log_endpoint(), 200)
    g2 = rep.gamma_values[1]
    lg = float(np.max(rep.index[1:] * np.abs(rep.gamma_values[1:] - 1)))
    ok = sq <= 2 and abs(g2 - 5 / 6) <= 1e-14 and lg <= 1
    record(7, ok, f"sqrt: max n|gamma_n - pi/2| = {sq:.4f} (<= 2); log: gamma_2 = {g2:.15f}, "
                  f"max n|gamma_n - 1| = {lg:.4f} (<= 1)")
    assert ok


def test_criterion_8_special_functions():
    t0 = time.perf_counter()
    worst_euler = 0.0
    for lam in (0.25, 0.75, 2.5, 3.5):
        x = np.array([-0.9, -0.5, 0.1, 0.5, 0.8])
        for n in (0, 3, 10, 40):
            s = hyp2f1_kernel(n, lam, x)
            e = hyp2f1_kernel(n, lam, x, "euler")
            worst_euler = max(worst_euler, float(np.max(np.abs(s - e) / np.abs(s))))
    worst_int = 0.0
    for lam in (1, 2, 3, 5):
        for n in (0, 4, 17):
            for x in (-0.9, 0.3, 0.7):
                a, b = integer_lambda_kernel(n, lam, x), hyp2f1_kernel(n, lam, x)
                worst_int = max(worst_int, abs(a - b) / abs(b))
    # the inequality over its stated domain n + a > 1, n + b > 1
    grid = (-0.4, 0.0, 0.5, 1.0, 1.5, 2.0, 3.5, 5.5, 9.5)
    fails = []
    for n in range(1, 201):
        for a in grid:
            for b in grid:
                if n + a > 1 and n + b > 1:
                    if gamma_ratio(n, a, b) > upsilon(n, a, b) * n ** (a - b) * (1 + 1e-13):
                        fails.append((n, a, b))
    rhos = (1.0, 1.01, 1.5, 2.0, 3.6, 10.0)
    perim_ok = all(ellipse_perimeter(r) <= ellipse_perimeter(r, "jameson_bound") * (1 + 1e-15) for r in rhos)
    at_one = abs(ellipse_perimeter(1.0) - 4.0) <= 1e-12 and abs(ellipse_perimeter(1.0, "jameson_bound") - 4) <= 1e-12
    elapsed = time.perf_counter() - t0
    ok = worst_euler <= 1e-12 and worst_int <= 1e-12 and not fails and perim_ok and at_one and elapsed < 5
    example = f", e.g. (n, a, b) = {fails[0]}" if fails else ""
    record(8, ok, f"series/Euler {worst_euler:.1e}; integer-lambda {worst_int:.1e}; "
                  f"Upsilon counterexamples {len(fails)}{example}; perimeter ok {perim_ok and at_one}; "
                  f"{elapsed:.2f} s")
    assert ok
