"""Coefficient engines.

Three independent routes to the Gegenbauer coefficients

    a_n = (1/h_n) int_{-1}^{1} (1-x^2)^(lam-1/2) f(x) C_n^(lam)(x) dx

are provided:

* closed forms for the model functions (:func:`model_coeff`);
* Chebyshev-U coefficients by quadrature, re-summed with the U -> C^(lam)
  connection coefficients (:func:`gegen_coeffs_numeric`);
* the contour integral over a Bernstein ellipse with the hypergeometric
  kernel, by the trapezoidal rule (:func:`coeff_contour_oracle`).

The Cauchy transform ``Q_n^(lam)`` lives here as well, since it shares the
kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

from .errors import AnalyticityError, DomainError, UnsupportedMethodError
from .models import ModelFunction
from .polyval import PolynomialFamily, chebyshev_t_table, gegenbauer_table
from .quadrature import theta_rule_for
from .specfun import (
    GegenbauerParam,
    as_param,
    hyp2f1_kernel,
    joukowski_root,
    log_c_norm,
    log_gamma_signed,
    log_h_norm,
    log_pochhammer_table,
)


@dataclass(frozen=True)
class Provenance:
    kind: str  # "closed_form" | "quadrature" | "contour" | "projection"
    nodes: int | None = None
    rho: float | None = None

    def __str__(self):
        if self.kind == "closed_form":
            return "closed_form"
        if self.kind == "contour":
            return f"contour(rho={self.rho:.17g},nodes={self.nodes})"
        return f"{self.kind}(nodes={self.nodes})"


@dataclass(frozen=True)
class CoefficientTable:
    """Expansion coefficients ``values[n]``, ``n = 0..len-1``.

    ``meta`` carries engine diagnostics, e.g. ``tail_residual`` (magnitude of
    the last connection-sum term per degree).
    """

    family: PolynomialFamily
    values: np.ndarray
    provenance: Provenance
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        vals = np.array(self.values)
        if not np.all(np.isfinite(vals)):
            raise DomainError("coefficient table contains non-finite values")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)


def _as_family(spec) -> PolynomialFamily:
    if isinstance(spec, PolynomialFamily):
        return spec
    p = as_param(spec)
    if p.is_chebyshev_t_limit:
        return PolynomialFamily.chebyshev_t()
    return PolynomialFamily.gegenbauer(p)


def _maybe_real(vals: np.ndarray, f: ModelFunction) -> np.ndarray:
    return vals if f.is_complex else vals.real.copy()


# ---------------------------------------------------------------------------
# Chebyshev coefficients by quadrature / contour


def _contour_sums(f: ModelFunction, count: int, nodes: int, rho: float, weight_fn):
    """``(1/K) sum_k f(z_k) w(u_k) exp(-i j theta_k)`` for ``j < count``."""
    if not 1.0 < rho < f.rho_max:
        raise AnalyticityError(
            f"contour radius rho={rho} must satisfy 1 < rho < rho_max={f.rho_max:.6g}"
        )
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    u = rho * np.exp(1j * theta)
    z = 0.5 * (u + 1.0 / u)
    g = f.eval_complex(z) * weight_fn(u)
    j = np.arange(count)
    phase = np.exp(-1j * np.outer(j, theta))
    return phase @ g / nodes


def chebU_coeffs(f: ModelFunction, count: int, nodes: int | None = None,
                 rho: float | None = None, rule: str = "auto") -> CoefficientTable:
    """Chebyshev-U coefficients ``b_j``, ``j = 0..count-1``.

    By default ``b_j = (2/pi) int_0^pi f(cos t) sin((j+1)t) sin t dt`` with the
    trapezoidal rule on the half-step-shifted grid (split tanh-sinh when ``f``
    is singular on [-1, 1]). With ``rho`` the same numbers come from the
    contour integral over the Bernstein ellipse, which keeps full relative
    accuracy for coefficients far below the double-precision floor of the
    real-axis sum.
    """
    if count <= 0:
        raise DomainError("count must be positive")
    if nodes is None:
        nodes = max(8 * count, 64)
    if rho is not None:
        # (1/(pi i)) \oint f u^-(j+1) dz  with dz = (1 - u^-2)/2 * i u dtheta
        sums = _contour_sums(f, count, nodes, rho, lambda u: 1.0 - u**-2)
        vals = _maybe_real(sums * rho ** -np.arange(count, dtype=float), f)
        return CoefficientTable(PolynomialFamily.chebyshev_u(), vals,
                                Provenance("contour", nodes, rho))
    if nodes < 4 * count:
        raise DomainError(f"need nodes >= 4*count ({4 * count}), got {nodes}")
    tr = theta_rule_for(f, nodes, rule)
    sin_t = np.sin(tr.theta)
    two_cos = 2.0 * np.cos(tr.theta)
    g = f.eval_theta(tr.theta, tr.theta_c) * sin_t * tr.weights * (2.0 / np.pi)
    out = np.empty(count, dtype=complex if f.is_complex else float)
    # sin((j+1)t) by the Chebyshev recurrence
    s_prev = np.zeros_like(sin_t)
    s_cur = sin_t
    for j in range(count):
        out[j] = g @ s_cur
        s_prev, s_cur = s_cur, two_cos * s_cur - s_prev
    prov = Provenance("quadrature", nodes)
    return CoefficientTable(PolynomialFamily.chebyshev_u(), out, prov)


def chebT_coeffs(f: ModelFunction, count: int, nodes: int | None = None,
                 rho: float | None = None, rule: str = "auto") -> CoefficientTable:
    """Chebyshev-T coefficients ``a_n^C = (2/pi) int_0^pi f(cos t) cos(n t) dt``
    (the expansion halves the n = 0 term)."""
    if count <= 0:
        raise DomainError("count must be positive")
    if nodes is None:
        nodes = max(8 * count, 64)
    if rho is not None:
        sums = _contour_sums(f, count, nodes, rho, lambda u: 2.0 + 0.0 * u)
        vals = _maybe_real(sums * rho ** -np.arange(count, dtype=float), f)
        return CoefficientTable(PolynomialFamily.chebyshev_t(), vals,
                                Provenance("contour", nodes, rho))
    if nodes < 4 * count:
        raise DomainError(f"need nodes >= 4*count ({4 * count}), got {nodes}")
    tr = theta_rule_for(f, nodes, rule)
    g = f.eval_theta(tr.theta, tr.theta_c) * tr.weights * (2.0 / np.pi)
    cos_t = np.cos(tr.theta)
    out = np.empty(count, dtype=complex if f.is_complex else float)
    c_prev, c_cur = cos_t, np.ones_like(cos_t)
    for n in range(count):
        out[n] = g @ c_cur
        c_prev, c_cur = c_cur, 2.0 * cos_t * c_cur - c_prev
    return CoefficientTable(PolynomialFamily.chebyshev_t(), out, Provenance("quadrature", nodes))


# ---------------------------------------------------------------------------
# connection coefficients


def _log_sigma_row(n: int, lam: float, tail: int) -> tuple[np.ndarray, np.ndarray]:
    """log|sigma_{n+2m,n}| and its sign for m = 0..tail."""
    logc, sc = log_c_norm(n, lam)
    l_a, s_a = log_pochhammer_table(n + 1.0, tail)
    l_b, s_b = log_pochhammer_table(1.0 - lam, tail)
    l_c, s_c = log_pochhammer_table(n + lam + 1.0, tail)
    l_f, _ = log_pochhammer_table(1.0, tail)
    return logc + l_a + l_b - l_c - l_f, sc * s_a * s_b * s_c


def connection_sigma(n: int, m: int, param) -> float:
    """Coefficient of ``C_n^(lam)`` in the expansion of ``U_{n+2m}``::

        Gamma(lam) n! / Gamma(n+lam) * (n+1)_m (1-lam)_m / ((n+lam+1)_m m!)
    """
    lam = as_param(param).require_proper()
    if n < 0 or m < 0:
        raise DomainError("connection_sigma needs n >= 0 and m >= 0")
    logs, signs = _log_sigma_row(n, lam, m)
    return float(signs[m] * math.exp(logs[m])) if signs[m] else 0.0


def _pairwise_sum(terms: np.ndarray):
    if len(terms) % 2:
        terms = np.append(terms, 0.0)
    return (terms[0::2] + terms[1::2]).sum()


def gegen_coeffs_numeric(f: ModelFunction, count: int, param, nodes: int | None = None,
                         tail: int | None = None, rho: float | None = None,
                         rule: str = "auto") -> CoefficientTable:
    """Gegenbauer coefficients from Chebyshev-U coefficients.

    Each ``a_n = sum_{m=0}^{tail} b_{n+2m} sigma_{n+2m,n}``. ``param`` may be a
    :class:`PolynomialFamily`; for ``chebyshev_t`` the cosine quadrature is
    used directly instead. ``meta["tail_residual"]`` holds the magnitude of
    the last included term for each ``n``.
    """
    fam = _as_family(param)
    if fam.kind == "chebyshev_t":
        return chebT_coeffs(f, count, nodes, rho, rule)
    if count <= 0:
        raise DomainError("count must be positive")
    if tail is None:
        tail = max(20, count)
    if tail < 1:
        raise DomainError("tail must be >= 1")
    lam = fam.lam
    total = count + 2 * tail
    b = chebU_coeffs(f, total, nodes if nodes is not None else max(8 * total, 64), rho, rule)
    bv = b.values
    out = np.empty(count, dtype=bv.dtype)
    resid = np.empty(count)
    for n in range(count):
        logs, signs = _log_sigma_row(n, lam, tail)
        sigma = signs * np.exp(logs)
        terms = bv[n: n + 2 * tail + 1: 2] * sigma
        out[n] = _pairwise_sum(terms)
        resid[n] = abs(terms[-1])
    return CoefficientTable(fam, out, b.provenance, {"tail": tail, "tail_residual": resid})


def projection_coeffs(f: ModelFunction, count: int, family, nodes: int = 2048) -> CoefficientTable:
    """Coefficients by direct weighted projection in ``theta``, split at the
    singular points of ``f`` (tanh-sinh on each piece).

    Used for functions singular inside (-1, 1), where neither the contour
    integral nor the Chebyshev-U series is practical.
    """
    fam = _as_family(family)
    tr = theta_rule_for(f, nodes, "tanh_sinh")
    fx = f.eval_theta(tr.theta, tr.theta_c)
    x = np.cos(tr.theta)
    if fam.kind == "chebyshev_t":
        polys = chebyshev_t_table(count - 1, x)
        vals = polys @ (fx * tr.weights) * (2.0 / np.pi)
    else:
        lam = fam.lam
        sin_t = np.where(tr.theta < tr.theta_c, np.sin(tr.theta), np.sin(tr.theta_c))
        polys = gegenbauer_table(count - 1, lam, x)
        raw = polys @ (fx * sin_t ** (2.0 * lam) * tr.weights)
        norms = np.array([math.exp(log_h_norm(n, lam)) for n in range(count)])
        vals = raw / norms
    return CoefficientTable(fam, vals, Provenance("projection", nodes))


# ---------------------------------------------------------------------------
# contour oracle


def _kernel_factor(n: int, lam: float, u: np.ndarray) -> np.ndarray:
    return hyp2f1_kernel(n, lam, 1.0 / (u * u))


def coeff_contour_oracle(f: ModelFunction, n: int, param, rho: float,
                         nodes: int = 1024) -> complex:
    """``a_n^(lam)`` from the contour integral over the Bernstein ellipse.

    Trapezoidal rule in the ellipse angle; the Joukowski root ``u`` of each
    node is selected as the root of modulus greater than one.
    """
    lam = as_param(param).require_proper()
    if not 1.0 < rho < f.rho_max:
        raise AnalyticityError(
            f"contour radius rho={rho} must satisfy 1 < rho < rho_max={f.rho_max:.6g}"
        )
    z = 0.5 * (rho * np.exp(2j * np.pi * np.arange(nodes) / nodes)
               + np.exp(-2j * np.pi * np.arange(nodes) / nodes) / rho)
    u = joukowski_root(z)
    logc, sc = log_c_norm(n, lam)
    # u^-n split as rho^-n * (u/rho)^-n to keep the magnitude in range
    integrand = f.eval_complex(z) * (1.0 - u**-2) * (u / rho) ** (-n) * _kernel_factor(n, lam, u)
    return complex(sc * math.exp(logc - n * math.log(rho)) * integrand.mean())


def contour_coeffs(f: ModelFunction, count: int, param, rho: float,
                   nodes: int = 1024) -> CoefficientTable:
    """Table version of :func:`coeff_contour_oracle`."""
    fam = _as_family(param)
    vals = np.array([coeff_contour_oracle(f, n, fam.gegenbauer_param(), rho, nodes)
                     for n in range(count)])
    return CoefficientTable(fam, _maybe_real(vals, f), Provenance("contour", nodes, rho))


# ---------------------------------------------------------------------------
# closed forms


def _log_gamma_reflect(x: float) -> tuple[float, int]:
    return log_gamma_signed(x)


def model_coeff(f: ModelFunction, n: int, param):
    """Closed-form coefficient of ``f`` for a pole or an endpoint singularity.

    ``param`` may be the Chebyshev-T limit marker, in which case the
    first-kind Chebyshev coefficient ``a_n^C`` is returned.
    """
    p = as_param(param)
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if f.kind == "pole":
        u = complex(joukowski_root(f.z0))
        if p.is_chebyshev_t_limit:
            val = -2.0 / ((u - f.z0) * u**n)
        else:
            logc, sc = log_c_norm(n, p.lam)
            kern = hyp2f1_kernel(n, p.lam, 1.0 / (u * u) if f.is_complex else (1.0 / (u * u)).real)
            val = -2.0 * sc * math.exp(logc) * u ** (-(n + 1)) * kern
        return val if f.is_complex else float(val.real)
    if f.kind == "algebraic_endpoint":
        return _algebraic_endpoint_coeff(f, n, p)
    if f.kind == "log_endpoint":
        return _log_endpoint_coeff(f, n, p)
    raise UnsupportedMethodError(f"no closed form for {f.name}")


def _algebraic_endpoint_coeff(f: ModelFunction, n: int, p: GegenbauerParam) -> float:
    a = f.alpha
    mu = (-1) ** n if f.sign < 0 else 1
    g_ref, s_ref = _log_gamma_reflect(a - n + 1.0)
    if p.is_chebyshev_t_limit:
        log_val = ((a + 1.0) * math.log(2.0) + math.lgamma(a + 0.5) + math.lgamma(a + 1.0)
                   - 0.5 * math.log(math.pi) - g_ref - math.lgamma(a + n + 1.0))
        return mu * s_ref * math.exp(log_val)
    lam = p.lam
    if not lam + a > -0.5:
        raise DomainError("closed form needs lam + alpha > -1/2")
    g_lam, s_lam = log_gamma_signed(lam)
    g_2lam, s_2lam = log_gamma_signed(2.0 * lam)
    log_val = ((4.0 * lam + a - 1.0) * math.log(2.0) + 2.0 * g_lam + math.lgamma(a + lam + 0.5)
               + math.lgamma(lam + 0.5) + math.lgamma(a + 1.0) + math.log(abs(n + lam))
               - math.log(math.pi) - g_2lam - g_ref - math.lgamma(a + 2.0 * lam + n + 1.0))
    sign = mu * s_2lam * s_ref * (1 if n + lam > 0 else -1)
    return sign * math.exp(log_val)


def _log_endpoint_coeff(f: ModelFunction, n: int, p: GegenbauerParam) -> float:
    if n == 0:
        raise UnsupportedMethodError("closed form for log(1 +- x) starts at n = 1")
    mu = -1 if f.sign < 0 else (-1) ** (n + 1)
    if p.is_chebyshev_t_limit:
        return mu * 2.0 / n
    lam = p.lam
    g_lam, s_lam = log_gamma_signed(lam)
    # Gamma(n+lam+1)/Gamma(n+lam) = n + lam
    log_val = (lam * math.log(4.0) + g_lam + math.lgamma(lam + 0.5) - 0.5 * math.log(math.pi)
               + math.lgamma(n + 1.0) + math.log(abs(n + lam)) - math.log(n)
               - math.lgamma(n + 1.0 + 2.0 * lam))
    return mu * s_lam * (1 if n + lam > 0 else -1) * math.exp(log_val)


def closed_form_table(f: ModelFunction, count: int, param, start: int = 0) -> CoefficientTable:
    fam = _as_family(param)
    p = fam.gegenbauer_param()
    vals = [model_coeff(f, n, p) for n in range(start, count)]
    vals = [0.0] * start + vals
    return CoefficientTable(fam, np.array(vals), Provenance("closed_form"), {"start": start})


# ---------------------------------------------------------------------------
# Cauchy transform


def cauchy_q(n: int, param, z, method: str = "closed", nodes: int = 400) -> complex:
    """``Q_n^(lam)(z) = 1/2 int (1-x^2)^(lam-1/2) C_n^(lam)(x) / (z - x) dx``.

    ``method="closed"`` uses the hypergeometric closed form,
    ``method="oracle"`` Gauss-Gegenbauer quadrature of the defining integral.
    """
    lam = as_param(param).require_proper()
    z = complex(z)
    if z.imag == 0 and -1.0 <= z.real <= 1.0:
        raise DomainError("Cauchy transform is defined off [-1, 1]")
    if method == "closed":
        u = complex(joukowski_root(z))
        logc, sc = log_c_norm(n, lam)
        log_h = log_h_norm(n, lam)
        kern = hyp2f1_kernel(n, lam, 1.0 / (u * u))
        return complex(sc * math.exp(logc + log_h) * u ** (-(n + 1)) * kern)
    if method == "oracle":
        x, w = roots_jacobi(nodes, lam - 0.5, lam - 0.5)
        c = gegenbauer_table(n, lam, x)[n]
        return complex(0.5 * np.sum(w * c / (z - x)))
    raise UnsupportedMethodError(f"unknown Cauchy transform method {method!r}")


# ---------------------------------------------------------------------------
# truncated expansions


def evaluate_expansion(values, family, x) -> np.ndarray:
    """``sum_n values[n] P_n(x)`` for the family's polynomials ``P_n``
    (first term halved for Chebyshev T)."""
    fam = _as_family(family)
    vals = np.asarray(values)
    if len(vals) == 0:
        return np.zeros_like(np.asarray(x, dtype=float))
    x = np.asarray(x, dtype=float)
    if fam.kind == "chebyshev_t":
        polys = chebyshev_t_table(len(vals) - 1, x)
        vals = vals.copy()
        vals[0] = 0.5 * vals[0]
    else:
        polys = gegenbauer_table(len(vals) - 1, fam.lam, x)
    return np.tensordot(vals, polys, axes=(0, 0))
