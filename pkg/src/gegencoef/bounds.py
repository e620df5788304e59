"""Upper bounds for Gegenbauer coefficients, the Cauchy transform and
truncated Gegenbauer expansions.

Every bound is formed in log space first (``log10_*`` functions); the plain
versions exponentiate at the end. This keeps the diagonal case, where
``lam`` grows with the truncation degree, finite for degrees in the
hundreds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import AnalyticityError, DomainError, PreconditionError, UnsupportedMethodError
from .models import ModelFunction
from .specfun import (
    EllipseGeometry,
    as_param,
    ellipse_perimeter,
    hyp2f1_kernel,
    hyp2f1_kernel_degrees,
    log_c_norm,
    log_gamma_signed,
    log_h_norm,
    log_upsilon,
    upsilon,
)

LN10 = math.log(10.0)
WITNESS_GRID = 2048
WITNESS_INFLATION = 1.01
SERIES_TAIL_RTOL = 1e-16
SERIES_MAX_TERMS = 1_000_000


@dataclass(frozen=True)
class AnalyticityWitness:
    """Ellipse parameter ``rho`` and a bound ``M >= max |f|`` on that ellipse."""

    rho: float
    M: float
    source: str = "user"

    def __post_init__(self):
        if not float(self.rho) > 1.0:
            raise DomainError(f"witness needs rho > 1, got {self.rho}")
        if not float(self.M) > 0.0 or not math.isfinite(self.M):
            raise DomainError(f"witness needs a finite M > 0, got {self.M}")
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "M", float(self.M))

    @property
    def perimeter(self) -> float:
        return ellipse_perimeter(self.rho)

    @classmethod
    def for_model(cls, f: ModelFunction, rho: float, grid: int = WITNESS_GRID):
        """Witness for ``f`` on the ellipse ``rho``.

        For a pole on the real axis the exact maximum (attained at the nearer
        real vertex) is used; otherwise ``M`` is the grid maximum inflated by
        one percent. In both cases the grid maximum is checked against ``M``.
        """
        if not 1.0 < rho < f.rho_max:
            raise AnalyticityError(
                f"rho={rho} must satisfy 1 < rho < rho_max={f.rho_max:.6g}"
            )
        z = EllipseGeometry(rho).points(grid)
        grid_max = float(np.max(np.abs(f.eval_complex(z))))
        if f.kind == "pole" and f.z0.imag == 0.0:
            b = abs(f.z0.real)
            s = math.sqrt(b * b - 1.0)
            M = 2.0 * rho / ((b + s - rho) * (rho - (b - s)))
            source = "exact"
        else:
            M = WITNESS_INFLATION * grid_max
            source = "grid"
        if grid_max > M * (1.0 + 1e-12):
            raise AssertionError(f"ellipse grid maximum {grid_max} exceeds M={M}")
        return cls(rho, M, source)


@dataclass(frozen=True)
class BoundCurve:
    """A bound tabulated over an index (``n`` or ``N``), stored as log10."""

    kind: str
    params: dict
    index: np.ndarray
    log10_values: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("index", "log10_values"):
            arr = np.array(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if not np.all(np.isfinite(self.log10_values)):
            raise DomainError("bound curve has non-finite log10 values")

    @property
    def values(self) -> np.ndarray:
        return 10.0 ** self.log10_values


def _lam_of(param) -> float:
    return as_param(param).require_proper()


def _log_kernel(n: int, lam: float, x: float) -> float:
    val = hyp2f1_kernel(n, lam, x)
    if not val > 0:
        raise DomainError(f"nonpositive hypergeometric factor at n={n}, lam={lam}")
    return math.log(val)


def _kernel_arg(lam: float, rho: float) -> float:
    return 1.0 / rho**2 if lam <= 1.0 else -1.0 / rho**2


# ---------------------------------------------------------------------------
# coefficient bounds


def log10_coeff_bound(n: int, param, w: AnalyticityWitness, kind: str = "optimal") -> float:
    """log10 of :func:`coeff_bound`."""
    lam = _lam_of(param)
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    rho, M = w.rho, w.M
    if kind == "optimal":
        logc, _ = log_c_norm(n, lam)
        ln = (logc + math.log(M) + math.log(w.perimeter) - math.log(math.pi)
              - (n + 1) * math.log(rho) + _log_kernel(n, lam, _kernel_arg(lam, rho)))
        return ln / LN10
    if kind == "explicit":
        if not lam > 0:
            raise DomainError("explicit bound needs lam > 0")
        if n < 1:
            raise DomainError("explicit bound needs n >= 1")
        big_lambda = (math.lgamma(lam) + math.log(M) + log_upsilon(n, 1.0, lam)
                      - math.log(math.pi) + math.log(ellipse_perimeter(rho, "jameson_bound")))
        shift = -1.0 / rho**2 if lam <= 1.0 else 1.0 / rho**2
        ln = (big_lambda + (lam - 1.0) * math.log1p(shift) + (1.0 - lam) * math.log(n)
              - (n + 1) * math.log(rho))
        return ln / LN10
    raise UnsupportedMethodError(f"unknown coefficient bound {kind!r}")


def coeff_bound(n: int, param, w: AnalyticityWitness, kind: str = "optimal") -> float:
    """Upper bound for ``|a_n^(lam)|`` of a function analytic inside and on the
    Bernstein ellipse ``w.rho`` with ``|f| <= w.M`` there.

    Parameters
    ----------
    n : int
        Degree.
    param : GegenbauerParam or float
        Index ``lam`` (``lam > 0`` for ``kind="explicit"``).
    w : AnalyticityWitness
    kind : {"optimal", "explicit"}
        ``optimal`` is ``|c_{n,lam}| M L / (pi rho^(n+1)) F(+-1/rho^2)``;
        ``explicit`` replaces the gamma ratio, the hypergeometric factor and
        the perimeter by elementary majorants and is valid for ``n >= 1``.
    """
    return 10.0 ** log10_coeff_bound(n, param, w, kind)


def log10_comparator_bound(n: int, param, w: AnalyticityWitness, which: str) -> float:
    """log10 of :func:`comparator_bound`."""
    if n < 1:
        raise DomainError("comparator bounds need n >= 1")
    rho, M = w.rho, w.M
    if which == "zhao_legendre":
        ln = (math.log(M) + 0.5 * math.log(math.pi * n) - n * math.log(rho)
              + math.log1p((n + 2.0) / ((2.0 * n + 3.0) * (rho * rho - 1.0)))
              + (8.0 * n - 1.0) / (12.0 * n * (2.0 * n - 1.0)))
        return ln / LN10
    if which == "zhao_gegenbauer":
        lam = _lam_of(param)
        if not lam > 0:
            raise DomainError("zhao_gegenbauer needs lam > 0")
        g2, _ = log_gamma_signed(2.0 * lam)
        log_pref = ((4.0 * lam - 2.0) * math.log(2.0) + math.lgamma(lam + 0.5)
                    + 2.0 * math.lgamma(lam) - math.log(math.pi) - g2
                    + math.lgamma(n + lam + 0.5) - math.lgamma(n + 2.0 * lam))
        ln_ups = max(
            log_upsilon(n, 2.0 * lam, 1.5) + log_upsilon(2 * n, 2.0, 2.0 * lam),
            0.5 * (math.log((n + lam) / n) + log_upsilon(n, 1.0, lam + 0.5)
                   + log_upsilon(n, 2.0 * lam, lam + 0.5)),
        )
        bracket = (math.sqrt(math.pi) / 2.0 ** (2.0 * lam - 1.0)
                   + math.exp(math.lgamma(lam + 0.5) - 0.5 * math.lgamma(2.0 * lam + 1.0))
                   * 2.0 * math.sqrt(2.0) / (rho * rho - 1.0))
        ln = (log_pref + ln_ups + math.log(M) + math.log(bracket)
              + 0.5 * math.log(n) - n * math.log(rho))
        return ln / LN10
    raise UnsupportedMethodError(f"unknown comparator bound {which!r}")


def comparator_bound(n: int, param, w: AnalyticityWitness, which: str) -> float:
    """Earlier coefficient bounds from the literature, for comparison.

    ``zhao_legendre`` ignores ``param`` (it is the Legendre case);
    ``zhao_gegenbauer`` needs ``lam > 0``.
    """
    return 10.0 ** log10_comparator_bound(n, param, w, which)


def coeff_bound_curve(nmax: int, param, w: AnalyticityWitness, kind: str = "optimal",
                      nmin: int = 0) -> BoundCurve:
    idx = np.arange(nmin, nmax + 1)
    if kind == "optimal" and idx.size:
        lam = _lam_of(param)
        if nmin < 0:
            raise DomainError(f"degree must be nonnegative, got {nmin}")
        kern = hyp2f1_kernel_degrees(idx, lam, _kernel_arg(lam, w.rho))
        if not np.all(kern > 0):
            raise DomainError(f"nonpositive hypergeometric factor for lam={lam}")
        logc = np.array([log_c_norm(int(n), lam)[0] for n in idx])
        ln = (logc + math.log(w.M) + math.log(w.perimeter) - math.log(math.pi)
              - (idx + 1.0) * math.log(w.rho) + np.log(kern))
        return BoundCurve(kind, {"lam": as_param(param).lam, "rho": w.rho, "M": w.M}, idx, ln / LN10)
    if kind in ("zhao_legendre", "zhao_gegenbauer"):
        vals = [log10_comparator_bound(int(n), param, w, kind) for n in idx]
    else:
        vals = [log10_coeff_bound(int(n), param, w, kind) for n in idx]
    return BoundCurve(kind, {"lam": as_param(param).lam, "rho": w.rho, "M": w.M}, idx, np.array(vals))


# ---------------------------------------------------------------------------
# Cauchy transform bounds


def q_bound(n: int, delta: float, which: str = "ours") -> float:
    """Bound for ``|Q_n^(1/2)(x)|`` valid for ``x >= 1 + delta``.

    ``ours`` is ``sqrt(pi) Upsilon_n^{1,3/2} / (dh^n sqrt(n (dh^2 - 1)))``
    with ``dh = 1 + delta + sqrt((1+delta)^2 - 1)``; ``rokhlin`` is
    ``(log(2 (1+dt)/dt) + 1) (1+dt)^-(n+1)`` with ``dt = sqrt((1+delta)^2 - 1)``.
    """
    if n < 1:
        raise DomainError("q_bound needs n >= 1")
    if not delta > 0:
        raise DomainError(f"q_bound needs delta > 0, got {delta}")
    root = math.sqrt((1.0 + delta) ** 2 - 1.0)
    if which == "ours":
        dh = 1.0 + delta + root
        return (math.sqrt(math.pi) * upsilon(n, 1.0, 1.5)
                / (dh**n * math.sqrt(n * (dh * dh - 1.0))))
    if which == "rokhlin":
        return (math.log(2.0 * (1.0 + root) / root) + 1.0) * (1.0 + root) ** (-(n + 1))
    raise UnsupportedMethodError(f"unknown Q bound {which!r}")


def q_max_on_ellipse(n: int, param, rho: float) -> float:
    """``max |Q_n^(lam)(z)|`` over the ellipse ``rho``, attained on the real
    axis for ``lam <= 1`` and on the imaginary axis for ``lam > 1``."""
    lam = _lam_of(param)
    if not rho > 1.0:
        raise DomainError(f"q_max_on_ellipse needs rho > 1, got {rho}")
    logc, _ = log_c_norm(n, lam)
    ln = logc + log_h_norm(n, lam) - (n + 1) * math.log(rho) + _log_kernel(n, lam, _kernel_arg(lam, rho))
    return math.exp(ln)


# ---------------------------------------------------------------------------
# truncation bounds


SERIES_BLOCK = 256


def _log_series_sums(Ns, lam: float, rho: float) -> np.ndarray:
    """log of the sum of ``H(n) = Gamma(n+2lam)/Gamma(n+lam) rho^-(n+1) F_n``
    over ``n >= N`` for every ``N`` in ``Ns``, ``F_n`` the hypergeometric factor.

    Terms are generated in blocks from ``min(Ns)`` until the majorant
    ``term * r/(1-r)`` of the remainder (``r`` bounds the term ratio) is
    negligible for ``max(Ns)``; that majorant is then added to every sum.
    """
    Ns = np.asarray(Ns, dtype=int)
    n0, n1 = int(Ns.min()), int(Ns.max())
    x = _kernel_arg(lam, rho)
    ln_rho = math.log(rho)
    ln_tol = math.log(SERIES_TAIL_RTOL)
    chunks = []
    start = n0
    while start - n1 <= SERIES_MAX_TERMS:
        ns = np.arange(start, start + SERIES_BLOCK, dtype=float)
        kern = hyp2f1_kernel_degrees(ns, lam, x)
        if not np.all(kern > 0):
            raise DomainError(f"nonpositive hypergeometric factor for lam={lam}")
        ln_h = gammaln(ns + 2.0 * lam) - gammaln(ns + lam) - (ns + 1.0) * ln_rho + np.log(kern)
        chunks.append(ln_h)
        r = (ns + 2.0 * lam) * (ns + lam + 1.0) / (rho * (ns + lam) * (ns + 1.0))
        with np.errstate(divide="ignore"):
            ln_major = np.where(r < 1.0, ln_h + np.log(r) - np.log1p(-np.where(r < 1.0, r, 0.0)), np.inf)
        all_h = np.concatenate(chunks)
        # running log-sum from n1 onward, aligned with this block
        run = np.full(all_h.size, -np.inf)
        run[n1 - n0:] = np.logaddexp.accumulate(all_h[n1 - n0:])
        run = run[-ns.size:]
        ok = (ns >= n1) & (ln_major < ln_tol + run)
        hit = np.nonzero(ok)[0]
        if hit.size:
            k = int(ns[hit[0]]) - n0
            suffix = np.logaddexp.accumulate(all_h[: k + 1][::-1])[::-1]
            return np.logaddexp(suffix[Ns - n0], ln_major[hit[0]])
        start += SERIES_BLOCK
    raise RuntimeError("truncation series did not converge")


def _log_series_sum(N: int, lam: float, rho: float) -> float:
    return float(_log_series_sums([N], lam, rho)[0])


def _simple_threshold(N: int, lam: float) -> float:
    return (N + 2.0 * lam) * (N + lam + 1.0) / ((N + lam) * (N + 1.0))


def _log_simple(N: int, lam: float, w: AnalyticityWitness) -> float:
    rho = w.rho
    thr = _simple_threshold(N, lam)
    if not rho > thr:
        raise PreconditionError(
            f"simple bound needs rho > (N+2lam)(N+lam+1)/((N+lam)(N+1)) = {thr:.17g}, got rho={rho}"
        )
    num = (N + lam) * (N + 1.0)
    den = rho * num - (N + 2.0 * lam) * (N + lam + 1.0)
    log_C = math.log(w.M) + math.log(w.perimeter) - math.log(math.pi) + math.log(num / den)
    return (math.lgamma(lam) + math.lgamma(N + 2.0 * lam) - math.lgamma(2.0 * lam)
            - math.lgamma(N + lam) + (lam - 1.0) * math.log1p(1.0 / rho**2)
            + log_C - N * math.log(rho))


def _series_prefactor(lam: float, w: AnalyticityWitness) -> float:
    return (math.log(w.M) + math.log(w.perimeter) + math.lgamma(lam)
            - math.log(math.pi) - math.lgamma(2.0 * lam))


def log10_truncation_bound(N: int, param, w: AnalyticityWitness, kind: str = "series",
                           gamma: float | None = None) -> float:
    """log10 of :func:`truncation_bound`."""
    if N < 0:
        raise DomainError(f"truncation degree must be nonnegative, got {N}")
    rho = w.rho
    if kind == "diagonal":
        if gamma is None or not gamma > 0:
            raise DomainError("diagonal bound needs gamma > 0")
        lam = gamma * N
        if not lam >= 1.0:
            raise PreconditionError(f"diagonal bound needs lam = gamma*N >= 1, got {lam:.17g}")
        return _log_simple(N, lam, w) / LN10
    lam = _lam_of(param)
    if kind == "series":
        if not lam > 0:
            raise PreconditionError("series truncation bound needs lam > 0")
        return (_series_prefactor(lam, w) + _log_series_sum(N, lam, rho)) / LN10
    if kind == "lambda_one":
        if lam != 1.0:
            raise PreconditionError(f"lambda_one bound needs lam = 1, got {lam}")
        ln = (math.log(w.M) + math.log(w.perimeter) - math.log(math.pi) - N * math.log(rho)
              + math.log((N * (rho - 1.0) + rho) / (rho - 1.0) ** 2))
        return ln / LN10
    if kind == "simple":
        if not lam >= 1.0:
            raise PreconditionError(f"simple bound needs lam >= 1, got {lam}")
        return _log_simple(N, lam, w) / LN10
    raise UnsupportedMethodError(f"unknown truncation bound {kind!r}")


def truncation_bound(N: int, param, w: AnalyticityWitness, kind: str = "series",
                     gamma: float | None = None) -> float:
    """Bound on ``max |f - f_N|`` over [-1, 1], ``f_N`` the Gegenbauer expansion
    truncated after degree ``N - 1``.

    Parameters
    ----------
    N : int
        Number of retained terms.
    param : GegenbauerParam or float
        Index ``lam``; ignored by ``kind="diagonal"``, which uses
        ``lam = gamma * N``.
    w : AnalyticityWitness
    kind : {"series", "lambda_one", "simple", "diagonal"}
        ``series`` sums the coefficient bounds times ``C_n(1)`` and closes the
        sum with a geometric majorant, so it stays a rigorous bound;
        ``lambda_one`` is its closed form at ``lam = 1``; ``simple`` and
        ``diagonal`` are the cruder closed forms for ``lam >= 1`` that need
        ``rho`` above a threshold depending on ``N`` and ``lam``.
    gamma : float, optional
        Ratio ``lam / N`` for ``kind="diagonal"``.

    Raises
    ------
    PreconditionError
        When ``rho`` or ``lam`` is outside the range of the chosen bound; the
        message names the threshold.
    """
    return 10.0 ** log10_truncation_bound(N, param, w, kind, gamma)


def truncation_bound_curve(Ns, param, w: AnalyticityWitness, kind: str = "series",
                           gamma: float | None = None) -> BoundCurve:
    idx = np.asarray(list(Ns), dtype=int)
    if kind == "series" and idx.size and idx.min() >= 0:
        lam = _lam_of(param)
        if not lam > 0:
            raise PreconditionError("series truncation bound needs lam > 0")
        vals = (_series_prefactor(lam, w) + _log_series_sums(idx, lam, w.rho)) / LN10
        return BoundCurve(kind, {"lam": lam, "gamma": gamma, "rho": w.rho, "M": w.M}, idx, vals)
    vals = np.array([log10_truncation_bound(int(N), param, w, kind, gamma) for N in idx])
    lam = None if kind == "diagonal" else as_param(param).lam
    return BoundCurve(kind, {"lam": lam, "gamma": gamma, "rho": w.rho, "M": w.M}, idx, vals)
