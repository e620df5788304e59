"""Scalar special-function kernels.

Gamma ratios are always formed as differences of log-gamma values, so nothing
here evaluates a raw gamma function at an argument where it would overflow.
The hypergeometric kernel is the single family

    2F1(n + 1, 1 - lam; n + lam + 1; x)

that appears in the contour representation of Gegenbauer coefficients; no
general-parameter 2F1 is provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import eval_jacobi, roots_jacobi

from .errors import DomainError, UnsupportedMethodError, BranchError

SERIES_RTOL = 1e-17
SERIES_MAX_TERMS = 10_000
EULER_NODES = 64
AGM_TOL = 1e-16
AGM_MAX_ITER = 64


@dataclass(frozen=True)
class GegenbauerParam:
    """Gegenbauer index ``lam > -1/2``, ``lam != 0``.

    ``lam == 0`` is only accepted together with ``is_chebyshev_t_limit``,
    which stands for the limit lam -> 0+ (Chebyshev polynomials of the first
    kind). Use :meth:`chebyshev_t` to build it.
    """

    lam: float
    is_chebyshev_t_limit: bool = False

    def __post_init__(self):
        lam = float(self.lam)
        object.__setattr__(self, "lam", lam)
        if not math.isfinite(lam) or lam <= -0.5:
            raise DomainError(f"Gegenbauer index must satisfy lam > -1/2, got {lam}")
        if self.is_chebyshev_t_limit:
            if lam != 0.0:
                raise DomainError("the Chebyshev-T limit marker requires lam = 0")
        elif lam == 0.0:
            raise DomainError(
                "lam = 0 is not a Gegenbauer index; use GegenbauerParam.chebyshev_t()"
            )

    @classmethod
    def chebyshev_t(cls) -> "GegenbauerParam":
        return cls(0.0, is_chebyshev_t_limit=True)

    def require_proper(self) -> float:
        """Return ``lam``, refusing the Chebyshev-T limit marker."""
        if self.is_chebyshev_t_limit:
            raise DomainError("operation undefined in the Chebyshev-T limit (lam = 0)")
        return self.lam


def as_param(param) -> GegenbauerParam:
    if isinstance(param, GegenbauerParam):
        return param
    return GegenbauerParam(param)


@dataclass(frozen=True)
class EllipseGeometry:
    """Bernstein ellipse with foci at +-1 and semi-axis sum ``rho``."""

    rho: float

    def __post_init__(self):
        rho = float(self.rho)
        object.__setattr__(self, "rho", rho)
        if not rho >= 1.0:
            raise DomainError(f"Bernstein ellipse needs rho >= 1, got {rho}")

    @property
    def semi_major(self) -> float:
        return 0.5 * (self.rho + 1.0 / self.rho)

    @property
    def semi_minor(self) -> float:
        return 0.5 * (self.rho - 1.0 / self.rho)

    @property
    def eccentric_param(self) -> float:
        # eccentricity; equals 1/semi_major because the foci sit at +-1
        return 2.0 / (self.rho + 1.0 / self.rho)

    def points(self, count: int) -> np.ndarray:
        """``count`` equispaced (in angle) points on the ellipse, starting at
        the positive real vertex."""
        theta = 2.0 * np.pi * np.arange(count) / count
        u = self.rho * np.exp(1j * theta)
        return 0.5 * (u + 1.0 / u)


# ---------------------------------------------------------------------------
# gamma function helpers


def log_gamma(x: float) -> float:
    """``ln Gamma(x)`` for ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma needs a positive argument, got {x}")
    return math.lgamma(x)


def log_gamma_signed(x: float) -> tuple[float, int]:
    """Return ``(ln|Gamma(x)|, sign(Gamma(x)))`` for any real non-pole ``x``.

    Negative arguments go through the reflection formula
    Gamma(x) Gamma(1 - x) = pi / sin(pi x), with the sine evaluated on the
    argument reduced modulo 2 so the sign survives for large |x|.
    """
    x = float(x)
    if x > 0:
        return math.lgamma(x), 1
    if x == math.floor(x):
        raise DomainError(f"Gamma has a pole at {x}")
    r = x - 2.0 * math.floor(x / 2.0)
    s = math.sin(math.pi * r)
    return math.log(math.pi) - math.log(abs(s)) - math.lgamma(1.0 - x), (1 if s > 0 else -1)


def log_gamma_ratio(n: float, a: float, b: float) -> float:
    """``ln(Gamma(n + a) / Gamma(n + b))`` for ``n + a > 0`` and ``n + b > 0``."""
    if not (n + a > 0 and n + b > 0):
        raise DomainError(f"gamma_ratio needs n+a > 0 and n+b > 0 (n={n}, a={a}, b={b})")
    return math.lgamma(n + a) - math.lgamma(n + b)


def gamma_ratio(n: float, a: float, b: float) -> float:
    """``Gamma(n + a) / Gamma(n + b)`` computed through log-gamma."""
    return math.exp(log_gamma_ratio(n, a, b))


def log_upsilon(n: int, a: float, b: float) -> float:
    """Natural log of :func:`upsilon`."""
    if n < 1 or not (n + a > 1 and n + b > 1):
        raise DomainError(f"upsilon needs n >= 1, n+a > 1, n+b > 1 (n={n}, a={a}, b={b})")
    return (a - b) / (2.0 * (n + b - 1)) + 1.0 / (12.0 * (n + a - 1)) + (a - 1) * (a - b) / n


def upsilon(n: int, a: float, b: float) -> float:
    """Upper-bound factor with ``Gamma(n+a)/Gamma(n+b) <= upsilon * n**(a-b)``.

    Stated for ``n >= 1``, ``n + a > 1`` and ``n + b > 1``; the inequality
    fails for some ``1 < a < b``. Returns ``inf`` when the exponent overflows.
    """
    ln = log_upsilon(n, a, b)
    return math.exp(ln) if ln < 709.0 else math.inf


def log_pochhammer_table(a: float, m_max: int) -> tuple[np.ndarray, np.ndarray]:
    """``ln|(a)_m|`` and ``sign((a)_m)`` for ``m = 0..m_max`` as log-space
    running products. A zero factor gives ``-inf`` with sign 0."""
    factors = a + np.arange(m_max, dtype=float)
    with np.errstate(divide="ignore"):
        logs = np.concatenate(([0.0], np.cumsum(np.log(np.abs(factors)))))
    signs = np.concatenate(([1.0], np.cumprod(np.sign(factors))))
    return logs, signs


def pochhammer(a: float, m: int) -> float:
    logs, signs = log_pochhammer_table(a, m)
    return float(signs[m] * math.exp(logs[m])) if signs[m] else 0.0


# ---------------------------------------------------------------------------
# normalisation constants


def log_c_norm(n: int, param) -> tuple[float, int]:
    """``(ln|c_{n,lam}|, sign)`` with ``c_{n,lam} = Gamma(lam) n! / Gamma(n+lam)``."""
    lam = as_param(param).require_proper()
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    g1, s1 = log_gamma_signed(lam)
    g2, s2 = log_gamma_signed(n + lam)
    return g1 + math.lgamma(n + 1.0) - g2, s1 * s2


def c_norm(n: int, param, mode: str = "exact", alpha: float | None = None) -> float:
    """The constant ``c_{n,lam} = Gamma(lam) Gamma(n+1) / Gamma(n+lam)``.

    ``mode="asymptotic"`` gives the two-term large-``n`` expansion for fixed
    ``lam``; ``mode="diagonal"`` the leading behaviour when ``lam = alpha*n``
    (``param`` is then ignored apart from validation).
    """
    if mode == "exact":
        logc, sign = log_c_norm(n, param)
        return sign * math.exp(logc)
    if mode == "asymptotic":
        lam = as_param(param).require_proper()
        if n < 1:
            raise DomainError("asymptotic c_norm needs n >= 1")
        return math.gamma(lam) * n ** (1.0 - lam) * (1.0 + lam * (1.0 - lam) / (2.0 * n))
    if mode == "diagonal":
        if alpha is None or not alpha > 0:
            raise DomainError("diagonal c_norm needs alpha > 0")
        if n < 1:
            raise DomainError("diagonal c_norm needs n >= 1")
        log_base = alpha * math.log(alpha) - (alpha + 1.0) * math.log(alpha + 1.0)
        return math.exp(n * log_base) * math.sqrt(2.0 * math.pi * n * (alpha + 1.0) / alpha)
    raise UnsupportedMethodError(f"unknown c_norm mode {mode!r}")


def log_h_norm(n: int, param) -> float:
    lam = as_param(param).require_proper()
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    g_num, s_num = log_gamma_signed(n + 2.0 * lam)
    g_lam, _ = log_gamma_signed(lam)
    val = (1.0 - 2.0 * lam) * math.log(2.0) + math.log(math.pi) + g_num - 2.0 * g_lam
    val -= math.lgamma(n + 1.0) + math.log(abs(n + lam))
    if s_num * (1 if n + lam > 0 else -1) < 0:
        raise DomainError("negative Gegenbauer norm; parameters outside lam > -1/2")
    return val


def h_norm(n: int, param) -> float:
    """Squared norm ``h_n`` of ``C_n^(lam)`` under the weight ``(1-x^2)^(lam-1/2)``."""
    return math.exp(log_h_norm(n, param))


# ---------------------------------------------------------------------------
# Joukowski map


def joukowski_root(z):
    """Root ``u`` of ``u^2 - 2 z u + 1 = 0`` with ``|u| > 1``.

    Maps the Bernstein ellipse of parameter rho onto the circle ``|u| = rho``.
    Raises :class:`BranchError` for points of [-1, 1], where both roots have
    unit modulus.
    """
    z = np.asarray(z, dtype=complex)
    s = np.sqrt(z * z - 1.0)
    u1 = z + s
    u2 = z - s
    u = np.where(np.abs(u1) >= np.abs(u2), u1, u2)
    if np.any(np.abs(u) <= 1.0 + 1e-14):
        raise BranchError("Joukowski root of modulus one: point lies on [-1, 1]")
    return u if u.ndim else complex(u)


# ---------------------------------------------------------------------------
# hypergeometric kernel 2F1(n+1, 1-lam; n+lam+1; x)


def _series(a: float, b: float, c: float, x: np.ndarray, label: str) -> np.ndarray:
    total = np.ones_like(x)
    term = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    for k in range(SERIES_MAX_TERMS):
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0))
        term = np.where(active, term * ratio * x, 0.0)
        total = total + term
        # stop once terms are negligible and no longer growing
        done = (np.abs(term) < SERIES_RTOL * np.abs(total)) & (np.abs(ratio * x) < 1.0)
        done |= term == 0
        active &= ~done
        if not active.any():
            return total
    raise RuntimeError(f"2F1 kernel series did not converge in {SERIES_MAX_TERMS} terms ({label})")


def _kernel_series(n: int, lam: float, x: np.ndarray) -> np.ndarray:
    label = f"n={n}, lam={lam}"
    if lam > 1.0 and not np.iscomplexobj(x) and np.any(x > 0):
        # (1-lam)_k alternates; for x > 0 Euler's transformation
        # F(a,b;c;x) = (1-x)^(c-a-b) F(c-a, c-b; c; x) has positive terms only
        out = np.empty_like(x)
        pos = x > 0
        xp = x[pos]
        out[pos] = (1.0 - xp) ** (2.0 * lam - 1.0) * _series(lam, n + 2.0 * lam, n + lam + 1.0, xp, label)
        if np.any(~pos):
            out[~pos] = _series(n + 1.0, 1.0 - lam, n + lam + 1.0, x[~pos], label)
        return out
    return _series(n + 1.0, 1.0 - lam, n + lam + 1.0, x, label)


@lru_cache(maxsize=64)
def _jacobi_rule(alpha: float, nodes: int):
    """Gauss-Jacobi rule for the weight ``(1-y)^alpha`` on [-1, 1].

    scipy's nodes drift near y = 1 when alpha is close to -1, so they get a
    few Newton steps, the weights come from the derivative formula and are
    rescaled to the exact total mass.
    """
    y, _ = roots_jacobi(nodes, alpha, 0.0)
    half = 0.5 * (nodes + alpha + 1.0)
    for _ in range(3):
        y = y - eval_jacobi(nodes, alpha, 0.0, y) / (half * eval_jacobi(nodes - 1, alpha + 1.0, 1.0, y))
    dp = half * eval_jacobi(nodes - 1, alpha + 1.0, 1.0, y)
    w = 1.0 / ((1.0 - y) * (1.0 + y) * dp**2)
    mass = math.exp((alpha + 1.0) * math.log(2.0) - math.log(alpha + 1.0))
    return y, w * (mass / w.sum())


def _kernel_euler(n: int, lam: float, x: np.ndarray) -> np.ndarray:
    # Gauss-Jacobi on t = (1+y)/2 absorbs the (1-t)^(lam-1) endpoint exactly
    y, w = _jacobi_rule(lam - 1.0, EULER_NODES)
    t = 0.5 * (1.0 + y)
    xt = x[..., None] * t
    integrand = t**n * (1.0 - xt) ** (lam - 1.0)
    integral = (integrand * w).sum(axis=-1) * 2.0 ** (-lam)
    log_pref = math.lgamma(n + lam + 1.0) - math.lgamma(n + 1.0) - math.lgamma(lam)
    return math.exp(log_pref) * integral


def _kernel_asymptotic(n: int, lam: float, x: np.ndarray) -> np.ndarray:
    # large-parameter form with a = 1, b = 1 - lam, c = lam + 1, large parameter n
    b = 1.0 - lam
    return (1.0 - x) ** (-b) * (1.0 - b * lam / (n + lam + 1.0) * x / (1.0 - x))


def hyp2f1_kernel(n: int, param, x, method: str = "series"):
    """Evaluate ``2F1(n+1, 1-lam; n+lam+1; x)`` for ``|x| < 1``.

    Parameters
    ----------
    n : int
        Nonnegative degree.
    param : GegenbauerParam or float
        Index ``lam``. The Chebyshev-T limit (lam = 0) is allowed and gives
        ``1/(1-x)``.
    x : float, complex or array_like
        Argument(s) with ``|x| < 1``.
    method : {"series", "euler", "asymptotic"}
        ``series`` sums the hypergeometric series; ``euler`` integrates Euler's
        representation (``lam > 0`` only); ``asymptotic`` is the two-term
        large-``n`` approximation.
    """
    p = as_param(param)
    lam = p.lam
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a nonnegative integer, got {n}")
    n = int(n)
    scalar = np.ndim(x) == 0
    xa = np.asarray(x)
    is_complex = np.iscomplexobj(xa)
    xa = xa.astype(complex if is_complex else float)
    if np.any(np.abs(xa) >= 1.0):
        raise DomainError("hyp2f1_kernel needs |x| < 1")
    if method == "series":
        out = _kernel_series(n, lam, xa)
    elif method == "euler":
        if not lam > 0:
            raise UnsupportedMethodError("Euler's integral representation needs lam > 0")
        xe = xa if is_complex else xa.astype(complex)
        out = _kernel_euler(n, lam, xe)
        if not is_complex:
            out = out.real
    elif method == "asymptotic":
        out = _kernel_asymptotic(n, lam, xa)
    else:
        raise UnsupportedMethodError(f"unknown hypergeometric method {method!r}")
    if scalar:
        out = out[()]
        return complex(out) if is_complex else float(out)
    return out


def hyp2f1_kernel_degrees(ns, param, x: float) -> np.ndarray:
    """``2F1(n+1, 1-lam; n+lam+1; x)`` for an array of degrees at one real
    ``x`` with ``|x| < 1``, summed as a single vectorised series."""
    lam = as_param(param).lam
    ns = np.asarray(ns, dtype=float)
    if np.any(ns < 0) or np.any(ns != np.floor(ns)):
        raise DomainError("degrees must be nonnegative integers")
    x = float(x)
    if not abs(x) < 1.0:
        raise DomainError("hyp2f1_kernel_degrees needs |x| < 1")
    xa = np.full(ns.shape, x)
    label = f"n={int(ns.min()) if ns.size else 0}.., lam={lam}"
    if lam > 1.0 and x > 0:
        return (1.0 - x) ** (2.0 * lam - 1.0) * _series(lam, ns + 2.0 * lam, ns + lam + 1.0, xa, label)
    return _series(ns + 1.0, 1.0 - lam, ns + lam + 1.0, xa, label)


def integer_lambda_kernel(n: int, lam: int, x):
    """Finite sum form of the kernel for a positive integer ``lam``."""
    if int(lam) != lam or lam < 1:
        raise DomainError("integer_lambda_kernel needs a positive integer lam")
    total = 0.0
    for k in range(int(lam)):
        coef = pochhammer(n + 1.0, k) * pochhammer(1.0 - lam, k)
        coef /= pochhammer(n + lam + 1.0, k) * math.factorial(k)
        total = total + coef * np.asarray(x) ** k
    return total


# ---------------------------------------------------------------------------
# ellipse perimeter


def elliptic_e(k: float) -> float:
    """Complete elliptic integral of the second kind ``E(k)`` (modulus ``k``)
    by the arithmetic-geometric mean."""
    k = float(k)
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"elliptic modulus must lie in [0, 1], got {k}")
    if k == 1.0:
        return 1.0
    a, b = 1.0, math.sqrt((1.0 - k) * (1.0 + k))
    c = k
    acc = 0.5 * c * c
    power = 0.5
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= AGM_TOL * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        power *= 2.0
        acc += power * c * c
    return math.pi / (2.0 * a) * (1.0 - acc)


def ellipse_perimeter(geom, mode: str = "elliptic") -> float:
    """Perimeter of the Bernstein ellipse.

    ``mode="elliptic"`` is exact, ``(4/eps) E(eps)``; ``mode="jameson_bound"``
    is the elementary upper bound ``2(rho+1/rho) + 2(pi/2-1)(rho-1/rho)``,
    which is attained at ``rho = 1``.
    """
    if not isinstance(geom, EllipseGeometry):
        geom = EllipseGeometry(geom)
    rho = geom.rho
    if mode == "elliptic":
        eps = geom.eccentric_param
        return 4.0 / eps * elliptic_e(eps)
    if mode == "jameson_bound":
        return 2.0 * (rho + 1.0 / rho) + 2.0 * (math.pi / 2.0 - 1.0) * (rho - 1.0 / rho)
    raise UnsupportedMethodError(f"unknown perimeter mode {mode!r}")
