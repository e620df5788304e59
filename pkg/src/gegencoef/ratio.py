"""The ratio of Legendre to first-kind Chebyshev coefficients,

    gamma_n = a_n^L / a_n^C,

with its large-``n`` predictions. For a singularity ``z0`` off [-1, 1] the
ratio grows like ``g(z0) sqrt(n pi)``; for an algebraic or logarithmic
endpoint singularity it tends to a constant; for a singularity inside
(-1, 1) no prediction is made.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeffs import chebT_coeffs, gegen_coeffs_numeric, model_coeff, projection_coeffs
from .errors import DomainError, UnsupportedMethodError
from .models import ModelFunction
from .polyval import PolynomialFamily
from .specfun import GegenbauerParam, joukowski_root

MASK_RTOL = 1e-13
NONE_INTERIOR = "none_interior"
# contour radius as a fraction of rho_max for exterior singularities
CONTOUR_FRACTION = 0.98
CONTOUR_NODES = 4096
PROJECTION_NODES = 4096


@dataclass(frozen=True)
class RatioReport:
    """``gamma_values[k]`` is the ratio at degree ``index[k]``; masked degrees
    hold NaN. ``prediction`` is NaN throughout for ``none_interior``."""

    index: np.ndarray
    gamma_values: np.ndarray
    prediction: np.ndarray
    residuals: np.ndarray
    prediction_kind: str
    legendre: np.ndarray
    chebyshev: np.ndarray

    def __post_init__(self):
        for name in ("index", "gamma_values", "prediction", "residuals", "legendre", "chebyshev"):
            arr = np.array(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def normalized(self) -> np.ndarray:
        """``gamma_n / sqrt(n pi)``."""
        return self.gamma_values / np.sqrt(self.index * np.pi)


def g_factor(z) -> complex:
    """``sqrt((z^2 - 1)/(u^2 - 1))`` with ``u`` the Joukowski root of modulus
    greater than one.

    Written as ``sqrt(1 - u^-2) / 2``; since ``|u^-2| < 1`` the principal root
    is analytic off [-1, 1] and positive for real ``z > 1``.
    """
    z = complex(z)
    if z.imag == 0.0 and -1.0 <= z.real <= 1.0:
        raise DomainError("g(z) is defined off [-1, 1] (it tends to 0 at z = +-1)")
    u = complex(joukowski_root(z))
    return 0.5 * complex(np.sqrt(1.0 - u**-2))


def _prediction_kind(f: ModelFunction) -> str:
    if f.kind in ("pole", "algebraic_outside", "log_outside"):
        return "pole_g"
    if f.kind == "algebraic_endpoint":
        return "endpoint_algebraic"
    if f.kind == "log_endpoint":
        return "endpoint_log"
    if f.has_interior_singularity:
        return NONE_INTERIOR
    raise UnsupportedMethodError(f"no ratio prediction for {f.name}")


def ratio_prediction(f: ModelFunction, n: int):
    """Leading-order value of ``gamma_n``.

    Returns ``g(z0) sqrt(n pi)`` for a pole or an exterior branch point,
    ``sqrt(pi) Gamma(alpha+1)/Gamma(alpha+1/2)`` for ``(1 +- x)^alpha``,
    ``1`` for ``log(1 +- x)`` and the marker :data:`NONE_INTERIOR` for a
    function singular inside (-1, 1).
    """
    kind = _prediction_kind(f)
    if kind == "pole_g":
        val = g_factor(f.singularity) * math.sqrt(n * math.pi)
        return val.real if val.imag == 0.0 else val
    if kind == "endpoint_algebraic":
        a = f.alpha
        return math.sqrt(math.pi) * math.exp(math.lgamma(a + 1.0) - math.lgamma(a + 0.5))
    if kind == "endpoint_log":
        return 1.0
    return NONE_INTERIOR


def chebT_asymptotic_algebraic(n: int, alpha: float, b: float) -> float:
    """Leading-order Chebyshev coefficient of ``(b - x)^alpha``, ``b > 1``::

        xi / (sqrt(b^2-1) (b + sqrt(b^2-1))^n),
        xi = -2 sin(alpha pi) (b^2-1)^((alpha+1)/2) Gamma(alpha+1) / (pi n^(alpha+1))
    """
    if alpha == math.floor(alpha) and alpha >= 0:
        raise DomainError("alpha must not be a nonnegative integer")
    if not b > 1:
        raise DomainError(f"need b > 1, got {b}")
    if n < 1:
        raise DomainError("asymptotic coefficient needs n >= 1")
    s = math.sqrt(b * b - 1.0)
    log_mag = (math.log(2.0) + 0.5 * (alpha + 1.0) * math.log(b * b - 1.0)
               + math.lgamma(alpha + 1.0) - math.log(math.pi) - (alpha + 1.0) * math.log(n)
               - math.log(s) - n * math.log(b + s))
    sgn_gamma = 1.0
    if alpha + 1.0 < 0:
        sgn_gamma = math.copysign(1.0, math.gamma(alpha + 1.0))
    return -math.sin(alpha * math.pi) * sgn_gamma * math.exp(log_mag)


def _coefficients(f: ModelFunction, N: int):
    """Legendre and Chebyshev-T coefficients for degrees 0..N."""
    count = N + 1
    if f.kind in ("pole", "algebraic_endpoint", "log_endpoint"):
        start = 1 if f.kind == "log_endpoint" else 0
        leg = [np.nan] * start + [model_coeff(f, n, 0.5) for n in range(start, count)]
        cheb = [np.nan] * start + [model_coeff(f, n, GegenbauerParam.chebyshev_t())
                                   for n in range(start, count)]
        return np.array(leg), np.array(cheb)
    if f.kind in ("algebraic_outside", "log_outside") or (
        f.kind == "custom" and f.rho_max > 1.0 and not f.singular_points
    ):
        # sample on an ellipse close to the singularity, so coefficients far
        # below machine epsilon keep full relative accuracy
        rho = 1.0 + CONTOUR_FRACTION * (f.rho_max - 1.0)
        leg = gegen_coeffs_numeric(f, count, 0.5, nodes=CONTOUR_NODES, rho=rho)
        cheb = chebT_coeffs(f, count, nodes=CONTOUR_NODES, rho=rho)
        return leg.values, cheb.values
    leg = projection_coeffs(f, count, PolynomialFamily.legendre(), PROJECTION_NODES)
    cheb = projection_coeffs(f, count, PolynomialFamily.chebyshev_t(), PROJECTION_NODES)
    return leg.values, cheb.values


def _mask(cheb: np.ndarray) -> np.ndarray:
    """True where ``|a_n^C|`` is negligible next to its neighbours ``n +- 1``.

    A local scale is used because geometrically decaying coefficients fall
    far below any fixed fraction of the largest one.
    """
    mag = np.nan_to_num(np.abs(cheb))
    padded = np.concatenate(([0.0], mag, [0.0]))
    local = np.maximum(padded[:-2], padded[2:])
    return mag <= MASK_RTOL * local


def gamma_series(f: ModelFunction, N: int) -> RatioReport:
    """``gamma_n`` for ``n = 1..N`` with the matching prediction.

    Degrees where ``|a_n^C|`` is below ``1e-13`` times the larger of its two
    neighbours are masked (NaN), which removes the zeros of even or odd
    functions.
    """
    if N < 1:
        raise DomainError("gamma_series needs N >= 1")
    kind = _prediction_kind(f)
    leg, cheb = _coefficients(f, N)
    idx = np.arange(1, N + 1)
    leg, cheb = leg[1:], cheb[1:]
    masked = _mask(cheb)
    with np.errstate(divide="ignore", invalid="ignore"):
        gam = np.where(masked, np.nan, leg / np.where(masked, 1.0, cheb))
    if kind == NONE_INTERIOR:
        pred = np.full(N, np.nan)
    else:
        pred = np.array([ratio_prediction(f, int(n)) for n in idx])
    if not np.iscomplexobj(gam) and np.iscomplexobj(pred):
        gam = gam.astype(complex)
    resid = gam - pred
    return RatioReport(idx, gam, pred, resid, kind, leg, cheb)
