"""Pointwise evaluation of Gegenbauer, Legendre and Chebyshev polynomials by
forward three-term recurrence."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import GegenbauerParam, as_param, log_gamma_signed


@dataclass(frozen=True)
class PolynomialFamily:
    """One of the four families: ``gegenbauer`` (needs ``param``),
    ``legendre``, ``chebyshev_t`` or ``chebyshev_u``."""

    kind: str
    param: GegenbauerParam | None = None

    def __post_init__(self):
        if self.kind not in ("gegenbauer", "legendre", "chebyshev_t", "chebyshev_u"):
            raise DomainError(f"unknown polynomial family {self.kind!r}")
        if self.kind == "gegenbauer":
            if self.param is None:
                raise DomainError("gegenbauer family needs a parameter")
            p = as_param(self.param)
            if p.is_chebyshev_t_limit:
                raise DomainError("use the chebyshev_t family for the lam -> 0 limit")
            object.__setattr__(self, "param", p)

    @classmethod
    def gegenbauer(cls, lam) -> "PolynomialFamily":
        return cls("gegenbauer", as_param(lam))

    @classmethod
    def legendre(cls) -> "PolynomialFamily":
        return cls("legendre")

    @classmethod
    def chebyshev_t(cls) -> "PolynomialFamily":
        return cls("chebyshev_t")

    @classmethod
    def chebyshev_u(cls) -> "PolynomialFamily":
        return cls("chebyshev_u")

    @property
    def lam(self) -> float:
        """Equivalent Gegenbauer index (0 for Chebyshev T)."""
        return {"legendre": 0.5, "chebyshev_u": 1.0, "chebyshev_t": 0.0}.get(
            self.kind, self.param.lam if self.param else 0.0
        )

    def gegenbauer_param(self) -> GegenbauerParam:
        if self.kind == "chebyshev_t":
            return GegenbauerParam.chebyshev_t()
        return GegenbauerParam(self.lam)

    def label(self) -> str:
        if self.kind == "gegenbauer":
            return f"gegenbauer(lam={self.param.lam:g})"
        return self.kind


def gegenbauer_table(nmax: int, param, x) -> np.ndarray:
    """All of ``C_0 .. C_nmax`` at ``x``; shape ``(nmax + 1,) + shape(x)``."""
    lam = as_param(param).require_proper()
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2.0 * lam * x
    for n in range(1, nmax):
        out[n + 1] = (2.0 * x * (n + lam) * out[n] - (n + 2.0 * lam - 1.0) * out[n - 1]) / (n + 1.0)
    return out


def chebyshev_t_table(nmax: int, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for n in range(1, nmax):
        out[n + 1] = 2.0 * x * out[n] - out[n - 1]
    return out


def gegenbauer_eval(n: int, param, x):
    """``C_n^(lam)(x)`` by forward recurrence from ``C_0 = 1``, ``C_1 = 2 lam x``."""
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    val = gegenbauer_table(n, param, x)[n]
    return float(val) if np.ndim(val) == 0 else val


def gegenbauer_at_one(n: int, param) -> float:
    """``C_n^(lam)(1) = Gamma(n + 2 lam) / (n! Gamma(2 lam))``."""
    lam = as_param(param).require_proper()
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if n == 0:
        return 1.0
    g_num, s_num = log_gamma_signed(n + 2.0 * lam)
    g_den, s_den = log_gamma_signed(2.0 * lam)
    return s_num * s_den * math.exp(g_num - math.lgamma(n + 1.0) - g_den)


def family_table(fam: PolynomialFamily, nmax: int, x) -> np.ndarray:
    if fam.kind == "chebyshev_t":
        return chebyshev_t_table(nmax, x)
    return gegenbauer_table(nmax, fam.lam, x)


def family_eval(fam: PolynomialFamily, n: int, x):
    """Evaluate degree ``n`` of ``fam`` at ``x``. Chebyshev T uses its own
    recurrence rather than the lam -> 0 limit."""
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    val = family_table(fam, n, x)[n]
    return float(val) if np.ndim(val) == 0 else val
