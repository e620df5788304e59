"""Model functions with a single known singularity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .specfun import joukowski_root

KINDS = (
    "pole",
    "algebraic_outside",
    "log_outside",
    "algebraic_endpoint",
    "log_endpoint",
    "custom",
)


def _is_integer(v: float) -> bool:
    return float(v) == math.floor(float(v))


@dataclass(frozen=True)
class ModelFunction:
    """A function on [-1, 1] together with what is known about its
    singularity.

    Build instances with the classmethods rather than the constructor:

    * ``pole(z0)``                 ``1 / (x - z0)``, ``z0`` off [-1, 1]
    * ``algebraic_outside(b, a)``  ``(b - x)**a``, ``b > 1``
    * ``log_outside(b)``           ``log(b - x)``, ``b > 1``
    * ``algebraic_endpoint(a, s)`` ``(1 + s x)**a``, ``s = -1`` or ``+1``
    * ``log_endpoint(s)``          ``log(1 + s x)``
    * ``custom(...)``              user callables
    """

    kind: str
    z0: complex | None = None
    b: float | None = None
    alpha: float | None = None
    sign: int = -1
    real_fn: Callable | None = field(default=None, compare=False)
    complex_fn: Callable | None = field(default=None, compare=False)
    custom_rho_max: float = 1.0
    singular_points: tuple = ()
    name: str = ""

    # -- constructors -----------------------------------------------------

    @classmethod
    def pole(cls, z0) -> "ModelFunction":
        z0 = complex(z0)
        if z0.imag == 0 and -1.0 <= z0.real <= 1.0:
            raise DomainError(f"pole must lie off [-1, 1], got {z0}")
        return cls("pole", z0=z0, name=f"pole(z0={_fmt(z0)})")

    @classmethod
    def algebraic_outside(cls, b: float, alpha: float) -> "ModelFunction":
        if not b > 1:
            raise DomainError(f"exterior branch point needs b > 1, got {b}")
        if alpha >= 0 and _is_integer(alpha):
            raise DomainError("alpha must not be a nonnegative integer (polynomial case)")
        return cls("algebraic_outside", b=float(b), alpha=float(alpha),
                   name=f"(b-x)^alpha(b={b:g},alpha={alpha:g})")

    @classmethod
    def log_outside(cls, b: float) -> "ModelFunction":
        if not b > 1:
            raise DomainError(f"exterior branch point needs b > 1, got {b}")
        return cls("log_outside", b=float(b), name=f"log(b-x)(b={b:g})")

    @classmethod
    def algebraic_endpoint(cls, alpha: float, sign: int = -1) -> "ModelFunction":
        if sign not in (-1, 1):
            raise DomainError("sign must be -1 or +1")
        if not alpha > -0.5:
            raise DomainError(f"endpoint exponent needs alpha > -1/2, got {alpha}")
        if _is_integer(alpha):
            raise DomainError("endpoint exponent must not be an integer")
        return cls("algebraic_endpoint", alpha=float(alpha), sign=sign,
                   singular_points=(-float(sign),),
                   name=f"(1{'+' if sign > 0 else '-'}x)^{alpha:g}")

    @classmethod
    def log_endpoint(cls, sign: int = -1) -> "ModelFunction":
        if sign not in (-1, 1):
            raise DomainError("sign must be -1 or +1")
        return cls("log_endpoint", sign=sign, singular_points=(-float(sign),),
                   name=f"log(1{'+' if sign > 0 else '-'}x)")

    @classmethod
    def custom(cls, eval_real, eval_complex=None, rho_max: float = 1.0,
               singular_points=(), name: str = "custom") -> "ModelFunction":
        if eval_complex is None and rho_max > 1.0:
            raise DomainError("rho_max > 1 needs an eval_complex callable")
        pts = tuple(sorted(float(p) for p in singular_points))
        if any(not -1.0 <= p <= 1.0 for p in pts):
            raise DomainError("singular_points must lie in [-1, 1]")
        return cls("custom", real_fn=eval_real, complex_fn=eval_complex,
                   custom_rho_max=float(rho_max), singular_points=pts, name=name)

    @classmethod
    def interior_algebraic(cls, x0: float, alpha: float) -> "ModelFunction":
        """``|x - x0|**alpha`` with ``x0`` in (-1, 1)."""
        if not -1.0 < x0 < 1.0:
            raise DomainError("interior singularity needs -1 < x0 < 1")
        return cls.custom(lambda x: np.abs(x - x0) ** alpha, singular_points=(x0,),
                          name=f"|x-{x0:g}|^{alpha:g}")

    @classmethod
    def interior_log(cls, x0: float) -> "ModelFunction":
        """``log|x - x0|`` with ``x0`` in (-1, 1)."""
        if not -1.0 < x0 < 1.0:
            raise DomainError("interior singularity needs -1 < x0 < 1")
        return cls.custom(lambda x: np.log(np.abs(x - x0)), singular_points=(x0,),
                          name=f"log|x-{x0:g}|")

    # -- properties -------------------------------------------------------

    @property
    def is_complex(self) -> bool:
        """True when the function takes complex values on [-1, 1]."""
        return self.kind == "pole" and self.z0.imag != 0.0

    @property
    def rho_max(self) -> float:
        """Largest Bernstein-ellipse parameter of the analyticity region."""
        if self.kind == "pole":
            return float(abs(joukowski_root(self.z0)))
        if self.kind in ("algebraic_outside", "log_outside"):
            return self.b + math.sqrt(self.b * self.b - 1.0)
        if self.kind == "custom":
            return self.custom_rho_max
        return 1.0

    @property
    def singularity(self) -> complex | None:
        """Location of the singularity when it lies off [-1, 1]."""
        if self.kind == "pole":
            return self.z0
        if self.kind in ("algebraic_outside", "log_outside"):
            return complex(self.b)
        return None

    @property
    def has_interior_singularity(self) -> bool:
        return any(-1.0 < p < 1.0 for p in self.singular_points)

    # -- evaluation -------------------------------------------------------

    def eval_real(self, x):
        x = np.asarray(x, dtype=float)
        k = self.kind
        if k == "pole":
            d = x - self.z0
            return 1.0 / d if self.is_complex else 1.0 / d.real
        if k == "algebraic_outside":
            return (self.b - x) ** self.alpha
        if k == "log_outside":
            return np.log(self.b - x)
        if k == "algebraic_endpoint":
            return (1.0 + self.sign * x) ** self.alpha
        if k == "log_endpoint":
            return np.log(1.0 + self.sign * x)
        return self.real_fn(x)

    def eval_complex(self, z):
        z = np.asarray(z, dtype=complex)
        k = self.kind
        if k == "pole":
            return 1.0 / (z - self.z0)
        if k == "algebraic_outside":
            return (self.b - z) ** self.alpha
        if k == "log_outside":
            return np.log(self.b - z)
        if k == "algebraic_endpoint":
            return (1.0 + self.sign * z) ** self.alpha
        if k == "log_endpoint":
            return np.log(1.0 + self.sign * z)
        if self.complex_fn is None:
            raise DomainError(f"{self.name} has no complex evaluation")
        return self.complex_fn(z)

    def eval_theta(self, theta, theta_c=None):
        """``f(cos theta)`` with ``theta_c = pi - theta`` supplied separately so
        that ``1 - cos`` and ``1 + cos`` are formed without cancellation."""
        theta = np.asarray(theta, dtype=float)
        if theta_c is None:
            theta_c = np.pi - theta
        if self.kind in ("algebraic_endpoint", "log_endpoint"):
            # 1 + s cos(theta) by half-angle identities
            if self.sign < 0:
                base = 2.0 * np.sin(0.5 * theta) ** 2
            else:
                base = 2.0 * np.sin(0.5 * np.asarray(theta_c)) ** 2
            if self.kind == "log_endpoint":
                return np.log(base)
            return base**self.alpha
        return self.eval_real(np.cos(theta))


def _fmt(z: complex) -> str:
    return f"{z.real:g}" if z.imag == 0 else f"{z.real:g}{z.imag:+g}j"
