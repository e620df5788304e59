"""Gegenbauer, Legendre and Chebyshev expansion coefficients, decay bounds and
the Legendre/Chebyshev coefficient ratio."""

from .bounds import (
    AnalyticityWitness,
    BoundCurve,
    coeff_bound,
    comparator_bound,
    q_bound,
    q_max_on_ellipse,
    truncation_bound,
)
from .coeffs import (
    CoefficientTable,
    cauchy_q,
    chebT_coeffs,
    chebU_coeffs,
    coeff_contour_oracle,
    connection_sigma,
    evaluate_expansion,
    gegen_coeffs_numeric,
    model_coeff,
)
from .errors import (
    AnalyticityError,
    BranchError,
    DomainError,
    PreconditionError,
    UnsupportedMethodError,
)
from .models import ModelFunction
from .polyval import PolynomialFamily, gegenbauer_eval
from .ratio import RatioReport, chebT_asymptotic_algebraic, g_factor, gamma_series, ratio_prediction
from .specfun import (
    EllipseGeometry,
    GegenbauerParam,
    ellipse_perimeter,
    gamma_ratio,
    hyp2f1_kernel,
    hyp2f1_kernel_degrees,
    upsilon,
)

__version__ = "0.1.0"
