"""Quadrature rules in the angle variable ``theta`` on [0, pi].

Two rules are used. The midpoint rule (the trapezoidal rule on the grid
shifted by half a step) is spectrally accurate for ``f(cos theta)`` when f is
analytic on [-1, 1], and never touches the endpoints. For functions with a
singularity on [-1, 1] the interval is split at the singular angles and each
piece gets a tanh-sinh rule, whose nodes cluster double-exponentially at the
piece ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TANH_SINH_TMAX = 3.0


@dataclass(frozen=True)
class ThetaRule:
    """Nodes ``theta``, complements ``theta_c = pi - theta`` (accurate near
    pi) and weights, so that ``int_0^pi g = sum(weights * g(theta))``."""

    theta: np.ndarray
    theta_c: np.ndarray
    weights: np.ndarray


def midpoint_rule(nodes: int) -> ThetaRule:
    k = np.arange(nodes)
    theta = (k + 0.5) * np.pi / nodes
    theta_c = theta[::-1].copy()
    return ThetaRule(theta, theta_c, np.full(nodes, np.pi / nodes))


def tanh_sinh_rule(a: float, b: float, nodes: int, tmax: float = TANH_SINH_TMAX):
    """Tanh-sinh rule on [a, b].

    Returns ``(x, w, dist_a, dist_b)`` where ``dist_a = x - a`` and
    ``dist_b = b - x`` are computed without cancellation.
    """
    half = max(nodes // 2, 4)
    h = tmax / half
    t = h * np.arange(-half, half + 1)
    u = 0.5 * np.pi * np.sinh(t)
    width = b - a
    dist_a = width / (1.0 + np.exp(-2.0 * u))
    dist_b = width / (1.0 + np.exp(2.0 * u))
    x = np.where(dist_a <= dist_b, a + dist_a, b - dist_b)
    w = 0.5 * width * h * 0.5 * np.pi * np.cosh(t) / np.cosh(u) ** 2
    return x, w, dist_a, dist_b


def split_theta_rule(breaks_x, nodes: int) -> ThetaRule:
    """Tanh-sinh rules on the pieces of [0, pi] cut at ``arccos(breaks_x)``."""
    cuts = sorted({0.0, math.pi, *(math.acos(float(p)) for p in breaks_x)})
    thetas, comps, weights = [], [], []
    for a, b in zip(cuts[:-1], cuts[1:]):
        x, w, da, db = tanh_sinh_rule(a, b, nodes)
        # complement pi - theta, exact near pi when the piece ends at pi
        comp = np.where((b == math.pi) & (db < da), db, math.pi - x)
        thetas.append(x)
        comps.append(comp)
        weights.append(w)
    return ThetaRule(np.concatenate(thetas), np.concatenate(comps), np.concatenate(weights))


def theta_rule_for(f, nodes: int, rule: str = "auto") -> ThetaRule:
    """Pick the rule for model function ``f``: split tanh-sinh when ``f`` has a
    singular point on [-1, 1], the midpoint rule otherwise."""
    if rule == "auto":
        rule = "tanh_sinh" if f.singular_points else "trapezoid"
    if rule == "trapezoid":
        return midpoint_rule(nodes)
    if rule == "tanh_sinh":
        return split_theta_rule(f.singular_points, nodes)
    raise ValueError(f"unknown quadrature rule {rule!r}")
