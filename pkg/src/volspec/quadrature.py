"""Gauss-Legendre quadrature on arbitrary intervals.

Nodes are the roots of P_n, found by Newton iteration started from the
Chebyshev-angle guesses cos(pi (4k - 1) / (4n + 2)); this stays robust
for n in the hundreds, which the coefficient-matrix builds need.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

__all__ = ["QuadratureRule", "gauss_legendre", "integrate"]

_NEWTON_TOL = 1e-15
_MAX_NEWTON_ITERS = 100


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for integration over `interval` = (a, b)."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    @property
    def size(self) -> int:
        return self.nodes.size


def _legendre_value_and_derivative(n: int, x: np.ndarray):
    """P_n(x) and P_n'(x) for x strictly inside (-1, 1)."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [a, b].

    Exact for polynomials of degree <= 2n - 1.
    """
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")

    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (4.0 * k - 1.0) / (4.0 * n + 2.0))
    if n == 1:
        x = np.zeros(1)
        dp = np.ones(1)  # P_1' = 1
    else:
        for _ in range(_MAX_NEWTON_ITERS):
            p, dp = _legendre_value_and_derivative(n, x)
            dx = p / dp
            x -= dx
            if np.max(np.abs(dx)) < _NEWTON_TOL:
                break
        else:
            raise NumericalError(f"Legendre node search failed to converge for n={n}")
        p, dp = _legendre_value_and_derivative(n, x)

    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]

    half = 0.5 * (b - a)
    nodes = a + half * (x + 1.0)
    weights = half * w
    return QuadratureRule(nodes=nodes, weights=weights, interval=(float(a), float(b)))


def integrate(rule: QuadratureRule, f) -> float:
    """Apply the rule to a scalar function: sum_i w_i f(x_i)."""
    try:
        vals = np.asarray(f(rule.nodes), dtype=float)
        if vals.shape != rule.nodes.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(f(x)) for x in rule.nodes])
    if not np.all(np.isfinite(vals)):
        raise NumericalError("integrand returned a non-finite value at a quadrature node")
    return float(np.dot(rule.weights, vals))
