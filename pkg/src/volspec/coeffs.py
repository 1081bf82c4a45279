"""Expansion-coefficient matrices of causal convolution kernels.

For a kernel f(t, s) = f(t) * H(t - s), with H the Heaviside step, the
matrix entry (k, l) is the double integral of f(tau, rho) against
p_k(tau) p_l(rho) over the square.  The step function collapses the
inner integral analytically,

    entry(k, l) = int_0^T f(tau) p_k(tau) Q_l(tau) dtau,
    Q_l(tau) = int_0^tau p_l,

so the numerical integrand never sees the discontinuity: one quadrature
sweep over tau fills the whole matrix with spectral accuracy at
O(M^2 n) cost.
"""

from dataclasses import dataclass

import numpy as np

from .basis import LegendreBasis, eval_antiderivatives, eval_basis
from .errors import ConfigurationError, NumericalError
from .functions import FunctionSpec, constant
from .quadrature import gauss_legendre

__all__ = ["CoeffMatrix", "coefficient_matrix", "heaviside_matrix"]

_ESCALATION_TOL = 1e-13
_ESCALATION_ROUNDS = 4


@dataclass(eq=False)
class CoeffMatrix:
    """Dense M x M coefficient matrix tied to its basis.

    Row index k is the t-side, column index l the s-side.  Products of
    coefficient matrices leave their trailing rows polluted by series
    truncation; `inexact_tail_rows` counts them (0 for a freshly built
    matrix).
    """

    basis: LegendreBasis
    entries: np.ndarray
    inexact_tail_rows: int = 0

    @property
    def order(self) -> int:
        return self.basis.order

    def same_layout(self, other: "CoeffMatrix") -> bool:
        return (
            self.order == other.order
            and self.basis.interval_end == other.basis.interval_end
        )


def _quadrature_build(fun: FunctionSpec, basis: LegendreBasis, n: int) -> np.ndarray:
    rule = gauss_legendre(n, 0.0, basis.interval_end)
    if fun.kind == "sampled":
        if fun.nodes.shape != rule.nodes.shape or not np.allclose(
            fun.nodes, rule.nodes, rtol=0, atol=1e-12 * basis.interval_end
        ):
            raise ConfigurationError(
                "sampled function nodes do not match the active quadrature rule "
                f"({fun.nodes.size} samples vs {n}-point rule)"
            )
    fvals = np.asarray(fun(rule.nodes), dtype=float)
    if not np.all(np.isfinite(fvals)):
        raise NumericalError("coefficient function returned a non-finite value")
    P = eval_basis(basis, rule.nodes)
    Q = eval_antiderivatives(basis, rule.nodes)
    return (P * (rule.weights * fvals)) @ Q.T


def default_point_count(fun: FunctionSpec, order: int) -> int:
    """Quadrature size for a coefficient build: M + 40, enlarged for
    high-degree polynomials so the integrand stays within exactness."""
    n = order + 40
    d = fun.polynomial_degree
    if d is not None:
        n = max(n, order + d // 2 + 2)
    return n


def coefficient_matrix(
    fun: FunctionSpec, basis: LegendreBasis, num_points: int | None = None
) -> CoeffMatrix:
    """Coefficient matrix of f(t) H(t - s) on the given basis.

    With the default point count the build is exact (to roundoff) for
    polynomial f.  For non-polynomial f the result is accepted only
    after an n vs n+16 comparison agrees to 1e-13; otherwise the rule
    is escalated.  Passing `num_points` skips the escalation check.
    """
    if num_points is not None:
        if num_points < 1:
            raise ConfigurationError("num_points must be >= 1")
        return CoeffMatrix(basis=basis, entries=_quadrature_build(fun, basis, num_points))

    n = default_point_count(fun, basis.order)
    entries = _quadrature_build(fun, basis, n)
    if fun.polynomial_degree is None and fun.kind != "sampled":
        for _ in range(_ESCALATION_ROUNDS):
            refined = _quadrature_build(fun, basis, n + 16)
            scale = max(1.0, float(np.abs(refined).max()))
            if float(np.abs(refined - entries).max()) <= _ESCALATION_TOL * scale:
                entries = refined
                break
            n += 64
            entries = _quadrature_build(fun, basis, n)
        else:
            raise NumericalError(
                f"coefficient quadrature did not settle after escalating to {n} points"
            )
    return CoeffMatrix(basis=basis, entries=entries)


def heaviside_matrix(basis: LegendreBasis, num_points: int | None = None) -> CoeffMatrix:
    """Coefficient matrix of the step kernel H(t - s) itself (f = 1).

    It multiplies the resolvent output to produce solution coefficients,
    hence the named shortcut.
    """
    return coefficient_matrix(constant(1.0), basis, num_points=num_points)
