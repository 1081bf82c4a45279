"""Shifted orthonormal Legendre basis on [0, T].

The basis functions are

    p_k(t) = sqrt((2k + 1) / T) * P_k(2 t / T - 1),    k = 0 .. M-1,

with P_k the standard Legendre polynomials, so that
int_0^T p_k p_l dt = delta_{kl}.  Everything is evaluated through the
three-term recurrence; monomial coefficients overflow and cancel long
before k ~ 500, the recurrence does not.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["LegendreBasis", "eval_basis", "eval_antiderivatives"]


@dataclass(frozen=True)
class LegendreBasis:
    """Orthonormal Legendre basis of `order` functions on [0, interval_end]."""

    order: int
    interval_end: float = 1.0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"basis order must be >= 1, got {self.order}")
        if not self.interval_end > 0:
            raise ValueError(
                f"interval end must be positive, got {self.interval_end}"
            )

    def reference_coords(self, t) -> np.ndarray:
        """Map t in [0, T] to x in [-1, 1], validating the domain."""
        t = np.asarray(t, dtype=float)
        T = self.interval_end
        if np.any(t < 0.0) or np.any(t > T):
            raise ValueError(f"point outside the basis interval [0, {T}]")
        return 2.0 * t / T - 1.0


def _legendre_rows(n_max: int, x: np.ndarray) -> np.ndarray:
    """Table of standard Legendre polynomials P_0 .. P_n_max at points x.

    Returns an array of shape (n_max + 1,) + x.shape.
    """
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = x
    for k in range(1, n_max):
        out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1)
    return out


def eval_basis(basis: LegendreBasis, t) -> np.ndarray:
    """Evaluate all basis functions at t.

    For scalar t the result has shape (M,), entry k holding p_k(t); for an
    array of points the result has shape (M, len(t)).
    """
    x = basis.reference_coords(t)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    M, T = basis.order, basis.interval_end
    rows = _legendre_rows(M - 1, x)
    scale = np.sqrt((2.0 * np.arange(M) + 1.0) / T)
    vals = scale[:, None] * rows
    return vals[:, 0] if scalar else vals


def eval_antiderivatives(basis: LegendreBasis, t) -> np.ndarray:
    """Evaluate Q_l(t) = int_0^t p_l(rho) drho for all l.

    Uses the closed form int_{-1}^x P_l = (P_{l+1}(x) - P_{l-1}(x)) / (2l + 1)
    for l >= 1 (and x + 1 for l = 0), which is exact and O(M) per point.
    Same shape conventions as :func:`eval_basis`.
    """
    x = basis.reference_coords(t)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    M, T = basis.order, basis.interval_end
    rows = _legendre_rows(M, x)
    out = np.empty((M, x.size))
    # Q_0(t) = t / sqrt(T); on the reference interval t = T (x + 1) / 2.
    out[0] = (x + 1.0) * (np.sqrt(T) / 2.0)
    if M > 1:
        ell = np.arange(1, M)
        scale = np.sqrt(T / (2.0 * ell + 1.0)) / 2.0
        out[1:] = scale[:, None] * (rows[2 : M + 1] - rows[0 : M - 1])
    return out[:, 0] if scalar else out
