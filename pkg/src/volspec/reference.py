"""Reference solutions: closed forms exp(int_0^t f) and an adaptive
embedded Runge-Kutta baseline.

The baseline is a Dormand-Prince 5(4) pair with step-to-mesh landing,
standing in for the classic adaptive comparators.  Requested tolerances
below 1e-13 are clamped (adaptive stepping stalls near roundoff) and the
clamp is recorded on the result.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, NumericalError
from .functions import FunctionSpec

__all__ = ["reference_solution", "rk_baseline", "RKResult"]

_TOL_FLOOR = 1e-13

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
# fifth-order minus embedded fourth-order weights
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


def reference_solution(fun: FunctionSpec, t):
    """Exact solution exp(A(t)) with A the closed-form antiderivative of f.

    Raises ConfigurationError when no closed form exists (sampled
    functions); callers fall back to :func:`rk_baseline`.
    """
    if not fun.antiderivative_known:
        raise ConfigurationError(
            "no closed-form antiderivative for this function; use rk_baseline"
        )
    return np.exp(fun.antiderivative(t))


@dataclass
class RKResult:
    mesh: np.ndarray
    y: np.ndarray
    rel_tol: float
    abs_tol: float
    tol_clamped: bool
    n_steps: int
    n_rejected: int


def rk_baseline(
    fun: FunctionSpec,
    mesh,
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-12,
) -> RKResult:
    """Integrate y' = f(t) y, y(0) = 1 and return values at the mesh points."""
    mesh = np.asarray(mesh, dtype=float)
    if mesh.ndim != 1 or mesh.size == 0:
        raise ConfigurationError("mesh must be a non-empty 1-d array")
    if np.any(np.diff(mesh) <= 0) or mesh[0] < 0:
        raise ConfigurationError("mesh must be strictly ascending and start at t >= 0")
    if rel_tol < 1e-15 or abs_tol < 1e-15:
        raise ConfigurationError("tolerances below 1e-15 are not meaningful in doubles")

    clamped = rel_tol < _TOL_FLOOR or abs_tol < _TOL_FLOOR
    rtol = max(rel_tol, _TOL_FLOOR)
    atol = max(abs_tol, _TOL_FLOOR)

    def fty(t: float, y: float) -> float:
        return float(fun(t)) * y

    t, y = 0.0, 1.0
    h = min(0.01, mesh[-1] / 10 if mesh[-1] > 0 else 0.01)
    out = np.empty_like(mesh)
    n_steps = n_rejected = 0
    k = [0.0] * 7

    for idx, target in enumerate(mesh):
        while t < target:
            h = min(h, target - t)
            if h < 16 * np.finfo(float).eps * max(1.0, abs(t)):
                raise NumericalError(
                    f"step size underflow at t={t:.6g} (last good value y={y:.6g})"
                )
            k[0] = fty(t, y)
            for i in range(1, 7):
                yi = y + h * sum(a * k[j] for j, a in enumerate(_A[i]))
                k[i] = fty(t + _C[i] * h, yi)
            y_new = y + h * sum(b * k[i] for i, b in enumerate(_B5))
            err_est = h * sum(e * k[i] for i, e in enumerate(_E))
            scale = atol + rtol * max(abs(y), abs(y_new))
            err = abs(err_est) / scale

            if err <= 1.0:
                t_new = t + h
                # land exactly on the target even through rounding
                t = target if abs(t_new - target) < 1e-14 * max(1.0, target) else t_new
                y = y_new
                n_steps += 1
            else:
                n_rejected += 1
            factor = 5.0 if err == 0 else min(5.0, max(0.2, 0.9 * err**-0.2))
            h *= factor
        out[idx] = y

    return RKResult(
        mesh=mesh,
        y=out,
        rel_tol=rtol,
        abs_tol=atol,
        tol_clamped=clamped,
        n_steps=n_steps,
        n_rejected=n_rejected,
    )
