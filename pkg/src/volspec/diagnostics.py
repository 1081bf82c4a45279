"""Matrix property measurements: numerical bandwidth, spectral radius,
extreme singular values, full spectrum."""

from dataclasses import dataclass, field

import numpy as np

from .coeffs import CoeffMatrix
from .errors import NumericalError

__all__ = [
    "Diagnostics",
    "numerical_bandwidth",
    "spectral_radius",
    "singular_extremes",
    "spectrum",
    "matrix_diagnostics",
]

MACHINE_EPS = float(np.finfo(np.float64).eps)

# sigma_min below this multiple of sigma_max is reported but not trusted
SIGMA_TRUST_FACTOR = 1e-15


@dataclass
class Diagnostics:
    bandwidth: int
    spectral_radius: float
    sigma_min: float
    sigma_max: float
    sigma_min_trusted: bool = True
    spectrum: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.sigma_min > self.sigma_max + 1e-12:
            raise ValueError("sigma_min exceeds sigma_max")

    def to_dict(self) -> dict:
        rec = {
            "bandwidth": self.bandwidth,
            "spectral_radius": self.spectral_radius,
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "sigma_min_trusted": self.sigma_min_trusted,
        }
        if self.spectrum is not None:
            rec["spectrum"] = [
                {"re": float(z.real), "im": float(z.imag)} for z in self.spectrum
            ]
        return rec


def _entries(F) -> np.ndarray:
    return F.entries if isinstance(F, CoeffMatrix) else np.asarray(F, dtype=float)


def numerical_bandwidth(F, threshold: float | None = None, mode: str = "relative") -> int:
    """Largest |k - l| among entries that survive the zeroing threshold.

    The default threshold is machine precision relative to the max-abs
    entry; `mode="absolute"` uses plain machine precision instead, and an
    explicit `threshold` is used as given.
    """
    A = _entries(F)
    if threshold is None:
        if mode == "relative":
            threshold = MACHINE_EPS * float(np.abs(A).max()) if A.size else MACHINE_EPS
        elif mode == "absolute":
            threshold = MACHINE_EPS
        else:
            raise ValueError(f"unknown threshold mode {mode!r}")
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    rows, cols = np.nonzero(np.abs(A) >= threshold)
    if rows.size == 0:
        return 0
    return int(np.max(np.abs(rows - cols)))


def spectral_radius(F) -> float:
    """max |lambda| over the eigenvalues."""
    return float(np.max(np.abs(spectrum(F)))) if _entries(F).size else 0.0


def spectrum(F) -> np.ndarray:
    """All eigenvalues, via the dense nonsymmetric eigensolver."""
    try:
        return np.linalg.eigvals(_entries(F))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration failed: {exc}") from exc


def singular_extremes(F) -> tuple[float, float]:
    """(sigma_min, sigma_max) from a dense SVD."""
    try:
        s = np.linalg.svd(_entries(F), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    return float(s[-1]), float(s[0])


def matrix_diagnostics(
    F,
    threshold_mode: str = "relative",
    with_spectrum: bool = False,
) -> Diagnostics:
    """Bundle all measurements for one matrix."""
    eigs = spectrum(F)
    sig_min, sig_max = singular_extremes(F)
    return Diagnostics(
        bandwidth=numerical_bandwidth(F, mode=threshold_mode),
        spectral_radius=float(np.max(np.abs(eigs))) if eigs.size else 0.0,
        sigma_min=sig_min,
        sigma_max=sig_max,
        sigma_min_trusted=bool(sig_min >= SIGMA_TRUST_FACTOR * sig_max),
        spectrum=eigs if with_spectrum else None,
    )
