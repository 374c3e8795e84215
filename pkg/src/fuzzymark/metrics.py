"""Fidelity and similarity measures: MSE, PSNR, normalized correlation, bit error rate."""

import math

import numpy as np

from .errors import DegenerateInputError, DimensionError, ParameterError

PEAK_STANDARD = 255
PEAK_COMPAT = 511  # legacy peak used by some published tables


def mse(a, b) -> float:
    """Mean squared error over all samples; color images pool all channels."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"mse operands differ in shape: {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))


def psnr(m: float, r_peak: float = PEAK_STANDARD) -> float:
    """Peak signal-to-noise ratio 10*log10(r_peak^2 / m) in dB for an MSE value m.

    Returns math.inf when m == 0. r_peak is 255 for 8-bit samples; 511 is
    kept as a compatibility mode for comparing against reports computed
    with that peak.
    """
    if m < 0:
        raise ParameterError(f"mse must be non-negative, got {m}")
    if r_peak <= 0:
        raise ParameterError(f"r_peak must be positive, got {r_peak}")
    if m == 0:
        return math.inf
    return 10.0 * math.log10((r_peak * r_peak) / m)


def ncc(a, b) -> float:
    """Normalized correlation sum(a*b) / sum(a*a).

    Asymmetric by construction: the denominator is the energy of the first
    (reference) argument only, so ncc(a, 2a) == 2.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"ncc operands differ in shape: {a.shape} vs {b.shape}")
    energy = float(np.sum(a * a))
    if energy == 0.0:
        raise DegenerateInputError("ncc reference has zero energy")
    return float(np.sum(a * b)) / energy


def ber(x, y) -> float:
    """Fraction of positions where two bit sequences disagree."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise DimensionError(f"ber operands differ in shape: {x.shape} vs {y.shape}")
    return float(np.mean(x != y))


def bits_to_01(bits) -> np.ndarray:
    """Map a bipolar (-1/+1) bit grid to a 0/1 grid for correlation measures."""
    return (np.asarray(bits) > 0).astype(np.float64)
