"""Rounding and lattice helpers shared by the codec, the texture statistic and the JPEG simulator."""

import numpy as np


def round_half_away(x):
    """Round to the nearest integer, ties away from zero (MATLAB-style round).

    Works elementwise on arrays and on scalars. Python's built-in round()
    uses banker's rounding; the quantization formulas here need the
    away-from-zero convention so that all implementations agree.
    """
    x = np.asarray(x, dtype=np.float64)
    return np.floor(np.abs(x) + 0.5) * np.sign(x)


def lattice_round(values, q):
    """Snap values to the nearest multiple of the quantization step q."""
    return q * round_half_away(np.asarray(values, dtype=np.float64) / q)
