"""Orthonormal 2-D Haar wavelet analysis and synthesis.

Each analysis level maps every 2x2 block [[a, b], [c, d]] to four
coefficients:

    ll = (a + b + c + d) / 2      approximation
    lh = (a + b - c - d) / 2      horizontal detail
    hl = (a - b + c - d) / 2      vertical detail
    hh = (a - b - c + d) / 2      diagonal detail

With the 1/2 normalization the transform is orthonormal, so total squared
energy is preserved and coefficient-domain distortion maps one-to-one to
pixel-domain MSE. Summation order inside each block is fixed (left to
right) so results are reproducible bit-for-bit.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, ParameterError, StructureError


class SubbandSet(NamedTuple):
    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray


class DetailBands(NamedTuple):
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray


@dataclass
class SubbandPyramid:
    """Multi-level decomposition: detail triples for levels 1..L plus the final approximation."""

    levels: int
    detail: list  # DetailBands per level, level 1 first
    approx: np.ndarray

    def copy(self) -> "SubbandPyramid":
        return SubbandPyramid(
            levels=self.levels,
            detail=[DetailBands(d.lh.copy(), d.hl.copy(), d.hh.copy()) for d in self.detail],
            approx=self.approx.copy(),
        )


def haar_forward(p: np.ndarray) -> SubbandSet:
    """One-level 2-D Haar analysis of an even-sized plane."""
    p = np.asarray(p, dtype=np.float64)
    h, w = p.shape
    if h % 2 or w % 2:
        raise DimensionError(f"haar_forward needs even dimensions, got {h}x{w}")
    a = p[0::2, 0::2]
    b = p[0::2, 1::2]
    c = p[1::2, 0::2]
    d = p[1::2, 1::2]
    return SubbandSet(
        ll=(a + b + c + d) / 2.0,
        lh=(a + b - c - d) / 2.0,
        hl=(a - b + c - d) / 2.0,
        hh=(a - b - c + d) / 2.0,
    )


def haar_inverse(s: SubbandSet) -> np.ndarray:
    """Exact algebraic inverse of haar_forward."""
    ll, lh, hl, hh = (np.asarray(x, dtype=np.float64) for x in s)
    if not (ll.shape == lh.shape == hl.shape == hh.shape):
        raise DimensionError("haar_inverse needs four equal-sized subbands")
    h, w = ll.shape
    out = np.empty((2 * h, 2 * w), dtype=np.float64)
    out[0::2, 0::2] = (ll + lh + hl + hh) / 2.0
    out[0::2, 1::2] = (ll + lh - hl - hh) / 2.0
    out[1::2, 0::2] = (ll - lh + hl - hh) / 2.0
    out[1::2, 1::2] = (ll - lh - hl + hh) / 2.0
    return out


def analyze(p: np.ndarray, levels: int = 3) -> SubbandPyramid:
    """Recursive Haar analysis of the approximation band, keeping detail triples per level."""
    if levels < 1:
        raise ParameterError(f"levels must be >= 1, got {levels}")
    p = np.asarray(p, dtype=np.float64)
    h, w = p.shape
    div = 1 << levels
    if h % div or w % div:
        raise DimensionError(f"{h}x{w} plane is not divisible by 2^{levels}")
    detail = []
    cur = p
    for _ in range(levels):
        s = haar_forward(cur)
        detail.append(DetailBands(s.lh, s.hl, s.hh))
        cur = s.ll
    return SubbandPyramid(levels=levels, detail=detail, approx=cur)


def reconstruct(pyr: SubbandPyramid) -> np.ndarray:
    """Inverse of analyze."""
    _check_pyramid(pyr)
    cur = np.asarray(pyr.approx, dtype=np.float64)
    for bands in reversed(pyr.detail):
        cur = haar_inverse(SubbandSet(cur, bands.lh, bands.hl, bands.hh))
    return cur


def _check_pyramid(pyr: SubbandPyramid):
    if pyr.levels != len(pyr.detail):
        raise StructureError(
            f"pyramid declares {pyr.levels} levels but holds {len(pyr.detail)} detail triples"
        )
    if pyr.levels < 1:
        raise StructureError("pyramid must have at least one level")
    shape = pyr.approx.shape
    for k in range(pyr.levels - 1, -1, -1):
        bands = pyr.detail[k]
        if not (bands.lh.shape == bands.hl.shape == bands.hh.shape == shape):
            raise StructureError(f"level-{k + 1} detail bands do not match expected shape {shape}")
        shape = (shape[0] * 2, shape[1] * 2)
