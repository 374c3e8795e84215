"""Deterministic, parameterized image degradation operators.

All attacks preserve image dimensions (so fidelity metrics stay
computable), return integer-valued float arrays in [0, 255], and are pure
functions of (image, parameters, seed). The JPEG operator is a simplified
in-process pipeline (block DCT + quantization, no entropy coding) so runs
are bit-reproducible without an external codec.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.fft import dctn, idctn

from .errors import ParameterError
from .prng import SplitMix64
from .quantize import round_half_away

ATTACK_GRAMMAR = (
    "attack spec grammar: kind:intensity[:seed=N]\n"
    "  jpeg:<quality 1-100>      e.g. jpeg:10\n"
    "  median:<odd window >= 3>  e.g. median:3\n"
    "  crop:<fraction 0-1>       e.g. crop:0.25\n"
    "  sp:<density 0-1>          e.g. sp:0.05:seed=7\n"
    "  rot:<degrees>             e.g. rot:8\n"
    "  none                      identity (baseline)\n"
)

# ITU T.81 Annex K.1 luminance quantization table.
JPEG_LUMA_TABLE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.float64,
)


@dataclass(frozen=True)
class AttackSpec:
    kind: str
    intensity: float = 0.0
    seed: int = 0

    def label(self) -> str:
        """Human-readable intensity, report-table style."""
        if self.kind == "jpeg":
            return f"Q={int(self.intensity)}"
        if self.kind == "median":
            n = int(self.intensity)
            return f"{n}x{n}"
        if self.kind in ("crop", "sp"):
            return f"{self.intensity * 100:g}%"
        if self.kind == "rot":
            return f"{self.intensity:g}deg"
        return "-"


def parse_attack_spec(text: str) -> AttackSpec:
    """Parse 'kind:intensity[:seed=N]' into an AttackSpec."""
    parts = text.strip().split(":")
    kind = parts[0].lower()
    try:
        if kind == "none":
            if len(parts) > 1:
                raise ValueError("'none' takes no intensity")
            return AttackSpec("none")
        if kind not in ("jpeg", "median", "crop", "sp", "rot"):
            raise ValueError(f"unknown attack kind '{kind}'")
        if len(parts) < 2:
            raise ValueError(f"'{kind}' needs an intensity")
        intensity = float(parts[1])
        seed = 0
        for extra in parts[2:]:
            if extra.startswith("seed="):
                seed = int(extra[len("seed="):])
            else:
                raise ValueError(f"unrecognized option '{extra}'")
        return AttackSpec(kind, intensity, seed)
    except ValueError as exc:
        raise ParameterError(f"bad attack spec '{text}': {exc}\n{ATTACK_GRAMMAR}") from exc


def apply_attack(img: np.ndarray, spec: AttackSpec) -> np.ndarray:
    """Dispatch an AttackSpec onto an image."""
    if spec.kind == "none":
        return np.asarray(img, dtype=np.float64).copy()
    if spec.kind == "jpeg":
        return jpeg_attack(img, int(spec.intensity))
    if spec.kind == "median":
        return median_attack(img, int(spec.intensity))
    if spec.kind == "crop":
        return crop_attack(img, spec.intensity)
    if spec.kind == "sp":
        return salt_pepper_attack(img, spec.intensity, spec.seed)
    if spec.kind == "rot":
        return rotation_attack(img, spec.intensity)
    raise ParameterError(f"unknown attack kind '{spec.kind}'")


def jpeg_attack(img: np.ndarray, quality: int) -> np.ndarray:
    """Simplified JPEG round trip: 8x8 DCT, scaled-table quantization, inverse DCT.

    The luminance table is scaled by the conventional quality mapping
    (scale = 5000/quality below 50, else 200 - 2*quality; entries
    floor((base*scale + 50)/100) clamped to [1, 255]) and applied to every
    channel. Samples are level-shifted by -128 around the transform. No
    chroma subsampling and no entropy coding: the output is exactly the
    decoder's reconstruction.
    """
    if not 1 <= quality <= 100:
        raise ParameterError(f"jpeg quality must be in [1, 100], got {quality}")
    img = np.asarray(img, dtype=np.float64)
    scale = 5000.0 / quality if quality < 50 else 200.0 - 2.0 * quality
    table = np.clip(np.floor((JPEG_LUMA_TABLE * scale + 50.0) / 100.0), 1, 255)
    h, w = img.shape[:2]
    pad_h = (-h) % 8
    pad_w = (-w) % 8
    padded = np.pad(img, ((0, pad_h), (0, pad_w), (0, 0)), mode="edge")
    out = np.empty_like(padded)
    nby, nbx = padded.shape[0] // 8, padded.shape[1] // 8
    for ch in range(img.shape[2]):
        blocks = padded[:, :, ch].reshape(nby, 8, nbx, 8).transpose(0, 2, 1, 3)
        coeffs = dctn(blocks - 128.0, axes=(-2, -1), norm="ortho")
        coeffs = round_half_away(coeffs / table) * table
        rec = idctn(coeffs, axes=(-2, -1), norm="ortho") + 128.0
        out[:, :, ch] = rec.transpose(0, 2, 1, 3).reshape(padded.shape[0], padded.shape[1])
    out = out[:h, :w, :]
    return np.clip(round_half_away(out), 0, 255)


def median_attack(img: np.ndarray, window: int = 3) -> np.ndarray:
    """Per-channel median filter with replicated borders."""
    if window < 3 or window % 2 == 0:
        raise ParameterError(f"median window must be odd and >= 3, got {window}")
    img = np.asarray(img, dtype=np.float64)
    pad = window // 2
    out = np.empty_like(img)
    for ch in range(img.shape[2]):
        padded = np.pad(img[:, :, ch], pad, mode="edge")
        view = np.lib.stride_tricks.sliding_window_view(padded, (window, window))
        out[:, :, ch] = np.median(view, axis=(-2, -1))
    return out


def crop_attack(img: np.ndarray, fraction: float, anchor: str = "top_left") -> np.ndarray:
    """Zero out a rectangle covering `fraction` of the area (dimensions unchanged).

    The rectangle keeps the image's aspect ratio and defaults to the
    top-left corner; anchor may also be top_right, bottom_left,
    bottom_right or center.
    """
    if not 0.0 <= fraction < 1.0:
        raise ParameterError(f"crop fraction must be in [0, 1), got {fraction}")
    img = np.asarray(img, dtype=np.float64).copy()
    if fraction == 0.0:
        return img
    h, w = img.shape[:2]
    rh = int(round_half_away(h * math.sqrt(fraction)))
    rw = int(round_half_away(w * math.sqrt(fraction)))
    anchors = {
        "top_left": (0, 0),
        "top_right": (0, w - rw),
        "bottom_left": (h - rh, 0),
        "bottom_right": (h - rh, w - rw),
        "center": ((h - rh) // 2, (w - rw) // 2),
    }
    if anchor not in anchors:
        raise ParameterError(f"unknown crop anchor '{anchor}'")
    r0, c0 = anchors[anchor]
    img[r0 : r0 + rh, c0 : c0 + rw, :] = 0.0
    return img


def salt_pepper_attack(img: np.ndarray, density: float, seed: int = 0) -> np.ndarray:
    """Force round(density * pixels) sites to 0 or 255 across all channels.

    Sites are the first k entries of the keyed permutation of all pixel
    sites (partial Fisher-Yates over the splitmix64 stream); after the
    selection the same stream supplies one word per site whose low bit
    picks salt (255) or pepper (0). Deterministic per (density, seed).
    """
    if not 0.0 <= density <= 1.0:
        raise ParameterError(f"salt&pepper density must be in [0, 1], got {density}")
    img = np.asarray(img, dtype=np.float64).copy()
    h, w = img.shape[:2]
    n = h * w
    k = int(round_half_away(density * n))
    if k == 0:
        return img
    gen = SplitMix64(seed)
    sites = np.array(gen.partial_shuffle(n, k), dtype=np.int64)
    values = np.array([255.0 if gen.next_u64() & 1 else 0.0 for _ in range(k)])
    img[sites // w, sites % w, :] = values[:, None]
    return img


def rotation_attack(img: np.ndarray, degrees: float) -> np.ndarray:
    """Rotate counterclockwise about the image center with bilinear interpolation.

    Samples falling outside the source support become 0; output dimensions
    are unchanged.
    """
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape[:2]
    theta = math.radians(degrees)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    ys, xs = np.meshgrid(np.arange(h, dtype=np.float64), np.arange(w, dtype=np.float64), indexing="ij")
    dx = xs - cx
    dy = ys - cy
    # inverse map: sample the source at the point that rotates onto (x, y);
    # boundary tolerance absorbs float error in cos/sin of full turns
    eps = 1e-9
    src_x = np.clip(cx + cos_t * dx + sin_t * dy, -eps - 1, w)
    src_y = np.clip(cy - sin_t * dx + cos_t * dy, -eps - 1, h)
    inside = (src_x >= -eps) & (src_x <= w - 1 + eps) & (src_y >= -eps) & (src_y <= h - 1 + eps)
    x0 = np.clip(np.floor(src_x), 0, w - 1).astype(np.int64)
    y0 = np.clip(np.floor(src_y), 0, h - 1).astype(np.int64)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = np.clip(src_x - x0, 0.0, 1.0)
    fy = np.clip(src_y - y0, 0.0, 1.0)
    out = np.zeros_like(img)
    for ch in range(img.shape[2]):
        plane = img[:, :, ch]
        val = (
            plane[y0, x0] * (1 - fy) * (1 - fx)
            + plane[y0, x1] * (1 - fy) * fx
            + plane[y1, x0] * fy * (1 - fx)
            + plane[y1, x1] * fy * fx
        )
        out[:, :, ch] = np.where(inside, val, 0.0)
    return np.clip(round_half_away(out), 0, 255)
