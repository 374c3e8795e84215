"""Image loading/saving, host preparation and watermark binarization.

Conventions: images are float64 arrays of shape (height, width, 3) in RGB
order with samples in [0, 255]; the blue plane is channel index 2.
Watermarks are 64x64 bipolar grids with values -1/+1. Supported codecs are
PNG and BMP for hosts, plus PGM for watermarks; processing keeps full real
precision and samples are clamped/rounded only when written back to
8-bit storage.
"""

from importlib import resources
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ChannelError, DecodeError, DimensionError
from .quantize import round_half_away

HOST_SIZE = 512
WATERMARK_SIZE = 64
_SAVE_FORMATS = {".png": "PNG", ".bmp": "BMP"}


def load_image(path) -> np.ndarray:
    """Load an RGB image as a float64 (h, w, 3) array with samples in [0, 255]."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            mode = im.mode
            if mode != "RGB":
                raise ChannelError(f"{path}: expected an 8-bit RGB image, got mode '{mode}'")
            data = np.asarray(im, dtype=np.float64)
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"cannot decode image file {path}: {exc}") from exc
    return data


def save_image(img: np.ndarray, path):
    """Write an RGB array to PNG or BMP, clamping and rounding samples to [0, 255]."""
    path = Path(path)
    fmt = _SAVE_FORMATS.get(path.suffix.lower())
    if fmt is None:
        raise DecodeError(f"unsupported output format '{path.suffix}' (use .png or .bmp)")
    data = np.clip(round_half_away(np.asarray(img, dtype=np.float64)), 0, 255).astype(np.uint8)
    Image.fromarray(data, mode="RGB").save(path, format=fmt)


def prepare_host(img: np.ndarray) -> np.ndarray:
    """Resize a host to 512x512 with per-channel bilinear interpolation."""
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape[:2]
    if h < 2 or w < 2:
        raise DimensionError(f"host too small to resize: {h}x{w}")
    if (h, w) == (HOST_SIZE, HOST_SIZE):
        return img.copy()
    out = np.empty((HOST_SIZE, HOST_SIZE, 3), dtype=np.float64)
    for ch in range(3):
        out[:, :, ch] = _resize_bilinear(img[:, :, ch], HOST_SIZE, HOST_SIZE)
    return out


def _resize_bilinear(plane: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resampling with the pixel-center convention and edge clamping."""
    h, w = plane.shape
    src_y = np.clip((np.arange(out_h) + 0.5) * (h / out_h) - 0.5, 0.0, h - 1.0)
    src_x = np.clip((np.arange(out_w) + 0.5) * (w / out_w) - 0.5, 0.0, w - 1.0)
    y0 = np.floor(src_y).astype(np.int64)
    x0 = np.floor(src_x).astype(np.int64)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = (src_y - y0)[:, None]
    fx = (src_x - x0)[None, :]
    return (
        plane[np.ix_(y0, x0)] * (1 - fy) * (1 - fx)
        + plane[np.ix_(y0, x1)] * (1 - fy) * fx
        + plane[np.ix_(y1, x0)] * fy * (1 - fx)
        + plane[np.ix_(y1, x1)] * fy * fx
    )


def extract_blue(img: np.ndarray) -> np.ndarray:
    """Independent copy of the blue plane (RGB channel index 2)."""
    return np.asarray(img, dtype=np.float64)[:, :, 2].copy()


def replace_blue(img: np.ndarray, plane: np.ndarray) -> np.ndarray:
    """New image with the blue plane swapped in, clamped/rounded to [0, 255] integers."""
    img = np.asarray(img, dtype=np.float64)
    plane = np.asarray(plane, dtype=np.float64)
    if plane.shape != img.shape[:2]:
        raise DimensionError(
            f"plane {plane.shape} does not match image {img.shape[:2]}"
        )
    out = img.copy()
    out[:, :, 2] = np.clip(round_half_away(plane), 0, 255)
    return out


def load_watermark(path) -> np.ndarray:
    """Load a 64x64 bitmap and binarize it to a bipolar -1/+1 grid.

    Grayscale (including PGM and palette/bilevel files) is used directly;
    RGB is averaged to gray. A sample maps to +1 when its gray value is
    >= 128, else -1. The bitmap must be exactly 64x64; it is never resized.
    """
    path = Path(path)
    try:
        with Image.open(path) as im:
            mode = im.mode
            if mode in ("1", "L", "P"):
                gray = np.asarray(im.convert("L"), dtype=np.float64)
            elif mode == "RGB":
                gray = np.asarray(im, dtype=np.float64).mean(axis=2)
            else:
                raise ChannelError(f"{path}: unsupported watermark mode '{mode}'")
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"cannot decode watermark file {path}: {exc}") from exc
    if gray.shape != (WATERMARK_SIZE, WATERMARK_SIZE):
        raise DimensionError(
            f"{path}: watermark must be exactly {WATERMARK_SIZE}x{WATERMARK_SIZE}, "
            f"got {gray.shape[0]}x{gray.shape[1]}"
        )
    return np.where(gray >= 128, 1, -1).astype(np.int8)


def save_watermark(bits: np.ndarray, path):
    """Write a bipolar bit grid as an 8-bit grayscale PNG (-1 -> 0, +1 -> 255)."""
    data = np.where(np.asarray(bits) > 0, 255, 0).astype(np.uint8)
    Image.fromarray(data, mode="L").save(Path(path), format="PNG")


def bundled_host_path() -> Path:
    """Path of the 512x512 test image shipped with the package."""
    return Path(str(resources.files(__package__) / "assets" / "host.png"))


def bundled_watermark_path() -> Path:
    """Path of the 64x64 bitmap shipped with the package."""
    return Path(str(resources.files(__package__) / "assets" / "watermark.png"))
