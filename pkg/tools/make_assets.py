#!/usr/bin/env python3
"""Regenerate the bundled test assets (512x512 host, 64x64 watermark bitmap).

The host is a synthetic still life: smooth graded background and table,
three shaded pear-like shapes, a woven-texture cloth strip, and film-like
grain over everything. Deterministic given the seeds below; the PNGs are
committed, so nothing at runtime depends on this script.
"""

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fuzzymark.image_io import save_image, save_watermark  # noqa: E402

ASSETS = Path(__file__).resolve().parent.parent / "src" / "fuzzymark" / "assets"

GRAIN_SIGMA = 6.0
CLOTH_AMPLITUDE = 26.0


def make_host() -> np.ndarray:
    h = w = 512
    ys, xs = np.meshgrid(np.arange(h), np.arange(w), indexing="ij")
    yn = ys / (h - 1)
    xn = xs / (w - 1)

    img = np.zeros((h, w, 3))
    # graded backdrop, slightly warm at the top left
    img[:, :, 0] = 168 - 52 * yn + 14 * (1 - xn)
    img[:, :, 1] = 158 - 58 * yn + 6 * (1 - xn)
    img[:, :, 2] = 142 - 64 * yn

    # table surface with its own gradient
    table = yn > 0.62
    img[:, :, 0][table] = 118 - 34 * (yn[table] - 0.62)
    img[:, :, 1][table] = 86 - 30 * (yn[table] - 0.62)
    img[:, :, 2][table] = 58 - 22 * (yn[table] - 0.62)

    # woven cloth strip across the table front
    cloth = (yn > 0.80) & (yn < 0.95)
    weave = np.sin(2 * np.pi * xs / 7.0) * np.sin(2 * np.pi * ys / 7.0)
    for ch, base in enumerate((96, 70, 110)):
        img[:, :, ch][cloth] = base + CLOTH_AMPLITUDE * weave[cloth]

    # three pears: shaded ellipses with a highlight
    pears = [
        (0.38, 0.30, 0.16, 0.21, (196, 184, 96)),
        (0.46, 0.58, 0.19, 0.24, (178, 150, 70)),
        (0.40, 0.82, 0.13, 0.18, (150, 170, 88)),
    ]
    for cy, cx, ry, rx, color in pears:
        d2 = ((yn - cy) / ry) ** 2 + ((xn - cx) / rx) ** 2
        body = d2 < 1.0
        shade = np.clip(1.0 - 0.55 * d2, 0.0, 1.0)
        hi = np.exp(-(((yn - cy + 0.06) / (0.4 * ry)) ** 2 + ((xn - cx - 0.05) / (0.4 * rx)) ** 2))
        for ch in range(3):
            val = color[ch] * shade + 48 * hi
            img[:, :, ch][body] = val[body]

    # film grain everywhere
    rng = np.random.default_rng(20240811)
    img += rng.normal(0.0, GRAIN_SIGMA, size=img.shape)

    return np.clip(np.round(img), 0, 255)


def make_watermark() -> np.ndarray:
    n = 64
    ys, xs = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    ink = np.zeros((n, n), dtype=bool)

    # ring emblem
    r2 = (ys - 32) ** 2 + (xs - 32) ** 2
    ink |= (r2 <= 27**2) & (r2 >= 19**2)
    # diagonal bars through the ring
    ink |= (np.abs(ys - xs) <= 4) & (r2 <= 27**2)
    ink |= (np.abs(ys + xs - 63) <= 4) & (r2 <= 27**2)
    # corner blocks
    ink |= (ys < 10) & (xs < 10)
    ink |= (ys < 10) & (xs >= n - 10)
    ink |= (ys >= n - 10) & (xs < 10)
    ink |= (ys >= n - 10) & (xs >= n - 10)
    # border frame
    border = (ys < 2) | (ys >= n - 2) | (xs < 2) | (xs >= n - 2)
    ink |= border

    bits = np.where(ink, 1, -1).astype(np.int8)
    return bits


def main():
    ASSETS.mkdir(parents=True, exist_ok=True)
    host = make_host()
    save_image(host, ASSETS / "host.png")
    bits = make_watermark()
    save_watermark(bits, ASSETS / "watermark.png")
    ink = float((bits > 0).mean())
    print(f"wrote {ASSETS / 'host.png'} and {ASSETS / 'watermark.png'} (ink fraction {ink:.3f})")


if __name__ == "__main__":
    main()
