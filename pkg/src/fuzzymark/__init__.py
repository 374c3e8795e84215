"""Blind image watermarking with fuzzy-controlled lattice quantization in the Haar DWT domain."""

from .codec import (
    EmbedParams,
    ExtractionResult,
    embed,
    embed_image,
    extract,
    extract_image,
    select_positions,
)
from .dwt import SubbandPyramid, SubbandSet, analyze, haar_forward, haar_inverse, reconstruct
from .fuzzy import FuzzySystem, default_system, fuzzify, infer, texture_sensitivity
from .image_io import (
    extract_blue,
    load_image,
    load_watermark,
    prepare_host,
    replace_blue,
    save_image,
    save_watermark,
)
from .metrics import ber, mse, ncc, psnr

__version__ = "1.0.0"

__all__ = [
    "EmbedParams",
    "ExtractionResult",
    "FuzzySystem",
    "SubbandPyramid",
    "SubbandSet",
    "analyze",
    "ber",
    "default_system",
    "embed",
    "embed_image",
    "extract",
    "extract_blue",
    "extract_image",
    "fuzzify",
    "haar_forward",
    "haar_inverse",
    "infer",
    "load_image",
    "load_watermark",
    "mse",
    "ncc",
    "prepare_host",
    "psnr",
    "reconstruct",
    "replace_blue",
    "save_image",
    "save_watermark",
    "select_positions",
    "texture_sensitivity",
]
