"""Blind watermark embedding and extraction in the level-3 DWT detail bands.

Embedding snaps each selected coefficient to the nearest multiple of the
quantization step q and adds a signed strength offset:

    T' = q * round(T / q) + alpha * x        x in {-1, +1}

where alpha comes from the fuzzy system driven by a local texture
statistic. As long as 0 < alpha < q/2 the residual of T' modulo q keeps
the sign of x, so extraction is blind:

    rho = T'' - q * round(T'' / q),   bit = +1 if rho >= 0 else -1.

Positions are a keyed permutation of the whole 64x64 target band, so the
payload occupies every coefficient exactly once. Texture windows read the
coefficients preceding each position in permutation order, taken from the
pre-embedding band, which keeps all positions independent.
"""

from dataclasses import dataclass

import numpy as np

from . import dwt, image_io, metrics, prng
from .errors import DimensionError, ParameterError
from .fuzzy import FuzzySystem, default_system, infer, system_from_dict, system_to_dict
from .quantize import lattice_round, round_half_away

BAND_NAMES = ("lh3", "hl3", "hh3")
PAYLOAD_SIDE = 64
PAYLOAD_BITS = PAYLOAD_SIDE * PAYLOAD_SIDE


# A coefficient change of D in a level-3 band moves 8x8-block pixels by
# D/8 each; rounding those pixels to 8-bit integers feeds up to +/-4 back
# into the same coefficient. Strength bounds must clear that noise for
# extraction to survive the integer image.
PIXEL_ROUND_NOISE = 4.0


def default_alpha_bounds(q: float) -> tuple:
    """Strength range guaranteeing exact blind decoding for step q.

    For q > 16 the bounds (q/8 + 2, 3q/8 - 2) clear the +/-4 pixel
    rounding noise on both sides, so extraction is exact even from the
    rounded 8-bit image. At or below q = 16 no such range exists; the
    fallback (q/8, 0.45q) is exact at coefficient level only.
    """
    if q > 4 * PIXEL_ROUND_NOISE:
        return (q / 8.0 + PIXEL_ROUND_NOISE / 2.0, 3.0 * q / 8.0 - PIXEL_ROUND_NOISE / 2.0)
    return (q / 8.0, 0.45 * q)


@dataclass(frozen=True)
class EmbedParams:
    """Everything needed (besides the image) to embed or blindly extract.

    q            quantization step of the coefficient lattice
    key          unsigned 64-bit seed of the position permutation
    band         level-3 detail band carrying the payload
    window       texture window length (coefficients preceding each
                 position in permutation order, wrapping)
    alpha_bounds strength range handed to the fuzzy system; defaults to
                 default_alpha_bounds(q)
    key_offset   additive offset inside the texture statistic's rounding
    """

    q: float = 32.0
    key: int = 0
    band: str = "hl3"
    window: int = 8
    alpha_bounds: tuple = None
    key_offset: float = 0.0

    def __post_init__(self):
        if self.q <= 0:
            raise ParameterError(f"q must be positive, got {self.q}")
        if not 0 <= self.key < 2**64:
            raise ParameterError("key must be an unsigned 64-bit integer")
        if self.band not in BAND_NAMES:
            raise ParameterError(f"band must be one of {BAND_NAMES}, got '{self.band}'")
        if not 1 <= self.window <= PAYLOAD_BITS:
            raise ParameterError(f"window must be in [1, {PAYLOAD_BITS}], got {self.window}")
        if self.alpha_bounds is None:
            object.__setattr__(self, "alpha_bounds", default_alpha_bounds(self.q))
        amin, amax = self.alpha_bounds
        if not (0.0 < amin <= amax):
            raise ParameterError(f"need 0 < alpha_min <= alpha_max, got {self.alpha_bounds}")
        if amax >= self.q / 2.0:
            raise ParameterError(
                f"alpha_max {amax} >= q/2 {self.q / 2.0}: residual sign would not survive, "
                "embedding would be undecodable"
            )

    def make_system(self) -> FuzzySystem:
        return default_system(*self.alpha_bounds)


@dataclass
class ExtractionResult:
    """Recovered bipolar bit grid plus payload metrics when a reference is known."""

    bits: np.ndarray
    ber: float = None
    ncc_vs_original: float = None


def select_positions(params: EmbedParams, band_dims=(PAYLOAD_SIDE, PAYLOAD_SIDE)) -> np.ndarray:
    """Keyed permutation of all band positions as an (n, 2) array of (row, col).

    The permutation is a Fisher-Yates shuffle driven by the documented
    splitmix64 stream seeded with the key, so any implementation of that
    generator reproduces it exactly.
    """
    if tuple(band_dims) != (PAYLOAD_SIDE, PAYLOAD_SIDE):
        raise DimensionError(
            f"payload band must be {PAYLOAD_SIDE}x{PAYLOAD_SIDE}, got {band_dims}"
        )
    flat = prng.permutation(PAYLOAD_BITS, params.key)
    return np.stack([flat // PAYLOAD_SIDE, flat % PAYLOAD_SIDE], axis=1)


def _target_band(pyr: dwt.SubbandPyramid, band: str) -> np.ndarray:
    if pyr.levels != 3:
        raise DimensionError(f"expected a 3-level pyramid, got {pyr.levels} levels")
    plane = getattr(pyr.detail[2], band[:2])
    if plane.shape != (PAYLOAD_SIDE, PAYLOAD_SIDE):
        raise DimensionError(
            f"band {band} is {plane.shape[0]}x{plane.shape[1]}, expected "
            f"{PAYLOAD_SIDE}x{PAYLOAD_SIDE} (host must be 512x512)"
        )
    return plane


def _check_watermark(wm: np.ndarray) -> np.ndarray:
    wm = np.asarray(wm)
    if wm.shape != (PAYLOAD_SIDE, PAYLOAD_SIDE):
        raise DimensionError(f"watermark must be {PAYLOAD_SIDE}x{PAYLOAD_SIDE}, got {wm.shape}")
    if not np.all(np.isin(wm, (-1, 1))):
        raise ParameterError("watermark bits must be exactly -1 or +1")
    return wm


def embedding_strengths(pyr: dwt.SubbandPyramid, params: EmbedParams, fs: FuzzySystem) -> np.ndarray:
    """Strength alpha_j for every payload index j, from the pre-embedding band.

    The texture statistic for index j counts, over the `window`
    coefficients preceding position j in permutation order (wrapping),
    how many have round((T + key_offset)/q) != 0.
    """
    band = _target_band(pyr, params.band)
    flat = select_positions(params)
    order = flat[:, 0] * PAYLOAD_SIDE + flat[:, 1]
    v = band.ravel()[order]
    w = params.window
    ext = np.concatenate([v[-w:], v])
    windows = np.lib.stride_tricks.sliding_window_view(ext, w)[:PAYLOAD_BITS]
    nonzero = round_half_away((windows + params.key_offset) / params.q) != 0
    s_norm = np.count_nonzero(nonzero, axis=1) / w
    return np.array([infer(fs, s) for s in s_norm], dtype=np.float64)


def embed(
    pyr: dwt.SubbandPyramid,
    wm: np.ndarray,
    params: EmbedParams,
    fs: FuzzySystem,
) -> dwt.SubbandPyramid:
    """Embed a 64x64 bipolar watermark into the target band of a 3-level pyramid."""
    band = _target_band(pyr, params.band)
    wm = _check_watermark(wm)
    alphas = embedding_strengths(pyr, params, fs)
    positions = select_positions(params)
    order = positions[:, 0] * PAYLOAD_SIDE + positions[:, 1]
    flat = band.ravel()
    new_flat = flat.copy()
    new_flat[order] = lattice_round(flat[order], params.q) + alphas * wm.ravel()
    out = pyr.copy()
    new_band = new_flat.reshape(PAYLOAD_SIDE, PAYLOAD_SIDE)
    out.detail[2] = out.detail[2]._replace(**{params.band[:2]: new_band})
    return out


def extract(
    pyr_attacked: dwt.SubbandPyramid,
    params: EmbedParams,
    fs: FuzzySystem = None,
) -> ExtractionResult:
    """Blind extraction: sign of the residual modulo q at each keyed position.

    The fuzzy system is accepted for call-site symmetry with embed; the
    residual decoding itself needs only q and the key.
    """
    band = _target_band(pyr_attacked, params.band)
    positions = select_positions(params)
    order = positions[:, 0] * PAYLOAD_SIDE + positions[:, 1]
    v = band.ravel()[order]
    rho = v - lattice_round(v, params.q)
    bits = np.where(rho >= 0, 1, -1).astype(np.int8)
    return ExtractionResult(bits=bits.reshape(PAYLOAD_SIDE, PAYLOAD_SIDE))


def embed_image(
    host: np.ndarray,
    wm: np.ndarray,
    params: EmbedParams,
    fs: FuzzySystem,
) -> np.ndarray:
    """Full pipeline: prepare host, embed in the blue plane's DWT, reassemble."""
    prepared = image_io.prepare_host(host)
    pyr = dwt.analyze(image_io.extract_blue(prepared), 3)
    marked = embed(pyr, wm, params, fs)
    return image_io.replace_blue(prepared, dwt.reconstruct(marked))


def extract_image(
    img: np.ndarray,
    params: EmbedParams,
    fs: FuzzySystem = None,
    reference: np.ndarray = None,
) -> ExtractionResult:
    """Blind extraction from a 512x512 color image; fills payload metrics if a reference is given."""
    img = np.asarray(img, dtype=np.float64)
    if img.shape != (image_io.HOST_SIZE, image_io.HOST_SIZE, 3):
        raise DimensionError(
            f"extraction needs a {image_io.HOST_SIZE}x{image_io.HOST_SIZE} RGB image, got "
            f"{img.shape}; resize/letterbox explicitly before extracting"
        )
    pyr = dwt.analyze(image_io.extract_blue(img), 3)
    result = extract(pyr, params, fs)
    if reference is not None:
        reference = _check_watermark(reference)
        result.ber = metrics.ber(reference, result.bits)
        result.ncc_vs_original = metrics.ncc(
            metrics.bits_to_01(reference), metrics.bits_to_01(result.bits)
        )
    return result


def params_to_dict(params: EmbedParams, fs: FuzzySystem = None) -> dict:
    """Sidecar record with every parameter needed for blind extraction except the key."""
    d = {
        "q": params.q,
        "band": params.band,
        "window": params.window,
        "alpha_bounds": list(params.alpha_bounds),
        "key_offset": params.key_offset,
        "fuzzy_system": system_to_dict(fs if fs is not None else params.make_system()),
    }
    return d


def params_from_dict(d: dict, key: int = 0):
    """Rebuild (EmbedParams, FuzzySystem) from a sidecar/config dict plus the key.

    Absent keys fall back to the EmbedParams defaults.
    """
    kwargs = {}
    if d.get("q") is not None:
        kwargs["q"] = float(d["q"])
    if d.get("band") is not None:
        kwargs["band"] = d["band"]
    if d.get("window") is not None:
        kwargs["window"] = int(d["window"])
    if d.get("alpha_bounds") is not None:
        kwargs["alpha_bounds"] = tuple(d["alpha_bounds"])
    if d.get("key_offset") is not None:
        kwargs["key_offset"] = float(d["key_offset"])
    params = EmbedParams(key=int(key), **kwargs)
    fs = system_from_dict(d["fuzzy_system"]) if d.get("fuzzy_system") else params.make_system()
    return params, fs
