"""Robustness benchmark: embed once, run an attack grid, report fidelity and payload metrics.

The default grid mirrors the classic robustness-table layout: one JPEG
cell, one median cell, four cropping fractions, four salt&pepper
densities and four rotation angles. Reports are emitted as a fixed-header
CSV and a markdown table rendered from the same records, plus per-metric
CSV series suitable for plotting.

Determinism: with timing disabled (the default) identical configurations
produce byte-identical reports; the wall-time column is then written as 0.
"""

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import attacks, codec, image_io, metrics
from .errors import FuzzymarkError, ParameterError
from .fuzzy import FuzzySystem, system_from_dict

DEFAULT_GRID = (
    "jpeg:10",
    "median:3",
    "crop:0.05",
    "crop:0.15",
    "crop:0.25",
    "crop:0.35",
    "sp:0.05",
    "sp:0.10",
    "sp:0.15",
    "sp:0.20",
    "rot:4",
    "rot:8",
    "rot:12",
    "rot:16",
)

CSV_HEADER = "attack,intensity,mse,psnr_db,ncc_image,ncc_watermark,ber,ms"

_MD_ATTACK_NAMES = {
    "none": "Watermarked Image",
    "jpeg": "JPEG Compression",
    "median": "Median Filtering",
    "crop": "Cropping",
    "sp": "Salt&Pepper Noise",
    "rot": "Rotation",
}


@dataclass
class EvalRecord:
    """One row of the robustness report."""

    attack: str
    intensity: str
    mse: float = float("nan")
    psnr_db: float = float("nan")
    ncc_image: float = float("nan")
    ncc_watermark: float = float("nan")
    ber: float = float("nan")
    ms: int = 0
    error: str = ""


@dataclass
class BenchConfig:
    host: Path = None  # None -> bundled asset
    watermark: Path = None
    params: codec.EmbedParams = field(default_factory=codec.EmbedParams)
    fuzzy: FuzzySystem = None  # None -> default system from params
    grid: tuple = DEFAULT_GRID
    peak: int = metrics.PEAK_STANDARD
    timing: bool = False

    def resolve(self):
        host = Path(self.host) if self.host else image_io.bundled_host_path()
        wm = Path(self.watermark) if self.watermark else image_io.bundled_watermark_path()
        fs = self.fuzzy if self.fuzzy is not None else self.params.make_system()
        specs = [attacks.parse_attack_spec(s) if isinstance(s, str) else s for s in self.grid]
        if not specs:
            raise ParameterError("bench needs a non-empty attack grid")
        return host, wm, fs, specs


@dataclass
class BenchResult:
    baseline: EvalRecord
    records: list
    watermarked: np.ndarray
    prepared: np.ndarray


def load_config(path) -> dict:
    """Read a JSON config file, ignoring annotation keys that start with '_'."""
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)
    if not isinstance(raw, dict):
        raise ParameterError(f"config {path} must hold a JSON object")
    return {k: v for k, v in raw.items() if not k.startswith("_")}


def config_from_dict(d: dict, **overrides) -> BenchConfig:
    """Build a BenchConfig from a config dict; keyword overrides win."""
    merged = dict(d)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    params, fs = codec.params_from_dict(merged, key=merged.get("key", 0))
    return BenchConfig(
        host=merged.get("host"),
        watermark=merged.get("watermark"),
        params=params,
        fuzzy=system_from_dict(merged["fuzzy_system"]) if merged.get("fuzzy_system") else fs,
        grid=tuple(merged.get("attacks", DEFAULT_GRID)),
        peak=int(merged.get("peak", metrics.PEAK_STANDARD)),
        timing=bool(merged.get("timing", False)),
    )


def run_bench(cfg: BenchConfig) -> BenchResult:
    """Embed once, attack per grid cell, extract and evaluate every cell.

    The baseline record compares the prepared cover against the
    watermarked image (embedding damage); attack records compare the
    watermarked image against its attacked version (attack damage).
    Per-cell failures are recorded in the record's error field and the run
    continues.
    """
    host_path, wm_path, fs, specs = cfg.resolve()
    host = image_io.load_image(host_path)
    wm = image_io.load_watermark(wm_path)
    prepared = image_io.prepare_host(host)
    watermarked = codec.embed_image(prepared, wm, cfg.params, fs)

    base_mse = metrics.mse(prepared, watermarked)
    base_res = codec.extract_image(watermarked, cfg.params, fs, reference=wm)
    baseline = EvalRecord(
        attack="none",
        intensity="-",
        mse=base_mse,
        psnr_db=metrics.psnr(base_mse, cfg.peak),
        ncc_image=metrics.ncc(prepared, watermarked),
        ncc_watermark=base_res.ncc_vs_original,
        ber=base_res.ber,
    )

    records = []
    for spec in specs:
        rec = EvalRecord(attack=spec.kind, intensity=spec.label())
        start = time.perf_counter()
        try:
            attacked = attacks.apply_attack(watermarked, spec)
            rec.mse = metrics.mse(watermarked, attacked)
            rec.psnr_db = metrics.psnr(rec.mse, cfg.peak)
            rec.ncc_image = metrics.ncc(watermarked, attacked)
            res = codec.extract_image(attacked, cfg.params, fs, reference=wm)
            rec.ncc_watermark = res.ncc_vs_original
            rec.ber = res.ber
        except FuzzymarkError as exc:
            rec.error = str(exc)
        if cfg.timing:
            rec.ms = int((time.perf_counter() - start) * 1000)
        records.append(rec)
    return BenchResult(baseline=baseline, records=records, watermarked=watermarked, prepared=prepared)


def _fmt(value: float) -> str:
    if value != value:  # nan from a failed cell
        return ""
    if value == float("inf"):
        return "inf"
    return f"{value:.6f}"


def _csv_line(rec: EvalRecord) -> str:
    return ",".join(
        [
            rec.attack,
            rec.intensity,
            _fmt(rec.mse),
            _fmt(rec.psnr_db),
            _fmt(rec.ncc_image),
            _fmt(rec.ncc_watermark),
            _fmt(rec.ber),
            str(rec.ms),
        ]
    )


def write_csv(path, baseline: EvalRecord, records: list):
    """Fixed-header UTF-8 CSV; baseline row first, then one row per grid cell."""
    lines = [CSV_HEADER]
    lines.append(_csv_line(baseline))
    lines.extend(_csv_line(r) for r in records)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def render_markdown(baseline: EvalRecord, records: list, peak: int) -> str:
    """Markdown robustness table rendered from the same records as the CSV."""
    out = [
        "# Robustness report",
        "",
        f"PSNR peak mode: R={peak}. Baseline row compares cover vs watermarked;",
        "attack rows compare watermarked vs attacked. NCC(image) follows the",
        "asymmetric sum(a*b)/sum(a*a) convention; NCC(watermark) applies it to",
        "the 0/1 bit grids.",
        "",
        "| Type of Attack | Intensity | MSE | PSNR | NCC (image) | NCC (watermark) | BER | Error |",
        "|---|---|---|---|---|---|---|---|",
    ]
    for rec in [baseline] + list(records):
        name = _MD_ATTACK_NAMES.get(rec.attack, rec.attack)
        out.append(
            f"| {name} | {rec.intensity} | {_fmt(rec.mse)} | {_fmt(rec.psnr_db)} | "
            f"{_fmt(rec.ncc_image)} | {_fmt(rec.ncc_watermark)} | {_fmt(rec.ber)} | {rec.error} |"
        )
    return "\n".join(out) + "\n"


def write_series(outdir, records: list):
    """Per-metric CSV series (attack, intensity, value), one file per metric."""
    outdir = Path(outdir)
    for metric in ("mse", "psnr_db", "ncc_watermark"):
        lines = ["attack,intensity,value"]
        lines.extend(
            f"{r.attack},{r.intensity},{_fmt(getattr(r, metric))}" for r in records
        )
        (outdir / f"series_{metric}.csv").write_text(
            "\n".join(lines) + "\n", encoding="utf-8", newline="\n"
        )


def write_reports(outdir, result: BenchResult, peak: int, formats=("csv", "markdown")) -> list:
    """Write the requested report files into outdir; returns the paths written."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        path = outdir / "bench.csv"
        write_csv(path, result.baseline, result.records)
        written.append(path)
        write_series(outdir, result.records)
        written.extend(sorted(outdir.glob("series_*.csv")))
    if "markdown" in formats:
        path = outdir / "bench.md"
        path.write_text(render_markdown(result.baseline, result.records, peak), encoding="utf-8", newline="\n")
        written.append(path)
    return written
