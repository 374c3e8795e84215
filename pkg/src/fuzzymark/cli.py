"""Command-line front end: embed, extract, attack, evaluate, bench.

Exit codes: 0 success, 1 usage error, 2 processing error.
"""

import argparse
import json
import sys
from pathlib import Path

from . import attacks, bench, codec, image_io, metrics
from .errors import FuzzymarkError


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the toolkit reserves 2
    # for processing errors, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="fuzzymark", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", parents=[_common()], help="embed a watermark into a host image")
    p_embed.add_argument("--host", help="host image (PNG/BMP); bundled test image when omitted")
    p_embed.add_argument("--watermark", help="64x64 bitmap (PNG/BMP/PGM); bundled bitmap when omitted")

    p_extract = sub.add_parser("extract", parents=[_common()], help="blind-extract a watermark")
    p_extract.add_argument("--image", required=True, help="512x512 watermarked image")
    p_extract.add_argument("--sidecar", help="parameter sidecar (default: <image>.json)")
    p_extract.add_argument("--reference", help="original bitmap for BER/NCC reporting")

    p_attack = sub.add_parser("attack", parents=[_common()], help="apply a degradation to an image")
    p_attack.add_argument("--image", required=True)
    p_attack.add_argument("--attack", required=True, metavar="SPEC", help="kind:intensity[:seed=N]")

    p_eval = sub.add_parser("evaluate", parents=[_common()], help="fidelity metrics between two images")
    p_eval.add_argument("--original", required=True)
    p_eval.add_argument("--processed", required=True)

    p_bench = sub.add_parser("bench", parents=[_common()], help="run the attack-grid robustness report")
    p_bench.add_argument("--host")
    p_bench.add_argument("--watermark")
    p_bench.add_argument("--attack", action="append", metavar="SPEC", help="grid cell (repeatable; replaces the default grid)")
    p_bench.add_argument("--formats", default="csv,markdown", help="comma list: csv,markdown")
    p_bench.add_argument("--timing", action="store_true", help="record real wall-times (breaks byte-identical reruns)")
    return parser


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--key", type=int, help="unsigned 64-bit secret key (default 0)")
    common.add_argument("--q", type=float, help="quantization step (default 32)")
    common.add_argument("--band", choices=codec.BAND_NAMES, help="payload band (default hl3)")
    common.add_argument("--peak", type=int, choices=(metrics.PEAK_STANDARD, metrics.PEAK_COMPAT),
                        help="PSNR peak mode (default 255)")
    common.add_argument("--out", default=".", help="output directory (default: current)")
    return common


def _load_settings(args) -> dict:
    settings = bench.load_config(args.config) if args.config else {}
    for name in ("key", "q", "band", "peak"):
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    return settings


def _params_from_settings(settings) -> tuple:
    return codec.params_from_dict(settings, key=settings.get("key", 0))


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except FuzzymarkError as exc:
        print(f"fuzzymark: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"fuzzymark: i/o error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    settings = _load_settings(args)
    peak = int(settings.get("peak", metrics.PEAK_STANDARD))

    if args.command == "embed":
        params, fs = _params_from_settings(settings)
        host_path = args.host or settings.get("host") or image_io.bundled_host_path()
        wm_path = args.watermark or settings.get("watermark") or image_io.bundled_watermark_path()
        host = image_io.load_image(host_path)
        wm = image_io.load_watermark(wm_path)
        prepared = image_io.prepare_host(host)
        marked = codec.embed_image(prepared, wm, params, fs)
        out_img = outdir / "watermarked.png"
        image_io.save_image(marked, out_img)
        sidecar = out_img.with_suffix(".json")
        sidecar.write_text(json.dumps(codec.params_to_dict(params, fs), indent=2) + "\n", encoding="utf-8")
        m = metrics.mse(prepared, marked)
        print(f"wrote {out_img} (sidecar {sidecar})")
        print(f"embedding PSNR: {metrics.psnr(m, peak):.4f} dB (R={peak}, MSE {m:.6f})")
        return 0

    if args.command == "extract":
        sidecar = Path(args.sidecar) if args.sidecar else Path(args.image).with_suffix(".json")
        if sidecar.exists():
            side = json.loads(sidecar.read_text(encoding="utf-8"))
            side.update(settings)
            settings = side
        params, fs = _params_from_settings(settings)
        img = image_io.load_image(args.image)
        reference = image_io.load_watermark(args.reference) if args.reference else None
        result = codec.extract_image(img, params, fs, reference=reference)
        out_wm = outdir / "extracted.png"
        image_io.save_watermark(result.bits, out_wm)
        print(f"wrote {out_wm}")
        if reference is not None:
            print(f"BER: {result.ber:.6f}  NCC(watermark): {result.ncc_vs_original:.6f}")
        return 0

    if args.command == "attack":
        try:
            spec = attacks.parse_attack_spec(args.attack)
        except FuzzymarkError as exc:
            print(f"fuzzymark attack: {exc}", file=sys.stderr)
            return 1
        img = image_io.load_image(args.image)
        attacked = attacks.apply_attack(img, spec)
        out_img = outdir / f"attacked_{spec.kind}.png"
        image_io.save_image(attacked, out_img)
        m = metrics.mse(img, attacked)
        print(f"wrote {out_img}")
        print(f"attack {spec.kind} {spec.label()}: MSE {m:.6f}  PSNR {metrics.psnr(m, peak):.4f} dB (R={peak})")
        return 0

    if args.command == "evaluate":
        a = image_io.load_image(args.original)
        b = image_io.load_image(args.processed)
        m = metrics.mse(a, b)
        print(f"MSE: {m:.6f}")
        print(f"PSNR: {metrics.psnr(m, peak):.4f} dB (R={peak})")
        print(f"NCC: {metrics.ncc(a, b):.6f}")
        return 0

    if args.command == "bench":
        if args.host is not None:
            settings["host"] = args.host
        if args.watermark is not None:
            settings["watermark"] = args.watermark
        if args.attack:
            try:
                settings["attacks"] = [attacks.parse_attack_spec(s) for s in args.attack]
            except FuzzymarkError as exc:
                print(f"fuzzymark bench: {exc}", file=sys.stderr)
                return 1
        if args.timing:
            settings["timing"] = True
        cfg = bench.config_from_dict(settings)
        result = bench.run_bench(cfg)
        formats = tuple(f.strip() for f in args.formats.split(",") if f.strip())
        written = bench.write_reports(outdir, result, cfg.peak, formats)
        for path in written:
            print(f"wrote {path}")
        print(f"baseline: PSNR {result.baseline.psnr_db:.4f} dB  "
              f"NCC(watermark) {result.baseline.ncc_watermark:.4f}  BER {result.baseline.ber:.6f}")
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
