import numpy as np
import pytest

from fuzzymark import codec, dwt, image_io, metrics
from fuzzymark.errors import DimensionError, ParameterError

from conftest import random_watermark


def _pyramid_with_band(value: float, band: str = "hl3") -> dwt.SubbandPyramid:
    pyr = dwt.analyze(np.zeros((512, 512)), 3)
    getattr(pyr.detail[2], band[:2])[:] = value
    return pyr


class TestParams:
    def test_defaults_are_decodable(self):
        p = codec.EmbedParams()
        assert p.alpha_bounds[0] > 0
        assert p.alpha_bounds[1] < p.q / 2

    def test_default_bounds_clear_pixel_rounding_for_large_q(self):
        p = codec.EmbedParams(q=32.0)
        assert p.alpha_bounds[0] > codec.PIXEL_ROUND_NOISE
        assert p.alpha_bounds[1] + codec.PIXEL_ROUND_NOISE < p.q / 2

    def test_small_q_falls_back_to_lattice_bounds(self):
        p = codec.EmbedParams(q=8.0)
        assert p.alpha_bounds == (1.0, pytest.approx(3.6))

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"q": 0.0},
            {"q": -4.0},
            {"band": "ll3"},
            {"window": 0},
            {"window": 5000},
            {"key": -1},
            {"key": 2**64},
            {"alpha_bounds": (0.0, 1.0)},
            {"alpha_bounds": (3.0, 2.0)},
            {"q": 16.0, "alpha_bounds": (1.0, 8.0)},  # alpha_max == q/2
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ParameterError):
            codec.EmbedParams(**kwargs)

    def test_sidecar_round_trip(self):
        params = codec.EmbedParams(q=24.0, band="lh3", window=12, key_offset=1.0)
        fs = params.make_system()
        d = codec.params_to_dict(params, fs)
        assert "key" not in d
        rebuilt, fs2 = codec.params_from_dict(d, key=99)
        assert rebuilt.q == params.q
        assert rebuilt.band == params.band
        assert rebuilt.window == params.window
        assert rebuilt.alpha_bounds == params.alpha_bounds
        assert rebuilt.key_offset == params.key_offset
        assert rebuilt.key == 99
        assert fs2 == fs


class TestSelectPositions:
    def test_deterministic(self):
        p = codec.EmbedParams(key=0)
        assert np.array_equal(codec.select_positions(p), codec.select_positions(p))

    def test_key_changes_permutation(self):
        a = codec.select_positions(codec.EmbedParams(key=0))
        b = codec.select_positions(codec.EmbedParams(key=1))
        assert not np.array_equal(a, b)

    def test_every_position_exactly_once(self):
        pos = codec.select_positions(codec.EmbedParams(key=3))
        flat = pos[:, 0] * 64 + pos[:, 1]
        counts = np.bincount(flat, minlength=4096)
        assert np.all(counts == 1)

    def test_rejects_wrong_band_dims(self):
        with pytest.raises(DimensionError):
            codec.select_positions(codec.EmbedParams(), band_dims=(32, 32))


class TestLattice:
    def test_embed_hand_values(self):
        # q=4 with pinned strength 1: coefficient 10.3 snaps to 12 and
        # moves to 13 for a +1 bit, 11 for a -1 bit
        params = codec.EmbedParams(q=4.0, alpha_bounds=(1.0, 1.0))
        fs = params.make_system()
        pyr = _pyramid_with_band(10.3)
        wm = np.ones((64, 64), dtype=np.int8)
        up = codec.embed(pyr, wm, params, fs)
        assert up.detail[2].hl == pytest.approx(np.full((64, 64), 13.0))
        down = codec.embed(pyr, -wm, params, fs)
        assert down.detail[2].hl == pytest.approx(np.full((64, 64), 11.0))

    def test_opposite_bits_differ_by_two_alpha(self, rng):
        params = codec.EmbedParams(q=8.0, alpha_bounds=(2.5, 2.5))
        fs = params.make_system()
        pyr = dwt.analyze(rng.uniform(0, 255, (512, 512)), 3)
        wm = np.ones((64, 64), dtype=np.int8)
        up = codec.embed(pyr, wm, params, fs).detail[2].hl
        down = codec.embed(pyr, -wm, params, fs).detail[2].hl
        assert up - down == pytest.approx(np.full((64, 64), 2 * 2.5))

    def test_extract_hand_values(self):
        params = codec.EmbedParams(q=4.0, alpha_bounds=(1.0, 1.0))
        res = codec.extract(_pyramid_with_band(13.0), params)
        assert np.all(res.bits == 1)
        res = codec.extract(_pyramid_with_band(11.0), params)
        assert np.all(res.bits == -1)

    def test_round_trip_exact_random_cases(self, rng):
        for _ in range(20):
            q = float(rng.uniform(4, 64))
            amax = q / 2 * float(rng.uniform(0.2, 0.95))
            amin = amax * float(rng.uniform(0.1, 1.0))
            params = codec.EmbedParams(
                q=q, key=int(rng.integers(0, 2**64, dtype=np.uint64)),
                alpha_bounds=(amin, amax),
                band=str(rng.choice(codec.BAND_NAMES)),
            )
            fs = params.make_system()
            pyr = dwt.analyze(rng.uniform(0, 255, (512, 512)), 3)
            wm = random_watermark(rng)
            bits = codec.extract(codec.embed(pyr, wm, params, fs), params).bits
            assert np.array_equal(bits, wm)

    def test_locality_other_bands_untouched(self, rng, default_params, default_fs):
        pyr = dwt.analyze(rng.uniform(0, 255, (512, 512)), 3)
        marked = codec.embed(pyr, random_watermark(rng), default_params, default_fs)
        assert np.array_equal(marked.approx, pyr.approx)
        for lvl in range(3):
            for name in ("lh", "hl", "hh"):
                if lvl == 2 and name == "hl":
                    continue
                assert np.array_equal(
                    getattr(marked.detail[lvl], name), getattr(pyr.detail[lvl], name)
                )

    def test_distortion_bound(self, rng, default_params, default_fs):
        pyr = dwt.analyze(rng.uniform(0, 255, (512, 512)), 3)
        marked = codec.embed(pyr, random_watermark(rng), default_params, default_fs)
        per_coeff = np.abs(marked.detail[2].hl - pyr.detail[2].hl)
        limit = default_params.q / 2 + default_params.alpha_bounds[1]
        assert per_coeff.max() <= limit + 1e-9
        pixel_mse = metrics.mse(dwt.reconstruct(marked), dwt.reconstruct(pyr))
        assert pixel_mse <= limit**2 * 4096 / 512**2 + 1e-9

    def test_embed_validates_watermark(self, default_params, default_fs):
        pyr = dwt.analyze(np.zeros((512, 512)), 3)
        with pytest.raises(DimensionError):
            codec.embed(pyr, np.ones((32, 32)), default_params, default_fs)
        with pytest.raises(ParameterError):
            codec.embed(pyr, np.zeros((64, 64)), default_params, default_fs)

    def test_embed_needs_three_level_pyramid(self, default_params, default_fs, rng):
        shallow = dwt.analyze(rng.uniform(0, 255, (512, 512)), 2)
        with pytest.raises(DimensionError):
            codec.embed(shallow, np.ones((64, 64), dtype=np.int8), default_params, default_fs)


class TestStrengthModulation:
    def test_textured_host_gets_stronger_embedding(self, rng, default_params, default_fs):
        flat = dwt.analyze(np.full((512, 512), 128.0), 3)
        noisy = dwt.analyze(128.0 + rng.normal(0, 40, (512, 512)), 3)
        a_flat = codec.embedding_strengths(flat, default_params, default_fs)
        a_noisy = codec.embedding_strengths(noisy, default_params, default_fs)
        amin, amax = default_params.alpha_bounds
        assert a_flat.mean() == amin  # zero-texture windows everywhere
        assert a_noisy.mean() > a_flat.mean()
        assert a_noisy.mean() > (amin + amax) / 2

    def test_mixed_host_lands_between_bounds(self, rng, default_params, default_fs):
        plane = np.full((512, 512), 128.0)
        plane[:, 256:] += rng.normal(0, 40, (512, 256))
        alphas = codec.embedding_strengths(dwt.analyze(plane, 3), default_params, default_fs)
        amin, amax = default_params.alpha_bounds
        assert amin < alphas.mean() < amax


class TestImagePipeline:
    def test_psnr_threshold_on_bundled_assets(self, bundled_host, bundled_watermark,
                                              default_params, default_fs):
        marked = codec.embed_image(bundled_host, bundled_watermark, default_params, default_fs)
        m = metrics.mse(image_io.prepare_host(bundled_host), marked)
        assert metrics.psnr(m, 255) >= 38.0

    def test_red_green_untouched(self, bundled_host, bundled_watermark, default_params, default_fs):
        prepared = image_io.prepare_host(bundled_host)
        marked = codec.embed_image(bundled_host, bundled_watermark, default_params, default_fs)
        assert np.array_equal(marked[:, :, 0], prepared[:, :, 0])
        assert np.array_equal(marked[:, :, 1], prepared[:, :, 1])

    def test_unattacked_extraction_is_perfect(self, bundled_host, bundled_watermark,
                                              default_params, default_fs):
        marked = codec.embed_image(bundled_host, bundled_watermark, default_params, default_fs)
        res = codec.extract_image(marked, default_params, default_fs, reference=bundled_watermark)
        assert res.ber == 0.0
        assert res.ncc_vs_original == pytest.approx(1.0)

    def test_extraction_survives_file_round_trip(self, tmp_path, bundled_host, bundled_watermark,
                                                 default_params, default_fs):
        marked = codec.embed_image(bundled_host, bundled_watermark, default_params, default_fs)
        path = tmp_path / "marked.png"
        image_io.save_image(marked, path)
        res = codec.extract_image(image_io.load_image(path), default_params,
                                  reference=bundled_watermark)
        assert res.ber == 0.0

    def test_extract_rejects_wrong_size(self, default_params):
        with pytest.raises(DimensionError):
            codec.extract_image(np.zeros((256, 256, 3)), default_params)

    def test_extraction_total_on_saturated_image(self, default_params):
        res = codec.extract_image(np.full((512, 512, 3), 255.0), default_params)
        assert res.bits.shape == (64, 64)
        assert np.all(np.isin(res.bits, (-1, 1)))

    def test_pure_host_correlation_near_half(self, bundled_host, rng):
        # never-watermarked host: correlation against balanced random
        # references should hover around 0.5
        pyr = dwt.analyze(image_io.extract_blue(bundled_host), 3)
        values = []
        for _ in range(100):
            params = codec.EmbedParams(key=int(rng.integers(0, 2**64, dtype=np.uint64)))
            bits = codec.extract(pyr, params).bits
            ref = random_watermark(rng)
            values.append(metrics.ncc(metrics.bits_to_01(ref), metrics.bits_to_01(bits)))
        assert abs(float(np.mean(values)) - 0.5) < 0.05

    def test_wrong_key_scrambles(self, bundled_host, bundled_watermark, default_fs):
        params = codec.EmbedParams(key=1234)
        marked = codec.embed_image(bundled_host, bundled_watermark, params, default_fs)
        good = codec.extract_image(marked, params, reference=bundled_watermark)
        assert good.ber == 0.0
        bad = codec.extract_image(marked, codec.EmbedParams(key=4321),
                                  reference=bundled_watermark)
        assert 0.3 < bad.ber < 0.7
