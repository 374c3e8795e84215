import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzymark import dwt
from fuzzymark.errors import DimensionError, ParameterError, StructureError


def test_constant_block_has_no_detail():
    s = dwt.haar_forward(np.ones((2, 2)))
    assert s.ll == pytest.approx(np.array([[2.0]]))
    assert s.lh == pytest.approx(np.array([[0.0]]))
    assert s.hl == pytest.approx(np.array([[0.0]]))
    assert s.hh == pytest.approx(np.array([[0.0]]))


def test_forward_hand_case():
    s = dwt.haar_forward(np.array([[4.0, 2.0], [2.0, 0.0]]))
    assert s.ll == pytest.approx(np.array([[4.0]]))
    assert s.lh == pytest.approx(np.array([[2.0]]))
    assert s.hl == pytest.approx(np.array([[2.0]]))
    assert s.hh == pytest.approx(np.array([[0.0]]))


def test_forward_preserves_energy(rng):
    p = rng.uniform(0, 255, (16, 16))
    s = dwt.haar_forward(p)
    total = sum(float(np.sum(b**2)) for b in s)
    assert total == pytest.approx(float(np.sum(p**2)), rel=1e-12)


def test_forward_rejects_odd_dimensions():
    with pytest.raises(DimensionError):
        dwt.haar_forward(np.zeros((3, 4)))
    with pytest.raises(DimensionError):
        dwt.haar_forward(np.zeros((4, 5)))


def test_inverse_hand_case():
    s = dwt.SubbandSet(
        ll=np.array([[2.0]]), lh=np.array([[0.0]]), hl=np.array([[0.0]]), hh=np.array([[0.0]])
    )
    assert dwt.haar_inverse(s) == pytest.approx(np.ones((2, 2)))


def test_inverse_of_zero_is_zero():
    z = np.zeros((4, 4))
    assert np.all(dwt.haar_inverse(dwt.SubbandSet(z, z, z, z)) == 0)


def test_inverse_rejects_mismatched_bands():
    with pytest.raises(DimensionError):
        dwt.haar_inverse(dwt.SubbandSet(np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 3)), np.zeros((2, 2))))


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 2**31), st.sampled_from([2, 4, 8, 16]))
def test_single_level_round_trip(seed, size):
    p = np.random.default_rng(seed).uniform(-100, 355, (size, size))
    back = dwt.haar_inverse(dwt.haar_forward(p))
    assert np.max(np.abs(back - p)) <= 1e-9


def test_analyze_level_geometry():
    pyr = dwt.analyze(np.zeros((512, 512)), 3)
    assert pyr.levels == 3
    assert pyr.detail[0].lh.shape == (256, 256)
    assert pyr.detail[1].hl.shape == (128, 128)
    assert pyr.detail[2].hh.shape == (64, 64)
    assert pyr.approx.shape == (64, 64)


def test_analyze_one_level_matches_haar_forward(rng):
    p = rng.uniform(0, 255, (8, 8))
    pyr = dwt.analyze(p, 1)
    s = dwt.haar_forward(p)
    assert np.array_equal(pyr.approx, s.ll)
    assert np.array_equal(pyr.detail[0].lh, s.lh)
    assert np.array_equal(pyr.detail[0].hl, s.hl)
    assert np.array_equal(pyr.detail[0].hh, s.hh)


def test_analyze_divisibility_error():
    with pytest.raises(DimensionError):
        dwt.analyze(np.zeros((12, 12)), 3)  # 12 not divisible by 8


def test_analyze_rejects_bad_level_count():
    with pytest.raises(ParameterError):
        dwt.analyze(np.zeros((8, 8)), 0)


def test_ramp_round_trip_three_levels():
    p = np.add.outer(np.arange(8.0), np.arange(8.0))
    back = dwt.reconstruct(dwt.analyze(p, 3))
    assert np.max(np.abs(back - p)) <= 1e-9


def test_zeroed_detail_of_constant_reconstructs_exactly():
    pyr = dwt.analyze(np.full((16, 16), 7.0), 2)
    for bands in pyr.detail:
        for b in bands:
            b[:] = 0.0
    assert dwt.reconstruct(pyr) == pytest.approx(np.full((16, 16), 7.0), abs=1e-12)


def test_level3_perturbation_energy(rng):
    p = rng.uniform(0, 255, (64, 64))
    pyr = dwt.analyze(p, 3)
    base = dwt.reconstruct(pyr)
    delta = 3.75
    pyr2 = pyr.copy()
    pyr2.detail[2].hl[2, 3] += delta
    diff = dwt.reconstruct(pyr2) - base
    assert float(np.sum(diff**2)) == pytest.approx(delta**2, abs=1e-9)


def test_reconstruct_rejects_malformed_pyramid(rng):
    pyr = dwt.analyze(rng.uniform(0, 1, (16, 16)), 2)
    bad = dwt.SubbandPyramid(levels=3, detail=pyr.detail, approx=pyr.approx)
    with pytest.raises(StructureError):
        dwt.reconstruct(bad)
    bad2 = pyr.copy()
    bad2.detail[0] = dwt.DetailBands(bad2.detail[0].lh[:4, :4], bad2.detail[0].hl, bad2.detail[0].hh)
    with pytest.raises(StructureError):
        dwt.reconstruct(bad2)


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 2**31))
def test_linearity(seed):
    r = np.random.default_rng(seed)
    p = r.uniform(0, 255, (16, 16))
    q = r.uniform(0, 255, (16, 16))
    a, b = r.uniform(-2, 2, 2)
    combined = dwt.analyze(a * p + b * q, 2)
    pa = dwt.analyze(p, 2)
    qa = dwt.analyze(q, 2)
    assert np.max(np.abs(combined.approx - (a * pa.approx + b * qa.approx))) <= 1e-9
    for lvl in range(2):
        for band in range(3):
            got = combined.detail[lvl][band]
            want = a * pa.detail[lvl][band] + b * qa.detail[lvl][band]
            assert np.max(np.abs(got - want)) <= 1e-9


def test_parseval_multilevel(rng):
    p = rng.uniform(0, 255, (64, 64))
    pyr = dwt.analyze(p, 3)
    total = float(np.sum(pyr.approx**2))
    total += sum(float(np.sum(b**2)) for bands in pyr.detail for b in bands)
    assert total == pytest.approx(float(np.sum(p**2)), rel=1e-12)
