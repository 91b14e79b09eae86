import math

import numpy as np
import pytest

from aliasfree import (FilterSpec, PipelineConfig, alias_energy,
                       apply_pipeline, apply_pointwise, band_limited_corpus,
                       config_name, design_kernel, dft2, downsample2x_af,
                       downsample2x_naive, equivariance_error, freq_response,
                       parse_config_name, rotate, spectrum_freqs,
                       upsample2x_af, upsample2x_naive, wrapped_activation)
from aliasfree.rng import Rng

from _oracles import dft2_loops

HALF_PI = math.pi / 2.0


def test_dft2_matches_direct_sum():
    img = np.asarray(Rng(1).normal((8, 8)))
    got = dft2(img)
    want = dft2_loops(img)
    assert np.max(np.abs(got - want)) <= 1e-9


def test_dft2_centering():
    # a constant image concentrates everything in the center bin
    img = np.full((8, 8), 2.0)
    spec = dft2(img)
    assert spec[4, 4] == pytest.approx(2.0 * 64, abs=1e-9)
    spec[4, 4] = 0.0
    assert np.max(np.abs(spec)) <= 1e-9


def test_dft2_pure_tone_lands_on_its_bin():
    N = 16
    n = np.arange(N)
    img = np.cos(2.0 * np.pi * 3.0 * n[:, None] / N) * np.ones((1, N))
    spec = np.abs(dft2(img))
    ci = N // 2
    assert spec[ci + 3, ci] == pytest.approx(N * N / 2, rel=1e-9)
    assert spec[ci - 3, ci] == pytest.approx(N * N / 2, rel=1e-9)
    spec[ci + 3, ci] = spec[ci - 3, ci] = 0.0
    assert np.max(spec) <= 1e-6


def test_dft2_parseval():
    img = np.asarray(Rng(2).normal((16, 16)))
    spec = dft2(img)
    lhs = float(np.sum(np.abs(spec) ** 2))
    rhs = 256.0 * float(np.sum(img ** 2))
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_dft2_validation():
    with pytest.raises(ValueError):
        dft2(np.zeros((4, 6)))
    with pytest.raises(ValueError):
        dft2(np.zeros((1, 4, 4)))


def test_spectrum_freqs_grid():
    w = spectrum_freqs(8)
    assert w[0] == -math.pi
    assert w[4] == 0.0
    assert w[-1] == pytest.approx(2.0 * math.pi * 3 / 8)
    assert np.all(np.diff(w) > 0)


def test_freq_response_dc_equals_tap_sum():
    for beta, normalized in ((0.0, True), (1.0, False), (2.0, True)):
        kernel = design_kernel(FilterSpec(kaiser_beta=beta, normalized=normalized))
        mag = freq_response(kernel, 32)
        assert mag[16, 16] == pytest.approx(kernel.taps.sum(), abs=1e-12)


def test_freq_response_nyquist_corner():
    # at (pi, pi) the response is the alternating-sign tap sum
    kernel = design_kernel(FilterSpec(kaiser_beta=0.0, normalized=True))
    mag = freq_response(kernel, 16)
    signs = np.array([[1, -1, 1], [-1, 1, -1], [1, -1, 1]], dtype=float)
    want = abs(float((kernel.taps * signs).sum()))
    assert mag[0, 0] == pytest.approx(want, abs=1e-12)
    assert want == pytest.approx(0.0177, abs=1e-3)


def test_freq_response_is_low_pass():
    kernel = design_kernel(FilterSpec(kaiser_beta=1.0, normalized=True))
    mag = freq_response(kernel, 64)
    w = np.abs(spectrum_freqs(64))
    band = np.maximum(w[:, None], w[None, :])
    passband = mag[band <= 0.25 * math.pi].mean()
    stopband = mag[band >= 0.75 * math.pi].mean()
    assert passband > 4.0 * stopband


def test_freq_response_validation():
    kernel = design_kernel(FilterSpec(kaiser_beta=1.0, normalized=True))
    with pytest.raises(ValueError):
        freq_response(kernel, 1)


def test_alias_energy_pure_tones():
    N = 32
    n = np.arange(N)
    low = np.cos(2.0 * np.pi * 4.0 * n[None, :] / N) * np.ones((N, 1))
    high = np.cos(2.0 * np.pi * 12.0 * n[None, :] / N) * np.ones((N, 1))
    assert alias_energy(low, HALF_PI) == pytest.approx(0.0, abs=1e-12)
    assert alias_energy(high, HALF_PI) == pytest.approx(1.0, abs=1e-12)
    mix = low + high
    assert alias_energy(mix, HALF_PI) == pytest.approx(0.5, abs=1e-6)


def test_alias_energy_channel_pooling():
    N = 16
    n = np.arange(N)
    low = (np.cos(2.0 * np.pi * 2.0 * n[None, :] / N) * np.ones((N, 1)))
    high = (np.cos(2.0 * np.pi * 7.0 * n[None, :] / N) * np.ones((N, 1)))
    both = np.stack([low, high])
    assert alias_energy(both, HALF_PI) == pytest.approx(0.5, abs=1e-6)
    assert alias_energy(np.zeros((8, 8))) == 0.0


def test_alias_energy_validation():
    with pytest.raises(ValueError):
        alias_energy(np.zeros((1, 4, 6)))
    with pytest.raises(ValueError):
        alias_energy(np.zeros((8, 8)), 0.0)


def test_corpus_is_deterministic_and_band_limited():
    a = band_limited_corpus()
    b = band_limited_corpus()
    assert a.shape == (8, 1, 64, 64)
    assert np.array_equal(a, b)
    for img in a:
        assert np.max(np.abs(img)) == pytest.approx(0.8, abs=1e-12)
        assert alias_energy(img, HALF_PI) <= 1e-24
        # content stays strictly below 80 percent of the cutoff
        assert alias_energy(img, 0.8 * HALF_PI - 1e-9) <= 1e-24
        assert abs(img.sum()) <= 1e-9  # DC removed


def test_corpus_images_differ():
    a = band_limited_corpus(3, 32)
    assert not np.array_equal(a[0], a[1])
    assert not np.array_equal(a[1], a[2])


def test_corpus_validation():
    with pytest.raises(ValueError):
        band_limited_corpus(0, 64)
    with pytest.raises(ValueError):
        band_limited_corpus(2, 15)


def test_config_names_round_trip():
    cases = [
        PipelineConfig("A"),
        PipelineConfig("B", FilterSpec(kaiser_beta=2.0, normalized=False)),
        PipelineConfig("C", FilterSpec(kaiser_beta=0.0, normalized=True)),
        PipelineConfig("D", FilterSpec(kaiser_beta=1.0, normalized=True)),
        PipelineConfig("D", FilterSpec(kaiser_beta=1.5, normalized=True)),
    ]
    for config in cases:
        assert parse_config_name(config_name(config)) == config
    assert config_name(cases[0]) == "A"
    assert config_name(cases[3]) == "D-1N"
    assert config_name(cases[1]) == "B-2"


def test_config_name_validation():
    with pytest.raises(ValueError):
        parse_config_name("E-1N")
    with pytest.raises(ValueError):
        parse_config_name("B")  # filtered pipelines need a suffix
    with pytest.raises(ValueError):
        parse_config_name("A-1N")
    with pytest.raises(ValueError):
        parse_config_name("D-xN")
    with pytest.raises(ValueError):
        PipelineConfig("A", FilterSpec(kaiser_beta=1.0, normalized=True))
    with pytest.raises(ValueError):
        PipelineConfig("D")


def test_apply_pipeline_compositions():
    img = band_limited_corpus(1, 32)[0]
    spec = FilterSpec(kaiser_beta=1.0, normalized=True)
    kernel = design_kernel(spec)

    a = apply_pipeline(PipelineConfig("A"), img)
    want_a = upsample2x_naive(apply_pointwise(downsample2x_naive(img), "relu"))
    assert np.array_equal(a, want_a)

    b = apply_pipeline(PipelineConfig("B", spec), img)
    want_b = upsample2x_af(apply_pointwise(downsample2x_af(img, kernel), "relu"), kernel)
    assert np.array_equal(b, want_b)

    c = apply_pipeline(PipelineConfig("C", spec), img)
    want_c = upsample2x_naive(wrapped_activation(downsample2x_naive(img), "relu", kernel))
    assert np.array_equal(c, want_c)

    d = apply_pipeline(PipelineConfig("D", spec), img)
    want_d = upsample2x_af(wrapped_activation(downsample2x_af(img, kernel), "relu", kernel), kernel)
    assert np.array_equal(d, want_d)


def test_pipelines_preserve_shape():
    img = band_limited_corpus(1, 32)[0]
    spec = FilterSpec(kaiser_beta=1.0, normalized=True)
    for config in (PipelineConfig("A"), PipelineConfig("B", spec),
                   PipelineConfig("C", spec), PipelineConfig("D", spec)):
        assert apply_pipeline(config, img).shape == img.shape


def test_equivariance_error_zero_for_commuting_case():
    # pipeline A is built from 2x2 block and pointwise operators, all of
    # which commute exactly with quarter turns
    img = band_limited_corpus(1, 32)[0]
    err = equivariance_error(PipelineConfig("A"), img, math.pi / 2)
    assert err <= 1e-12


def test_equivariance_error_scale_invariant():
    img = band_limited_corpus(1, 32)[0]
    config = PipelineConfig("D", FilterSpec(kaiser_beta=1.0, normalized=True))
    e1 = equivariance_error(config, img, math.pi / 4)
    e2 = equivariance_error(config, 2.0 * img, math.pi / 4)
    # relu is positively homogeneous, so doubling the input doubles both
    # branches and the relative error is unchanged
    assert e1 == pytest.approx(e2, rel=1e-9)


def test_alias_free_pipeline_wins_at_oblique_angles():
    img = band_limited_corpus(2, 64)
    config_d = PipelineConfig("D", FilterSpec(kaiser_beta=1.0, normalized=True))
    for x in img:
        assert (equivariance_error(config_d, x, math.pi / 4)
                < equivariance_error(PipelineConfig("A"), x, math.pi / 4))
